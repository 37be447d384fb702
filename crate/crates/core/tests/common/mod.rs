//! Reference computations that avoid the solver's equation assembly.
#![allow(dead_code)]

use evoderive_core::{AlgebraElement, EvolutionAlgebra, FieldSpec, Graph, Matrix, Scalar};

pub fn gf(p: u64) -> FieldSpec {
    FieldSpec::new(p).unwrap()
}

pub fn double_star() -> Graph {
    Graph::parse("7 6\n1 3\n2 3\n3 4\n4 5\n4 6\n4 7\n").unwrap()
}

pub fn double_star_gf2_derivation() -> Matrix {
    let mut rows = vec![vec![0i64; 7]; 7];
    for (i, j) in [
        (0, 0),
        (0, 1),
        (1, 0),
        (1, 1),
        (4, 4),
        (4, 5),
        (5, 4),
        (5, 5),
    ] {
        rows[i][j] = 1;
    }
    Matrix::from_ints(gf(2), &rows).unwrap()
}

pub fn k23_family(alpha: i64, beta: i64) -> Matrix {
    let (a, b) = (alpha, beta);
    Matrix::from_ints(
        gf(3),
        &[
            [2 * a, b, -b, 0, 0],
            [-b, 2 * a, b, 0, 0],
            [b, -b, 2 * a, 0, 0],
            [0, 0, 0, a, 0],
            [0, 0, 0, 0, a],
        ],
    )
    .unwrap()
}

/// Leibniz defect of `d`: for each ordered pair `(i, j)` the coordinates of
/// `d(e_i e_j) - d(e_i) e_j - e_i d(e_j)`, concatenated. Linear in `d`.
pub fn leibniz_defect(alg: &EvolutionAlgebra, d: &Matrix) -> Vec<Scalar> {
    let n = alg.dim();
    let e: Vec<AlgebraElement> = (0..n).map(|i| alg.basis_vector(i)).collect();
    let mut out = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            let lhs = alg
                .apply_linear(d, &alg.multiply(&e[i], &e[j]).unwrap())
                .unwrap();
            let a = alg
                .multiply(&alg.apply_linear(d, &e[i]).unwrap(), &e[j])
                .unwrap();
            let b = alg
                .multiply(&e[i], &alg.apply_linear(d, &e[j]).unwrap())
                .unwrap();
            for k in 0..n {
                out.push(&(&lhs.coeffs()[k] - &a.coeffs()[k]) - &b.coeffs()[k]);
            }
        }
    }
    out
}

/// The matrix of the defect map in the unit-matrix basis `E_ab`; the
/// derivations are exactly its kernel.
pub fn defect_matrix(alg: &EvolutionAlgebra) -> Matrix {
    let n = alg.dim();
    let f = alg.field();
    let columns: Vec<Vec<Scalar>> = (0..n * n)
        .map(|c| {
            let mut unit = Matrix::zeros(f, n, n);
            unit.set(c / n, c % n, f.one());
            leibniz_defect(alg, &unit)
        })
        .collect();
    let rows = columns[0].len();
    Matrix::from_fn(f, rows, n * n, |r, c| columns[c][r].clone())
}

/// Dimension of the derivation space from the defect map alone.
pub fn oracle_dimension(alg: &EvolutionAlgebra) -> usize {
    let n = alg.dim();
    n * n - defect_matrix(alg).rank()
}

/// Kernel basis of the defect map reshaped into matrices.
pub fn oracle_basis(alg: &EvolutionAlgebra) -> Vec<Matrix> {
    let n = alg.dim();
    defect_matrix(alg)
        .nullspace()
        .into_iter()
        .map(|v| Matrix::from_flat(alg.field(), n, n, v).unwrap())
        .collect()
}

/// Counts derivations over a small prime field by enumerating every
/// matrix and applying the Leibniz check.
pub fn enumerate_derivations(alg: &EvolutionAlgebra) -> u64 {
    let p = alg.field().characteristic();
    assert!(p > 0);
    let n = alg.dim();
    let cells = n * n;
    let total = p.pow(cells as u32);
    let mut count = 0;
    for code in 0..total {
        let mut c = code;
        let entries: Vec<Scalar> = (0..cells)
            .map(|_| {
                let s = Scalar::from_int((c % p) as i64, alg.field());
                c /= p;
                s
            })
            .collect();
        let d = Matrix::from_flat(alg.field(), n, n, entries).unwrap();
        if alg.is_derivation_leibniz(&d).unwrap() {
            count += 1;
        }
    }
    count
}

/// Integer determinant by permutation expansion.
pub fn brute_determinant(rows: &[Vec<i64>]) -> i64 {
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for pos in 0..n {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }
    let n = rows.len();
    perms(n)
        .into_iter()
        .map(|p| {
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            let sign = if inversions % 2 == 0 { 1 } else { -1 };
            sign * (0..n).map(|i| rows[i][p[i]]).product::<i64>()
        })
        .sum()
}

/// Rank over GF(p) by counting kernel vectors: `|ker| = p^(n - rank)`.
pub fn brute_rank_mod(rows: &[Vec<i64>], p: u64) -> usize {
    let n = rows[0].len();
    let p_i = p as i64;
    let mut kernel = 0u64;
    for code in 0..p.pow(n as u32) {
        let mut c = code;
        let x: Vec<i64> = (0..n)
            .map(|_| {
                let v = (c % p) as i64;
                c /= p;
                v
            })
            .collect();
        if rows.iter().all(|r| {
            r.iter()
                .zip(&x)
                .map(|(a, b)| a * b)
                .sum::<i64>()
                .rem_euclid(p_i)
                == 0
        }) {
            kernel += 1;
        }
    }
    let mut free = 0;
    let mut k = kernel;
    while k > 1 {
        k /= p;
        free += 1;
    }
    n - free
}

pub fn adjacency_ints(g: &Graph) -> Vec<Vec<i64>> {
    let n = g.vertex_count();
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(g.is_adjacent(i, j))).collect())
        .collect()
}
