//! Structure results for derivations of graph evolution algebras, as
//! executable checks on a given matrix and as dimension predictions made
//! from the graph alone.
//!
//! Checks take the matrix `d` in the original vertex labelling; twin
//! classes need not be contiguous; the block form is read through the
//! partition rather than by physically permuting `d`.

use thiserror::Error;

use crate::algebra::{AlgebraError, EvolutionAlgebra};
use crate::field::{FieldSpec, Matrix, Scalar};
use crate::graph::{Graph, TwinPartition};
use crate::solver::DerivationSpace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoryError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("needs characteristic {requirement}, field has characteristic {found}")]
    Characteristic {
        requirement: &'static str,
        found: u64,
    },
    #[error("needs at least {0} vertices")]
    TooFewVertices(usize),
    #[error("graph has a cycle of odd length")]
    OddCycle,
    #[error("adjacency matrix is singular over the field")]
    SingularAdjacency,
    #[error("matrix is {rows}x{cols}, partition covers {n} vertices")]
    Shape { rows: usize, cols: usize, n: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

fn check_shape(d: &Matrix, n: usize) -> Result<(), TheoryError> {
    if d.rows() != n || d.cols() != n {
        return Err(TheoryError::Shape {
            rows: d.rows(),
            cols: d.cols(),
            n,
        });
    }
    Ok(())
}

fn require_connected(g: &Graph) -> Result<(), TheoryError> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(TheoryError::Disconnected)
    }
}

fn require_char(
    field: FieldSpec,
    ok: impl Fn(u64) -> bool,
    requirement: &'static str,
) -> Result<(), TheoryError> {
    let p = field.characteristic();
    if ok(p) {
        Ok(())
    } else {
        Err(TheoryError::Characteristic {
            requirement,
            found: p,
        })
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

fn intersects(a: &[usize], b: &[usize]) -> bool {
    a.iter().any(|x| b.binary_search(x).is_ok())
}

/// The neighbourhood form of the derivation equations:
/// (i) `d_ij = -d_ji` when `i != j` share a neighbour;
/// (ii) `d_ij = d_ji = 0` when `i != j` and `N(i)` is not inside `N(j)`;
/// (iii) `sum_{k in N(i)} d_kj` is `2 d_ii` if `j in N(i)`, else 0.
///
/// Only an iff on connected graphs: an isolated vertex admits derivations
/// that break (ii).
pub fn check_prop_conditions(alg: &EvolutionAlgebra, d: &Matrix) -> Result<bool, TheoryError> {
    alg.check_operator(d)?;
    let g = alg.graph();
    require_connected(g)?;
    let n = alg.dim();
    let field = alg.field();
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            let (ni, nj) = (g.nbrs(i), g.nbrs(j));
            if intersects(ni, nj) && *d.get(i, j) != -d.get(j, i) {
                return Ok(false);
            }
            if !is_subset(ni, nj) && !(d.get(i, j).is_zero() && d.get(j, i).is_zero()) {
                return Ok(false);
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            let sum = g
                .nbrs(i)
                .iter()
                .fold(field.zero(), |acc, &k| acc + d.get(k, j));
            let expected = if g.is_adjacent(i, j) {
                &field.two() * d.get(i, i)
            } else {
                field.zero()
            };
            if sum != expected {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `d_ij = 0` whenever `i` and `j` are not twins.
pub fn check_block_structure(d: &Matrix, tp: &TwinPartition) -> Result<bool, TheoryError> {
    let n = tp.vertex_count();
    check_shape(d, n)?;
    Ok((0..n).all(|i| (0..n).all(|j| tp.are_twins(i, j) || d.get(i, j).is_zero())))
}

/// For every twin class `T`, every `j in T` and every `t` adjacent to `T`:
/// `sum_{k in T} d_kj = 2 d_tt` (so 0 in characteristic 2).
pub fn check_twin_sum(
    alg: &EvolutionAlgebra,
    d: &Matrix,
    tp: &TwinPartition,
) -> Result<bool, TheoryError> {
    alg.check_operator(d)?;
    check_shape(d, tp.vertex_count())?;
    let g = alg.graph();
    require_connected(g)?;
    let two = alg.field().two();
    for class in tp.classes() {
        let boundary = g.nbrs(class[0]);
        for &j in class {
            let sum = class
                .iter()
                .fold(alg.field().zero(), |acc, &k| acc + d.get(k, j));
            if boundary.iter().any(|&t| sum != &two * d.get(t, t)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Off-diagonal part of each twin block is skew-symmetric.
pub fn check_offdiag_skew(d: &Matrix, tp: &TwinPartition) -> Result<bool, TheoryError> {
    check_shape(d, tp.vertex_count())?;
    Ok(tp.classes().iter().all(|class| {
        class.iter().all(|&i| {
            class
                .iter()
                .filter(|&&j| j != i)
                .all(|&j| *d.get(i, j) == -d.get(j, i))
        })
    }))
}

/// Block form, twin sums and skew blocks together; for a connected graph
/// this holds exactly for derivations.
pub fn check_theorem_characterization(
    alg: &EvolutionAlgebra,
    d: &Matrix,
    tp: &TwinPartition,
) -> Result<bool, TheoryError> {
    Ok(check_block_structure(d, tp)? && check_twin_sum(alg, d, tp)? && check_offdiag_skew(d, tp)?)
}

/// Consequences for a derivation in characteristic `p` outside `{0, 2}`:
/// twins share diagonal entries; `sum_{k in N(i)} d_kk` vanishes when
/// `p | deg(i)` and equals `2 deg(i) d_ii` otherwise; twin column sums.
pub fn check_corollary_sums(
    alg: &EvolutionAlgebra,
    d: &Matrix,
    tp: &TwinPartition,
) -> Result<bool, TheoryError> {
    require_char(alg.field(), |p| p != 0 && p != 2, "p not in {0, 2}")?;
    alg.check_operator(d)?;
    let g = alg.graph();
    require_connected(g)?;
    let field = alg.field();
    let p = field.characteristic();
    let n = alg.dim();

    let twins_share_diagonal = tp.classes().iter().all(|class| {
        class
            .iter()
            .all(|&i| d.get(i, i) == d.get(class[0], class[0]))
    });
    if !twins_share_diagonal {
        return Ok(false);
    }
    for i in 0..n {
        let deg = g.nbrs(i).len();
        let diag_sum = g
            .nbrs(i)
            .iter()
            .fold(field.zero(), |acc, &k| acc + d.get(k, k));
        let expected = if (deg as u64).is_multiple_of(p) {
            field.zero()
        } else {
            Scalar::from_int(2 * deg as i64, field) * d.get(i, i)
        };
        if diag_sum != expected {
            return Ok(false);
        }
    }
    check_twin_sum(alg, d, tp)
}

/// Outside characteristic 2, an off-diagonal entry `d_kl` can only be
/// nonzero when the twin class of `l` has at least three vertices.
pub fn check_twin_size_lemma(
    ds: &DerivationSpace,
    tp: &TwinPartition,
) -> Result<bool, TheoryError> {
    let alg = ds.algebra();
    require_char(alg.field(), |p| p != 2, "p != 2")?;
    require_connected(alg.graph())?;
    let n = alg.dim();
    Ok(ds.basis().iter().all(|d| {
        (0..n).all(|k| {
            (0..n)
                .filter(|&l| l != k)
                .all(|l| d.get(k, l).is_zero() || tp.class_members(l).len() >= 3)
        })
    }))
}

/// Outside characteristic 3 the only diagonal derivation is zero.
///
/// Solves for combinations of the basis whose off-diagonal entries all
/// vanish and checks each resulting matrix is zero.
pub fn check_no_diagonal_derivation(ds: &DerivationSpace) -> Result<bool, TheoryError> {
    let alg = ds.algebra();
    let field = alg.field();
    require_char(field, |p| p != 3, "p != 3")?;
    require_connected(alg.graph())?;
    let n = alg.dim();
    if n < 2 {
        return Err(TheoryError::TooFewVertices(2));
    }
    let dim = ds.dimension();
    if dim == 0 {
        return Ok(true);
    }
    let off_diagonal: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let system = Matrix::from_fn(field, off_diagonal.len(), dim, |r, b| {
        let (i, j) = off_diagonal[r];
        ds.basis()[b].get(i, j).clone()
    });
    for coeffs in system.nullspace() {
        let combo = ds
            .basis()
            .iter()
            .zip(&coeffs)
            .fold(Matrix::zeros(field, n, n), |acc, (b, c)| {
                acc.sum(&b.scaled(c)).expect("same shape")
            });
        if !combo.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For a nonsingular adjacency matrix: along any shortest path of length
/// `t` from `k` to `i`, `d_kk = 2 d_ii` for odd `t` and `d_kk = d_ii` for
/// even `t`.
pub fn check_diagonal_parity(alg: &EvolutionAlgebra, d: &Matrix) -> Result<bool, TheoryError> {
    alg.check_operator(d)?;
    let g = alg.graph();
    require_connected(g)?;
    let n = alg.dim();
    if alg.structure().rank() < n {
        return Err(TheoryError::SingularAdjacency);
    }
    let two = alg.field().two();
    for k in 0..n {
        let dist = g.bfs_distances(k).expect("vertex in range");
        for (i, t) in dist.iter().enumerate() {
            let t = t.expect("connected");
            let expected = if t % 2 == 1 {
                &two * d.get(i, i)
            } else {
                d.get(i, i).clone()
            };
            if *d.get(k, k) != expected {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The characteristic-3 diagonal map: 1 on vertices at even distance from
/// vertex 0, 2 on vertices at odd distance.
pub fn build_f_map(g: &Graph, field: FieldSpec) -> Result<Matrix, TheoryError> {
    require_char(field, |p| p == 3, "3")?;
    require_connected(g)?;
    if g.has_odd_cycle() {
        return Err(TheoryError::OddCycle);
    }
    let dist = g.bfs_distances(0).expect("vertex 0 exists");
    let entries: Vec<i64> = dist
        .iter()
        .map(|t| if t.expect("connected") % 2 == 0 { 1 } else { 2 })
        .collect();
    Ok(Matrix::diagonal(field, &entries))
}

/// Which structural fact a prediction rests on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    SingleVertex,
    TwoVertices,
    NonsingularAdjacency,
    NonsingularBipartiteCharThree,
    NonsingularOddCycleCharThree,
    SmallTwinClasses,
    TwinFreeCharTwo,
}

impl Rule {
    pub fn justification(&self) -> &'static str {
        match self {
            Rule::SingleVertex => "one vertex: the product is zero, every linear map is a derivation",
            Rule::TwoVertices => {
                "two vertices: d is diagonal with d11 = 2 d22 and d22 = 2 d11, nonzero only in characteristic 3"
            }
            Rule::NonsingularAdjacency => {
                "adjacency matrix nonsingular over the field and characteristic is not 3"
            }
            Rule::NonsingularBipartiteCharThree => {
                "adjacency matrix nonsingular, characteristic 3, no odd cycle: spanned by the distance-parity map"
            }
            Rule::NonsingularOddCycleCharThree => {
                "adjacency matrix nonsingular, characteristic 3, odd cycle present"
            }
            Rule::SmallTwinClasses => {
                "characteristic not 2 or 3 and every twin class has at most two vertices"
            }
            Rule::TwinFreeCharTwo => "characteristic 2 and the graph is twin-free",
        }
    }
}

/// A dimension forecast for the derivation space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Prediction {
    ExactZero {
        rule: Rule,
    },
    ExactDimWithBasis {
        dimension: usize,
        basis: Vec<Matrix>,
        rule: Rule,
    },
    /// Upper bound only. None of the current rules needs it: every case
    /// with a bound is also decided exactly.
    DimBound {
        bound: usize,
        rule: Rule,
    },
    NoPrediction,
}

impl Prediction {
    pub fn kind(&self) -> &'static str {
        match self {
            Prediction::ExactZero { .. } => "exact_zero",
            Prediction::ExactDimWithBasis { .. } => "exact_dim_with_basis",
            Prediction::DimBound { .. } => "dim_bound",
            Prediction::NoPrediction => "no_prediction",
        }
    }

    /// The predicted dimension, when it is exact.
    pub fn exact_dimension(&self) -> Option<usize> {
        match self {
            Prediction::ExactZero { .. } => Some(0),
            Prediction::ExactDimWithBasis { dimension, .. } => Some(*dimension),
            _ => None,
        }
    }

    pub fn basis(&self) -> Option<&[Matrix]> {
        match self {
            Prediction::ExactDimWithBasis { basis, .. } => Some(basis),
            _ => None,
        }
    }

    pub fn rule(&self) -> Option<Rule> {
        match self {
            Prediction::ExactZero { rule }
            | Prediction::ExactDimWithBasis { rule, .. }
            | Prediction::DimBound { rule, .. } => Some(*rule),
            Prediction::NoPrediction => None,
        }
    }

    pub fn justification(&self) -> &'static str {
        self.rule()
            .map_or("no structural rule applies", |r| r.justification())
    }
}

/// Forecasts the derivation space from the graph alone. Rules are tried in
/// a fixed order and the first that applies wins.
pub fn predict(g: &Graph, field: FieldSpec, tp: &TwinPartition) -> Result<Prediction, TheoryError> {
    require_connected(g)?;
    let n = g.vertex_count();
    let p = field.characteristic();

    if n == 1 {
        return Ok(Prediction::ExactDimWithBasis {
            dimension: 1,
            basis: vec![Matrix::identity(field, 1)],
            rule: Rule::SingleVertex,
        });
    }
    if n == 2 {
        return Ok(if p == 3 {
            Prediction::ExactDimWithBasis {
                dimension: 1,
                basis: vec![Matrix::diagonal(field, &[1, 2])],
                rule: Rule::TwoVertices,
            }
        } else {
            Prediction::ExactZero {
                rule: Rule::TwoVertices,
            }
        });
    }
    if g.adjacency_matrix(field).rank() == n {
        return Ok(if p != 3 {
            Prediction::ExactZero {
                rule: Rule::NonsingularAdjacency,
            }
        } else if g.has_odd_cycle() {
            Prediction::ExactZero {
                rule: Rule::NonsingularOddCycleCharThree,
            }
        } else {
            Prediction::ExactDimWithBasis {
                dimension: 1,
                basis: vec![build_f_map(g, field)?],
                rule: Rule::NonsingularBipartiteCharThree,
            }
        });
    }
    if p != 2 && p != 3 && tp.max_class_size() <= 2 {
        return Ok(Prediction::ExactZero {
            rule: Rule::SmallTwinClasses,
        });
    }
    if p == 2 && tp.is_twin_free() {
        return Ok(Prediction::ExactZero {
            rule: Rule::TwinFreeCharTwo,
        });
    }
    Ok(Prediction::NoPrediction)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::derivation_space;

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::new(p).unwrap()
    }

    fn double_star() -> Graph {
        Graph::parse("7 6\n1 3\n2 3\n3 4\n4 5\n4 6\n4 7\n").unwrap()
    }

    fn double_star_gf2_derivation() -> Matrix {
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

    /// `2 alpha` on the first block, `alpha` on the second, `beta` pattern
    /// on the three twins.
    fn k23_family(alpha: i64, beta: i64) -> Matrix {
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

    #[test]
    fn prop_conditions_examples() {
        let alg = EvolutionAlgebra::new(double_star(), gf(2));
        assert!(check_prop_conditions(&alg, &double_star_gf2_derivation()).unwrap());
        let p2 = EvolutionAlgebra::new(Graph::path(2).unwrap(), gf(5));
        assert!(!check_prop_conditions(&p2, &Matrix::identity(gf(5), 2)).unwrap());
    }

    #[test]
    fn block_structure_examples() {
        let g = double_star();
        let tp = g.twin_partition();
        assert!(check_block_structure(&double_star_gf2_derivation(), &tp).unwrap());
        assert!(check_block_structure(&Matrix::zeros(gf(2), 7, 7), &tp).unwrap());
        let mut e13 = Matrix::zeros(gf(2), 7, 7);
        e13.set(0, 2, gf(2).one());
        assert!(!check_block_structure(&e13, &tp).unwrap());
        assert!(check_block_structure(&Matrix::zeros(gf(2), 6, 6), &tp).is_err());
    }

    #[test]
    fn twin_sum_examples() {
        let g = double_star();
        let alg = EvolutionAlgebra::new(g.clone(), gf(2));
        assert!(check_twin_sum(&alg, &double_star_gf2_derivation(), &g.twin_partition()).unwrap());

        let p2 = Graph::path(2).unwrap();
        let alg = EvolutionAlgebra::new(p2.clone(), gf(3));
        assert!(check_twin_sum(
            &alg,
            &Matrix::diagonal(gf(3), &[1, 2]),
            &p2.twin_partition()
        )
        .unwrap());

        let k23 = Graph::complete_bipartite(3, 2).unwrap();
        let alg = EvolutionAlgebra::new(k23.clone(), gf(3));
        assert!(check_twin_sum(&alg, &k23_family(0, 1), &k23.twin_partition()).unwrap());
    }

    #[test]
    fn skew_examples() {
        let k23 = Graph::complete_bipartite(3, 2).unwrap();
        assert!(check_offdiag_skew(&k23_family(1, 1), &k23.twin_partition()).unwrap());
        assert!(check_offdiag_skew(
            &double_star_gf2_derivation(),
            &double_star().twin_partition()
        )
        .unwrap());
        let c4 = Graph::cycle(4).unwrap();
        let mut d = Matrix::zeros(gf(5), 4, 4);
        d.set(0, 2, gf(5).one());
        d.set(2, 0, gf(5).one());
        assert!(!check_offdiag_skew(&d, &c4.twin_partition()).unwrap());
    }

    #[test]
    fn corollary_sums_examples() {
        let p2 = Graph::path(2).unwrap();
        let alg = EvolutionAlgebra::new(p2.clone(), gf(3));
        assert!(check_corollary_sums(
            &alg,
            &Matrix::diagonal(gf(3), &[1, 2]),
            &p2.twin_partition()
        )
        .unwrap());

        let k23 = Graph::complete_bipartite(3, 2).unwrap();
        let alg = EvolutionAlgebra::new(k23.clone(), gf(3));
        assert!(check_corollary_sums(&alg, &k23_family(1, 0), &k23.twin_partition()).unwrap());

        let alg2 = EvolutionAlgebra::new(double_star(), gf(2));
        assert!(matches!(
            check_corollary_sums(
                &alg2,
                &double_star_gf2_derivation(),
                &double_star().twin_partition()
            ),
            Err(TheoryError::Characteristic { found: 2, .. })
        ));
    }

    #[test]
    fn twin_size_lemma_examples() {
        let k23 = Graph::complete_bipartite(3, 2).unwrap();
        let ds = derivation_space(&EvolutionAlgebra::new(k23.clone(), gf(3))).unwrap();
        assert!(check_twin_size_lemma(&ds, &k23.twin_partition()).unwrap());

        let p2 = Graph::path(2).unwrap();
        let ds = derivation_space(&EvolutionAlgebra::new(p2.clone(), gf(3))).unwrap();
        assert!(check_twin_size_lemma(&ds, &p2.twin_partition()).unwrap());

        let g = double_star();
        let ds = derivation_space(&EvolutionAlgebra::new(g.clone(), gf(2))).unwrap();
        assert!(check_twin_size_lemma(&ds, &g.twin_partition()).is_err());
    }

    #[test]
    fn no_diagonal_derivation_examples() {
        let g = double_star();
        for p in [2, 5] {
            let ds = derivation_space(&EvolutionAlgebra::new(g.clone(), gf(p))).unwrap();
            assert!(check_no_diagonal_derivation(&ds).unwrap(), "p = {p}");
        }
        let ds = derivation_space(&EvolutionAlgebra::new(Graph::path(2).unwrap(), gf(3))).unwrap();
        assert!(check_no_diagonal_derivation(&ds).is_err());
        let single =
            derivation_space(&EvolutionAlgebra::new(Graph::empty(1).unwrap(), gf(5))).unwrap();
        assert_eq!(
            check_no_diagonal_derivation(&single),
            Err(TheoryError::TooFewVertices(2))
        );
    }

    #[test]
    fn f_map_examples() {
        let f = gf(3);
        assert_eq!(
            build_f_map(&Graph::path(2).unwrap(), f).unwrap(),
            Matrix::diagonal(f, &[1, 2])
        );
        assert_eq!(
            build_f_map(&Graph::path(4).unwrap(), f).unwrap(),
            Matrix::diagonal(f, &[1, 2, 1, 2])
        );
        let k23 = Graph::complete_bipartite(3, 2).unwrap();
        let fm = build_f_map(&k23, f).unwrap();
        assert_eq!(fm, Matrix::diagonal(f, &[1, 1, 1, 2, 2]));
        assert!(EvolutionAlgebra::new(k23, f)
            .is_derivation_leibniz(&fm)
            .unwrap());
        assert_eq!(
            build_f_map(&Graph::cycle(5).unwrap(), f),
            Err(TheoryError::OddCycle)
        );
        assert!(matches!(
            build_f_map(&Graph::path(4).unwrap(), gf(5)),
            Err(TheoryError::Characteristic { .. })
        ));
    }

    #[test]
    fn predictions() {
        let p4 = Graph::path(4).unwrap();
        let pred = predict(&p4, gf(3), &p4.twin_partition()).unwrap();
        assert_eq!(pred.exact_dimension(), Some(1));
        assert_eq!(
            pred.basis().unwrap(),
            &[Matrix::diagonal(gf(3), &[1, 2, 1, 2])]
        );

        let c5 = Graph::cycle(5).unwrap();
        let pred = predict(&c5, gf(3), &c5.twin_partition()).unwrap();
        assert_eq!(
            pred,
            Prediction::ExactZero {
                rule: Rule::NonsingularOddCycleCharThree
            }
        );

        let g = double_star();
        assert_eq!(
            predict(&g, gf(5), &g.twin_partition()).unwrap(),
            Prediction::NoPrediction
        );

        let pred = predict(&p4, gf(2), &p4.twin_partition()).unwrap();
        assert_eq!(pred.exact_dimension(), Some(0));

        let two = Graph::empty(2).unwrap();
        assert_eq!(
            predict(&two, gf(3), &two.twin_partition()),
            Err(TheoryError::Disconnected)
        );
    }
}
