//! The derivation space as the nullspace of the linear derivation
//! equations in the `n^2` unknowns `d_ij`.
//!
//! Unknowns are ordered row-major: `d_ij` is column `n * i + j`.

use thiserror::Error;

use crate::algebra::{AlgebraError, EvolutionAlgebra};
use crate::field::{echelon_basis, IncrementalEchelon, Matrix, Scalar};

pub const DEFAULT_MAX_N: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("graph has {n} vertices, above the configured cap of {max_n}")]
    TooLarge { n: usize, max_n: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    pub max_n: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            max_n: DEFAULT_MAX_N,
        }
    }
}

/// Column of the unknown `d_ij`.
pub fn unknown_index(n: usize, i: usize, j: usize) -> usize {
    n * i + j
}

/// The equations as sparse rows, in the order used by [`build_system`]:
/// first `w_jk d_ij + w_ik d_ji = 0` for every `(i, j, k)` with `i != j`,
/// then `sum_k w_ik d_kj - 2 w_ij d_ii = 0` for every `(i, j)`.
fn equations(alg: &EvolutionAlgebra) -> impl Iterator<Item = Vec<(usize, Scalar)>> + '_ {
    let n = alg.dim();
    let w = alg.structure();
    let two = alg.field().two();
    let first = (0..n).flat_map(move |i| {
        (0..n).filter(move |&j| j != i).flat_map(move |j| {
            (0..n).map(move |k| {
                vec![
                    (unknown_index(n, i, j), w.get(j, k).clone()),
                    (unknown_index(n, j, i), w.get(i, k).clone()),
                ]
            })
        })
    });
    let second = (0..n).flat_map(move |i| {
        let two = two.clone();
        (0..n).map(move |j| {
            let mut row: Vec<(usize, Scalar)> = (0..n)
                .map(|k| (unknown_index(n, k, j), w.get(i, k).clone()))
                .collect();
            row.push((unknown_index(n, i, i), -(&two * w.get(i, j))));
            row
        })
    });
    first.chain(second)
}

/// Dense coefficient matrix of the derivation equations: `n^2 (n - 1) + n^2`
/// rows (zero rows included) by `n^2` columns.
pub fn build_system(alg: &EvolutionAlgebra) -> Matrix {
    let n = alg.dim();
    let field = alg.field();
    let rows = equations(alg)
        .map(|terms| {
            let mut row = vec![field.zero(); n * n];
            for (c, v) in terms {
                row[c] = &row[c] + &v;
            }
            row
        })
        .collect();
    Matrix::from_rows(field, rows).expect("equal-length rows")
}

/// Exact basis of the derivation space.
///
/// The basis matrices, flattened row-major, form the reduced row echelon
/// basis of the space: each has a leading 1 at a position where all the
/// others vanish. This basis is unique, so two spaces are equal iff their
/// bases are.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationSpace {
    algebra: EvolutionAlgebra,
    basis: Vec<Matrix>,
    leads: Vec<usize>,
}

impl DerivationSpace {
    pub fn algebra(&self) -> &EvolutionAlgebra {
        &self.algebra
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    /// Coefficients expressing `d` in the basis, or `None` if `d` is not a
    /// derivation.
    pub fn coordinates(&self, d: &Matrix) -> Result<Option<Vec<Scalar>>, SolverError> {
        self.algebra.check_operator(d)?;
        let mut residual = d.as_slice().to_vec();
        let coords: Vec<Scalar> = self
            .basis
            .iter()
            .zip(&self.leads)
            .map(|(b, &lead)| {
                let c = residual[lead].clone();
                if !c.is_zero() {
                    for (r, x) in residual.iter_mut().zip(b.as_slice()) {
                        if !x.is_zero() {
                            *r = &*r - &(&c * x);
                        }
                    }
                }
                c
            })
            .collect();
        Ok(residual.iter().all(Scalar::is_zero).then_some(coords))
    }

    pub fn contains(&self, d: &Matrix) -> Result<bool, SolverError> {
        Ok(self.coordinates(d)?.is_some())
    }
}

pub fn derivation_space(alg: &EvolutionAlgebra) -> Result<DerivationSpace, SolverError> {
    derivation_space_with(alg, SolverConfig::default())
}

pub fn derivation_space_with(
    alg: &EvolutionAlgebra,
    config: SolverConfig,
) -> Result<DerivationSpace, SolverError> {
    let n = alg.dim();
    if n > config.max_n {
        return Err(SolverError::TooLarge {
            n,
            max_n: config.max_n,
        });
    }
    let field = alg.field();
    let mut echelon = IncrementalEchelon::new(field, n * n);
    for row in equations(alg) {
        if row.iter().any(|(_, v)| !v.is_zero()) {
            echelon.insert(row);
        }
    }
    let vectors = echelon_basis(field, n * n, echelon.nullspace());
    let leads = vectors
        .iter()
        .map(|v| {
            v.iter()
                .position(|x| !x.is_zero())
                .expect("nonzero basis vector")
        })
        .collect();
    let basis = vectors
        .into_iter()
        .map(|v| Matrix::from_flat(field, n, n, v).expect("n*n entries"))
        .collect();
    Ok(DerivationSpace {
        algebra: alg.clone(),
        basis,
        leads,
    })
}

/// Whether `d` is a derivation, via membership in the computed space.
pub fn membership(ds: &DerivationSpace, d: &Matrix) -> Result<bool, SolverError> {
    ds.contains(d)
}
