//! The evolution algebra of a graph.
//!
//! With natural basis `e_0..e_{n-1}`, the product is `e_i * e_j = 0` for
//! `i != j` and `e_i * e_i = sum_k w_ik e_k`, where `w` is the adjacency
//! matrix of the graph read in the chosen field. A linear map `d` is
//! stored by rows: `d(e_i) = sum_k d[i][k] e_k`.

use thiserror::Error;

use crate::field::{FieldSpec, Matrix, Scalar};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("expected dimension {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },
    #[error("algebra is over {expected}, operand is over {found}")]
    FieldMismatch {
        expected: FieldSpec,
        found: FieldSpec,
    },
}

/// A vector of coordinates in the natural basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    field: FieldSpec,
    coeffs: Vec<Scalar>,
}

impl AlgebraElement {
    pub fn new(field: FieldSpec, coeffs: Vec<Scalar>) -> Result<Self, AlgebraError> {
        if let Some(bad) = coeffs.iter().find(|c| c.field() != field) {
            return Err(AlgebraError::FieldMismatch {
                expected: field,
                found: bad.field(),
            });
        }
        Ok(Self { field, coeffs })
    }

    pub fn from_ints(field: FieldSpec, coeffs: &[i64]) -> Self {
        Self {
            field,
            coeffs: coeffs.iter().map(|&k| Scalar::from_int(k, field)).collect(),
        }
    }

    pub fn zero(field: FieldSpec, n: usize) -> Self {
        Self {
            field,
            coeffs: vec![field.zero(); n],
        }
    }

    /// The basis vector `e_i`.
    pub fn basis(field: FieldSpec, n: usize, i: usize) -> Self {
        let mut e = Self::zero(field, n);
        e.coeffs[i] = field.one();
        e
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    /// Coordinate-wise sum; panics on a length or field mismatch.
    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        assert_eq!(self.len(), other.len(), "element length mismatch");
        AlgebraElement {
            field: self.field,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvolutionAlgebra {
    graph: Graph,
    field: FieldSpec,
    structure: Matrix,
}

impl EvolutionAlgebra {
    pub fn new(graph: Graph, field: FieldSpec) -> Self {
        let structure = graph.adjacency_matrix(field);
        Self {
            graph,
            field,
            structure,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Structure constants `w_ik`.
    pub fn structure(&self) -> &Matrix {
        &self.structure
    }

    pub fn dim(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn basis_vector(&self, i: usize) -> AlgebraElement {
        AlgebraElement::basis(self.field, self.dim(), i)
    }

    fn check_element(&self, u: &AlgebraElement) -> Result<(), AlgebraError> {
        if u.field != self.field {
            return Err(AlgebraError::FieldMismatch {
                expected: self.field,
                found: u.field,
            });
        }
        if u.len() != self.dim() {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim().to_string(),
                found: u.len().to_string(),
            });
        }
        Ok(())
    }

    pub(crate) fn check_operator(&self, d: &Matrix) -> Result<(), AlgebraError> {
        if d.field() != self.field {
            return Err(AlgebraError::FieldMismatch {
                expected: self.field,
                found: d.field(),
            });
        }
        let n = self.dim();
        if d.rows() != n || d.cols() != n {
            return Err(AlgebraError::DimensionMismatch {
                expected: format!("{n}x{n}"),
                found: format!("{}x{}", d.rows(), d.cols()),
            });
        }
        Ok(())
    }

    /// `(sum u_i e_i)(sum v_j e_j) = sum_i u_i v_i e_i^2`.
    pub fn multiply(
        &self,
        u: &AlgebraElement,
        v: &AlgebraElement,
    ) -> Result<AlgebraElement, AlgebraError> {
        self.check_element(u)?;
        self.check_element(v)?;
        let mut out = AlgebraElement::zero(self.field, self.dim());
        for (i, (ui, vi)) in u.coeffs.iter().zip(&v.coeffs).enumerate() {
            if ui.is_zero() || vi.is_zero() {
                continue;
            }
            let c = ui * vi;
            for (k, w) in self.structure.row(i).iter().enumerate() {
                if !w.is_zero() {
                    out.coeffs[k] = &out.coeffs[k] + &(&c * w);
                }
            }
        }
        Ok(out)
    }

    /// Coordinates of `d(u)`, i.e. `u^T d` with `d` stored by rows.
    pub fn apply_linear(
        &self,
        d: &Matrix,
        u: &AlgebraElement,
    ) -> Result<AlgebraElement, AlgebraError> {
        self.check_operator(d)?;
        self.check_element(u)?;
        let mut out = AlgebraElement::zero(self.field, self.dim());
        for (i, ui) in u.coeffs.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (k, dik) in d.row(i).iter().enumerate() {
                if !dik.is_zero() {
                    out.coeffs[k] = &out.coeffs[k] + &(ui * dik);
                }
            }
        }
        Ok(out)
    }

    /// The Leibniz rule `d(e_i e_j) = d(e_i) e_j + e_i d(e_j)` on every
    /// ordered pair of basis vectors, which suffices by bilinearity.
    /// Uses only the product and `apply_linear`.
    pub fn is_derivation_leibniz(&self, d: &Matrix) -> Result<bool, AlgebraError> {
        self.check_operator(d)?;
        let n = self.dim();
        let basis: Vec<AlgebraElement> = (0..n).map(|i| self.basis_vector(i)).collect();
        let images: Vec<AlgebraElement> = basis
            .iter()
            .map(|e| self.apply_linear(d, e))
            .collect::<Result<_, _>>()?;
        for i in 0..n {
            for j in 0..n {
                let lhs = self.apply_linear(d, &self.multiply(&basis[i], &basis[j])?)?;
                let rhs = self
                    .multiply(&images[i], &basis[j])?
                    .add(&self.multiply(&basis[i], &images[j])?);
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Checks the entrywise derivation equations
    /// `w_jk d_ij + w_ik d_ji = 0` for `i != j` and all `k`, and
    /// `sum_k w_ik d_kj = 2 w_ij d_ii` for all `i, j`.
    pub fn is_derivation_conditions(&self, d: &Matrix) -> Result<bool, AlgebraError> {
        self.check_operator(d)?;
        let n = self.dim();
        let w = &self.structure;
        for i in 0..n {
            for j in (0..n).filter(|&j| j != i) {
                for k in 0..n {
                    let lhs = &(w.get(j, k) * d.get(i, j)) + &(w.get(i, k) * d.get(j, i));
                    if !lhs.is_zero() {
                        return Ok(false);
                    }
                }
            }
        }
        let two = self.field.two();
        for i in 0..n {
            for j in 0..n {
                let lhs = (0..n).fold(self.field.zero(), |acc, k| acc + w.get(i, k) * d.get(k, j));
                let rhs = &two * &(w.get(i, j) * d.get(i, i));
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::new(p).unwrap()
    }

    fn double_star(field: FieldSpec) -> EvolutionAlgebra {
        let g = Graph::parse("7 6\n1 3\n2 3\n3 4\n4 5\n4 6\n4 7\n").unwrap();
        EvolutionAlgebra::new(g, field)
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

    #[test]
    fn structure_is_adjacency() {
        let alg = double_star(gf(5));
        let w = alg.structure();
        for i in 0..7 {
            assert!(w.get(i, i).is_zero());
            for j in 0..7 {
                assert_eq!(w.get(i, j), w.get(j, i));
            }
        }
    }

    #[test]
    fn double_star_squares() {
        let f = FieldSpec::rationals();
        let alg = double_star(f);
        let e = |i| alg.basis_vector(i);
        let sq = |i| alg.multiply(&e(i), &e(i)).unwrap();
        assert_eq!(sq(2), AlgebraElement::from_ints(f, &[1, 1, 0, 1, 0, 0, 0]));
        assert_eq!(sq(0), sq(1));
        assert_eq!(sq(0), e(2));
        assert_eq!(sq(3), AlgebraElement::from_ints(f, &[0, 0, 1, 0, 1, 1, 1]));
        assert!(alg.multiply(&e(0), &e(1)).unwrap().is_zero());
    }

    #[test]
    fn square_of_sum_on_p2() {
        let f = gf(3);
        let alg = EvolutionAlgebra::new(Graph::path(2).unwrap(), f);
        let u = AlgebraElement::from_ints(f, &[1, 1]);
        assert_eq!(alg.multiply(&u, &u).unwrap(), u);
    }

    #[test]
    fn apply_linear_uses_rows() {
        let alg = double_star(gf(2));
        let d = double_star_gf2_derivation();
        let image = alg.apply_linear(&d, &alg.basis_vector(0)).unwrap();
        assert_eq!(
            image,
            AlgebraElement::from_ints(gf(2), &[1, 1, 0, 0, 0, 0, 0])
        );
        let id = Matrix::identity(gf(2), 7);
        assert_eq!(
            alg.apply_linear(&id, &alg.basis_vector(0)).unwrap(),
            alg.basis_vector(0)
        );
        let zero = Matrix::zeros(gf(2), 7, 7);
        assert!(alg
            .apply_linear(&zero, &alg.basis_vector(3))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn leibniz_examples() {
        let alg = double_star(gf(2));
        assert!(alg
            .is_derivation_leibniz(&Matrix::zeros(gf(2), 7, 7))
            .unwrap());
        assert!(alg
            .is_derivation_leibniz(&double_star_gf2_derivation())
            .unwrap());

        let p2 = EvolutionAlgebra::new(Graph::path(2).unwrap(), gf(5));
        assert!(!p2
            .is_derivation_leibniz(&Matrix::identity(gf(5), 2))
            .unwrap());
    }

    #[test]
    fn condition_examples() {
        let p2_3 = EvolutionAlgebra::new(Graph::path(2).unwrap(), gf(3));
        assert!(p2_3
            .is_derivation_conditions(&Matrix::diagonal(gf(3), &[1, 2]))
            .unwrap());
        let p2_5 = EvolutionAlgebra::new(Graph::path(2).unwrap(), gf(5));
        assert!(!p2_5
            .is_derivation_conditions(&Matrix::diagonal(gf(5), &[1, 2]))
            .unwrap());
        let k23 = EvolutionAlgebra::new(Graph::complete_bipartite(3, 2).unwrap(), gf(3));
        assert!(k23
            .is_derivation_conditions(&Matrix::diagonal(gf(3), &[2, 2, 2, 1, 1]))
            .unwrap());
    }

    #[test]
    fn mismatches_are_errors() {
        let alg = double_star(gf(2));
        assert!(matches!(
            alg.is_derivation_leibniz(&Matrix::zeros(gf(2), 6, 6)),
            Err(AlgebraError::DimensionMismatch { .. })
        ));
        assert!(matches!(
            alg.is_derivation_conditions(&Matrix::zeros(gf(3), 7, 7)),
            Err(AlgebraError::FieldMismatch { .. })
        ));
        let short = AlgebraElement::zero(gf(2), 3);
        assert!(alg.multiply(&short, &short).is_err());
    }
}
