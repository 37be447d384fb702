//! Exact derivation spaces of evolution algebras attached to graphs.
//!
//! A finite simple graph `G` on `n` vertices defines a commutative algebra
//! with basis `e_1..e_n`, `e_i e_j = 0` for `i != j` and `e_i^2` the sum of
//! the neighbours of `i`. This crate computes the space of derivations of
//! that algebra over `Q` or `GF(p)` exactly, and checks the result against
//! the known structure theory (twin blocks, skew blocks, and dimension
//! forecasts that depend on the characteristic).

pub mod algebra;
pub mod field;
pub mod graph;
pub mod solver;
pub mod theory;

pub use algebra::{AlgebraElement, AlgebraError, EvolutionAlgebra};
pub use field::{FieldError, FieldSpec, Matrix, Scalar};
pub use graph::{Graph, GraphError, ParseErrorKind, TwinPartition};
pub use solver::{
    build_system, derivation_space, derivation_space_with, membership, DerivationSpace,
    SolverConfig, SolverError, DEFAULT_MAX_N,
};
pub use theory::{Prediction, Rule, TheoryError};
