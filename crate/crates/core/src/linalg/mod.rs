//! Exact rational linear algebra: scalars, sparse matrices, reduced row
//! echelon form, null spaces and affine solution sets.
//!
//! Nothing here touches floating point. Every result is exact and
//! deterministic; the reduced echelon form is unique, so pivot selection
//! heuristics never leak into outputs.

mod matrix;
mod rational;

pub use matrix::{
    dense_to_sparse, inverse, kernel_basis, rank, rref, solve_affine, sparse_to_dense, AffineSolution, RationalMatrix,
    SparseRow, Subspace,
};
pub use rational::Rational;
