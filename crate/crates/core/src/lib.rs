//! Exact computations on the model filiform Lie superalgebras `L(n,m)`:
//! rational linear algebra, the second cohomology group with adjoint
//! coefficients in degree zero, explicit cocycle families and formal
//! deformations.

pub mod bilinear;
pub mod cohomology;
pub mod conformance;
pub mod deformation;
pub mod error;
pub mod families;
pub mod linalg;
pub mod superalgebra;

pub use bilinear::{basis_elements, canonical_triples, compose, BilinearMap, Triple};
pub use error::{Error, Result};
pub use linalg::{Rational, RationalMatrix, Subspace};
pub use superalgebra::{BasisElement, NilData, Parity, SuperAlgebra, SuperVector};
