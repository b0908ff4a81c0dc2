//! Symbolic λ-bracket calculus for vertex algebras and their N_K=1, N_K=2
//! supersymmetric versions.
//!
//! Elements are normally ordered polynomials in derived generators, brackets are
//! computed with sesquilinearity, skew-symmetry and the non-commutative Wick
//! formula, and all arithmetic is exact.

pub mod algebra;
pub mod bracket;
pub mod cli;
pub mod brst;
pub mod coeff;
pub mod elements;
pub mod error;
pub mod fields;
pub mod formal;
pub mod reduce;
pub mod render;
pub mod sample;
pub mod verify;

pub use algebra::{Algebra, AlgebraBuilder, Kind};
pub use coeff::{GaussianRational, Rational, Scalar};
pub use elements::{DerivedGen, Element, LambdaElement, RawExpr, TransOp};
pub use error::Error;
pub use formal::{MixedWord, Op, Sector, VarPoly};
