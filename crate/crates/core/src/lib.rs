//! Exact computations with the Lawrence–Krammer representation of the BMW
//! algebra of type A_{n−1}.
//!
//! The crate is layered bottom-up:
//!
//! * [`fields`]: exact scalars (Q, Q(r), cyclotomic fields).
//! * [`linalg`]: dense matrices and canonical subspaces over any [`fields::Field`].
//! * [`lkrep`]: the matrices ν_i, ν_i⁻¹, ν(e_i), ν(C_ij) and their defining relations.
//! * [`invariant`]: the kernel intersection K(n) and the explicit spanning vectors
//!   of its invariant subspaces.
//! * [`specht`]: partition combinatorics and the identification of invariant
//!   subspaces with Specht modules.
//! * [`suite`] and [`report`]: runnable verification suites and their
//!   deterministic serialization.

pub mod fields;
pub mod invariant;
pub mod linalg;
pub mod lkrep;
pub mod report;
pub mod specht;
pub mod suite;

pub use fields::{Field, FieldDescriptor, FieldError, RatFunc, Rational};
pub use linalg::{LinalgError, Matrix, SubspaceBasis};
