//! Exact harmonic-product algebra for q-analogues and omega-deformations of
//! multiple zeta values, with exact and floating-point identity verifiers.

pub mod algebra;
pub mod algseries;
pub mod arith;
pub mod combinatorics;
pub mod error;
pub mod identity;
pub mod omega;
pub mod qeval;
pub mod report;
pub mod suite;

pub use error::{Error, Result};
pub use report::{Status, Tolerance, VerificationReport};
