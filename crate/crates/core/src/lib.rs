//! Polynomial-deformed su(2) ladder algebras for two-dimensional oscillators.
//!
//! The crate builds the structure function `φ(J₀, H)` of a ladder triple
//! exactly, derives the commutator polynomial and Casimir operator, solves
//! for energy families with their degeneracies, and checks all of it against
//! independent numerical oracles: a truncated Fock space, a finite-difference
//! grid for the singular mode, and brute-force lattice enumeration.

pub mod error;
pub mod fock;
pub mod oracle;
pub mod poly;
pub mod reference;
pub mod report;
pub mod scalar;
pub mod spectrum;
pub mod system;

pub use error::{Error, Result};
pub use scalar::{AlgScalar, Rational, SurdField};
pub use system::{make_system, SystemKind, SystemSpec};
