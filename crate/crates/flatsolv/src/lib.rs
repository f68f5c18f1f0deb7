//! Exact integer linear algebra and the classification machinery for
//! 6-dimensional splittable flat solvmanifolds.
//!
//! The crate is organized around the pipeline:
//!
//! - [`intlinalg`]: exact matrices, Hermite/Smith normal forms, lattices,
//!   characteristic/minimal polynomials, finite-order detection;
//! - [`cyclotomic`]: totients, cyclotomic polynomials, companion matrices
//!   and the angle-multiset enumeration;
//! - [`similarity`]: resultants, Sylvester maps, bounded integral-similarity
//!   searches and (A,B)-equivalence orbits;
//! - [`solvgroups`]: the lattice groups `Σ = Z^k ⋉ Z^m`, their holonomy,
//!   commutator sublattices and abelianizations;
//! - [`classify`]: the dimension-6 classification tables and their
//!   verification against shipped fixtures.

pub mod classify;
pub mod cli;
pub mod cyclotomic;
pub mod error;
pub mod intlinalg;
pub mod similarity;
pub mod solvgroups;

pub use error::{Error, Result};
