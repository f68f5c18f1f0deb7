//! Exact integer linear algebra kernel.
//!
//! Everything in this module is exact: matrices and polynomials carry
//! arbitrary-precision integers and no floating point is used anywhere.

pub mod charpoly;
pub mod finab;
pub mod hnf;
pub mod lattice;
pub mod matrix;
pub mod poly;
pub mod snf;

pub use charpoly::{charpoly, krylov_minpoly, matrix_order, minpoly, MatrixOrder};
pub use finab::FinAbGroup;
pub use hnf::{col_hermite, rank, row_hermite};
pub use lattice::{cokernel, image_lattice, image_lattice_saturated, kernel_lattice, LatticeBasis};
pub use matrix::IntMatrix;
pub use poly::IntPoly;
pub use snf::{invariant_factors, snf, Snf};
