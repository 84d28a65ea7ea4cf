//! Two-variable Jacobi polynomials on the triangle and the operator algebra
//! behind them.
//!
//! The crate builds up from terminating hypergeometric kernels that run both
//! in `f64` and in exact `BigRational` arithmetic:
//!
//! * univariate Jacobi polynomials on [0,1] and their bispectral operators,
//! * Racah polynomials on a finite lattice with weights, norms and dualities,
//! * the triangle basis J_{n,k}(x,y), its reflected/rotated siblings, and the
//!   Racah-valued connection coefficients between them,
//! * an exact operator-algebra engine (differential and lattice realizations)
//!   that certifies the defining relations, the rank-one subalgebra
//!   embeddings, intertwining and hermiticity,
//! * Gauss–Jacobi and collapsed-square triangle quadrature.

pub mod algebra;
pub mod connection;
pub mod diffop;
pub mod error;
pub mod hyper;
pub mod jacobi1d;
pub mod lattice;
pub mod poly;
pub mod quadrature;
pub mod racah;
pub mod report;
pub mod scalar;
pub mod triangle;
pub mod verify;

pub use error::KernelError;
pub use scalar::{Rat, Scalar};
