//! Exact analysis of skew-symmetric matrix pencils and polynomial Poisson
//! pencils: Jordan-Kronecker invariants, core and mantle subspaces, linear
//! bi-Poisson reduction, bi-Lagrangian completion, and symbolic checks on
//! Poisson brackets (Schouten compatibility, Casimirs, bi-involution).

#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod error;
pub mod exactalg;
pub mod io;
pub mod pencil;
pub mod poisson;
pub mod reduction;
pub mod subspaces;

pub use error::{JkError, Result};
