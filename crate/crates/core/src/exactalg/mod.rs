//! Exact scalars, polynomials and fraction-free linear algebra.

pub mod expr;
pub mod matrix;
pub mod multipoly;
pub mod pfaffian;
pub mod polymatrix;
pub mod rational;
pub mod smith;
pub mod unipoly;

pub use matrix::RatMatrix;
pub use multipoly::{Monomial, MultiPoly};
pub use pfaffian::{pfaffian_poly, pfaffian_rat};
pub use polymatrix::PolyMatrix;
pub use rational::{format_rational, parse_rational, rat, ratio, Rational};
pub use smith::smith_form;
pub use unipoly::{rational_roots, squarefree_factor, uni_gcd, UniPoly};
