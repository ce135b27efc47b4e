//! Exact arithmetic: rationals, univariate polynomials over Q and F_p, and
//! dense linear algebra over any [`Field`] context.

pub mod field;
pub mod lll;
pub mod matrix;
pub mod modp;
pub mod poly;
pub mod polymodp;
pub mod rational;

pub use field::{Field, PrimeField, Rationals};
pub use matrix::{det_rational, mat_det, mat_inverse, mat_inverse_det, mat_mul, mat_solve, Matrix};
pub use poly::PolyQ;
pub use polymodp::PolyModP;
pub use rational::Rational;
