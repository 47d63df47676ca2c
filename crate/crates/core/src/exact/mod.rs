//! Exact scalars, polynomials, rational functions and linear algebra.

pub mod gcd;
pub mod linalg;
pub mod perm;
pub mod polynomial;
pub mod ratfunc;
pub mod rational;

pub use linalg::{EchelonBasis, Matrix};
pub use perm::Perm;
pub use polynomial::{Monomial, Polynomial};
pub use ratfunc::RationalFunction;
pub use rational::Rational;
