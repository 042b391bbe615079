//! Exact sparse multivariate polynomials in the `l` (edge) and `w`
//! (error covariance) parameters, and rational functions over them.

pub mod modp;
mod monomial;
mod polynomial;

pub use monomial::{Monomial, VarKind, Variable};
pub use polynomial::{Assignment, EvalError, PolyBuilder, Polynomial, Rational, RationalFunction};

pub(crate) use polynomial::write_coefficient_term;
