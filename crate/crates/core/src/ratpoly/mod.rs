//! Exact rationals and multivariate polynomials over named parameters.
//!
//! Every symbolic quantity in the crate (structure constants, Ricci entries,
//! obstruction generators) is a [`Polynomial`] with [`Rational`] coefficients.
//! Numeric work happens by evaluating into a [`Field`]: plain rationals,
//! the real quadratic fields `Q(sqrt d)` ([`Real`]), or `f64`.

mod monomial;
mod parse;
mod polynomial;
mod quadratic;
mod scalar;

use thiserror::Error;

pub use monomial::Monomial;
pub use parse::{parse_polynomial, parse_rational};
pub use polynomial::Polynomial;
pub use quadratic::Real;
pub use scalar::{Field, Scalar};

/// Arbitrary precision rational in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Errors raised by polynomial evaluation, normalization and parsing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("missing value for parameter `{0}`")]
    MissingParameter(String),
    #[error("cannot normalize the zero polynomial")]
    ZeroPolynomial,
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("radicand of {0} is too large for exact square roots")]
    RadicandTooLarge(String),
    #[error("square root of negative value {0}")]
    NegativeSquare(String),
    #[error("cannot mix square roots of {0} and {1} in one sample")]
    MixedRadicands(u64, u64),
}

/// Canonical spelling of the soliton constant lambda_0.
pub const LAMBDA0: &str = "lambda0";
/// Canonical spelling of the soliton constant c.
pub const SOLITON_C: &str = "c";

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Shorthand for `n / d`.
///
/// Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
