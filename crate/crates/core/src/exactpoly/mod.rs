//! Exact rational polynomials in many variables.
//!
//! A [`VariableRegistry`] fixes the variable universe and its priority; a
//! [`MonomialOrder`] pairs it with `lex` or `degrevlex`. [`Polynomial`]s are
//! sparse maps from [`Monomial`] to nonzero [`Rational`]. The [`text`] module
//! owns the canonical printed form and [`quotient`] evaluates polynomials in
//! `ℚ[t]/(μ)`.

mod monomial;
mod order;
mod polynomial;
pub mod quotient;
mod registry;
pub mod text;

use num_bigint::BigInt;
use thiserror::Error;

pub use monomial::Monomial;
pub use order::{MonomialOrder, OrderKind};
pub use polynomial::{DegreeReport, Polynomial};
pub use quotient::{QuotientAlgebra, QuotientElement, QuotientPoint};
pub use registry::VariableRegistry;
pub(crate) use registry::is_identifier;

pub type Rational = num_rational::BigRational;

/// `p/q` as a [`Rational`].
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("invalid variable name `{0}`")]
    BadVariableName(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("unknown monomial order `{0}`")]
    UnknownOrder(String),
    #[error("variable index {index} out of range for registry of {len}")]
    VariableOutOfRange { index: usize, len: usize },
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("no value assigned to variable `{0}`")]
    Unassigned(String),
    #[error("minimal polynomial must be monic of degree at least 1")]
    BadMinimalPolynomial,
}
