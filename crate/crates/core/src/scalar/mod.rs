//! Exact arithmetic in the rational function field over a declared set of
//! formal parameters.
//!
//! A [`Scalar`] is a quotient of two integer polynomials. Negative powers of
//! a parameter live in the denominator; there is no separate Laurent type.
//! Equality is decided by cross-multiplication, so soundness never depends
//! on how well fractions were reduced.

mod params;
mod parse;
pub mod poly;
mod value;

pub use params::ParamSet;
pub use parse::{parse_expression, Expr, ExprError};
pub use poly::{grlex_cmp, Poly};
pub use value::{rational_to_string, Assignment, Scalar};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parameter sets differ: [{0}] vs [{1}]")]
    ParamMismatch(String, String),
    #[error("duplicate parameter name `{0}`")]
    DuplicateParam(String),
    #[error("unknown parameter `{0}`")]
    UnknownParam(String),
    #[error("denominator vanishes at {0}")]
    Pole(String),
    #[error("assignment does not cover parameter `{0}`")]
    Unassigned(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, ScalarError>;
