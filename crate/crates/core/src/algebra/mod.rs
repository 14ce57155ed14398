//! Free noncommutative and commutative polynomial algebras over [`Scalar`],
//! tensor vectors, relation families and truncated two-sided ideals.
//!
//! [`Scalar`]: crate::scalar::Scalar

mod cpoly;
mod family;
mod generators;
pub mod groebner;
mod ncpoly;
mod tensor;
mod truncation;
mod word;

pub use cpoly::{CPoly, Mono};
pub use family::{resolve_params, FamilyKind, RelationFamily};
pub use generators::GeneratorSet;
pub use ncpoly::NCPoly;
pub use tensor::{flatten, span, unflatten, TensorVector};
pub use truncation::{ideal_truncation, product_labels, products, scalar_terms, truncate, unit_witness, RelationTerms, TruncationDims};
pub use word::{Word, WordIndex};

use thiserror::Error;

use crate::linalg::LinalgError;
use crate::scalar::ScalarError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("mixed degrees: {0}")]
    MixedDegrees(String),
    #[error("degree error: {0}")]
    Degree(String),
    #[error("relation family: {0}")]
    Family(String),
    #[error("not polynomial: {0}")]
    NonPolynomial(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
