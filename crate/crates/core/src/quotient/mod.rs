//! Truncated quotients of free algebras: Hilbert functions, flatness
//! certificates and the conditions for filtered deformations.

mod hilbert;
mod pbw;

pub use hilbert::{flatness_verdict, hilbert, sample_points, sym_dims, Flatness, Hilbert, ModeRequest, QuotientPresentation};
pub use pbw::{pbw_nu_check, variety_nonempty, NuCondition, NuData, PbwReport};

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::linalg::LinalgError;
use crate::scalar::ScalarError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuotientError {
    #[error("degree: {0}")]
    Degree(String),
    #[error("cannot specialize: {0}")]
    NotSpecializable(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
