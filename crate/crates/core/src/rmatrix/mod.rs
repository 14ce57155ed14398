//! Hecke-type operators, the doubled operator on `W = V (x) V*`, QYBE and
//! Hecke checks, the spans `Im/Ker(S_W - id)` and the quantum relation
//! families.

mod families;
mod operator;
mod spans;

pub use families::{
    elliptic_classical_limit, elliptic_quantum, family_by_name, i_minus, i_plus, j_hq, re, ClassicalLimitRow,
};
pub use operator::{check_hecke, check_qybe, flip, hecke_s, qybe_at_points, qybe_defect, s_w, YBOperator};
pub use spans::{iq_spans, iq_spans_at, quadratic_poly, quadratic_vector, IqSpans};

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::linalg::LinalgError;
use crate::poisson::PoissonError;
use crate::scalar::ScalarError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RMatrixError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("operator is not invertible{0}")]
    NotInvertible(String),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("not a quadratic element: {0}")]
    NotQuadratic(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Poisson(#[from] PoissonError),
}
