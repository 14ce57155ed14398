//! U_q(sl2) weight modules, the q-Lie bracket on the adjoint module, braided
//! module structures on End(V_k), quantum traces and compatible conjugations.
//!
//! Conventions: `K E K^-1 = q^2 E`, `K F K^-1 = q^-2 F`,
//! `[E, F] = (K - K^-1)/(q - q^-1)`, `Δ(K) = K⊗K`, `Δ(E) = E⊗1 + K⊗E`,
//! `Δ(F) = F⊗K^-1 + 1⊗F`, `S(E) = -K^-1 E`, `S(F) = -F K`.

mod almost;
mod bracket;
mod conjugation;
mod decompose;
mod nu;
mod rep;
mod trace;

pub use almost::{almost_representation, braided_structure, c0_table, AlmostRep, BraidedStructure, C0Row};
pub use bracket::{printed_table, q_lie_bracket, QLieBracket, TensorComponent};
pub use conjugation::{
    classify_diagonal_conjugations, conjugation_check, general_conjugation_scan, odd_subalgebra_check, Conjugation, ConjugationReport, OddReport,
    ScanResult,
};
pub use decompose::{decompose, decompose_end, highest_weight_vectors, Component};
pub use nu::{classical_nu_data, first_type_ideal, quantum_nu_data};
pub use rep::{irrep, mat_of, q_integer, vec_of, WeightRep};
pub use trace::{quantum_trace, trace_invariance};

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::linalg::LinalgError;
use crate::quotient::QuotientError;
use crate::scalar::ScalarError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraidedError {
    #[error("defining relation `{0}` fails")]
    Relation(String),
    #[error("shape: {0}")]
    Shape(String),
    #[error("q-Lie bracket does not match the printed table: {0}")]
    TableMismatch(String),
    #[error("precondition fails: {0}")]
    Precondition(String),
    #[error("not equivariant: {0}")]
    NotEquivariant(String),
    #[error("Casimir image is not scalar: {0}")]
    NonScalarCasimir(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Quotient(#[from] QuotientError),
}
