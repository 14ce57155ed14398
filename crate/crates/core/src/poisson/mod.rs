//! Poisson brackets given by generator tables: Leibniz extension, Jacobi and
//! pencil compatibility, the shift operator, the bracket catalog and the
//! classical Yang-Baxter defect.

mod bracket;
mod catalog;
mod elliptic;
mod lie;
mod orbit;

pub use bracket::{distinct_triples, mixed_defects, mixed_jacobiator, BracketTable, TripleDefect};
pub use catalog::{
    by_name, elliptic, elliptic_as_printed, gl, has_diagonal_products, linear1, r_twisted, r_twisted_check, r_twisted_check_with, shift_and_linearize,
    sklyanin2, trace_shift, ShiftResult,
};
pub use elliptic::{elliptic_constraints, elliptic_solution};
pub use lie::{cybe_defect, kks, rmat, CybeDefect, LieData};
pub use orbit::{ideal_membership, rmatrix_bracket_orbit_check, OrbitReport};

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::scalar::ScalarError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PoissonError {
    #[error("generator mismatch: {0}")]
    GeneratorMismatch(String),
    #[error("not antisymmetric: {0}")]
    NotAntisymmetric(String),
    #[error("bracket file: {0}")]
    Parse(String),
    #[error("unknown catalog entry `{0}`")]
    UnknownBracket(String),
    #[error("not polynomial in h: {0}")]
    NonPolynomialInH(String),
    #[error("table is not quadratic: {0}")]
    NotQuadratic(String),
    #[error("Jacobi identity fails in the Lie algebra: {0}")]
    LieJacobi(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}
