//! Exact sparse linear algebra over any [`Field`]: echelon forms, subspaces,
//! kernels, images, intersections, and a fraction-free rank over integer
//! polynomials used as an independent cross-check.

mod bareiss;
mod echelon;
mod field;
mod sampling;
pub mod sparse;
mod subspace;

pub use bareiss::{bareiss_rank, clear_denominators};
pub use echelon::{Echelon, Inserted, PivotRule};
pub use field::Field;
pub use sampling::{format_point, PointSampler};
pub use sparse::{SMat, SVec};
pub use subspace::{image, inverse, kernel, rank, solve_combination, Subspace};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("index {index} outside ambient dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("ambient dimensions differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is singular")]
    Singular,
}
