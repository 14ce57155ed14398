//! Verification suites, JSON reports and report diffs behind `qpencil`.

pub mod config;
pub mod diff;
pub mod report;
pub mod suites;

use std::path::PathBuf;

use thiserror::Error;

pub use config::{ConfigFile, ModeKind, RunConfig, Suite};
pub use diff::{diff_reports, DiffEntry};
pub use report::{Check, Report, Verdict};
pub use suites::run_suite;

#[derive(Debug, Error)]
pub enum RunError {
    #[error("unknown suite `{0}` (expected one of: {names})", names = Suite::NAMES.join(", "))]
    UnknownSuite(String),
    #[error("malformed config: {0}")]
    Config(String),
    #[error("{path}: {1}", path = .0.display())]
    File(PathBuf, String),
    #[error("reports belong to different suites: `{0}` and `{1}`")]
    SuiteMismatch(String, String),
}
