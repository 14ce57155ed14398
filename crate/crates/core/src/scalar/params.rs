use std::fmt;
use std::sync::Arc;

use once_cell::sync::Lazy;

use super::{Result, ScalarError};

/// Ordered list of formal parameter names. One of them may be flagged as the
/// imaginary unit, in which case it is reduced modulo `i^2 + 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ParamSet {
    names: Vec<String>,
    imaginary: Option<usize>,
}

static STANDARD: Lazy<Arc<ParamSet>> = Lazy::new(|| {
    Arc::new(
        ParamSet::with_imaginary(&["q", "h", "M", "c0", "c1", "J12", "J23", "J31", "i"], Some("i"))
            .expect("standard parameter names are distinct"),
    )
});

impl ParamSet {
    pub fn new(names: &[&str]) -> Result<Self> {
        Self::with_imaginary(names, None)
    }

    pub fn with_imaginary(names: &[&str], imaginary: Option<&str>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for n in names {
            if !seen.insert(*n) {
                return Err(ScalarError::DuplicateParam(n.to_string()));
            }
        }
        let imaginary = match imaginary {
            Some(i) => Some(names.iter().position(|n| *n == i).ok_or_else(|| ScalarError::UnknownParam(i.into()))?),
            None => None,
        };
        Ok(ParamSet { names: names.iter().map(|s| s.to_string()).collect(), imaginary })
    }

    /// The parameter set shared by every built-in construction:
    /// `q, h, M, c0, c1, J12, J23, J31` and the imaginary unit `i`.
    pub fn standard() -> Arc<ParamSet> {
        STANDARD.clone()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn imaginary(&self) -> Option<usize> {
        self.imaginary
    }
}

impl fmt::Debug for ParamSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParamSet({})", self.names.join(","))
    }
}

impl fmt::Display for ParamSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.names.join(","))
    }
}
