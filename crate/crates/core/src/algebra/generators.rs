use std::fmt;
use std::sync::Arc;

use super::AlgebraError;

/// Ordered generator names. The order fixes monomial orders and the index
/// conventions of matrices acting on the span of the generators.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GeneratorSet {
    names: Vec<String>,
}

impl GeneratorSet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Arc<Self>, AlgebraError> {
        let mut out: Vec<String> = Vec::with_capacity(names.len());
        for n in names {
            let n = n.as_ref().trim().to_string();
            if n.is_empty() {
                return Err(AlgebraError::Parse("empty generator name".into()));
            }
            if out.contains(&n) {
                return Err(AlgebraError::DuplicateGenerator(n));
            }
            out.push(n);
        }
        Ok(Arc::new(GeneratorSet { names: out }))
    }

    /// Matrix-entry generators `a_i^j`, row index `i` lower, column `j` upper,
    /// ordered row-major: `a_i^j` has index `(i-1)*n + (j-1)`.
    pub fn matrix(n: usize) -> Arc<Self> {
        Self::matrix_named("a", n)
    }

    pub fn matrix_named(symbol: &str, n: usize) -> Arc<Self> {
        let mut names = Vec::with_capacity(n * n);
        for i in 1..=n {
            for j in 1..=n {
                names.push(format!("{symbol}_{i}^{j}"));
            }
        }
        Self::new(&names).expect("distinct names")
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

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

impl fmt::Debug for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GeneratorSet({})", self.names.join(","))
    }
}

impl fmt::Display for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.names.join(", "))
    }
}
