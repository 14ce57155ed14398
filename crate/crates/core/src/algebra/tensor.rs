use crate::linalg::{SVec, Subspace};
use crate::scalar::Scalar;

use super::AlgebraError;

/// Element of the `degree`-fold tensor power of a `base`-dimensional space.
/// Tuples are flattened base-`base`, first factor most significant.
#[derive(Clone, Debug)]
pub struct TensorVector {
    base: usize,
    degree: usize,
    entries: SVec<Scalar>,
}

impl TensorVector {
    pub fn zero(base: usize, degree: usize) -> Self {
        TensorVector { base, degree, entries: Vec::new() }
    }

    pub fn from_entries(base: usize, degree: usize, entries: Vec<(Vec<usize>, Scalar)>) -> Result<Self, AlgebraError> {
        let mut flat = Vec::with_capacity(entries.len());
        for (t, c) in entries {
            if t.len() != degree {
                return Err(AlgebraError::MixedDegrees(format!("tuple of length {} in degree {degree}", t.len())));
            }
            if t.iter().any(|&i| i >= base) {
                return Err(AlgebraError::Parse(format!("index outside basis of size {base}")));
            }
            flat.push((flatten(base, &t), c));
        }
        Ok(TensorVector { base, degree, entries: crate::linalg::sparse::from_entries(flat) })
    }

    pub fn from_flat(base: usize, degree: usize, entries: SVec<Scalar>) -> Self {
        TensorVector { base, degree, entries }
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn ambient_dim(&self) -> usize {
        self.base.pow(self.degree as u32)
    }

    pub fn entries(&self) -> &SVec<Scalar> {
        &self.entries
    }

    pub fn tuple_entries(&self) -> Vec<(Vec<usize>, Scalar)> {
        self.entries.iter().map(|(i, c)| (unflatten(self.base, self.degree, *i), c.clone())).collect()
    }
}

pub fn flatten(base: usize, t: &[usize]) -> usize {
    t.iter().fold(0, |acc, &i| acc * base + i)
}

pub fn unflatten(base: usize, degree: usize, mut k: usize) -> Vec<usize> {
    let mut t = vec![0; degree];
    for slot in t.iter_mut().rev() {
        *slot = k % base;
        k /= base;
    }
    t
}

/// Echelonized span of tensor vectors of a common degree and base.
pub fn span(vectors: &[TensorVector]) -> Result<Subspace<Scalar>, AlgebraError> {
    let Some(first) = vectors.first() else {
        return Ok(Subspace::zero(0));
    };
    for v in vectors {
        if v.degree != first.degree || v.base != first.base {
            return Err(AlgebraError::MixedDegrees(format!(
                "degree {} over {} vs degree {} over {}",
                v.degree, v.base, first.degree, first.base
            )));
        }
    }
    Ok(Subspace::span(first.ambient_dim(), vectors.iter().map(|v| v.entries.clone()))?)
}
