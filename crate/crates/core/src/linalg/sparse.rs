use super::field::Field;
use super::LinalgError;

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SVec<F> = Vec<(usize, F)>;

pub fn get<F>(v: &[(usize, F)], idx: usize) -> Option<&F> {
    v.binary_search_by_key(&idx, |e| e.0).ok().map(|p| &v[p].1)
}

/// Builds a sparse vector from unsorted entries, summing duplicates.
pub fn from_entries<F: Field>(mut entries: Vec<(usize, F)>) -> SVec<F> {
    entries.sort_by_key(|e| e.0);
    let mut out: SVec<F> = Vec::with_capacity(entries.len());
    for (i, c) in entries {
        match out.last_mut() {
            Some((j, acc)) if *j == i => *acc = acc.add(&c),
            _ => out.push((i, c)),
        }
    }
    out.retain(|e| !e.1.is_zero());
    out
}

/// `v - c * w`.
pub fn sub_scaled<F: Field>(v: &[(usize, F)], c: &F, w: &[(usize, F)]) -> SVec<F> {
    let mut out = Vec::with_capacity(v.len() + w.len());
    let (mut a, mut b) = (0, 0);
    while a < v.len() || b < w.len() {
        if b == w.len() || (a < v.len() && v[a].0 < w[b].0) {
            out.push(v[a].clone());
            a += 1;
        } else if a == v.len() || w[b].0 < v[a].0 {
            out.push((w[b].0, c.mul(&w[b].1).neg()));
            b += 1;
        } else {
            let x = v[a].1.sub(&c.mul(&w[b].1));
            if !x.is_zero() {
                out.push((v[a].0, x));
            }
            a += 1;
            b += 1;
        }
    }
    out
}

pub fn add<F: Field>(v: &[(usize, F)], w: &[(usize, F)]) -> SVec<F> {
    let mut out = Vec::with_capacity(v.len() + w.len());
    let (mut a, mut b) = (0, 0);
    while a < v.len() || b < w.len() {
        if b == w.len() || (a < v.len() && v[a].0 < w[b].0) {
            out.push(v[a].clone());
            a += 1;
        } else if a == v.len() || w[b].0 < v[a].0 {
            out.push(w[b].clone());
            b += 1;
        } else {
            let x = v[a].1.add(&w[b].1);
            if !x.is_zero() {
                out.push((v[a].0, x));
            }
            a += 1;
            b += 1;
        }
    }
    out
}

pub fn scale<F: Field>(v: &[(usize, F)], c: &F) -> SVec<F> {
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, x.mul(c))).collect()
}

pub fn dot<F: Field>(v: &[(usize, F)], w: &[(usize, F)], zero: &F) -> F {
    let mut acc = zero.clone();
    let (mut a, mut b) = (0, 0);
    while a < v.len() && b < w.len() {
        match v[a].0.cmp(&w[b].0) {
            std::cmp::Ordering::Less => a += 1,
            std::cmp::Ordering::Greater => b += 1,
            std::cmp::Ordering::Equal => {
                acc = acc.add(&v[a].1.mul(&w[b].1));
                a += 1;
                b += 1;
            }
        }
    }
    acc
}

pub fn equal<F: Field>(v: &[(usize, F)], w: &[(usize, F)]) -> bool {
    v.len() == w.len() && v.iter().zip(w).all(|(x, y)| x.0 == y.0 && x.1.same(&y.1))
}

/// Sparse row-major matrix.
#[derive(Clone, Debug)]
pub struct SMat<F> {
    nrows: usize,
    ncols: usize,
    rows: Vec<SVec<F>>,
}

impl<F: Field> SMat<F> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SMat { nrows, ncols, rows: vec![Vec::new(); nrows] }
    }

    pub fn identity(n: usize, one: &F) -> Self {
        SMat { nrows: n, ncols: n, rows: (0..n).map(|i| vec![(i, one.clone())]).collect() }
    }

    pub fn from_rows(ncols: usize, rows: Vec<SVec<F>>) -> Result<Self, LinalgError> {
        for r in &rows {
            if let Some((i, _)) = r.last() {
                if *i >= ncols {
                    return Err(LinalgError::IndexOutOfRange { index: *i, dim: ncols });
                }
            }
        }
        Ok(SMat { nrows: rows.len(), ncols, rows })
    }

    /// From `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets(nrows: usize, ncols: usize, triplets: Vec<(usize, usize, F)>) -> Result<Self, LinalgError> {
        let mut buckets: Vec<Vec<(usize, F)>> = vec![Vec::new(); nrows];
        for (r, c, x) in triplets {
            if r >= nrows || c >= ncols {
                return Err(LinalgError::Shape(format!("entry ({r},{c}) outside {nrows}x{ncols}")));
            }
            buckets[r].push((c, x));
        }
        Ok(SMat { nrows, ncols, rows: buckets.into_iter().map(from_entries).collect() })
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[SVec<F>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &SVec<F> {
        &self.rows[i]
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&F> {
        get(&self.rows[r], c)
    }

    pub fn triplets(&self) -> Vec<(usize, usize, F)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, x)| (r, *c, x.clone())))
            .collect()
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn transpose(&self) -> Self {
        let mut cols: Vec<SVec<F>> = vec![Vec::new(); self.ncols];
        for (r, row) in self.rows.iter().enumerate() {
            for (c, x) in row {
                cols[*c].push((r, x.clone()));
            }
        }
        SMat { nrows: self.ncols, ncols: self.nrows, rows: cols }
    }

    /// `M v` for a column vector `v`.
    pub fn apply(&self, v: &[(usize, F)]) -> Result<SVec<F>, LinalgError> {
        if let Some((i, _)) = v.last() {
            if *i >= self.ncols {
                return Err(LinalgError::IndexOutOfRange { index: *i, dim: self.ncols });
            }
        }
        let Some(zero) = v.first().map(|e| e.1.zero_like()) else {
            return Ok(Vec::new());
        };
        let mut out = Vec::new();
        for (r, row) in self.rows.iter().enumerate() {
            let x = dot(row, v, &zero);
            if !x.is_zero() {
                out.push((r, x));
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &SMat<F>) -> Result<SMat<F>, LinalgError> {
        if self.ncols != other.nrows {
            return Err(LinalgError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc: SVec<F> = Vec::new();
                for (k, x) in row {
                    acc = add(&acc, &scale(&other.rows[*k], x));
                }
                acc
            })
            .collect();
        Ok(SMat { nrows: self.nrows, ncols: other.ncols, rows })
    }

    pub fn add(&self, other: &SMat<F>) -> Result<SMat<F>, LinalgError> {
        self.check_same_shape(other)?;
        let rows = self.rows.iter().zip(&other.rows).map(|(a, b)| add(a, b)).collect();
        Ok(SMat { nrows: self.nrows, ncols: self.ncols, rows })
    }

    pub fn sub(&self, other: &SMat<F>) -> Result<SMat<F>, LinalgError> {
        self.check_same_shape(other)?;
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| match b.first() {
                Some((_, x)) => sub_scaled(a, &x.one_like(), b),
                None => a.clone(),
            })
            .collect();
        Ok(SMat { nrows: self.nrows, ncols: self.ncols, rows })
    }

    pub fn scale(&self, c: &F) -> SMat<F> {
        SMat { nrows: self.nrows, ncols: self.ncols, rows: self.rows.iter().map(|r| scale(r, c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    pub fn same(&self, other: &SMat<F>) -> bool {
        self.nrows == other.nrows && self.ncols == other.ncols && self.rows.iter().zip(&other.rows).all(|(a, b)| equal(a, b))
    }

    /// Kronecker product `self ⊗ other`, row index `i * other.nrows + k`.
    pub fn kron(&self, other: &SMat<F>) -> SMat<F> {
        let mut rows = Vec::with_capacity(self.nrows * other.nrows);
        for a in &self.rows {
            for b in &other.rows {
                let mut r = Vec::with_capacity(a.len() * b.len());
                for (i, x) in a {
                    for (j, y) in b {
                        r.push((i * other.ncols + j, x.mul(y)));
                    }
                }
                rows.push(r);
            }
        }
        SMat { nrows: self.nrows * other.nrows, ncols: self.ncols * other.ncols, rows }
    }

    pub fn map<G: Field, E>(&self, f: impl Fn(&F) -> Result<G, E>) -> Result<SMat<G>, E> {
        let mut rows = Vec::with_capacity(self.nrows);
        for r in &self.rows {
            let mut out = Vec::with_capacity(r.len());
            for (c, x) in r {
                let y = f(x)?;
                if !y.is_zero() {
                    out.push((*c, y));
                }
            }
            rows.push(out);
        }
        Ok(SMat { nrows: self.nrows, ncols: self.ncols, rows })
    }

    fn check_same_shape(&self, other: &SMat<F>) -> Result<(), LinalgError> {
        if self.nrows != other.nrows || self.ncols != other.ncols {
            return Err(LinalgError::Shape(format!(
                "{}x{} vs {}x{}",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        Ok(())
    }
}
