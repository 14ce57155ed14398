use super::echelon::{Echelon, Inserted, PivotRule};
use super::field::Field;
use super::sparse::{SMat, SVec};
use super::LinalgError;

/// Subspace of `F^ambient`, held in echelon form.
#[derive(Clone, Debug)]
pub struct Subspace<F> {
    ech: Echelon<F>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ech: Echelon::new(ambient) }
    }

    pub fn span<I: IntoIterator<Item = SVec<F>>>(ambient: usize, vectors: I) -> Result<Self, LinalgError> {
        let mut s = Self::zero(ambient);
        for v in vectors {
            s.push(v)?;
        }
        Ok(s)
    }

    /// Adds a vector; returns whether the dimension grew.
    pub fn push(&mut self, v: SVec<F>) -> Result<bool, LinalgError> {
        if let Some((i, _)) = v.last() {
            if *i >= self.ambient() {
                return Err(LinalgError::IndexOutOfRange { index: *i, dim: self.ambient() });
            }
        }
        Ok(self.ech.insert(v))
    }

    pub fn ambient(&self) -> usize {
        self.ech.dim()
    }

    pub fn dim(&self) -> usize {
        self.ech.rank()
    }

    pub fn basis(&self) -> Vec<SVec<F>> {
        self.ech.rows().cloned().collect()
    }

    pub fn contains(&self, v: &SVec<F>) -> bool {
        self.ech.contains(v)
    }

    /// Reduced row-echelon basis with leftmost pivots, sorted by pivot.
    /// Independent of how the subspace was generated.
    pub fn canonical_basis(&self) -> Vec<SVec<F>> {
        let mut e = Echelon::with_options(self.ambient(), PivotRule::Leftmost, false);
        for r in self.ech.rows() {
            e.insert(r.clone());
        }
        let mut rows = e.fully_reduced();
        rows.sort_by_key(|r| r.0);
        rows.into_iter().map(|r| r.1).collect()
    }

    fn check(&self, other: &Subspace<F>) -> Result<(), LinalgError> {
        if self.ambient() != other.ambient() {
            return Err(LinalgError::AmbientMismatch(self.ambient(), other.ambient()));
        }
        Ok(())
    }

    pub fn is_subspace_of(&self, other: &Subspace<F>) -> Result<bool, LinalgError> {
        self.check(other)?;
        Ok(self.dim() <= other.dim() && self.ech.rows().all(|r| other.contains(r)))
    }

    pub fn equals(&self, other: &Subspace<F>) -> Result<bool, LinalgError> {
        self.check(other)?;
        Ok(self.dim() == other.dim() && self.ech.rows().all(|r| other.contains(r)))
    }

    pub fn sum(&self, other: &Subspace<F>) -> Result<Subspace<F>, LinalgError> {
        self.check(other)?;
        let mut s = self.clone();
        for r in other.ech.rows() {
            s.ech.insert(r.clone());
        }
        Ok(s)
    }

    /// Intersection: vectors of `other` that reduce to zero against `self`,
    /// recovered through the tracked combination of `other`'s basis.
    pub fn intersect(&self, other: &Subspace<F>) -> Result<Subspace<F>, LinalgError> {
        self.check(other)?;
        let mut e = Echelon::with_options(self.ambient(), PivotRule::Simplest, true);
        // Rows of `self` carry an empty combination.
        for r in self.ech.rows() {
            e.insert(r.clone());
        }
        let basis: Vec<SVec<F>> = other.basis();
        let mut out = Subspace::zero(self.ambient());
        for (j, b) in basis.iter().enumerate() {
            if let Inserted::Dependent(combo) = e.insert_tagged(b.clone(), j) {
                let mut v: SVec<F> = Vec::new();
                for (k, c) in &combo {
                    v = super::sparse::add(&v, &super::sparse::scale(&basis[*k], c));
                }
                out.ech.insert(v);
            }
        }
        Ok(out)
    }
}

/// Kernel of `m` acting on column vectors.
pub fn kernel<F: Field>(m: &SMat<F>, one: &F) -> Subspace<F> {
    let mut e = Echelon::with_options(m.ncols(), PivotRule::Simplest, false);
    for r in m.rows() {
        e.insert(r.clone());
    }
    let rows = e.fully_reduced();
    let mut is_pivot = vec![false; m.ncols()];
    for (p, _, _) in &rows {
        is_pivot[*p] = true;
    }
    // Column -> list of (pivot, coefficient) entries of the reduced rows.
    let mut by_col: Vec<Vec<(usize, F)>> = vec![Vec::new(); m.ncols()];
    for (p, row, _) in &rows {
        for (c, x) in row {
            if *c != *p {
                by_col[*c].push((*p, x.neg()));
            }
        }
    }
    let mut out = Subspace::zero(m.ncols());
    for f in 0..m.ncols() {
        if is_pivot[f] {
            continue;
        }
        let mut v = std::mem::take(&mut by_col[f]);
        v.push((f, one.clone()));
        v.sort_by_key(|e| e.0);
        out.ech.insert(v);
    }
    out
}

/// Column span of `m`.
pub fn image<F: Field>(m: &SMat<F>) -> Subspace<F> {
    let t = m.transpose();
    let mut out = Subspace::zero(m.nrows());
    for r in t.rows() {
        out.ech.insert(r.clone());
    }
    out
}

pub fn rank<F: Field>(m: &SMat<F>) -> usize {
    let mut e = Echelon::new(m.ncols());
    for r in m.rows() {
        e.insert(r.clone());
    }
    e.rank()
}

/// Inverse of a square matrix, or `Singular`.
pub fn inverse<F: Field>(m: &SMat<F>) -> Result<SMat<F>, LinalgError> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(LinalgError::Shape(format!("{}x{} is not square", n, m.ncols())));
    }
    let mut e = Echelon::with_options(n, PivotRule::Simplest, true);
    for (i, r) in m.rows().iter().enumerate() {
        if let Inserted::Dependent(_) = e.insert_tagged(r.clone(), i) {
            return Err(LinalgError::Singular);
        }
    }
    let mut rows: Vec<SVec<F>> = vec![Vec::new(); n];
    for (p, _, combo) in e.fully_reduced() {
        rows[p] = combo;
    }
    SMat::from_rows(n, rows)
}

/// Solves `sum_j x_j * columns[j] = target`, if possible.
pub fn solve_combination<F: Field>(ambient: usize, columns: &[SVec<F>], target: &SVec<F>) -> Option<SVec<F>> {
    let mut e = Echelon::with_options(ambient, PivotRule::Simplest, true);
    for (j, c) in columns.iter().enumerate() {
        e.insert_tagged(c.clone(), j);
    }
    let (rest, combo) = e.reduce_with(target.clone(), Vec::new());
    if !rest.is_empty() {
        return None;
    }
    // target - sum(combo) reduced to zero with combo accumulated negatively.
    Some(combo.into_iter().map(|(j, x)| (j, x.neg())).collect())
}
