use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use super::field::Field;
use super::sparse::{get, scale, sub_scaled, SVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PivotRule {
    /// Simplest coefficient first, ties broken by smallest column.
    Simplest,
    /// Leftmost nonzero column; yields the canonical reduced row-echelon form.
    Leftmost,
}

#[derive(Clone, Debug)]
struct Row<F> {
    vec: SVec<F>,
    pivot: usize,
    combo: SVec<F>,
}

/// Outcome of inserting a vector.
#[derive(Clone, Debug)]
pub enum Inserted<F> {
    /// New pivot row at this index.
    Pivot(usize),
    /// The vector was dependent; the combination of input tags that vanishes.
    Dependent(SVec<F>),
}

/// Incremental echelon form. Every row has pivot coefficient 1 and vanishes
/// at the pivots of all earlier rows. Optionally records, per row, the
/// combination of tagged inputs it came from.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    dim: usize,
    rule: PivotRule,
    track: bool,
    rows: Vec<Row<F>>,
    pivot_row: HashMap<usize, usize>,
}

impl<F: Field> Echelon<F> {
    pub fn new(dim: usize) -> Self {
        Self::with_options(dim, PivotRule::Simplest, false)
    }

    pub fn with_options(dim: usize, rule: PivotRule, track: bool) -> Self {
        Echelon { dim, rule, track, rows: Vec::new(), pivot_row: HashMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> impl Iterator<Item = &SVec<F>> {
        self.rows.iter().map(|r| &r.vec)
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.pivot).collect()
    }

    pub fn combos(&self) -> impl Iterator<Item = &SVec<F>> {
        self.rows.iter().map(|r| &r.combo)
    }

    /// Reduces `v` against the current rows; returns the remainder and the
    /// accumulated combination (only meaningful when tracking).
    pub fn reduce_with(&self, mut v: SVec<F>, mut combo: SVec<F>) -> (SVec<F>, SVec<F>) {
        let mut heap: BinaryHeap<Reverse<usize>> = BinaryHeap::new();
        let mut queued = vec![false; self.rows.len()];
        for (c, _) in &v {
            if let Some(&r) = self.pivot_row.get(c) {
                if !queued[r] {
                    queued[r] = true;
                    heap.push(Reverse(r));
                }
            }
        }
        while let Some(Reverse(r)) = heap.pop() {
            let row = &self.rows[r];
            let Some(c) = get(&v, row.pivot).cloned() else { continue };
            v = sub_scaled(&v, &c, &row.vec);
            if self.track {
                combo = sub_scaled(&combo, &c, &row.combo);
            }
            for (col, _) in &row.vec {
                if let Some(&r2) = self.pivot_row.get(col) {
                    if !queued[r2] {
                        queued[r2] = true;
                        heap.push(Reverse(r2));
                    }
                }
            }
        }
        (v, combo)
    }

    pub fn reduce(&self, v: SVec<F>) -> SVec<F> {
        self.reduce_with(v, Vec::new()).0
    }

    pub fn contains(&self, v: &SVec<F>) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    /// Inserts `v` with tag `tag` (used only when tracking).
    pub fn insert_tagged(&mut self, v: SVec<F>, tag: usize) -> Inserted<F> {
        let combo = match (self.track, v.first()) {
            (true, Some((_, x))) => vec![(tag, x.one_like())],
            _ => Vec::new(),
        };
        self.insert_with(v, combo)
    }

    pub fn insert(&mut self, v: SVec<F>) -> bool {
        matches!(self.insert_with(v, Vec::new()), Inserted::Pivot(_))
    }

    fn insert_with(&mut self, v: SVec<F>, combo: SVec<F>) -> Inserted<F> {
        if let Some((i, _)) = v.last() {
            assert!(*i < self.dim, "index {i} outside ambient dimension {}", self.dim);
        }
        let (v, combo) = self.reduce_with(v, combo);
        if v.is_empty() {
            return Inserted::Dependent(combo);
        }
        let pos = match self.rule {
            PivotRule::Leftmost => 0,
            PivotRule::Simplest => {
                let mut best = 0;
                let mut best_c = v[0].1.complexity();
                for (k, (_, x)) in v.iter().enumerate().skip(1) {
                    if best_c == 0 {
                        break;
                    }
                    let c = x.complexity();
                    if c < best_c {
                        best = k;
                        best_c = c;
                    }
                }
                best
            }
        };
        let (pivot, p) = v[pos].clone();
        let (vec, combo) = if p.is_one() {
            (v, combo)
        } else {
            let inv = p.one_like().div(&p);
            (scale(&v, &inv), if self.track { scale(&combo, &inv) } else { combo })
        };
        let idx = self.rows.len();
        self.pivot_row.insert(pivot, idx);
        self.rows.push(Row { vec, pivot, combo });
        Inserted::Pivot(idx)
    }

    /// Fully reduced rows: each row vanishes at every other row's pivot.
    /// Returns `(pivot, row, combo)` in insertion order.
    pub fn fully_reduced(&self) -> Vec<(usize, SVec<F>, SVec<F>)> {
        let mut rows: Vec<Row<F>> = self.rows.clone();
        for j in (0..rows.len()).rev() {
            let (head, tail) = rows.split_at_mut(j);
            let rj = &tail[0];
            for ri in head.iter_mut() {
                if let Some(c) = get(&ri.vec, rj.pivot).cloned() {
                    ri.vec = sub_scaled(&ri.vec, &c, &rj.vec);
                    if self.track {
                        ri.combo = sub_scaled(&ri.combo, &c, &rj.combo);
                    }
                }
            }
        }
        rows.into_iter().map(|r| (r.pivot, r.vec, r.combo)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn r(a: i64) -> BigRational {
        BigRational::from_integer(a.into())
    }

    #[test]
    fn dependent_vectors_report_combination() {
        let mut e = Echelon::with_options(3, PivotRule::Simplest, true);
        e.insert_tagged(vec![(0, r(1)), (1, r(2))], 0);
        e.insert_tagged(vec![(1, r(1)), (2, r(1))], 1);
        match e.insert_tagged(vec![(0, r(1)), (1, r(3)), (2, r(1))], 2) {
            Inserted::Dependent(c) => {
                assert_eq!(c, vec![(0, r(-1)), (1, r(-1)), (2, r(1))]);
            }
            Inserted::Pivot(_) => panic!("expected dependence"),
        }
    }

    #[test]
    fn full_reduction_clears_other_pivots() {
        let mut e = Echelon::with_options(3, PivotRule::Leftmost, false);
        e.insert(vec![(0, r(1)), (1, r(1)), (2, r(1))]);
        e.insert(vec![(1, r(1)), (2, r(2))]);
        let rows = e.fully_reduced();
        assert_eq!(rows[0].1, vec![(0, r(1)), (2, r(-1))]);
        assert_eq!(rows[1].1, vec![(1, r(1)), (2, r(2))]);
    }
}
