use crate::linalg::{Echelon, Field, PivotRule, SVec, Subspace};
use crate::scalar::Scalar;

use super::word::{Word, WordIndex};
use super::{AlgebraError, FamilyKind, RelationFamily};

/// A relation as a list of `(word, coefficient)` over some field.
pub type RelationTerms<F> = Vec<(Word, F)>;

/// `x * r * y` for every relation `r` and words `x`, `y` with total degree
/// at most `d`, grouped by total degree. Returns `(degree, relation, vector)`.
pub fn products<F: Field>(rels: &[RelationTerms<F>], index: &WordIndex) -> Vec<(usize, usize, SVec<F>)> {
    let d = index.max_degree();
    let mut out = Vec::new();
    for e in 0..=d {
        for (k, r) in rels.iter().enumerate() {
            let Some(top) = r.iter().map(|(w, _)| w.len()).max() else { continue };
            if top > e {
                continue;
            }
            let free = e - top;
            for a in 0..=free {
                for x in index.words_of_degree(a) {
                    for y in index.words_of_degree(free - a) {
                        let mut v: SVec<F> = r.iter().map(|(w, c)| (index.index(&Word::concat3(&x, w, &y)), c.clone())).collect();
                        v.sort_by_key(|t| t.0);
                        out.push((e, k, v));
                    }
                }
            }
        }
    }
    out
}

/// Dimension data of a truncated two-sided ideal.
#[derive(Clone, Debug)]
pub struct TruncationDims {
    pub degree: usize,
    /// Rank gained at each total degree `0..=degree`.
    pub added: Vec<usize>,
    /// Whether the unit lies in the truncated ideal.
    pub collapsed: bool,
}

impl TruncationDims {
    pub fn total(&self) -> usize {
        self.added.iter().sum()
    }
}

/// Incrementally echelonizes all products; returns the subspace and the
/// rank added per degree.
pub fn truncate<F: Field>(rels: &[RelationTerms<F>], base: usize, d: usize) -> (Subspace<F>, TruncationDims) {
    let index = WordIndex::new(base, d);
    let mut s = Subspace::zero(index.dim());
    let mut added = vec![0; d + 1];
    for (e, _, v) in products(rels, &index) {
        if s.push(v).expect("indices inside the ambient") {
            added[e] += 1;
        }
    }
    let collapsed = rels
        .iter()
        .flat_map(|r| r.first())
        .next()
        .map(|(_, c)| s.contains(&vec![(0, c.one_like())]))
        .unwrap_or(false);
    (s, TruncationDims { degree: d, added, collapsed })
}

/// Expresses the unit as a combination of products, if it is one. Returns
/// `(relation, left word, right word, coefficient)` entries.
pub fn unit_witness<F: Field>(rels: &[RelationTerms<F>], base: usize, d: usize) -> Option<Vec<(usize, Word, Word, F)>> {
    let index = WordIndex::new(base, d);
    let prods = products(rels, &index);
    let mut e = Echelon::with_options(index.dim(), PivotRule::Simplest, true);
    for (t, (_, _, v)) in prods.iter().enumerate() {
        e.insert_tagged(v.clone(), t);
    }
    let one = rels.iter().flat_map(|r| r.first()).next()?.1.one_like();
    let (rest, combo) = e.reduce_with(vec![(0, one)], Vec::new());
    if !rest.is_empty() {
        return None;
    }
    let labels = product_labels(rels, &index);
    Some(
        combo
            .into_iter()
            .map(|(t, c)| {
                let (k, x, y) = labels[t].clone();
                (k, x, y, c.neg())
            })
            .collect(),
    )
}

/// `(relation, x, y)` for each product, in the order of [`products`].
pub fn product_labels<F: Field>(rels: &[RelationTerms<F>], index: &WordIndex) -> Vec<(usize, Word, Word)> {
    let d = index.max_degree();
    let mut out = Vec::new();
    for e in 0..=d {
        for (k, r) in rels.iter().enumerate() {
            let Some(top) = r.iter().map(|(w, _)| w.len()).max() else { continue };
            if top > e {
                continue;
            }
            let free = e - top;
            for a in 0..=free {
                for x in index.words_of_degree(a) {
                    for y in index.words_of_degree(free - a) {
                        out.push((k, x.clone(), y));
                    }
                }
            }
        }
    }
    out
}

pub fn scalar_terms(family: &RelationFamily) -> Vec<RelationTerms<Scalar>> {
    family.relations.iter().map(|r| r.terms().map(|(w, c)| (w.clone(), c.clone())).collect()).collect()
}

/// Span of the products `x r y` of total degree at most `d`, inside the
/// words of length at most `d`. Filtered tails are kept.
pub fn ideal_truncation(family: &RelationFamily, d: usize) -> Result<(Subspace<Scalar>, TruncationDims), AlgebraError> {
    let top = family.relations.iter().filter_map(|r| r.degree()).max().unwrap_or(0);
    if d < 2 || d < top {
        return Err(AlgebraError::Degree(format!("truncation degree {d} below relation degree {}", top.max(2))));
    }
    if family.kind == FamilyKind::Graded && family.relations.iter().any(|r| !r.is_homogeneous()) {
        return Err(AlgebraError::Family(format!("{} is tagged graded but has tails", family.name)));
    }
    Ok(truncate(&scalar_terms(family), family.gens.len(), d))
}
