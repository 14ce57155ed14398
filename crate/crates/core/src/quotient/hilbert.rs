use std::fmt::Display;

use num_rational::BigRational;
use num_traits::Zero;

use crate::algebra::{product_labels, products, scalar_terms, truncate, unit_witness, FamilyKind, NCPoly, RelationFamily, RelationTerms, WordIndex};
use crate::linalg::{format_point, Echelon, Field, PointSampler, SVec, Subspace};
use crate::mode::Mode;
use crate::scalar::Assignment;

use super::QuotientError;

/// `T(V) / (relations)` truncated at degree `degree`.
#[derive(Clone, Debug)]
pub struct QuotientPresentation {
    pub family: RelationFamily,
    pub degree: usize,
}

impl QuotientPresentation {
    pub fn new(family: RelationFamily, degree: usize) -> Result<Self, QuotientError> {
        let top = family.relations.iter().filter_map(|r| r.degree()).max().unwrap_or(2);
        if degree < 2 || degree < top {
            return Err(QuotientError::Degree(format!("truncation degree {degree} must be at least {}", top.max(2))));
        }
        Ok(QuotientPresentation { family, degree })
    }

    pub fn cumulative(&self) -> bool {
        self.family.kind == FamilyKind::Filtered
    }
}

/// How to evaluate coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModeRequest {
    Symbolic,
    Probabilistic { seed: u64, points: usize },
}

/// Quotient dimensions per degree: graded pieces, or for filtered families
/// the images of words of length at most `d`.
#[derive(Clone, Debug)]
pub struct Hilbert {
    pub dims: Vec<usize>,
    pub cumulative: bool,
    pub mode: Mode,
    /// Whether `1` lies in the truncated ideal.
    pub collapsed: bool,
    /// Unit as a combination of products `x r y`, when collapsed.
    pub unit_witness: Option<String>,
    pub rejected_points: Vec<String>,
}

fn term_string<F: Field + Display>(family: &RelationFamily, index: &WordIndex, v: &SVec<F>) -> String {
    let mut parts: Vec<String> = Vec::new();
    for (i, c) in v.iter().rev() {
        let w = index.word(*i);
        let ws = if w.is_empty() { "1".to_string() } else { NCPoly::word_string(&family.gens, &w) };
        parts.push(format!("({c})*{ws}"));
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Per-degree dimensions for one coefficient field.
fn dims_for<F: Field>(rels: &[RelationTerms<F>], base: usize, d: usize, cumulative: bool) -> (Vec<usize>, bool, Subspace<F>) {
    if !cumulative {
        let (s, t) = truncate(rels, base, d);
        let dims = (0..=d).map(|e| base.pow(e as u32) - t.added[e]).collect();
        return (dims, t.collapsed, s);
    }
    // One degree beyond: overlaps at degree e+1 can drop into words of length <= e.
    let (s, t) = truncate(rels, base, d + 1);
    let index = WordIndex::new(base, d + 1);
    let mut dims = Vec::with_capacity(d + 1);
    for e in 0..=d {
        let cutoff = index.offset(e + 1);
        let mut proj = Echelon::new(index.dim());
        for v in s.basis() {
            let tail: SVec<F> = v.into_iter().filter(|(i, _)| *i >= cutoff).collect();
            proj.insert(tail);
        }
        let inside = s.dim() - proj.rank();
        dims.push(cutoff - inside);
    }
    (dims, t.collapsed, s)
}

fn specialize_terms(family: &RelationFamily, a: &Assignment) -> Result<Vec<RelationTerms<BigRational>>, QuotientError> {
    let mut out = Vec::new();
    for r in &family.relations {
        let mut terms = Vec::new();
        for (w, c) in r.terms() {
            let x = c.specialize(a)?;
            if !Zero::is_zero(&x) {
                terms.push((w.clone(), x));
            }
        }
        out.push(terms);
    }
    Ok(out)
}

/// Random points over the parameters of `family` at which every
/// coefficient is defined.
pub fn sample_points(family: &RelationFamily, seed: u64, count: usize) -> Result<(Vec<Assignment>, Vec<String>), QuotientError> {
    let names = family.parameters();
    if let Some(im) = family.params.imaginary() {
        let i = &family.params.names()[im];
        if names.contains(i) {
            return Err(QuotientError::NotSpecializable(format!("{} depends on the imaginary unit `{i}`", family.name)));
        }
    }
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let mut sampler = PointSampler::new(seed);
    let pts = sampler.points(&refs, count.max(1), |a| specialize_terms(family, a).is_ok());
    Ok((pts, sampler.rejected().to_vec()))
}

pub fn hilbert(q: &QuotientPresentation, mode: &ModeRequest) -> Result<Hilbert, QuotientError> {
    let base = q.family.gens.len();
    let d = q.degree;
    let cumulative = q.cumulative();
    match mode {
        ModeRequest::Symbolic => {
            let rels = scalar_terms(&q.family);
            let (dims, collapsed, _) = dims_for(&rels, base, d, cumulative);
            let unit = if collapsed { witness_text(&q.family, &rels, base, d + cumulative as usize) } else { None };
            Ok(Hilbert { dims, cumulative, mode: Mode::Symbolic, collapsed, unit_witness: unit, rejected_points: Vec::new() })
        }
        ModeRequest::Probabilistic { seed, points } => {
            let (pts, rejected) = sample_points(&q.family, *seed, *points)?;
            let mut best: Option<Vec<usize>> = None;
            let mut collapsed = false;
            let mut unit = None;
            for a in &pts {
                let rels = specialize_terms(&q.family, a)?;
                let (dims, c, _) = dims_for(&rels, base, d, cumulative);
                if c && unit.is_none() {
                    unit = witness_text(&q.family, &rels, base, d + cumulative as usize);
                }
                collapsed |= c;
                best = Some(match best {
                    None => dims,
                    Some(b) => b.into_iter().zip(dims).map(|(x, y)| x.min(y)).collect(),
                });
            }
            Ok(Hilbert {
                dims: best.unwrap_or_default(),
                cumulative,
                mode: Mode::Probabilistic { points: pts.iter().map(format_point).collect() },
                collapsed,
                unit_witness: unit,
                rejected_points: rejected,
            })
        }
    }
}

fn witness_text<F: Field + Display>(family: &RelationFamily, rels: &[RelationTerms<F>], base: usize, d: usize) -> Option<String> {
    let combo = unit_witness(rels, base, d)?;
    let parts: Vec<String> = combo
        .into_iter()
        .map(|(k, x, y, c)| {
            let xs = if x.is_empty() { String::new() } else { format!("{}*", NCPoly::word_string(&family.gens, &x)) };
            let ys = if y.is_empty() { String::new() } else { format!("*{}", NCPoly::word_string(&family.gens, &y)) };
            format!("({c})*{xs}r{k}{ys}")
        })
        .collect();
    Some(format!("1 = {}", parts.join(" + ")))
}

/// Dimensions of `Sym` on `nvars` generators in degrees `0..=d`, graded or
/// cumulative.
pub fn sym_dims(nvars: usize, d: usize, cumulative: bool) -> Vec<usize> {
    let binom = |n: usize, k: usize| -> usize { (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1)) };
    let graded: Vec<usize> = (0..=d).map(|e| binom(nvars + e - 1, e)).collect();
    if !cumulative {
        return graded;
    }
    graded.iter().scan(0, |acc, x| {
        *acc += x;
        Some(*acc)
    }).collect()
}

/// Result of comparing quotient dimensions with a reference sequence.
#[derive(Clone, Debug)]
pub struct Flatness {
    pub hilbert: Hilbert,
    pub reference: Vec<usize>,
    pub pass: bool,
    pub first_deviation: Option<usize>,
    pub witness: Option<String>,
}

pub fn flatness_verdict(q: &QuotientPresentation, reference: &[usize], mode: &ModeRequest) -> Result<Flatness, QuotientError> {
    let h = hilbert(q, mode)?;
    let upto = q.degree.min(reference.len().saturating_sub(1));
    let first = (0..=upto).find(|&e| h.dims.get(e) != reference.get(e));
    let pass = first.is_none() && reference.len() > q.degree && !h.collapsed;
    let witness = match first {
        None if h.collapsed => h.unit_witness.clone(),
        None => None,
        Some(e) => Some(deviation_witness(q, &h, reference, e, mode)?),
    };
    Ok(Flatness { hilbert: h, reference: reference.to_vec(), pass, first_deviation: first, witness })
}

fn deviation_witness(q: &QuotientPresentation, h: &Hilbert, reference: &[usize], e: usize, mode: &ModeRequest) -> Result<String, QuotientError> {
    let got = h.dims[e];
    let want = reference[e];
    if got > want {
        return Ok(format!("degree {e}: quotient dimension {got} exceeds reference {want}; the relations are too few or dependent"));
    }
    let base = q.family.gens.len();
    let cumulative = q.cumulative();
    match mode {
        ModeRequest::Symbolic => Ok(excess_element(q, &scalar_terms(&q.family), base, e, want, cumulative)),
        ModeRequest::Probabilistic { seed, points } => {
            let (pts, _) = sample_points(&q.family, *seed, *points)?;
            let a = &pts[0];
            let rels = specialize_terms(&q.family, a)?;
            Ok(format!("at {}: {}", format_point(a), excess_element(q, &rels, base, e, want, cumulative)))
        }
    }
}

/// An ideal element at level `e` beyond what the reference allows.
fn excess_element<F: Field + Display>(q: &QuotientPresentation, rels: &[RelationTerms<F>], base: usize, e: usize, want: usize, cumulative: bool) -> String {
    let index = WordIndex::new(base, e + cumulative as usize);
    let ambient_e = if cumulative { index.offset(e + 1) } else { base.pow(e as u32) };
    let allowed = ambient_e - want;
    if cumulative {
        let (big, _) = truncate(rels, base, e + 1);
        let cutoff = index.offset(e + 1);
        let coords = Subspace::span(index.dim(), (0..cutoff).map(|i| vec![(i, rels.iter().flat_map(|r| r.first()).next().unwrap().1.one_like())])).unwrap();
        let low = big.intersect(&coords).unwrap();
        let (naive, _) = truncate(rels, base, e);
        let mut naive_big = Subspace::zero(index.dim());
        for v in naive.basis() {
            naive_big.push(v).unwrap();
        }
        for v in low.canonical_basis() {
            if !naive_big.contains(&v) {
                return format!("level {e}: ideal element of length <= {e} produced by overlaps of length {}: {}", e + 1, term_string(&q.family, &index, &v));
            }
        }
    }
    let labels = product_labels(rels, &index);
    let mut ech = Echelon::new(index.dim());
    for ((deg, _, v), (k, x, y)) in products(rels, &index).into_iter().zip(labels) {
        if deg > e || (!cumulative && deg != e) {
            continue;
        }
        if ech.insert(v.clone()) && ech.rank() > allowed {
            let xs = if x.is_empty() { String::new() } else { format!("{}*", NCPoly::word_string(&q.family.gens, &x)) };
            let ys = if y.is_empty() { String::new() } else { format!("*{}", NCPoly::word_string(&q.family.gens, &y)) };
            return format!("degree {e}: product {xs}r{k}{ys} = {} raises the ideal rank above {allowed}", term_string(&q.family, &index, &v));
        }
    }
    format!("degree {e}: ideal rank exceeds {allowed}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GeneratorSet;
    use crate::rmatrix::{i_minus, j_hq};
    use crate::scalar::ParamSet;

    fn q1() -> Assignment {
        [("q".to_string(), BigRational::from_integer(1.into()))].into_iter().collect()
    }

    #[test]
    fn binomial_oracle() {
        assert_eq!(sym_dims(4, 3, false), vec![1, 4, 10, 20]);
        assert_eq!(sym_dims(4, 3, true), vec![1, 5, 15, 35]);
        assert_eq!(sym_dims(3, 3, false), vec![1, 3, 6, 10]);
    }

    #[test]
    fn rtt_algebra_is_flat() {
        let q = QuotientPresentation::new(i_minus(2), 3).unwrap();
        let f = flatness_verdict(&q, &sym_dims(4, 3, false), &ModeRequest::Symbolic).unwrap();
        assert!(f.pass, "{:?}", f.hilbert.dims);
        let c = QuotientPresentation::new(i_minus(2).specialize(&q1()).unwrap(), 3).unwrap();
        assert_eq!(hilbert(&c, &ModeRequest::Symbolic).unwrap().dims, vec![1, 4, 10, 20]);
    }

    #[test]
    fn filtered_pencil_is_flat() {
        let q = QuotientPresentation::new(j_hq(2), 3).unwrap();
        let h = hilbert(&q, &ModeRequest::Symbolic).unwrap();
        assert_eq!(h.dims, vec![1, 5, 15, 35]);
        assert!(!h.collapsed);
    }

    fn perturbed(index: usize, extra: &str) -> QuotientPresentation {
        let f = i_minus(2);
        let mut rels = f.relations.clone();
        rels[index] = rels[index].add(&NCPoly::parse(&f.gens, &f.params, extra).unwrap());
        let bad = RelationFamily::new("perturbed", &f.gens, &f.params, FamilyKind::Graded, rels).unwrap();
        QuotientPresentation::new(bad, 3).unwrap()
    }

    #[test]
    fn cross_term_coefficient_is_free() {
        // r5 = a_1^1 a_2^2 - a_2^2 a_1^1 - (q - q^-1) a_2^1 a_1^2; doubling the cross term keeps flatness
        let q = perturbed(5, "-(q - q^-1)*a_2^1*a_1^2");
        assert!(flatness_verdict(&q, &sym_dims(4, 3, false), &ModeRequest::Symbolic).unwrap().pass);
    }

    #[test]
    fn q_commuting_antidiagonal_breaks_flatness_at_degree_three() {
        // r4 = a_1^2 a_2^1 - a_2^1 a_1^2 becomes a_1^2 a_2^1 - q a_2^1 a_1^2
        let q = perturbed(4, "(1 - q)*a_2^1*a_1^2");
        let v = flatness_verdict(&q, &sym_dims(4, 3, false), &ModeRequest::Symbolic).unwrap();
        assert!(!v.pass);
        assert_eq!(v.first_deviation, Some(3));
        assert_eq!(v.hilbert.dims, vec![1, 4, 10, 18]);
        assert!(v.witness.unwrap().starts_with("degree 3: product"));
    }

    #[test]
    fn probabilistic_mode_matches() {
        let q = QuotientPresentation::new(j_hq(2), 3).unwrap();
        let h = hilbert(&q, &ModeRequest::Probabilistic { seed: 3, points: 3 }).unwrap();
        assert_eq!(h.dims, vec![1, 5, 15, 35]);
        assert_eq!(h.mode.points().len(), 3);
    }

    #[test]
    fn collapse_is_witnessed() {
        let gens = GeneratorSet::new(&["x", "y"]).unwrap();
        let p = ParamSet::standard();
        let rels = vec![NCPoly::parse(&gens, &p, "x*y - y*x - 1").unwrap(), NCPoly::parse(&gens, &p, "x*x").unwrap()];
        let f = RelationFamily::new("weyl_nil", &gens, &p, FamilyKind::Filtered, rels).unwrap();
        let q = QuotientPresentation::new(f, 3).unwrap();
        let h = hilbert(&q, &ModeRequest::Symbolic).unwrap();
        assert!(h.collapsed);
        assert!(h.unit_witness.unwrap().starts_with("1 = "));
        assert!(QuotientPresentation::new(q.family.clone(), 1).is_err());
    }
}
