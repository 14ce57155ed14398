use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::algebra::groebner::{self, QPoly};
use crate::linalg::{SMat, SVec, Subspace};
use crate::scalar::{ParamSet, Poly, Scalar};

use super::QuotientError;

/// `(V, I, nu0, nu1)`: `I` a subspace of `V (x) V` (index `a*m + b`),
/// `nu0` a functional on `V (x) V`, `nu1: V (x) V -> V` as an `m x m^2`
/// matrix. The deformed relations are `x - nu1(x) - nu0(x)`, `x` in `I`.
#[derive(Clone, Debug)]
pub struct NuData {
    pub names: Vec<String>,
    pub params: Arc<ParamSet>,
    pub i_space: Vec<SVec<Scalar>>,
    pub nu0: SVec<Scalar>,
    pub nu1: SMat<Scalar>,
}

/// One of the three conditions with its residual polynomial conditions.
#[derive(Clone, Debug)]
pub struct NuCondition {
    pub name: String,
    pub holds_identically: bool,
    pub constraints: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct PbwReport {
    pub k_dim: usize,
    pub conditions: Vec<NuCondition>,
    /// Union of the conditions, canonical form, as polynomials.
    pub constraints: Vec<Poly>,
    /// Whether the constraint variety has a point with `q != 0` over an
    /// algebraically closed field (Groebner basis is not `{1}`).
    pub consistent: bool,
}

impl PbwReport {
    pub fn holds_identically(&self) -> bool {
        self.conditions.iter().all(|c| c.holds_identically)
    }
}

impl NuData {
    pub fn dim(&self) -> usize {
        self.names.len()
    }

    fn zero(&self) -> Scalar {
        Scalar::zero(&self.params)
    }

    /// `(nu1 (x) id - id (x) nu1)(k)` in `V (x) V`.
    fn a_map(&self, k: &SVec<Scalar>) -> SVec<Scalar> {
        let m = self.dim();
        let nu1t = self.nu1.transpose();
        let mut out: SVec<Scalar> = Vec::new();
        for (idx, t) in k {
            let (a, b, c) = (idx / (m * m), (idx / m) % m, idx % m);
            let left: SVec<Scalar> = nu1t.row(a * m + b).iter().map(|(j, x)| (j * m + c, x * t)).collect();
            let right: SVec<Scalar> = nu1t.row(b * m + c).iter().map(|(j, x)| (a * m + j, x * t)).collect();
            out = crate::linalg::sparse::add(&out, &crate::linalg::sparse::sub_scaled(&sorted(left), &Scalar::one(&self.params), &sorted(right)));
        }
        out
    }

    /// `(nu0 (x) id - id (x) nu0)(k)` in `V`.
    fn b_map(&self, k: &SVec<Scalar>) -> SVec<Scalar> {
        let m = self.dim();
        let mut out: SVec<Scalar> = Vec::new();
        for (idx, t) in k {
            let (a, b, c) = (idx / (m * m), (idx / m) % m, idx % m);
            if let Some(x) = crate::linalg::sparse::get(&self.nu0, a * m + b) {
                out = crate::linalg::sparse::add(&out, &[(c, x * t)]);
            }
            if let Some(x) = crate::linalg::sparse::get(&self.nu0, b * m + c) {
                out = crate::linalg::sparse::add(&out, &[(a, -(x * t))]);
            }
        }
        out
    }
}

fn sorted(mut v: SVec<Scalar>) -> SVec<Scalar> {
    v.sort_by_key(|e| e.0);
    let mut out: SVec<Scalar> = Vec::new();
    for (i, x) in v {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y = &*y + &x,
            _ => out.push((i, x)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}

fn normalize(p: &Poly) -> Poly {
    let p = p.div_mono_exact(&p.mono_content());
    let p = p.div_int_exact(&p.content());
    if p.leading_coeff().is_negative() {
        p.neg()
    } else {
        p
    }
}

fn collect(values: impl IntoIterator<Item = Scalar>, into: &mut Vec<Poly>) {
    for v in values {
        if v.is_zero() {
            continue;
        }
        let p = normalize(v.numer());
        if !into.contains(&p) {
            into.push(p);
        }
    }
}

/// Checks the three conditions on `K = I (x) V  cap  V (x) I`:
/// `Im(nu1 (x) id - id (x) nu1)(K)` in `I`;
/// `(nu1 (nu1 (x) id - id (x) nu1) + nu0 (x) id - id (x) nu0)(K) = 0`;
/// `nu0 (nu1 (x) id - id (x) nu1)(K) = 0`.
pub fn pbw_nu_check(n: &NuData) -> Result<PbwReport, QuotientError> {
    let m = n.dim();
    let m2 = m * m;
    let i_sub = Subspace::span(m2, n.i_space.clone())?;
    let iv = Subspace::span(m2 * m, i_sub.basis().iter().flat_map(|x| (0..m).map(move |c| x.iter().map(|(j, t)| (j * m + c, t.clone())).collect::<SVec<Scalar>>())))?;
    let vi = Subspace::span(m2 * m, i_sub.basis().iter().flat_map(|x| (0..m).map(move |a| x.iter().map(|(j, t)| (a * m2 + j, t.clone())).collect::<SVec<Scalar>>())))?;
    let k = iv.intersect(&vi)?;
    let mut names = Vec::new();
    let mut c1: Vec<Poly> = Vec::new();
    let mut c2: Vec<Poly> = Vec::new();
    let mut c3: Vec<Poly> = Vec::new();
    let mut ech = crate::linalg::Echelon::new(m2);
    for v in i_sub.basis() {
        ech.insert(v);
    }
    for kv in k.basis() {
        let a = n.a_map(&kv);
        collect(ech.reduce(a.clone()).into_iter().map(|(_, x)| x), &mut c1);
        let second = crate::linalg::sparse::add(&n.nu1.apply(&a)?, &n.b_map(&kv));
        collect(second.into_iter().map(|(_, x)| x), &mut c2);
        let third = crate::linalg::sparse::dot(&n.nu0, &a, &n.zero());
        collect([third], &mut c3);
    }
    let pnames = n.params.names().to_vec();
    for (name, cs) in [("image_in_I", &c1), ("second", &c2), ("third", &c3)] {
        names.push(NuCondition { name: name.into(), holds_identically: cs.is_empty(), constraints: cs.iter().map(|p| p.to_string_with(&pnames)).collect() });
    }
    let mut all: Vec<Poly> = Vec::new();
    for p in c1.iter().chain(&c2).chain(&c3) {
        if !all.contains(p) {
            all.push(p.clone());
        }
    }
    let consistent = variety_nonempty(&all, n.params.index("q"));
    Ok(PbwReport { k_dim: k.dim(), conditions: names, constraints: all, consistent })
}

fn to_qpoly(p: &Poly, extra: usize) -> QPoly {
    p.terms()
        .iter()
        .map(|(e, c)| {
            let mut v: Vec<u16> = e.to_vec();
            v.resize(v.len() + extra, 0);
            (v, BigRational::from_integer(c.clone()))
        })
        .collect()
}

/// Nonempty over the algebraic closure with `q` invertible.
pub fn variety_nonempty(constraints: &[Poly], q_index: Option<usize>) -> bool {
    if constraints.is_empty() {
        return true;
    }
    if constraints.iter().any(|p| p.is_constant()) {
        return false;
    }
    let nv = constraints[0].nvars();
    let mut sys: Vec<QPoly> = constraints.iter().map(|p| to_qpoly(p, 1)).collect();
    if let Some(qi) = q_index {
        // t*q - 1
        let mut tq = vec![0u16; nv + 1];
        tq[qi] = 1;
        tq[nv] = 1;
        sys.push(vec![(tq, BigRational::one()), (vec![0u16; nv + 1], -BigRational::one())]);
    }
    let gb = groebner::groebner(sys);
    groebner::standard_monomial_count(&gb, nv + 1) != Some(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn so3_data(scale: i64) -> NuData {
        // V = span(x, y, z), I = Lambda^2 V, nu1 = scale * cross product
        let params = ParamSet::standard();
        let one = Scalar::one(&params);
        let m = 3;
        let mut i_space = Vec::new();
        for a in 0..m {
            for b in a + 1..m {
                i_space.push(vec![(a * m + b, one.clone()), (b * m + a, -&one)]);
            }
        }
        let mut t = Vec::new();
        let s = Scalar::from_int(&params, scale);
        for (a, b, c) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            t.push((c, a * m + b, s.clone()));
            t.push((c, b * m + a, -&s));
        }
        NuData { names: vec!["x".into(), "y".into(), "z".into()], params: params.clone(), i_space, nu0: Vec::new(), nu1: SMat::from_triplets(m, m * m, t).unwrap() }
    }

    #[test]
    fn zero_maps_pass() {
        let r = pbw_nu_check(&so3_data(0)).unwrap();
        assert!(r.holds_identically() && r.consistent);
        assert_eq!(r.k_dim, 1);
    }

    #[test]
    fn lie_bracket_passes_by_jacobi() {
        let r = pbw_nu_check(&so3_data(1)).unwrap();
        assert!(r.holds_identically(), "{:?}", r.conditions);
    }

    #[test]
    fn inconsistent_constraints_are_detected() {
        let p = ParamSet::standard();
        let c0 = Scalar::param(&p, "c0").unwrap();
        let a = (&c0 * &c0).numer().clone();
        let b = (&c0 - &Scalar::one(&p)).numer().clone();
        assert!(variety_nonempty(std::slice::from_ref(&a), p.index("q")));
        assert!(!variety_nonempty(&[a, b], p.index("q")));
        let q = Scalar::param(&p, "q").unwrap();
        assert!(!variety_nonempty(&[q.numer().clone()], p.index("q")));
    }
}
