use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::groebner::{self, QPoly};
use crate::linalg::{kernel, SMat, SVec};
use crate::scalar::{rational_to_string, Assignment, Scalar};

use super::{BraidedError, QLieBracket};

/// `z -> T z̄` on the complexified span of `u, v, w`.
#[derive(Clone, Debug)]
pub struct Conjugation {
    pub name: String,
    pub t: SMat<Scalar>,
}

impl Conjugation {
    pub fn new(name: &str, t: SMat<Scalar>) -> Self {
        Conjugation { name: name.into(), t }
    }

    pub fn diagonal(b: &QLieBracket, signs: [i64; 3]) -> Self {
        let name = format!("diag({},{},{})", signs[0], signs[1], signs[2]);
        let t = SMat::from_triplets(3, 3, (0..3).map(|i| (i, i, Scalar::from_int(&b.params, signs[i]))).collect()).unwrap();
        Conjugation { name, t }
    }

    pub fn apply(&self, z: &SVec<Scalar>) -> SVec<Scalar> {
        let bar: SVec<Scalar> = z.iter().map(|(i, x)| (*i, x.conj())).filter(|(_, x)| !x.is_zero()).collect();
        self.t.apply(&bar).expect("vector of length 3")
    }

    /// `T T̄ = id`.
    pub fn involutive(&self) -> bool {
        let tbar = self.t.map(|x| Ok::<_, ()>(x.conj())).unwrap();
        let one = self.t.rows().iter().flatten().next().map(|(_, x)| Scalar::one(x.params()));
        match one {
            Some(one) => self.t.mul(&tbar).map(|m| m.same(&SMat::identity(3, &one))).unwrap_or(false),
            None => false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ConjugationReport {
    pub name: String,
    pub involutive: bool,
    /// Basis pairs violating `*[a, b] = -[a*, b*]`.
    pub violations: Vec<(String, String)>,
}

impl ConjugationReport {
    pub fn compatible(&self) -> bool {
        self.involutive && self.violations.is_empty()
    }
}

/// Real basis of the complexification: `u, v, w, i u, i v, i w`.
fn real_basis(b: &QLieBracket) -> Vec<(String, SVec<Scalar>)> {
    let i = Scalar::param(&b.params, "i").expect("standard parameters include i");
    let mut out = Vec::new();
    for (k, n) in b.names.iter().enumerate() {
        out.push((n.clone(), vec![(k, Scalar::one(&b.params))]));
    }
    for (k, n) in b.names.iter().enumerate() {
        out.push((format!("i{n}"), vec![(k, i.clone())]));
    }
    out
}

fn neg(v: &SVec<Scalar>) -> SVec<Scalar> {
    v.iter().map(|(i, x)| (*i, -x)).collect()
}

/// Involutivity and `*[a, b] = -[a*, b*]` on all pairs of the real basis,
/// identically in `q` and `M`.
pub fn conjugation_check(b: &QLieBracket, c: &Conjugation) -> ConjugationReport {
    let basis = real_basis(b);
    let mut violations = Vec::new();
    for (na, a) in &basis {
        for (nb, x) in &basis {
            let lhs = c.apply(&b.bracket(a, x));
            let rhs = neg(&b.bracket(&c.apply(a), &c.apply(x)));
            if !crate::linalg::sparse::equal(&lhs, &rhs) {
                violations.push((na.clone(), nb.clone()));
            }
        }
    }
    ConjugationReport { name: c.name.clone(), involutive: c.involutive(), violations }
}

/// All eight `diag(±1, ±1, ±1)` that pass [`conjugation_check`].
pub fn classify_diagonal_conjugations(b: &QLieBracket) -> Vec<Conjugation> {
    let mut out = Vec::new();
    for mask in 0..8 {
        let signs = [0, 1, 2].map(|k| if mask >> (2 - k) & 1 == 1 { -1 } else { 1 });
        let c = Conjugation::diagonal(b, signs);
        if conjugation_check(b, &c).compatible() {
            out.push(c);
        }
    }
    out
}

/// Solutions of `T^2 = id`, `T[e_a, e_b] = -[T e_a, T e_b]` for a real
/// `3 x 3` matrix `T` at one rational point.
#[derive(Clone, Debug)]
pub struct ScanResult {
    pub point: String,
    /// Complex solution count with multiplicity; `None` when the solution
    /// set is positive-dimensional.
    pub solutions: Option<usize>,
    /// Reduced Groebner basis in the unknowns `t11 .. t33`.
    pub groebner_basis: Vec<String>,
    /// Which of `-id` and `diag(1,-1,1)` satisfy the system.
    pub known_points: Vec<(String, bool)>,
}

fn var(k: usize) -> Vec<u16> {
    let mut e = vec![0u16; 9];
    e[k] += 1;
    e
}

fn var2(a: usize, b: usize) -> Vec<u16> {
    let mut e = vec![0u16; 9];
    e[a] += 1;
    e[b] += 1;
    e
}

fn format_qpoly(p: &QPoly) -> String {
    let mut s = String::new();
    for (k, (m, c)) in p.iter().enumerate() {
        let mono: Vec<String> = m
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(v, e)| {
                let n = format!("t{}{}", v / 3 + 1, v % 3 + 1);
                if *e == 1 {
                    n
                } else {
                    format!("{n}^{e}")
                }
            })
            .collect();
        let neg = *c < BigRational::zero();
        let abs = if neg { -c.clone() } else { c.clone() };
        if k > 0 {
            s.push_str(if neg { " - " } else { " + " });
        } else if neg {
            s.push('-');
        }
        if mono.is_empty() {
            s.push_str(&rational_to_string(&abs));
        } else if abs.is_one() {
            s.push_str(&mono.join("*"));
        } else {
            s.push_str(&format!("{}*{}", rational_to_string(&abs), mono.join("*")));
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

pub fn general_conjugation_scan(b: &QLieBracket, q: &BigRational, m: &BigRational) -> Result<ScanResult, BraidedError> {
    let mut a = Assignment::new();
    a.insert("q".into(), q.clone());
    a.insert("M".into(), m.clone());
    let table = b.table.map(|x| x.specialize(&a))?;
    let coef = |r: usize, x: usize, y: usize| table.get(r, x * 3 + y).cloned().unwrap_or_else(BigRational::zero);
    // t(r, c) is variable r*3 + c.
    let mut eqs: Vec<QPoly> = Vec::new();
    for r in 0..3 {
        for c in 0..3 {
            let mut p: QPoly = (0..3).map(|k| (var2(r * 3 + k, k * 3 + c), BigRational::one())).collect();
            if r == c {
                p.push((vec![0; 9], -BigRational::one()));
            }
            eqs.push(p);
        }
    }
    for x in 0..3 {
        for y in 0..3 {
            for r in 0..3 {
                let mut p: QPoly = Vec::new();
                for k in 0..3 {
                    let c = coef(k, x, y);
                    if !c.is_zero() {
                        p.push((var(r * 3 + k), c));
                    }
                }
                for s in 0..3 {
                    for t in 0..3 {
                        let c = coef(r, s, t);
                        if !c.is_zero() {
                            p.push((var2(s * 3 + x, t * 3 + y), c));
                        }
                    }
                }
                let p = groebner::normalize(p);
                if !p.is_empty() {
                    eqs.push(p);
                }
            }
        }
    }
    let known = [("-id", [-1i64, 0, 0, 0, -1, 0, 0, 0, -1]), ("diag(1,-1,1)", [1, 0, 0, 0, -1, 0, 0, 0, 1])];
    let known_points = known
        .iter()
        .map(|(n, t)| {
            let pt: Vec<BigRational> = t.iter().map(|x| BigRational::from_integer((*x).into())).collect();
            (n.to_string(), eqs.iter().all(|p| groebner::eval(p, &pt).is_zero()))
        })
        .collect();
    let gb = groebner::groebner(eqs);
    let solutions = groebner::standard_monomial_count(&gb, 9);
    let mut point = BTreeMap::new();
    point.insert("M", rational_to_string(m));
    point.insert("q", rational_to_string(q));
    let point = point.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(", ");
    Ok(ScanResult { point, solutions, groebner_basis: gb.iter().map(format_qpoly).collect(), known_points })
}

#[derive(Clone, Debug)]
pub struct OddReport {
    /// Real dimension of `{z : z* = -z}`.
    pub odd_dim: usize,
    pub samples: usize,
    /// `[a, b]` is odd for the sampled odd `a, b`.
    pub odd_closed: bool,
    /// `i[a, b]` is even for the sampled even `a, b`.
    pub even_closed: bool,
}

/// Samples random real combinations of the odd (and even) real basis and
/// checks closure under the bracket.
pub fn odd_subalgebra_check(b: &QLieBracket, c: &Conjugation, seed: u64, samples: usize) -> Result<OddReport, BraidedError> {
    let one = Scalar::one(&b.params);
    let i = Scalar::param(&b.params, "i")?;
    let id = SMat::identity(3, &one);
    let minus = kernel(&c.t.add(&id)?, &one).canonical_basis();
    let plus = kernel(&c.t.sub(&id)?, &one).canonical_basis();
    let times_i = |v: &SVec<Scalar>| -> SVec<Scalar> { v.iter().map(|(k, x)| (*k, x * &i)).collect() };
    let odd: Vec<SVec<Scalar>> = minus.iter().cloned().chain(plus.iter().map(times_i)).collect();
    let even: Vec<SVec<Scalar>> = plus.iter().cloned().chain(minus.iter().map(times_i)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = |basis: &[SVec<Scalar>]| -> SVec<Scalar> {
        let mut acc: SVec<Scalar> = Vec::new();
        for v in basis {
            let r = Scalar::ratio(&b.params, rng.gen_range(-9..=9), rng.gen_range(1..=5));
            acc = crate::linalg::sparse::add(&acc, &crate::linalg::sparse::scale(v, &r));
        }
        acc
    };
    let mut odd_closed = true;
    let mut even_closed = true;
    for _ in 0..samples {
        let (x, y) = (draw(&odd), draw(&odd));
        let z = b.bracket(&x, &y);
        odd_closed &= crate::linalg::sparse::equal(&c.apply(&z), &neg(&z));
        let (x, y) = (draw(&even), draw(&even));
        let z = times_i(&b.bracket(&x, &y));
        even_closed &= crate::linalg::sparse::equal(&c.apply(&z), &z);
    }
    Ok(OddReport { odd_dim: odd.len(), samples, odd_closed, even_closed })
}

#[cfg(test)]
mod tests {
    use super::super::q_lie_bracket;
    use super::*;

    #[test]
    fn printed_conjugations_pass() {
        let b = q_lie_bracket().unwrap();
        assert!(conjugation_check(&b, &Conjugation::diagonal(&b, [-1, -1, -1])).compatible());
        assert!(conjugation_check(&b, &Conjugation::diagonal(&b, [1, -1, 1])).compatible());
        let id = conjugation_check(&b, &Conjugation::diagonal(&b, [1, 1, 1]));
        assert!(id.involutive && id.violations.contains(&("u".to_string(), "v".to_string())));
    }

    #[test]
    fn diagonal_classification() {
        let b = q_lie_bracket().unwrap();
        let names: Vec<String> = classify_diagonal_conjugations(&b).into_iter().map(|c| c.name).collect();
        assert_eq!(names, vec!["diag(1,-1,1)".to_string(), "diag(-1,-1,-1)".to_string()]);
    }

    #[test]
    fn odd_elements_close() {
        let b = q_lie_bracket().unwrap();
        let r = odd_subalgebra_check(&b, &Conjugation::diagonal(&b, [1, -1, 1]), 7, 4).unwrap();
        assert_eq!(r.odd_dim, 3);
        assert!(r.odd_closed && r.even_closed);
        let r = odd_subalgebra_check(&b, &Conjugation::diagonal(&b, [-1, -1, -1]), 7, 4).unwrap();
        assert!(r.odd_closed);
    }
}
