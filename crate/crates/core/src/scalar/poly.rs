//! Sparse multivariate polynomials with arbitrary-precision integer coefficients.
//!
//! Terms are kept strictly decreasing in graded-lexicographic order, with the
//! first variable of the owning [`ParamSet`](super::ParamSet) ranked highest.
//! No zero coefficient is ever stored; the zero polynomial has no terms.

use std::cmp::Ordering;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

pub type Exponents = SmallVec<[u16; 12]>;

/// Graded-lex comparison: total degree first, then lexicographic.
pub fn grlex_cmp(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

fn divides(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    nvars: usize,
    terms: Vec<(Exponents, BigInt)>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: Vec::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Poly { nvars, terms: vec![(Self::unit_mono(nvars), c)] }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = Self::unit_mono(nvars);
        e[i] = 1;
        Poly { nvars, terms: vec![(e, BigInt::one())] }
    }

    pub fn monomial(exps: Exponents, c: BigInt) -> Self {
        let nvars = exps.len();
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Poly { nvars, terms: vec![(exps, c)] }
    }

    fn unit_mono(nvars: usize) -> Exponents {
        SmallVec::from_elem(0, nvars)
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(nvars: usize, mut terms: Vec<(Exponents, BigInt)>) -> Self {
        terms.sort_by(|a, b| grlex_cmp(&b.0, &a.0));
        let mut out: Vec<(Exponents, BigInt)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 += c,
                _ => {
                    if let Some(last) = out.last() {
                        if last.1.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((e, c));
                }
            }
        }
        if out.last().is_some_and(|t| t.1.is_zero()) {
            out.pop();
        }
        Poly { nvars, terms: out }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Exponents, BigInt)] {
        &self.terms
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.iter().all(|&e| e == 0))
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && !self.is_zero() && self.terms[0].1.is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn constant_value(&self) -> Option<BigInt> {
        if self.is_zero() {
            Some(BigInt::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn leading(&self) -> Option<&(Exponents, BigInt)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_default()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(e, _)| e.iter().map(|&x| x as u32).sum::<u32>()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: usize) -> u16 {
        self.terms.iter().map(|(e, _)| e[v]).max().unwrap_or(0)
    }

    pub fn contains_var(&self, v: usize) -> bool {
        self.terms.iter().any(|(e, _)| e[v] > 0)
    }

    pub fn neg(&self) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.merge(other, true)
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ea, ca) = &self.terms[i];
            let (eb, cb) = &other.terms[j];
            match grlex_cmp(ea, eb) {
                Ordering::Greater => {
                    out.push((ea.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((eb.clone(), if negate { -cb } else { cb.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { ca - cb } else { ca + cb };
                    if !c.is_zero() {
                        out.push((ea.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|(e, c)| (e.clone(), if negate { -c } else { c.clone() })));
        Poly { nvars: self.nvars, terms: out }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.nvars, other.nvars);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.nvars);
        }
        if other.is_monomial() {
            let (e, c) = &other.terms[0];
            return self.mul_term(e, c);
        }
        if self.is_monomial() {
            let (e, c) = &self.terms[0];
            return other.mul_term(e, c);
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                terms.push((e, ca * cb));
            }
        }
        Poly::from_terms(self.nvars, terms)
    }

    /// Multiplication by a single term keeps the order, so no re-sorting.
    pub fn mul_term(&self, e: &[u16], c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(ea, ca)| (ea.iter().zip(e).map(|(x, y)| x + y).collect(), ca * c))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect() }
    }

    pub fn pow(&self, mut k: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.nvars);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Positive gcd of the integer coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Componentwise minimum of the exponent vectors.
    pub fn mono_content(&self) -> Exponents {
        let mut m = match self.terms.first() {
            Some((e, _)) => e.clone(),
            None => return Self::unit_mono(self.nvars),
        };
        for (e, _) in &self.terms[1..] {
            for (a, b) in m.iter_mut().zip(e) {
                *a = (*a).min(*b);
            }
        }
        m
    }

    pub fn div_int_exact(&self, c: &BigInt) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, x)| (e.clone(), x / c)).collect() }
    }

    pub fn div_mono_exact(&self, m: &[u16]) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.iter().zip(m).map(|(a, b)| a - b).collect(), x.clone())).collect(),
        }
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero(self.nvars));
        }
        if d.is_monomial() {
            let (de, dc) = &d.terms[0];
            let mut terms = Vec::with_capacity(self.terms.len());
            for (e, c) in &self.terms {
                if !divides(de, e) {
                    return None;
                }
                let (qc, r) = c.div_rem(dc);
                if !r.is_zero() {
                    return None;
                }
                terms.push((e.iter().zip(de).map(|(a, b)| a - b).collect(), qc));
            }
            return Some(Poly { nvars: self.nvars, terms });
        }
        let (lde, ldc) = &d.terms[0];
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((re, rc)) = rem.terms.first() {
            if !divides(lde, re) {
                return None;
            }
            let (qc, r) = rc.div_rem(ldc);
            if !r.is_zero() {
                return None;
            }
            let qe: Exponents = re.iter().zip(lde).map(|(a, b)| a - b).collect();
            rem = rem.sub(&d.mul_term(&qe, &qc));
            quot.push((qe, qc));
        }
        Some(Poly { nvars: self.nvars, terms: quot })
    }

    /// Coefficients in variable `v`, indexed by the power of `v`.
    pub fn coefficients_in(&self, v: usize) -> Vec<Poly> {
        let deg = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Exponents, BigInt)>> = vec![Vec::new(); deg + 1];
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[v] as usize;
            e2[v] = 0;
            buckets[k].push((e2, c.clone()));
        }
        buckets.into_iter().map(|t| Poly::from_terms(self.nvars, t)).collect()
    }

    pub fn from_coefficients_in(nvars: usize, v: usize, coeffs: &[Poly]) -> Poly {
        let mut terms = Vec::new();
        for (k, p) in coeffs.iter().enumerate() {
            for (e, c) in &p.terms {
                let mut e2 = e.clone();
                e2[v] += k as u16;
                terms.push((e2, c.clone()));
            }
        }
        Poly::from_terms(nvars, terms)
    }

    /// Evaluates at a point; `None` entries must not occur in the support.
    pub fn eval(&self, point: &[Option<BigRational>]) -> Option<BigRational> {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for (v, &k) in e.iter().enumerate() {
                if k > 0 {
                    let x = point[v].as_ref()?;
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            acc += t;
        }
        Some(acc)
    }

    /// Reduces every power of variable `v` modulo `v^2 + 1`.
    pub fn reduce_imaginary(&self, v: usize) -> Poly {
        if !self.contains_var(v) {
            return self.clone();
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e2 = e.clone();
                let k = e2[v];
                e2[v] = k % 2;
                let c2 = if (k / 2) % 2 == 1 { -c } else { c.clone() };
                (e2, c2)
            })
            .collect();
        Poly::from_terms(self.nvars, terms)
    }

    /// Replaces `v` by `-v`.
    pub fn negate_var(&self, v: usize) -> Poly {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), if e[v] % 2 == 1 { -c } else { c.clone() })).collect();
        Poly::from_terms(self.nvars, terms)
    }

    /// Greatest common divisor with positive leading coefficient.
    pub fn gcd(&self, other: &Poly) -> Poly {
        gcd(self, other)
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { "-" } else { "+" });
            }
            let is_const = e.iter().all(|&k| k == 0);
            let mut parts: Vec<String> = Vec::new();
            if !abs.is_one() || is_const {
                parts.push(abs.to_string());
            }
            for (v, &k) in e.iter().enumerate() {
                if k == 1 {
                    parts.push(names[v].clone());
                } else if k > 1 {
                    parts.push(format!("{}^{}", names[v], k));
                }
            }
            let _ = write!(s, "{}", parts.join("*"));
        }
        s
    }
}

fn primitive_with_sign(p: &Poly) -> Poly {
    if p.is_zero() {
        return p.clone();
    }
    let mut c = p.content();
    if p.leading_coeff().is_negative() {
        c = -c;
    }
    if c.is_one() {
        p.clone()
    } else {
        p.div_int_exact(&c)
    }
}

fn normalize_sign(p: Poly) -> Poly {
    if p.leading_coeff().is_negative() {
        p.neg()
    } else {
        p
    }
}

fn gcd(a: &Poly, b: &Poly) -> Poly {
    let nvars = a.nvars;
    if a.is_zero() {
        return normalize_sign(b.clone());
    }
    if b.is_zero() {
        return normalize_sign(a.clone());
    }
    let ma = a.mono_content();
    let mb = b.mono_content();
    let mg: Exponents = ma.iter().zip(&mb).map(|(x, y)| *x.min(y)).collect();
    let ca = a.content();
    let cb = b.content();
    let cg = ca.gcd(&cb);
    let mono = Poly::monomial(mg, cg);
    if a.is_monomial() || b.is_monomial() {
        return mono;
    }
    let pa = primitive_with_sign(&a.div_mono_exact(&ma));
    let pb = primitive_with_sign(&b.div_mono_exact(&mb));
    let g = gcd_primitive(&pa, &pb);
    debug_assert_eq!(g.nvars, nvars);
    g.mul(&mono)
}

/// Gcd of two primitive polynomials without monomial content.
fn gcd_primitive(a: &Poly, b: &Poly) -> Poly {
    let nvars = a.nvars;
    if a == b {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(nvars);
    }
    let mut only_a = None;
    let mut only_b = None;
    let mut both: Option<(usize, u16)> = None;
    for v in 0..nvars {
        let (da, db) = (a.degree_in(v), b.degree_in(v));
        match (da > 0, db > 0) {
            (true, false) => only_a = only_a.or(Some(v)),
            (false, true) => only_b = only_b.or(Some(v)),
            (true, true) => {
                let d = da.max(db);
                if both.is_none_or(|(_, bd)| d < bd) {
                    both = Some((v, d));
                }
            }
            _ => {}
        }
    }
    if let Some(v) = only_a {
        let c = content_in(a, v);
        return gcd(&c, b);
    }
    if let Some(v) = only_b {
        let c = content_in(b, v);
        return gcd(a, &c);
    }
    let v = both.expect("non-constant polynomials share a variable").0;
    let ua = a.coefficients_in(v);
    let ub = b.coefficients_in(v);
    let ca = gcd_list(&ua);
    let cb = gcd_list(&ub);
    let c = gcd(&ca, &cb);
    let pa: Vec<Poly> = ua.iter().map(|p| p.div_exact(&ca).expect("content divides")).collect();
    let pb: Vec<Poly> = ub.iter().map(|p| p.div_exact(&cb).expect("content divides")).collect();
    let g = univariate_prs_gcd(pa, pb);
    let gp = Poly::from_coefficients_in(nvars, v, &g);
    normalize_sign(gp.mul(&c))
}

fn content_in(p: &Poly, v: usize) -> Poly {
    gcd_list(&p.coefficients_in(v))
}

fn gcd_list(ps: &[Poly]) -> Poly {
    let mut g: Option<Poly> = None;
    for p in ps.iter().filter(|p| !p.is_zero()) {
        g = Some(match g {
            None => normalize_sign(p.clone()),
            Some(g) => gcd(&g, p),
        });
        if g.as_ref().is_some_and(|g| g.is_one()) {
            break;
        }
    }
    g.unwrap_or_else(|| Poly::zero(ps.first().map(|p| p.nvars).unwrap_or(0)))
}

fn trim(u: &mut Vec<Poly>) {
    while u.last().is_some_and(|p| p.is_zero()) {
        u.pop();
    }
}

fn uni_primitive(u: Vec<Poly>) -> Vec<Poly> {
    let c = gcd_list(&u);
    if c.is_zero() || c.is_one() {
        return u;
    }
    u.iter().map(|p| p.div_exact(&c).expect("content divides")).collect()
}

/// Primitive polynomial remainder sequence; inputs are primitive in the main variable.
fn univariate_prs_gcd(mut a: Vec<Poly>, mut b: Vec<Poly>) -> Vec<Poly> {
    trim(&mut a);
    trim(&mut b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = pseudo_rem(&a, &b);
        a = b;
        b = uni_primitive(r);
    }
    if a.len() == 1 {
        let nvars = a[0].nvars;
        return vec![Poly::one(nvars)];
    }
    uni_primitive(a)
}

fn pseudo_rem(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let mut r: Vec<Poly> = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    trim(&mut r);
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for p in r.iter_mut() {
            *p = p.mul(lb);
        }
        for (k, bk) in b.iter().enumerate() {
            r[k + shift] = r[k + shift].sub(&bk.mul(&lr));
        }
        trim(&mut r);
    }
    r
}
