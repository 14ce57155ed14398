use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::linalg::SVec;
use crate::scalar::{parse_expression, Expr, ParamSet, Scalar};

use super::cpoly::{CPoly, Mono};
use super::word::{Word, WordIndex};
use super::{AlgebraError, GeneratorSet};

/// Element of the free associative algebra over `Scalar`.
#[derive(Clone)]
pub struct NCPoly {
    gens: Arc<GeneratorSet>,
    params: Arc<ParamSet>,
    terms: BTreeMap<Word, Scalar>,
}

impl NCPoly {
    pub fn zero(gens: &Arc<GeneratorSet>, params: &Arc<ParamSet>) -> Self {
        NCPoly { gens: gens.clone(), params: params.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(gens: &Arc<GeneratorSet>, c: Scalar) -> Self {
        let mut p = Self::zero(gens, c.params());
        p.add_term(Word::empty(), c);
        p
    }

    pub fn one(gens: &Arc<GeneratorSet>, params: &Arc<ParamSet>) -> Self {
        Self::constant(gens, Scalar::one(params))
    }

    pub fn generator(gens: &Arc<GeneratorSet>, params: &Arc<ParamSet>, i: usize) -> Self {
        Self::word(gens, params, Word::letter(i), Scalar::one(params))
    }

    pub fn word(gens: &Arc<GeneratorSet>, params: &Arc<ParamSet>, w: Word, c: Scalar) -> Self {
        let mut p = Self::zero(gens, params);
        p.add_term(w, c);
        p
    }

    pub fn from_terms(gens: &Arc<GeneratorSet>, params: &Arc<ParamSet>, terms: impl IntoIterator<Item = (Word, Scalar)>) -> Self {
        let mut p = Self::zero(gens, params);
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(acc) => {
                *acc = &*acc + &c;
                if acc.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn gens(&self) -> &Arc<GeneratorSet> {
        &self.gens
    }

    pub fn params(&self) -> &Arc<ParamSet> {
        &self.params
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(|| Scalar::zero(&self.params))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Top degree; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(|w| w.len())
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys();
        match it.next() {
            Some(w) => it.all(|x| x.len() == w.len()),
            None => true,
        }
    }

    pub fn homogeneous_part(&self, d: usize) -> NCPoly {
        NCPoly {
            gens: self.gens.clone(),
            params: self.params.clone(),
            terms: self.terms.iter().filter(|(w, _)| w.len() == d).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }

    pub fn top_part(&self) -> NCPoly {
        match self.degree() {
            Some(d) => self.homogeneous_part(d),
            None => self.clone(),
        }
    }

    fn check(&self, other: &NCPoly) {
        assert!(
            *self.gens == *other.gens && *self.params == *other.params,
            "noncommutative polynomials over different generators or parameters"
        );
    }

    pub fn add(&self, other: &NCPoly) -> NCPoly {
        self.check(other);
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &NCPoly) -> NCPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> NCPoly {
        self.scale(&Scalar::from_int(&self.params, -1))
    }

    pub fn scale(&self, c: &Scalar) -> NCPoly {
        if c.is_zero() {
            return Self::zero(&self.gens, &self.params);
        }
        NCPoly {
            gens: self.gens.clone(),
            params: self.params.clone(),
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }

    pub fn mul(&self, other: &NCPoly) -> NCPoly {
        self.check(other);
        let mut out = Self::zero(&self.gens, &self.params);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.concat(b), x * y);
            }
        }
        out
    }

    /// `x * self * y` for words `x`, `y`.
    pub fn sandwich(&self, x: &Word, y: &Word) -> NCPoly {
        NCPoly {
            gens: self.gens.clone(),
            params: self.params.clone(),
            terms: self.terms.iter().map(|(w, c)| (Word::concat3(x, w, y), c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> NCPoly {
        let mut out = Self::one(&self.gens, &self.params);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn try_map_coeffs<E>(&self, f: impl Fn(&Scalar) -> Result<Scalar, E>) -> Result<NCPoly, E> {
        let mut out = Self::zero(&self.gens, &self.params);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c)?);
        }
        Ok(out)
    }

    pub fn same(&self, other: &NCPoly) -> bool {
        self.sub(other).is_zero()
    }

    /// Coordinates in the word basis `index`.
    pub fn to_vector(&self, index: &WordIndex) -> SVec<Scalar> {
        let mut v: Vec<(usize, Scalar)> = self.terms.iter().map(|(w, c)| (index.index(w), c.clone())).collect();
        v.sort_by_key(|e| e.0);
        v
    }

    pub fn from_vector(gens: &Arc<GeneratorSet>, params: &Arc<ParamSet>, index: &WordIndex, v: &SVec<Scalar>) -> NCPoly {
        Self::from_terms(gens, params, v.iter().map(|(i, c)| (index.word(*i), c.clone())))
    }

    /// Image in the commutative polynomial algebra.
    pub fn commutative_image(&self) -> CPoly {
        let mut out = CPoly::zero(&self.gens, &self.params);
        for (w, c) in &self.terms {
            let mut m = Mono::from_elem(0, self.gens.len());
            for &l in w.letters() {
                m[l as usize] += 1;
            }
            out.add_term(m, c.clone());
        }
        out
    }

    pub fn parse(gens: &Arc<GeneratorSet>, params: &Arc<ParamSet>, text: &str) -> Result<NCPoly, AlgebraError> {
        let mut symbols: Vec<&str> = gens.names().iter().map(|s| s.as_str()).collect();
        symbols.extend(params.names().iter().map(|s| s.as_str()));
        let expr = parse_expression(text, &symbols).map_err(|e| AlgebraError::Parse(format!("`{text}`: {e}")))?;
        Self::from_expr(gens, params, &expr)
    }

    pub fn from_expr(gens: &Arc<GeneratorSet>, params: &Arc<ParamSet>, e: &Expr) -> Result<NCPoly, AlgebraError> {
        Ok(match e {
            Expr::Int(c) => Self::constant(gens, Scalar::from_bigint(params, c.clone())),
            Expr::Sym(s) => match gens.index(s) {
                Some(i) => Self::generator(gens, params, i),
                None => match params.index(s) {
                    Some(_) => Self::constant(gens, Scalar::param(params, s)?),
                    None => return Err(AlgebraError::UnknownSymbol(s.clone())),
                },
            },
            Expr::Neg(a) => Self::from_expr(gens, params, a)?.neg(),
            Expr::Add(a, b) => Self::from_expr(gens, params, a)?.add(&Self::from_expr(gens, params, b)?),
            Expr::Sub(a, b) => Self::from_expr(gens, params, a)?.sub(&Self::from_expr(gens, params, b)?),
            Expr::Mul(a, b) => Self::from_expr(gens, params, a)?.mul(&Self::from_expr(gens, params, b)?),
            Expr::Div(a, b) => {
                let d = Self::from_expr(gens, params, b)?;
                let c = d.as_scalar().ok_or_else(|| AlgebraError::Parse("division by a non-scalar".into()))?;
                Self::from_expr(gens, params, a)?.scale(&c.inv()?)
            }
            Expr::Pow(a, k) => {
                let base = Self::from_expr(gens, params, a)?;
                if *k >= 0 {
                    base.pow(*k as u32)
                } else {
                    let c = base.as_scalar().ok_or_else(|| AlgebraError::Parse("negative power of a non-scalar".into()))?;
                    Self::constant(gens, c.pow(*k)?)
                }
            }
        })
    }

    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.degree() {
            None => Some(Scalar::zero(&self.params)),
            Some(0) => Some(self.coeff(&Word::empty())),
            _ => None,
        }
    }

    pub fn word_string(gens: &GeneratorSet, w: &Word) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.letters().iter().map(|&l| gens.name(l as usize)).collect::<Vec<_>>().join("*")
    }

    /// Canonical text, highest words first, e.g. `a_1^1*a_1^2 - (q)*a_1^2*a_1^1`.
    pub fn to_canonical_string(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (w, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.numer().leading_coeff() < 0.into();
            let abs = if negative { -c } else { c.clone() };
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let ws = Self::word_string(&self.gens, w);
            if abs.is_one() {
                out.push_str(&ws);
            } else if w.is_empty() {
                out.push_str(&abs.to_canonical_string());
            } else {
                out.push_str(&format!("{}*{}", abs.to_canonical_string(), ws));
            }
        }
        out
    }
}

impl PartialEq for NCPoly {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}
