use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::scalar::{grlex_cmp, parse_expression, Expr, ParamSet, Scalar};

use super::{AlgebraError, GeneratorSet};

/// Exponent vector over the generators.
pub type Mono = SmallVec<[u16; 10]>;

/// Element of the commutative polynomial algebra over `Scalar`.
#[derive(Clone)]
pub struct CPoly {
    gens: Arc<GeneratorSet>,
    params: Arc<ParamSet>,
    terms: BTreeMap<Mono, Scalar>,
}

impl CPoly {
    pub fn zero(gens: &Arc<GeneratorSet>, params: &Arc<ParamSet>) -> Self {
        CPoly { gens: gens.clone(), params: params.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(gens: &Arc<GeneratorSet>, c: Scalar) -> Self {
        let mut p = Self::zero(gens, c.params());
        p.add_term(Mono::from_elem(0, gens.len()), c);
        p
    }

    pub fn one(gens: &Arc<GeneratorSet>, params: &Arc<ParamSet>) -> Self {
        Self::constant(gens, Scalar::one(params))
    }

    pub fn var(gens: &Arc<GeneratorSet>, params: &Arc<ParamSet>, i: usize) -> Self {
        let mut m = Mono::from_elem(0, gens.len());
        m[i] = 1;
        Self::monomial(gens, params, m, Scalar::one(params))
    }

    pub fn monomial(gens: &Arc<GeneratorSet>, params: &Arc<ParamSet>, m: Mono, c: Scalar) -> Self {
        let mut p = Self::zero(gens, params);
        p.add_term(m, c);
        p
    }

    pub fn add_term(&mut self, m: Mono, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(acc) => {
                *acc = &*acc + &c;
                if acc.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn gens(&self) -> &Arc<GeneratorSet> {
        &self.gens
    }

    pub fn params(&self) -> &Arc<ParamSet> {
        &self.params
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Scalar)> {
        self.terms.iter()
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &[u16]) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| Scalar::zero(&self.params))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.iter().map(|&e| e as usize).sum()).max()
    }

    pub fn homogeneous_part(&self, d: usize) -> CPoly {
        CPoly {
            gens: self.gens.clone(),
            params: self.params.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.iter().map(|&e| e as usize).sum::<usize>() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    fn check(&self, other: &CPoly) {
        assert!(
            *self.gens == *other.gens && *self.params == *other.params,
            "commutative polynomials over different generators or parameters"
        );
    }

    pub fn add(&self, other: &CPoly) -> CPoly {
        self.check(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &CPoly) -> CPoly {
        self.check(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> CPoly {
        self.scale(&Scalar::from_int(&self.params, -1))
    }

    pub fn scale(&self, c: &Scalar) -> CPoly {
        if c.is_zero() {
            return Self::zero(&self.gens, &self.params);
        }
        CPoly {
            gens: self.gens.clone(),
            params: self.params.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul(&self, other: &CPoly) -> CPoly {
        self.check(other);
        let mut out = Self::zero(&self.gens, &self.params);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let m: Mono = a.iter().zip(b.iter()).map(|(p, q)| p + q).collect();
                out.add_term(m, x * y);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> CPoly {
        let mut out = Self::one(&self.gens, &self.params);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Partial derivative in generator `i`.
    pub fn derivative(&self, i: usize) -> CPoly {
        let mut out = Self::zero(&self.gens, &self.params);
        for (m, c) in &self.terms {
            if m[i] > 0 {
                let mut m2 = m.clone();
                m2[i] -= 1;
                out.add_term(m2, c.scale_int(m[i] as i64));
            }
        }
        out
    }

    /// Substitutes every generator `i` by `images[i]`.
    pub fn compose(&self, images: &[CPoly]) -> CPoly {
        assert_eq!(images.len(), self.gens.len());
        let mut out = Self::zero(&self.gens, &self.params);
        for (m, c) in &self.terms {
            let mut t = Self::constant(&self.gens, c.clone());
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&images[i].pow(e as u32));
                }
            }
            out = out.add(&t);
        }
        out
    }

    pub fn try_map_coeffs<E>(&self, f: impl Fn(&Scalar) -> Result<Scalar, E>) -> Result<CPoly, E> {
        let mut out = Self::zero(&self.gens, &self.params);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Collects coefficients of the powers of parameter `name`, treating the
    /// polynomial as a polynomial in that parameter. Errors if some
    /// coefficient is not polynomial in it.
    pub fn grade_by_param(&self, name: &str) -> Result<Vec<CPoly>, AlgebraError> {
        let v = self.params.index(name).ok_or_else(|| AlgebraError::UnknownSymbol(name.into()))?;
        let mut out: Vec<CPoly> = Vec::new();
        for (m, c) in &self.terms {
            if c.denom().contains_var(v) {
                return Err(AlgebraError::NonPolynomial(format!("coefficient {c} is not polynomial in {name}")));
            }
            for (k, part) in c.numer().coefficients_in(v).into_iter().enumerate() {
                if part.is_zero() {
                    continue;
                }
                while out.len() <= k {
                    out.push(Self::zero(&self.gens, &self.params));
                }
                let s = Scalar::from_parts(&self.params, part, c.denom().clone())?;
                out[k].add_term(m.clone(), s);
            }
        }
        Ok(out)
    }

    pub fn same(&self, other: &CPoly) -> bool {
        self.sub(other).is_zero()
    }

    pub fn parse(gens: &Arc<GeneratorSet>, params: &Arc<ParamSet>, text: &str) -> Result<CPoly, AlgebraError> {
        let mut symbols: Vec<&str> = gens.names().iter().map(|s| s.as_str()).collect();
        symbols.extend(params.names().iter().map(|s| s.as_str()));
        let expr = parse_expression(text, &symbols).map_err(|e| AlgebraError::Parse(format!("`{text}`: {e}")))?;
        Self::from_expr(gens, params, &expr)
    }

    pub fn from_expr(gens: &Arc<GeneratorSet>, params: &Arc<ParamSet>, e: &Expr) -> Result<CPoly, AlgebraError> {
        Ok(match e {
            Expr::Int(c) => Self::constant(gens, Scalar::from_bigint(params, c.clone())),
            Expr::Sym(s) => match gens.index(s) {
                Some(i) => Self::var(gens, params, i),
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
            Some(0) => Some(self.coeff(&Mono::from_elem(0, self.gens.len()))),
            _ => None,
        }
    }

    pub fn mono_string(gens: &GeneratorSet, m: &[u16]) -> String {
        let parts: Vec<String> = m
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { gens.name(i).to_string() } else { format!("{}^{}", gens.name(i), e) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    /// Canonical text with monomials in decreasing graded-lex order.
    pub fn to_canonical_string(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut monos: Vec<(&Mono, &Scalar)> = self.terms.iter().collect();
        monos.sort_by(|a, b| grlex_cmp(b.0, a.0));
        let mut out = String::new();
        for (k, (m, c)) in monos.into_iter().enumerate() {
            let negative = c.numer().leading_coeff() < 0.into();
            let abs = if negative { -c } else { c.clone() };
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let ms = Self::mono_string(&self.gens, m);
            let is_unit = m.iter().all(|&e| e == 0);
            if abs.is_one() {
                out.push_str(&ms);
            } else if is_unit {
                out.push_str(&abs.to_canonical_string());
            } else {
                out.push_str(&format!("{}*{}", abs.to_canonical_string(), ms));
            }
        }
        out
    }
}

impl PartialEq for CPoly {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl fmt::Display for CPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

impl fmt::Debug for CPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivative_and_compose() {
        let g = GeneratorSet::new(&["x", "y"]).unwrap();
        let p = ParamSet::standard();
        let f = CPoly::parse(&g, &p, "x^2*y + q*y").unwrap();
        assert_eq!(f.derivative(0), CPoly::parse(&g, &p, "2*x*y").unwrap());
        assert_eq!(f.derivative(1), CPoly::parse(&g, &p, "x^2 + q").unwrap());
        let shifted = f.compose(&[CPoly::parse(&g, &p, "x + h").unwrap(), CPoly::var(&g, &p, 1)]);
        assert_eq!(shifted, CPoly::parse(&g, &p, "x^2*y + 2*h*x*y + h^2*y + q*y").unwrap());
        let graded = shifted.grade_by_param("h").unwrap();
        assert_eq!(graded.len(), 3);
        assert_eq!(graded[1], CPoly::parse(&g, &p, "2*x*y").unwrap());
    }

    #[test]
    fn canonical_string_round_trips() {
        let g = GeneratorSet::new(&["x", "y"]).unwrap();
        let p = ParamSet::standard();
        let f = CPoly::parse(&g, &p, "3 - x*y^2 + (q+1)/q*x").unwrap();
        assert_eq!(f.to_canonical_string(), "-x*y^2 + (q+1)/(q)*x + (3)");
        assert_eq!(CPoly::parse(&g, &p, &f.to_canonical_string()).unwrap(), f);
    }
}
