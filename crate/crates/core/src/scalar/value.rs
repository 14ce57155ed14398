use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::parse::{parse_expression, Expr};
use super::poly::Poly;
use super::{ParamSet, Result, ScalarError};

/// A rational point: parameter name to exact rational value.
pub type Assignment = BTreeMap<String, BigRational>;

/// Renders a rational as `a` or `a/b`.
pub fn rational_to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Element of Q(p1, ..., pm). Invariants: the denominator is nonzero with a
/// positive leading coefficient, and numerator and denominator are coprime.
#[derive(Clone)]
pub struct Scalar {
    params: Arc<ParamSet>,
    num: Poly,
    den: Poly,
}

impl Scalar {
    pub fn zero(params: &Arc<ParamSet>) -> Self {
        let n = params.len();
        Scalar { params: params.clone(), num: Poly::zero(n), den: Poly::one(n) }
    }

    pub fn one(params: &Arc<ParamSet>) -> Self {
        Self::from_int(params, 1)
    }

    pub fn from_int(params: &Arc<ParamSet>, c: i64) -> Self {
        Self::from_bigint(params, BigInt::from(c))
    }

    pub fn from_bigint(params: &Arc<ParamSet>, c: BigInt) -> Self {
        let n = params.len();
        Scalar { params: params.clone(), num: Poly::constant(n, c), den: Poly::one(n) }
    }

    pub fn from_rational(params: &Arc<ParamSet>, r: &BigRational) -> Self {
        let n = params.len();
        // BigRational keeps a positive reduced denominator.
        Scalar {
            params: params.clone(),
            num: Poly::constant(n, r.numer().clone()),
            den: Poly::constant(n, r.denom().clone()),
        }
    }

    pub fn ratio(params: &Arc<ParamSet>, a: i64, b: i64) -> Self {
        Self::from_rational(params, &BigRational::new(a.into(), b.into()))
    }

    pub fn param(params: &Arc<ParamSet>, name: &str) -> Result<Self> {
        let v = params.index(name).ok_or_else(|| ScalarError::UnknownParam(name.into()))?;
        let n = params.len();
        Ok(Scalar { params: params.clone(), num: Poly::var(n, v), den: Poly::one(n) })
    }

    pub fn from_parts(params: &Arc<ParamSet>, num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::normalized(params.clone(), num, den))
    }

    pub fn from_poly(params: &Arc<ParamSet>, num: Poly) -> Self {
        Self::normalized(params.clone(), num, Poly::one(params.len()))
    }

    fn normalized(params: Arc<ParamSet>, mut num: Poly, mut den: Poly) -> Self {
        let n = params.len();
        if num.is_zero() {
            return Scalar { params, num, den: Poly::one(n) };
        }
        if let Some(iv) = params.imaginary() {
            num = num.reduce_imaginary(iv);
            den = den.reduce_imaginary(iv);
            if den.contains_var(iv) {
                let c = den.negate_var(iv);
                num = num.mul(&c).reduce_imaginary(iv);
                den = den.mul(&c).reduce_imaginary(iv);
            }
            if num.is_zero() {
                return Scalar { params, num, den: Poly::one(n) };
            }
        }
        if !den.is_one() {
            let g = num.gcd(&den);
            if !g.is_one() {
                num = num.div_exact(&g).expect("gcd divides numerator");
                den = den.div_exact(&g).expect("gcd divides denominator");
            }
        }
        if den.leading_coeff().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        Scalar { params, num, den }
    }

    /// Re-applies the normalization; idempotent on already-normalized values.
    pub fn renormalize(&self) -> Self {
        Self::normalized(self.params.clone(), self.num.clone(), self.den.clone())
    }

    pub fn params(&self) -> &Arc<ParamSet> {
        &self.params
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The value when the scalar is a rational constant.
    pub fn as_rational(&self) -> Option<BigRational> {
        let n = self.num.constant_value()?;
        let d = self.den.constant_value()?;
        Some(BigRational::new(n, d))
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn depends_on(&self, name: &str) -> bool {
        match self.params.index(name) {
            Some(v) => self.num.contains_var(v) || self.den.contains_var(v),
            None => false,
        }
    }

    fn check_params(&self, other: &Scalar) -> Result<()> {
        if Arc::ptr_eq(&self.params, &other.params) || self.params == other.params {
            Ok(())
        } else {
            Err(ScalarError::ParamMismatch(self.params.to_string(), other.params.to_string()))
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.check_params(other)?;
        Ok(self.add_unchecked(other, false))
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.check_params(other)?;
        Ok(self.add_unchecked(other, true))
    }

    fn add_unchecked(&self, other: &Scalar, negate: bool) -> Scalar {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { other.neg_ref() } else { other.clone() };
        }
        let combine = |a: &Poly, b: &Poly| if negate { a.sub(b) } else { a.add(b) };
        if self.den == other.den {
            let num = combine(&self.num, &other.num);
            return Self::normalized(self.params.clone(), num, self.den.clone());
        }
        let num = combine(&self.num.mul(&other.den), &other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        Self::normalized(self.params.clone(), num, den)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check_params(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Scalar) -> Scalar {
        if self.is_zero() || other.is_zero() {
            return Scalar::zero(&self.params);
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        if self.den.is_one() && other.den.is_one() {
            let num = self.num.mul(&other.num);
            let num = match self.params.imaginary() {
                Some(iv) => num.reduce_imaginary(iv),
                None => num,
            };
            return Scalar { params: self.params.clone(), num, den: self.den.clone() };
        }
        // Cancel crosswise before multiplying to keep sizes down.
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let a = self.num.div_exact(&g1).unwrap();
        let d2 = other.den.div_exact(&g1).unwrap();
        let b = other.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        Self::normalized(self.params.clone(), a.mul(&b), d1.mul(&d2))
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.check_params(other)?;
        let inv = other.inv()?;
        Ok(self.mul_unchecked(&inv))
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::normalized(self.params.clone(), self.den.clone(), self.num.clone()))
    }

    fn neg_ref(&self) -> Scalar {
        Scalar { params: self.params.clone(), num: self.num.neg(), den: self.den.clone() }
    }

    pub fn pow(&self, k: i32) -> Result<Scalar> {
        if k < 0 {
            return self.inv()?.pow(-k);
        }
        let k = k as u32;
        let mut num = self.num.pow(k);
        let mut den = self.den.pow(k);
        if let Some(iv) = self.params.imaginary() {
            num = num.reduce_imaginary(iv);
            den = den.reduce_imaginary(iv);
        }
        Ok(Self::normalized(self.params.clone(), num, den))
    }

    pub fn scale_int(&self, c: i64) -> Scalar {
        self.mul_unchecked(&Scalar::from_int(&self.params, c))
    }

    /// Equality by cross-multiplication: `a.num * b.den - b.num * a.den == 0`.
    pub fn try_eq(&self, other: &Scalar) -> Result<bool> {
        self.check_params(other)?;
        let mut diff = self.num.mul(&other.den).sub(&other.num.mul(&self.den));
        if let Some(iv) = self.params.imaginary() {
            diff = diff.reduce_imaginary(iv);
        }
        Ok(diff.is_zero())
    }

    /// Complex conjugation of the imaginary unit, `i -> -i`.
    pub fn conj(&self) -> Scalar {
        match self.params.imaginary() {
            Some(iv) => Self::normalized(self.params.clone(), self.num.negate_var(iv), self.den.negate_var(iv)),
            None => self.clone(),
        }
    }

    fn point(&self, assignment: &Assignment) -> Result<Vec<Option<BigRational>>> {
        let mut pt = vec![None; self.params.len()];
        for (name, value) in assignment {
            if let Some(v) = self.params.index(name) {
                pt[v] = Some(value.clone());
            }
        }
        Ok(pt)
    }

    /// Exact value at a rational point.
    pub fn specialize(&self, assignment: &Assignment) -> Result<BigRational> {
        let pt = self.point(assignment)?;
        for v in 0..self.params.len() {
            if pt[v].is_none() && (self.num.contains_var(v) || self.den.contains_var(v)) {
                return Err(ScalarError::Unassigned(self.params.names()[v].clone()));
            }
        }
        let d = self.den.eval(&pt).expect("all variables assigned");
        if d.is_zero() {
            return Err(ScalarError::Pole(format_assignment(assignment)));
        }
        let n = self.num.eval(&pt).expect("all variables assigned");
        Ok(n / d)
    }

    /// Substitutes the named parameter by another scalar.
    pub fn substitute(&self, name: &str, value: &Scalar) -> Result<Scalar> {
        self.check_params(value)?;
        let v = self.params.index(name).ok_or_else(|| ScalarError::UnknownParam(name.into()))?;
        if !self.num.contains_var(v) && !self.den.contains_var(v) {
            return Ok(self.clone());
        }
        let eval = |p: &Poly| -> Scalar {
            let coeffs = p.coefficients_in(v);
            let mut acc = Scalar::zero(&self.params);
            for c in coeffs.iter().rev() {
                acc = acc.mul_unchecked(value).add_unchecked(&Scalar::from_poly(&self.params, c.clone()), false);
            }
            acc
        };
        let n = eval(&self.num);
        let d = eval(&self.den);
        if d.is_zero() {
            return Err(ScalarError::Pole(format!("{name} = {value}")));
        }
        n.checked_div(&d)
    }

    /// Substitutes every assigned parameter by its rational value.
    pub fn specialize_partial(&self, assignment: &Assignment) -> Result<Scalar> {
        let mut out = self.clone();
        for (name, value) in assignment {
            if self.params.index(name).is_some() {
                out = out
                    .substitute(name, &Scalar::from_rational(&self.params, value))
                    .map_err(|e| match e {
                        ScalarError::Pole(_) => ScalarError::Pole(format_assignment(assignment)),
                        e => e,
                    })?;
            }
        }
        Ok(out)
    }

    /// Pivot-selection heuristic: 0 for units, small for constants.
    pub fn complexity(&self) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        if self.den.is_one() && self.num.is_constant() {
            let c = self.num.leading_coeff();
            return if c.abs().is_one() { 0 } else { 1 };
        }
        2 + 4 * (self.num.nterms() + self.den.nterms()) + (self.num.total_degree() + self.den.total_degree()) as usize
    }

    /// Canonical text form, e.g. `(q^2+1)/(q)`.
    pub fn to_canonical_string(&self) -> String {
        let names = self.params.names();
        if self.den.is_one() {
            format!("({})", self.num.to_string_with(names))
        } else {
            format!("({})/({})", self.num.to_string_with(names), self.den.to_string_with(names))
        }
    }

    pub fn parse(params: &Arc<ParamSet>, s: &str) -> Result<Scalar> {
        let names: Vec<&str> = params.names().iter().map(|s| s.as_str()).collect();
        let expr = parse_expression(s, &names).map_err(|e| ScalarError::Parse(e.to_string()))?;
        Self::from_expr(params, &expr)
    }

    pub fn from_expr(params: &Arc<ParamSet>, expr: &Expr) -> Result<Scalar> {
        Ok(match expr {
            Expr::Int(c) => Scalar::from_bigint(params, c.clone()),
            Expr::Sym(name) => Scalar::param(params, name)?,
            Expr::Neg(a) => Self::from_expr(params, a)?.neg_ref(),
            Expr::Add(a, b) => Self::from_expr(params, a)?.checked_add(&Self::from_expr(params, b)?)?,
            Expr::Sub(a, b) => Self::from_expr(params, a)?.checked_sub(&Self::from_expr(params, b)?)?,
            Expr::Mul(a, b) => Self::from_expr(params, a)?.checked_mul(&Self::from_expr(params, b)?)?,
            Expr::Div(a, b) => Self::from_expr(params, a)?.checked_div(&Self::from_expr(params, b)?)?,
            Expr::Pow(a, k) => Self::from_expr(params, a)?.pow(*k)?,
        })
    }
}

fn format_assignment(a: &Assignment) -> String {
    let parts: Vec<String> = a.iter().map(|(k, v)| format!("{k}={}", rational_to_string(v))).collect();
    format!("{{{}}}", parts.join(", "))
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.try_eq(other).expect("comparison of scalars over different parameter sets")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).unwrap_or_else(|e| panic!("scalar {}: {e}", stringify!($method)))
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
binop!(Div, div, checked_div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps() -> Arc<ParamSet> {
        ParamSet::standard()
    }

    fn s(text: &str) -> Scalar {
        Scalar::parse(&ps(), text).unwrap()
    }

    fn rat(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn common_denominator() {
        let q = Scalar::param(&ps(), "q").unwrap();
        let r = &q + &q.inv().unwrap();
        assert_eq!(r.to_canonical_string(), "(q^2+1)/(q)");
    }

    #[test]
    fn laurent_forms_agree() {
        assert!(s("(q^2-1)/q").try_eq(&s("q - 1/q")).unwrap());
        assert!(s("(q-1)*(q+1)").try_eq(&s("q^2-1")).unwrap());
        assert!(s("q/q").try_eq(&s("1")).unwrap());
        assert!(!s("q").try_eq(&s("1/q")).unwrap());
    }

    #[test]
    fn product_of_q_differences() {
        // (q - q^-1)(q + q^-1) = q^2 - q^-2, expanded by hand.
        let lhs = s("(q - q^-1)*(q + q^-1)");
        let rhs = s("(q^4 - 1)/q^2");
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.to_canonical_string(), "(q^4-1)/(q^2)");
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(s("q").checked_div(&s("q-q")), Err(ScalarError::DivisionByZero));
        assert!(Scalar::parse(&ps(), "1/(h-h)").is_err());
    }

    #[test]
    fn mismatched_params_error() {
        let other = Arc::new(ParamSet::new(&["q"]).unwrap());
        let a = Scalar::param(&other, "q").unwrap();
        let b = s("q");
        assert!(matches!(a.try_eq(&b), Err(ScalarError::ParamMismatch(..))));
        assert!(a.checked_add(&b).is_err());
    }

    #[test]
    fn specialization() {
        let mut a = Assignment::new();
        a.insert("q".into(), rat(2, 1));
        assert_eq!(s("q - q^-1").specialize(&a).unwrap(), rat(3, 2));
        a.insert("q".into(), rat(1, 1));
        assert!(matches!(s("1/(q-1)").specialize(&a), Err(ScalarError::Pole(_))));
        a.insert("q".into(), rat(3, 2));
        // (9/4 + 1) / (3/2) = 13/6
        assert_eq!(s("(q^2+1)/q").specialize(&a).unwrap(), rat(13, 6));
        let b = Assignment::new();
        assert!(matches!(s("h").specialize(&b), Err(ScalarError::Unassigned(_))));
    }

    #[test]
    fn imaginary_unit_reduces() {
        assert_eq!(s("i*i"), s("-1"));
        let r = s("1/(1+i)");
        assert_eq!(r.to_canonical_string(), "(-i+1)/(2)");
        assert_eq!(&r * &s("1+i"), s("1"));
        assert_eq!(s("2*i + 3").conj(), s("3 - 2*i"));
    }

    #[test]
    fn substitution() {
        let a = s("J31 + J12 + J23");
        let r = a.substitute("J31", &s("-J12-J23")).unwrap();
        assert!(r.is_zero());
        let b = s("1/(q-h)");
        assert!(b.substitute("h", &s("q")).is_err());
    }

    #[test]
    fn canonical_string_round_trips() {
        for text in ["(q^2+1)/(q)", "(-3*q*h+2)/(h^2+q)", "(0)", "(7)/(3)", "(M*q^2-M)/(q^2+1)"] {
            let v = s(text);
            let back = Scalar::parse(&ps(), &v.to_canonical_string()).unwrap();
            assert_eq!(back.to_canonical_string(), v.to_canonical_string());
        }
    }
}
