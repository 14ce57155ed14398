use std::sync::Arc;

use num_rational::BigRational;

use crate::algebra::{GeneratorSet, NCPoly, Word};
use crate::linalg::{image, kernel, Field, SMat, SVec, Subspace};
use crate::scalar::{Assignment, ParamSet, Scalar};

use super::{hecke_s, i_minus, i_plus, s_w, RMatrixError};

/// Coordinates of a quadratic element in `W (x) W`: word `x y` has index
/// `x*N + y`.
pub fn quadratic_vector(p: &NCPoly) -> Result<SVec<Scalar>, RMatrixError> {
    let n = p.gens().len();
    let mut v = Vec::new();
    for (w, c) in p.terms() {
        if w.len() != 2 {
            return Err(RMatrixError::NotQuadratic(p.to_string()));
        }
        let l = w.letters();
        v.push((l[0] as usize * n + l[1] as usize, c.clone()));
    }
    v.sort_by_key(|e| e.0);
    Ok(v)
}

pub fn quadratic_poly(gens: &Arc<GeneratorSet>, params: &Arc<ParamSet>, v: &SVec<Scalar>) -> NCPoly {
    let n = gens.len();
    NCPoly::from_terms(gens, params, v.iter().map(|(i, c)| (Word::from_slice(&[(i / n) as u16, (i % n) as u16]), c.clone())))
}

/// `Im(S_W - id)` and `Ker(S_W - id)` next to the spans of the listed
/// relations.
#[derive(Clone, Debug)]
pub struct IqSpans<F> {
    pub n: usize,
    pub minus: Subspace<F>,
    pub plus: Subspace<F>,
    pub listed_minus: Subspace<F>,
    pub listed_plus: Subspace<F>,
}

impl<F: Field> IqSpans<F> {
    pub fn minus_matches(&self) -> bool {
        self.minus.equals(&self.listed_minus).unwrap_or(false)
    }

    pub fn plus_matches(&self) -> bool {
        self.plus.equals(&self.listed_plus).unwrap_or(false)
    }

    pub fn direct_sum(&self) -> bool {
        let amb = self.minus.ambient();
        self.minus.dim() + self.plus.dim() == amb && self.minus.sum(&self.plus).map(|s| s.dim() == amb).unwrap_or(false)
    }
}

fn build<F: Field>(n: usize, m: SMat<F>, one: &F, listed: (Vec<SVec<F>>, Vec<SVec<F>>)) -> Result<IqSpans<F>, RMatrixError> {
    let nn = m.nrows();
    let d = m.sub(&SMat::identity(nn, one))?;
    Ok(IqSpans {
        n,
        minus: image(&d),
        plus: kernel(&d, one),
        listed_minus: Subspace::span(nn, listed.0)?,
        listed_plus: Subspace::span(nn, listed.1)?,
    })
}

type Listed = (Vec<SVec<Scalar>>, Vec<SVec<Scalar>>);

fn listed(n: usize) -> Result<Listed, RMatrixError> {
    let a = i_minus(n).relations.iter().map(quadratic_vector).collect::<Result<Vec<_>, _>>()?;
    let b = i_plus(n).relations.iter().map(quadratic_vector).collect::<Result<Vec<_>, _>>()?;
    Ok((a, b))
}

/// Symbolic spans over `Q(q)`.
pub fn iq_spans(n: usize) -> Result<IqSpans<Scalar>, RMatrixError> {
    let w = s_w(&hecke_s(n))?;
    let one = Scalar::one(&w.params());
    build(n, w.matrix, &one, listed(n)?)
}

/// Spans at a rational specialization of `q`.
pub fn iq_spans_at(n: usize, a: &Assignment) -> Result<IqSpans<BigRational>, RMatrixError> {
    let w = s_w(&hecke_s(n))?;
    let one = BigRational::from_integer(1.into());
    let (lm, lp) = listed(n)?;
    let spec = |vs: Vec<SVec<Scalar>>| -> Result<Vec<SVec<BigRational>>, RMatrixError> {
        vs.into_iter()
            .map(|v| {
                v.into_iter()
                    .map(|(i, c)| Ok((i, c.specialize(a)?)))
                    .filter(|r: &Result<(usize, BigRational), RMatrixError>| r.as_ref().map(|(_, c)| !Field::is_zero(c)).unwrap_or(true))
                    .collect()
            })
            .collect()
    };
    build(n, w.specialize(a)?, &one, (spec(lm)?, spec(lp)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n2_spans_match_listed() {
        let s = iq_spans(2).unwrap();
        assert_eq!((s.minus.dim(), s.plus.dim()), (6, 10));
        assert!(s.minus_matches(), "minus");
        assert!(s.plus_matches(), "plus");
        assert!(s.direct_sum());
    }

    #[test]
    fn quadratic_round_trip() {
        let f = i_minus(2);
        for r in &f.relations {
            let v = quadratic_vector(r).unwrap();
            assert!(quadratic_poly(&f.gens, &f.params, &v).same(r));
        }
    }
}
