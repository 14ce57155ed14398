use crate::algebra::{FamilyKind, GeneratorSet, NCPoly, RelationFamily, Word};
use crate::linalg::{inverse, SMat, SVec};
use crate::quotient::NuData;
use crate::scalar::Scalar;

use super::{BraidedError, QLieBracket};

/// `(V, I, ν0, ν1)` with `I = V₋ ⊕ C_q`, `ν1 = h [ , ]` and `ν0` equal to
/// `c0` on `C_q` and zero on the other summands of `V (x) V`.
pub fn quantum_nu_data(b: &QLieBracket) -> Result<NuData, BraidedError> {
    let p = &b.params;
    let h = Scalar::param(p, "h")?;
    let c0 = Scalar::param(p, "c0")?;
    let mut cols: Vec<SVec<Scalar>> = Vec::new();
    let mut cas_col = None;
    for c in &b.components {
        if c.weight == 0 {
            cas_col = Some(cols.len());
            cols.push(b.casimir.clone());
        } else {
            cols.extend(c.basis.iter().cloned());
        }
    }
    let cas_col = cas_col.ok_or_else(|| BraidedError::Precondition("no invariant summand".into()))?;
    let qinv = inverse(&SMat::from_rows(9, cols)?.transpose())?;
    let nu0 = crate::linalg::sparse::scale(qinv.row(cas_col), &c0);
    let mut i_space = b.minus().basis.clone();
    i_space.push(b.casimir.clone());
    Ok(NuData { names: b.names.clone(), params: p.clone(), i_space, nu0, nu1: b.table.scale(&h) })
}

/// [`quantum_nu_data`] at `q = 1`.
pub fn classical_nu_data(b: &QLieBracket) -> Result<NuData, BraidedError> {
    let n = quantum_nu_data(b)?;
    let one = Scalar::one(&b.params);
    let sub = |x: &Scalar| x.substitute("q", &one);
    let subv = |v: &SVec<Scalar>| -> Result<SVec<Scalar>, BraidedError> {
        let mut out = Vec::new();
        for (i, x) in v {
            let y = sub(x)?;
            if !y.is_zero() {
                out.push((*i, y));
            }
        }
        Ok(out)
    };
    Ok(NuData {
        names: n.names.clone(),
        params: n.params.clone(),
        i_space: n.i_space.iter().map(subv).collect::<Result<_, _>>()?,
        nu0: subv(&n.nu0)?,
        nu1: n.nu1.map(sub)?,
    })
}

/// `T(V) / (x - h[x] for x in V₋, C_q - c0)` on generators `u, v, w`.
pub fn first_type_ideal(b: &QLieBracket, c0: &Scalar) -> Result<RelationFamily, BraidedError> {
    let gens = GeneratorSet::new(&b.names)?;
    let p = &b.params;
    let h = Scalar::param(p, "h")?;
    let quad = |v: &SVec<Scalar>| NCPoly::from_terms(&gens, p, v.iter().map(|(i, x)| (Word::from_slice(&[(i / 3) as u16, (i % 3) as u16]), x.clone())));
    let lin = |v: &SVec<Scalar>| NCPoly::from_terms(&gens, p, v.iter().map(|(i, x)| (Word::from_slice(&[*i as u16]), x.clone())));
    let mut rels = Vec::new();
    for x in &b.minus().basis {
        rels.push(quad(x).sub(&lin(&b.apply(x)).scale(&h)));
    }
    rels.push(quad(&b.casimir).sub(&NCPoly::constant(&gens, c0.clone())));
    Ok(RelationFamily::new("first_type", &gens, p, FamilyKind::Filtered, rels)?)
}

#[cfg(test)]
mod tests {
    use super::super::q_lie_bracket;
    use super::*;
    use crate::algebra::CPoly;

    #[test]
    fn classical_specialization_is_the_cone() {
        let b = q_lie_bracket().unwrap();
        let p = b.params.clone();
        let fam = first_type_ideal(&b, &Scalar::param(&p, "c0").unwrap()).unwrap();
        let zero = Scalar::zero(&p);
        let fam = fam.substitute("h", &zero).unwrap().substitute("q", &Scalar::one(&p)).unwrap().substitute("c0", &zero).unwrap();
        assert_eq!(fam.kind, FamilyKind::Graded);
        let images: Vec<CPoly> = fam.relations.iter().map(|r| r.commutative_image()).collect();
        assert!(images[..3].iter().all(|c| c.is_zero()));
        let cone = NCPoly::parse(&fam.gens, &p, "v*v + 4*u*w").unwrap().commutative_image();
        assert!(images[3].same(&cone));
    }

    #[test]
    fn nu0_is_dual_to_casimir() {
        let b = q_lie_bracket().unwrap();
        let n = quantum_nu_data(&b).unwrap();
        let c0 = Scalar::param(&b.params, "c0").unwrap();
        let val = crate::linalg::sparse::dot(&n.nu0, &b.casimir, &Scalar::zero(&b.params));
        assert_eq!(val, c0);
        for x in &b.minus().basis {
            assert!(crate::linalg::sparse::dot(&n.nu0, x, &Scalar::zero(&b.params)).is_zero());
        }
    }
}
