use rayon::prelude::*;

use crate::linalg::{Field, SMat, SVec};
use crate::scalar::Scalar;

use super::{highest_weight_vectors, irrep, mat_of, BraidedError, Component, QLieBracket, WeightRep};

/// An equivariant map `ρ: V -> End(U)` with the factor `ν` of
/// `∘ρ^{⊗2}(x) = ν ρ([x])` on the skew adjoint summand.
#[derive(Clone, Debug)]
pub struct AlmostRep {
    pub dim: usize,
    pub decomposition: Vec<Component>,
    /// Images of `u, v, w`.
    pub rho: Vec<SMat<Scalar>>,
    /// `None` when `End(U)` has no adjoint summand and `ρ = 0`.
    pub nu: Option<Scalar>,
    pub nu_at_q1: Option<Scalar>,
    /// Number of other skew summands of `V (x) V` whose image was checked to vanish.
    pub other_skew_checked: usize,
}

impl AlmostRep {
    pub fn degenerate(&self) -> bool {
        self.nu.is_none()
    }
}

/// `ρ_ν = ν^-1 ρ` with the Casimir image `c0 · id`.
#[derive(Clone, Debug)]
pub struct BraidedStructure {
    pub almost: AlmostRep,
    pub rho_nu: Vec<SMat<Scalar>>,
    pub c0: Scalar,
}

fn quad(rho: &[SMat<Scalar>], x: &SVec<Scalar>) -> Result<SMat<Scalar>, BraidedError> {
    let n = rho[0].nrows();
    let mut acc = SMat::zeros(n, n);
    for (idx, c) in x {
        acc = acc.add(&rho[idx / 3].mul(&rho[idx % 3])?.scale(c))?;
    }
    Ok(acc)
}

fn lin(rho: &[SMat<Scalar>], x: &SVec<Scalar>) -> Result<SMat<Scalar>, BraidedError> {
    let n = rho[0].nrows();
    let mut acc = SMat::zeros(n, n);
    for (i, c) in x {
        acc = acc.add(&rho[*i].scale(c))?;
    }
    Ok(acc)
}

/// First nonzero ratio `a / b` over the entries of `b`.
fn ratio(a: &SMat<Scalar>, b: &SMat<Scalar>) -> Option<Scalar> {
    let (r, c, x) = b.triplets().into_iter().next()?;
    Some(&a.get(r, c).cloned().unwrap_or_else(|| x.zero_like()) / &x)
}

/// The adjoint summand of `End(U)` gives `ρ(w)` (highest weight); `ρ(v)`
/// and `ρ(u)` follow from `ρ(F x) = ρ^End(F) ρ(x)`.
pub fn almost_representation(u: &WeightRep, b: &QLieBracket) -> Result<AlmostRep, BraidedError> {
    let end = u.end_module()?;
    let decomposition = super::decompose(&end)?;
    let n = u.dim();
    for c in b.other_skew() {
        if decomposition.iter().any(|d| d.weight == c.weight) {
            return Err(BraidedError::Precondition(format!("End(U) contains a summand of highest weight {} from the skew part", c.weight)));
        }
    }
    let adj = decomposition.iter().find(|d| d.weight == 2).map(|d| d.multiplicity).unwrap_or(0);
    if adj > 1 {
        return Err(BraidedError::Precondition(format!("adjoint summand has multiplicity {adj} in End(U)")));
    }
    if adj == 0 {
        return Ok(AlmostRep {
            dim: n,
            decomposition,
            rho: vec![SMat::zeros(n, n); 3],
            nu: None,
            nu_at_q1: None,
            other_skew_checked: b.other_skew().len(),
        });
    }
    let hw = highest_weight_vectors(&end, 2).remove(0);
    let v = &b.module;
    let top = (0..3).find(|&i| v.weights[i] == 2).expect("adjoint module has weight 2");
    let mut rho: Vec<Option<SMat<Scalar>>> = vec![None; 3];
    rho[top] = Some(mat_of(n, &hw));
    let mut cur = top;
    loop {
        let col = v.f.transpose().row(cur).clone();
        let Some((next, coef)) = col.first().cloned() else { break };
        let img = u.end_f(rho[cur].as_ref().unwrap())?.scale(&coef.inv()?);
        rho[next] = Some(img);
        cur = next;
    }
    let rho: Vec<SMat<Scalar>> = rho.into_iter().map(|m| m.expect("lowering chain spans V")).collect();

    for (name, a, op) in [("E", &v.e, 0), ("F", &v.f, 1), ("K", &v.k, 2)] {
        for x in 0..3 {
            let ax = a.apply(&[(x, Scalar::one(&b.params))])?;
            let lhs = lin(&rho, &ax)?;
            let rhs = match op {
                0 => u.end_e(&rho[x])?,
                1 => u.end_f(&rho[x])?,
                _ => u.end_k(&rho[x])?,
            };
            if !lhs.same(&rhs) {
                return Err(BraidedError::NotEquivariant(format!("ρ({name}·{}) ≠ ρ^End({name}) ρ({})", b.names[x], b.names[x])));
            }
        }
    }

    for c in b.other_skew() {
        for x in &c.basis {
            if !quad(&rho, x)?.is_zero() {
                return Err(BraidedError::Precondition(format!("image of the skew summand of weight {} is nonzero", c.weight)));
            }
        }
    }

    let mut nu: Option<Scalar> = None;
    for x in &b.minus().basis {
        let lhs = quad(&rho, x)?;
        let rhs = lin(&rho, &b.apply(x))?;
        let r = match &nu {
            Some(r) => r.clone(),
            None => {
                let r = ratio(&lhs, &rhs).ok_or_else(|| BraidedError::Precondition("ρ vanishes on the bracket image".into()))?;
                nu = Some(r.clone());
                r
            }
        };
        if !lhs.same(&rhs.scale(&r)) {
            return Err(BraidedError::Precondition("products on the skew adjoint summand are not proportional to ρ∘[ , ]".into()));
        }
    }
    let nu = nu.expect("skew adjoint summand is nonempty");
    let one = Scalar::one(&b.params);
    let nu_at_q1 = nu.substitute("q", &one).ok();
    Ok(AlmostRep { dim: n, decomposition, rho, nu: Some(nu), nu_at_q1, other_skew_checked: b.other_skew().len() })
}

/// Rescales by `ν^-1`, checks the relations `x = [x]` of the enveloping
/// algebra on the skew adjoint summand and extracts `ρ_ν(C_q) = c0 · id`.
pub fn braided_structure(u: &WeightRep, b: &QLieBracket) -> Result<BraidedStructure, BraidedError> {
    let almost = almost_representation(u, b)?;
    let n = almost.dim;
    let Some(nu) = &almost.nu else {
        let c0 = Scalar::zero(&b.params);
        return Ok(BraidedStructure { rho_nu: almost.rho.clone(), almost, c0 });
    };
    let inv = nu.inv()?;
    let rho_nu: Vec<SMat<Scalar>> = almost.rho.iter().map(|m| m.scale(&inv)).collect();
    for x in &b.minus().basis {
        if !quad(&rho_nu, x)?.same(&lin(&rho_nu, &b.apply(x))?) {
            return Err(BraidedError::Relation("x - [x] on the skew adjoint summand".into()));
        }
    }
    let cas = quad(&rho_nu, &b.casimir)?;
    let c0 = cas.get(0, 0).cloned().unwrap_or_else(|| Scalar::zero(&b.params));
    if !cas.same(&SMat::identity(n, &Scalar::one(&b.params)).scale(&c0)) {
        return Err(BraidedError::NonScalarCasimir(format!("dimension {n}")));
    }
    Ok(BraidedStructure { almost, rho_nu, c0 })
}

#[derive(Clone, Debug)]
pub struct C0Row {
    pub k: usize,
    pub decomposition: Vec<Component>,
    pub nu: Option<Scalar>,
    pub c0: Scalar,
    pub c0_at_q1: Scalar,
}

/// `c0(k)` for each `k`, computed independently per `k`.
pub fn c0_table(ks: &[usize], b: &QLieBracket) -> Result<Vec<C0Row>, BraidedError> {
    let one = Scalar::one(&b.params);
    ks.par_iter()
        .map(|&k| {
            let s = braided_structure(&irrep(k), b)?;
            let c0_at_q1 = s.c0.substitute("q", &one)?;
            Ok(C0Row { k, decomposition: s.almost.decomposition.clone(), nu: s.almost.nu.clone(), c0: s.c0, c0_at_q1 })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::super::q_lie_bracket;
    use super::*;

    #[test]
    fn fundamental_has_nonzero_nu() {
        let b = q_lie_bracket().unwrap();
        let a = almost_representation(&irrep(1), &b).unwrap();
        assert!(!a.nu.as_ref().unwrap().is_zero());
        assert!(!a.nu_at_q1.as_ref().unwrap().is_zero());
    }

    #[test]
    fn trivial_is_degenerate() {
        let b = q_lie_bracket().unwrap();
        let s = braided_structure(&irrep(0), &b).unwrap();
        assert!(s.almost.degenerate());
        assert!(s.c0.is_zero());
    }

    #[test]
    fn spin_one_structure() {
        let b = q_lie_bracket().unwrap();
        let s = braided_structure(&irrep(2), &b).unwrap();
        assert_eq!(s.almost.other_skew_checked, 0);
        assert!(!s.c0.is_zero());
    }
}
