use std::collections::BTreeMap;

use crate::algebra::{CPoly, Mono};
use crate::linalg::{SVec, Subspace};
use crate::scalar::Scalar;

use super::{distinct_triples, rmat, LieData, PoissonError};

fn monomials(nvars: usize, max_degree: usize) -> Vec<Mono> {
    let mut out: Vec<Mono> = vec![Mono::new()];
    let mut layer: Vec<Mono> = vec![Mono::new()];
    for _ in 0..max_degree {
        let mut next = Vec::new();
        for m in &layer {
            let start = m.last().copied().unwrap_or(0);
            for v in start..nvars as u16 {
                let mut x = m.clone();
                x.push(v);
                next.push(x);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out.into_iter()
        .map(|vars| {
            let mut e = Mono::from_elem(0, nvars);
            for v in vars {
                e[v as usize] += 1;
            }
            e
        })
        .collect()
}

/// Whether `p` lies in the ideal generated by `gens`, using the products
/// `g * m` of total degree at most `max_degree`.
pub fn ideal_membership(gens: &[CPoly], p: &CPoly, max_degree: usize) -> bool {
    let nvars = p.gens().len();
    let mut index: BTreeMap<Mono, usize> = BTreeMap::new();
    for m in monomials(nvars, max_degree) {
        let k = index.len();
        index.insert(m, k);
    }
    let to_vec = |f: &CPoly| -> Option<SVec<Scalar>> {
        let mut v = Vec::new();
        for (m, c) in f.terms() {
            v.push((*index.get(m)?, c.clone()));
        }
        v.sort_by_key(|e| e.0);
        Some(v)
    };
    let mut span = Subspace::zero(index.len());
    for g in gens {
        let dg = g.degree().unwrap_or(0);
        if dg > max_degree {
            continue;
        }
        for m in monomials(nvars, max_degree - dg) {
            let prod = g.mul(&CPoly::monomial(p.gens(), p.params(), m, Scalar::one(p.params())));
            span.push(to_vec(&prod).expect("degree bounded")).expect("in range");
        }
    }
    match to_vec(p) {
        Some(v) => span.contains(&v),
        None => false,
    }
}

/// Membership verdicts for the R-matrix bracket on `sl(2)*` modulo the
/// quadratic Casimir, with a non-invariant quadratic as control.
#[derive(Clone, Debug)]
pub struct OrbitReport {
    pub casimir: String,
    pub jacobi_in_ideal: bool,
    pub casimir_brackets_in_ideal: bool,
    pub control: String,
    pub control_brackets_in_ideal: bool,
    pub witnesses: Vec<String>,
}

pub fn rmatrix_bracket_orbit_check() -> Result<OrbitReport, PoissonError> {
    let l = LieData::sl(2)?;
    let t = rmat(&l);
    let (g, p) = (t.gens().clone(), t.params().clone());
    let c = CPoly::parse(&g, &p, "H^2 + 4*E*F")?;
    let control = CPoly::parse(&g, &p, "E^2")?;
    let mut witnesses = Vec::new();
    let mut jacobi_in_ideal = true;
    for (i, j, k) in distinct_triples(g.len()) {
        let v = t.jacobiator(&t.var(i), &t.var(j), &t.var(k))?;
        if !ideal_membership(std::slice::from_ref(&c), &v, 3) {
            jacobi_in_ideal = false;
            witnesses.push(format!("Jac({}, {}, {}) = {v}", g.name(i), g.name(j), g.name(k)));
        }
    }
    let brackets_in = |q: &CPoly, witnesses: &mut Vec<String>| -> Result<bool, PoissonError> {
        let mut ok = true;
        for x in 0..g.len() {
            let v = t.eval(q, &t.var(x))?;
            if !ideal_membership(std::slice::from_ref(q), &v, 3) {
                ok = false;
                witnesses.push(format!("{{{q}, {}}} = {v}", g.name(x)));
            }
        }
        Ok(ok)
    };
    let casimir_brackets_in_ideal = brackets_in(&c, &mut witnesses)?;
    let control_brackets_in_ideal = brackets_in(&control, &mut witnesses)?;
    Ok(OrbitReport {
        casimir: c.to_string(),
        jacobi_in_ideal,
        casimir_brackets_in_ideal,
        control: control.to_string(),
        control_brackets_in_ideal,
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbit_verdicts() {
        let r = rmatrix_bracket_orbit_check().unwrap();
        assert!(r.jacobi_in_ideal);
        assert!(r.casimir_brackets_in_ideal);
        assert!(!r.control_brackets_in_ideal);
        assert_eq!(r.witnesses.len(), 1, "{:?}", r.witnesses);
    }

    #[test]
    fn membership_by_hand() {
        let l = LieData::sl(2).unwrap();
        let t = rmat(&l);
        let (g, p) = (t.gens().clone(), t.params().clone());
        let e2 = CPoly::parse(&g, &p, "E^2").unwrap();
        assert!(ideal_membership(std::slice::from_ref(&e2), &CPoly::parse(&g, &p, "E^2*H - 3*E^3").unwrap(), 3));
        assert!(!ideal_membership(std::slice::from_ref(&e2), &CPoly::parse(&g, &p, "E*H^2").unwrap(), 3));
    }
}
