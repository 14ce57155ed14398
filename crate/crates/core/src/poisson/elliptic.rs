use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::scalar::{Assignment, Poly, Scalar};

use super::catalog::elliptic;

fn normalize(p: &Poly) -> Poly {
    let c = p.content();
    let mut q = p.div_int_exact(&c);
    if q.leading_coeff().is_negative() {
        q = q.neg();
    }
    q
}

/// Polynomial conditions on the formal `J12, J23, J31` equivalent to the
/// vanishing of every generator Jacobiator of the elliptic table. Each
/// condition is primitive with positive leading coefficient; duplicates and
/// constant multiples are removed.
pub fn elliptic_constraints() -> Vec<Poly> {
    let t = elliptic();
    let mut out: Vec<Poly> = Vec::new();
    for d in t.jacobi_defects() {
        for (_, c) in d.value.terms() {
            let p = normalize(c.numer());
            if p.is_zero() || out.contains(&p) {
                continue;
            }
            out.push(p);
        }
    }
    out.sort_by(|a, b| crate::scalar::grlex_cmp(&a.leading().unwrap().0, &b.leading().unwrap().0).then(a.nterms().cmp(&b.nterms())));
    out
}

/// Completes `J12, J23` to a point on the constraint set by solving for
/// `J31`, when every constraint is linear in `J31`.
pub fn elliptic_solution(j12: &BigRational, j23: &BigRational) -> Option<Assignment> {
    let params = elliptic().params().clone();
    let mut a = Assignment::new();
    a.insert("J12".into(), j12.clone());
    a.insert("J23".into(), j23.clone());
    let v = params.index("J31")?;
    let constraints = elliptic_constraints();
    let mut j31: Option<BigRational> = None;
    for c in &constraints {
        if c.degree_in(v) != 1 {
            continue;
        }
        let parts = c.coefficients_in(v);
        let s = |p: &Poly| Scalar::from_poly(&params, p.clone()).specialize_partial(&a).ok()?.as_rational();
        let (c0, c1) = (s(&parts[0])?, s(&parts[1])?);
        if c1.is_zero() {
            continue;
        }
        j31 = Some(-c0 / c1);
        break;
    }
    a.insert("J31".into(), j31?);
    let ok = constraints
        .iter()
        .all(|c| Scalar::from_poly(&params, c.clone()).specialize(&a).map(|x| x.is_zero()).unwrap_or(false));
    ok.then_some(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::CPoly;
    use crate::poisson::BracketTable;

    fn r(a: i64) -> BigRational {
        BigRational::from_integer(a.into())
    }

    fn at(t: &BracketTable, a: &Assignment) -> BracketTable {
        t.map_entries("pt", |e| e.try_map_coeffs(|c| Ok(c.specialize_partial(a)?))).unwrap()
    }

    #[test]
    fn single_linear_constraint() {
        let cs = elliptic_constraints();
        let names = elliptic().params().names().to_vec();
        let shown: Vec<String> = cs.iter().map(|c| c.to_string_with(&names)).collect();
        assert_eq!(cs.len(), 1, "{shown:?}");
        assert_eq!(cs[0].total_degree(), 1);
        assert_eq!(cs[0].nterms(), 3);
    }

    #[test]
    fn satisfying_points_kill_all_jacobiators() {
        for (x, y) in [(2, 3), (-5, 7), (4, -1)] {
            let a = elliptic_solution(&r(x), &r(y)).unwrap();
            assert!(at(&elliptic(), &a).jacobi_defects().is_empty());
        }
        let mut bad = elliptic_solution(&r(2), &r(3)).unwrap();
        *bad.get_mut("J31").unwrap() += r(1);
        assert!(!at(&elliptic(), &bad).jacobi_defects().is_empty());
        let zero: Assignment = [("J12", 0), ("J23", 0), ("J31", 0)].into_iter().map(|(k, v)| (k.to_string(), r(v))).collect();
        assert!(at(&elliptic(), &zero).jacobi_defects().is_empty());
    }

    #[test]
    fn printed_table_fails_jacobi_everywhere() {
        let a = elliptic_solution(&r(2), &r(3)).unwrap();
        assert!(!at(&crate::poisson::elliptic_as_printed(), &a).jacobi_defects().is_empty());
    }

    #[test]
    fn linearization_is_so3_plus_center() {
        let t = elliptic();
        let mut shift = std::collections::BTreeMap::new();
        shift.insert("S0".to_string(), Scalar::one(t.params()));
        let res = crate::poisson::shift_and_linearize(&t, &shift).unwrap();
        assert_eq!(res.linear.degree(), 1);
        assert!(res.linear.jacobi_defects().is_empty());
        for j in 1..4 {
            assert!(res.linear.entry(0, j).is_zero());
        }
        let s3 = CPoly::var(t.gens(), t.params(), 3).scale(&Scalar::from_int(t.params(), -2));
        assert!(res.linear.entry(1, 2).same(&s3));
        let a = elliptic_solution(&r(2), &r(3)).unwrap();
        let defects = crate::poisson::mixed_defects(&at(&res.linear, &a), &at(&t, &a)).unwrap();
        assert!(defects.iter().all(|d| d.triple != (0, 1, 2)));
    }
}
