use std::sync::Arc;

use num_rational::BigRational;
use proptest::prelude::*;
use qpencil_core::scalar::{Assignment, ParamSet, Poly, Scalar};
use smallvec::smallvec;

fn ps() -> Arc<ParamSet> {
    ParamSet::standard()
}

fn poly_strategy() -> impl Strategy<Value = Poly> {
    // Small polynomials in q and h with integer coefficients.
    prop::collection::vec(((0u16..3), (0u16..3), -4i64..5), 1..4).prop_map(|terms| {
        let n = ps().len();
        let mut p = Poly::zero(n);
        for (a, b, c) in terms {
            let mut e: smallvec::SmallVec<[u16; 12]> = smallvec![0; n];
            e[0] = a;
            e[1] = b;
            p = p.add(&Poly::monomial(e, c.into()));
        }
        p
    })
}

fn scalar_strategy() -> impl Strategy<Value = Scalar> {
    (poly_strategy(), poly_strategy()).prop_filter_map("nonzero denominator", |(n, d)| {
        if d.is_zero() {
            None
        } else {
            Some(Scalar::from_parts(&ps(), n, d).unwrap())
        }
    })
}

fn points() -> Vec<Assignment> {
    [(3i64, 7i64), (-5, 2), (11, 3)]
        .iter()
        .map(|&(a, b)| {
            let mut m = Assignment::new();
            m.insert("q".into(), BigRational::new(a.into(), b.into()));
            m.insert("h".into(), BigRational::new((b + 1).into(), (a.abs() + 2).into()));
            m
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn addition_is_associative(a in scalar_strategy(), b in scalar_strategy(), c in scalar_strategy()) {
        prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
    }

    #[test]
    fn multiplication_is_associative(a in scalar_strategy(), b in scalar_strategy(), c in scalar_strategy()) {
        prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
    }

    #[test]
    fn distributivity(a in scalar_strategy(), b in scalar_strategy(), c in scalar_strategy()) {
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
    }

    #[test]
    fn inverses(a in scalar_strategy()) {
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn equality_agrees_with_specialization(a in scalar_strategy(), b in scalar_strategy()) {
        let eq = a.try_eq(&b).unwrap();
        for p in points() {
            if let (Ok(x), Ok(y)) = (a.specialize(&p), b.specialize(&p)) {
                if eq {
                    prop_assert_eq!(x, y);
                }
            }
        }
        let sum = &a + &b;
        let alt = &b + &a;
        prop_assert!(sum.try_eq(&alt).unwrap());
    }

    #[test]
    fn normalization_is_idempotent(a in scalar_strategy()) {
        let again = a.renormalize();
        prop_assert_eq!(again.numer(), a.numer());
        prop_assert_eq!(again.denom(), a.denom());
    }

    #[test]
    fn canonical_string_round_trips(a in scalar_strategy()) {
        let text = a.to_canonical_string();
        let back = Scalar::parse(&ps(), &text).unwrap();
        prop_assert_eq!(back.to_canonical_string(), text);
    }

    #[test]
    fn specialization_is_a_homomorphism(a in scalar_strategy(), b in scalar_strategy()) {
        for p in points() {
            if let (Ok(x), Ok(y), Ok(z)) = (a.specialize(&p), b.specialize(&p), (&a * &b).specialize(&p)) {
                prop_assert_eq!(x * y, z);
            }
        }
    }
}
