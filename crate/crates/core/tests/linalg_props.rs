use num_rational::BigRational;
use proptest::prelude::*;
use qpencil_core::linalg::{kernel, sparse, SMat, SVec, Subspace};

const AMBIENT: usize = 6;

fn vec_strategy() -> impl Strategy<Value = SVec<BigRational>> {
    prop::collection::vec(-2i64..3, AMBIENT).prop_map(|xs| {
        xs.into_iter()
            .enumerate()
            .filter(|(_, x)| *x != 0)
            .map(|(i, x)| (i, BigRational::from_integer(x.into())))
            .collect()
    })
}

fn space_strategy() -> impl Strategy<Value = Vec<SVec<BigRational>>> {
    prop::collection::vec(vec_strategy(), 0..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn grassmann_identity(a in space_strategy(), b in space_strategy()) {
        let a = Subspace::span(AMBIENT, a).unwrap();
        let b = Subspace::span(AMBIENT, b).unwrap();
        let s = a.sum(&b).unwrap();
        let i = a.intersect(&b).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), a.dim() + b.dim());
        prop_assert!(i.is_subspace_of(&a).unwrap());
        prop_assert!(i.is_subspace_of(&b).unwrap());
        prop_assert!(a.is_subspace_of(&s).unwrap());
    }

    #[test]
    fn canonical_basis_ignores_input_order(vs in space_strategy()) {
        let a = Subspace::span(AMBIENT, vs.clone()).unwrap();
        let mut rev = vs.clone();
        rev.reverse();
        let b = Subspace::span(AMBIENT, rev).unwrap();
        prop_assert_eq!(a.dim(), b.dim());
        prop_assert_eq!(a.canonical_basis(), b.canonical_basis());
        let again = Subspace::span(AMBIENT, a.canonical_basis()).unwrap();
        prop_assert_eq!(again.canonical_basis(), a.canonical_basis());
    }

    #[test]
    fn rank_nullity(rows in space_strategy()) {
        let m = SMat::from_rows(AMBIENT, rows.clone()).unwrap();
        let one = BigRational::from_integer(1.into());
        let k = kernel(&m, &one);
        let r = Subspace::span(AMBIENT, rows.clone()).unwrap().dim();
        prop_assert_eq!(k.dim() + r, AMBIENT);
        let zero = BigRational::from_integer(0.into());
        for v in k.basis() {
            for row in &rows {
                prop_assert_eq!(sparse::dot(row, &v, &zero), zero.clone());
            }
        }
    }
}
