use num_rational::BigRational;
use proptest::prelude::*;
use qpencil_core::braided::*;
use qpencil_core::linalg::SMat;
use qpencil_core::quotient::{hilbert, pbw_nu_check, ModeRequest, QuotientPresentation};
use qpencil_core::scalar::{Assignment, Scalar};

fn s(b: &QLieBracket, e: &str) -> Scalar {
    Scalar::parse(&b.params, e).unwrap()
}

fn int(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

#[test]
fn all_nine_printed_entries() {
    let b = q_lie_bracket().unwrap();
    let rows = [
        ("u", "u", ""),
        ("u", "v", "-q^2*M*u"),
        ("u", "w", "(q+q^-1)^-1*M*v"),
        ("v", "u", "M*u"),
        ("v", "v", "(1-q^2)*M*v"),
        ("v", "w", "-q^2*M*w"),
        ("w", "u", "-(q+q^-1)^-1*M*v"),
        ("w", "v", "M*w"),
        ("w", "w", ""),
    ];
    let idx = |n: &str| ["u", "v", "w"].iter().position(|x| *x == n).unwrap();
    for (a, c, rhs) in rows {
        let got = b.entry(idx(a), idx(c));
        if rhs.is_empty() {
            assert!(got.is_empty(), "[{a},{c}]");
            continue;
        }
        let (coef, gen) = rhs.rsplit_once('*').unwrap();
        assert_eq!(got, vec![(idx(gen), s(&b, coef))], "[{a},{c}]");
    }
}

#[test]
fn module_matches_hand_solution() {
    // Solving equivariance of the printed table for K = diag(q^-2, 1, q^2)
    // with F w = w-to-v coefficient 1 gives these matrices.
    let b = q_lie_bracket().unwrap();
    let m = &b.module;
    assert_eq!(m.weights, vec![-2, 0, 2]);
    assert_eq!(m.f.get(1, 2).unwrap(), &s(&b, "1"));
    assert_eq!(m.e.get(2, 1).unwrap(), &s(&b, "q+q^-1"));
    assert_eq!(m.e.get(1, 0).unwrap(), &s(&b, "-q^-2"));
    assert_eq!(m.f.get(0, 1).unwrap(), &s(&b, "-q^2*(q+q^-1)"));
    assert_eq!(b.equivariance_failure().unwrap(), None);
}

#[test]
fn end_decomposition_is_clebsch_gordan() {
    for k in 0..=5usize {
        let d = decompose_end(&irrep(k)).unwrap();
        let expected: Vec<Component> = (0..=k as i64).rev().map(|j| Component { weight: 2 * j, multiplicity: 1 }).collect();
        assert_eq!(d, expected, "k={k}");
    }
}

#[test]
fn end_product_is_equivariant() {
    for k in 1..=3 {
        assert_eq!(irrep(k).product_equivariance().unwrap(), None, "k={k}");
    }
}

/// Integer spin-k/2 matrices: `h v_j = (k-2j) v_j`, `e v_j = j(k-j+1) v_(j-1)`, `f v_j = v_(j+1)`.
fn classical_casimir(k: usize) -> Vec<Vec<i64>> {
    let n = k + 1;
    let mut e = vec![vec![0i64; n]; n];
    let mut f = vec![vec![0i64; n]; n];
    let mut h = vec![vec![0i64; n]; n];
    for j in 0..n {
        h[j][j] = k as i64 - 2 * j as i64;
        if j > 0 {
            e[j - 1][j] = (j * (k - j + 1)) as i64;
        }
        if j + 1 < n {
            f[j + 1][j] = 1;
        }
    }
    let mul = |a: &Vec<Vec<i64>>, b: &Vec<Vec<i64>>| -> Vec<Vec<i64>> {
        (0..n).map(|i| (0..n).map(|j| (0..n).map(|l| a[i][l] * b[l][j]).sum()).collect()).collect()
    };
    let (hh, ef, fe) = (mul(&h, &h), mul(&e, &f), mul(&f, &e));
    (0..n).map(|i| (0..n).map(|j| hh[i][j] + 2 * ef[i][j] + 2 * fe[i][j]).collect()).collect()
}

#[test]
fn casimir_values_at_q_one() {
    // At q = 1, M = 1 the commutator bracket of the enveloping algebra is
    // [u,v] = -2u, [v,w] = -2w, [u,w] = v, realized by u = f, v = -h, w = e,
    // and C = v v + 2 u w + 2 w u maps to h^2 + 2ef + 2fe.
    let b = q_lie_bracket().unwrap();
    let rows = c0_table(&[0, 1, 2, 3, 4, 5], &b).unwrap();
    let mut a = Assignment::new();
    a.insert("M".into(), int(1));
    for r in &rows {
        let cas = classical_casimir(r.k);
        let scalar = cas[0][0];
        assert!((0..=r.k).all(|i| (0..=r.k).all(|j| cas[i][j] == if i == j { scalar } else { 0 })));
        assert_eq!(r.c0_at_q1.specialize(&a).unwrap(), int(scalar), "k={}", r.k);
        assert_eq!(scalar, (r.k * (r.k + 2)) as i64);
    }
    assert!(rows[0].nu.is_none() && rows[0].c0.is_zero());
    for r in &rows[1..] {
        let nu = r.nu.as_ref().unwrap();
        assert!(!nu.is_zero());
        assert!(!nu.substitute("q", &s(&b, "1")).unwrap().is_zero());
        assert!(r.c0.depends_on("q"));
    }
}

#[test]
fn almost_representation_is_equivariant_for_spin_one() {
    let b = q_lie_bracket().unwrap();
    let a = almost_representation(&irrep(2), &b).unwrap();
    assert_eq!(a.rho.len(), 3);
    assert!(a.rho.iter().all(|m| !m.is_zero()));
    assert_eq!(a.other_skew_checked, 0);
}

#[test]
fn quantum_dimensions() {
    for k in 0..=4usize {
        let u = irrep(k);
        let q = s_param(&u);
        let mut expected = Scalar::zero(&u.params);
        for j in 0..=k as i32 {
            expected = &expected + &q.pow(2 * j - k as i32).unwrap();
        }
        assert_eq!(quantum_trace(&u, &u.identity()).unwrap(), expected, "k={k}");
    }
    let u = irrep(1);
    let mut a = Assignment::new();
    a.insert("q".into(), int(1));
    assert_eq!(quantum_trace(&u, &u.identity()).unwrap().specialize(&a).unwrap(), int(2));
}

fn s_param(u: &WeightRep) -> Scalar {
    Scalar::param(&u.params, "q").unwrap()
}

#[test]
fn general_scan_finds_two_points() {
    let b = q_lie_bracket().unwrap();
    for q in [int(2), int(3), BigRational::new(5.into(), 2.into())] {
        let r = general_conjugation_scan(&b, &q, &int(1)).unwrap();
        assert_eq!(r.solutions, Some(2), "{}", r.point);
        assert!(r.known_points.iter().all(|(_, ok)| *ok));
    }
    let r = general_conjugation_scan(&b, &int(1), &int(1)).unwrap();
    assert_eq!(r.solutions, None);
}

#[test]
fn nu_conditions_and_first_type_quotient() {
    let b = q_lie_bracket().unwrap();
    let cl = pbw_nu_check(&classical_nu_data(&b).unwrap()).unwrap();
    assert!(cl.holds_identically());
    let qu = pbw_nu_check(&quantum_nu_data(&b).unwrap()).unwrap();
    assert!(qu.consistent);
    let fam = first_type_ideal(&b, &s(&b, "c0")).unwrap();
    let h = hilbert(&QuotientPresentation::new(fam, 3).unwrap(), &ModeRequest::Symbolic).unwrap();
    // Functions on the cone: 2j+1 in degree j, summed.
    let cone: Vec<usize> = (0..=3).map(|d| (0..=d).map(|j| 2 * j + 1).sum()).collect();
    assert_eq!(h.dims, cone);
}

#[test]
fn conjugation_samples_over_complex_span() {
    let b = q_lie_bracket().unwrap();
    let i = s(&b, "i");
    let c = Conjugation::diagonal(&b, [1, -1, 1]);
    // (i u)* = -i u.
    assert_eq!(c.apply(&vec![(0, i.clone())]), vec![(0, -&i)]);
    let t = SMat::from_triplets(3, 3, vec![(0, 2, s(&b, "1")), (1, 1, s(&b, "-1")), (2, 0, s(&b, "1"))]).unwrap();
    let swap = conjugation_check(&b, &Conjugation::new("swap", t));
    assert!(swap.involutive && !swap.compatible());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn trace_invariance_random(k in 1usize..4, entries in prop::collection::vec(-5i64..6, 16)) {
        let u = irrep(k);
        let n = u.dim();
        let trip = (0..n * n).map(|i| (i / n, i % n, Scalar::from_int(&u.params, entries[i % entries.len()]))).collect();
        let m = SMat::from_triplets(n, n, trip).unwrap();
        prop_assert!(trace_invariance(&u, &m).unwrap().is_empty());
    }
}
