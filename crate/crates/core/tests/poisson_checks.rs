use num_rational::BigRational;
use proptest::prelude::*;
use qpencil_core::algebra::CPoly;
use qpencil_core::poisson::*;
use qpencil_core::scalar::Scalar;

#[test]
fn catalog_brackets_satisfy_jacobi() {
    for n in [2, 3] {
        for t in [sklyanin2(n), linear1(n), gl(n)] {
            let d = t.jacobi_defects();
            assert!(d.is_empty(), "{}: {:?}", t.name(), d.first());
        }
        let m = mixed_defects(&linear1(n), &sklyanin2(n)).unwrap();
        assert!(m.is_empty(), "n = {n}: {:?}", m.first());
    }
}

#[test]
fn mixed_with_itself_is_twice_the_jacobiator() {
    let t = sklyanin2(2).add(&gl(2));
    let p = t.params().clone();
    let two = Scalar::from_int(&p, 2);
    for (i, j, k) in distinct_triples(4) {
        let (x, y, z) = (t.var(i), t.var(j), t.var(k));
        let m = mixed_jacobiator(&t, &t, &x, &y, &z).unwrap();
        assert!(m.same(&t.jacobiator(&x, &y, &z).unwrap().scale(&two)));
    }
}

#[test]
fn sum_with_gl_is_not_poisson() {
    // sklyanin2 + gl has a nonvanishing Jacobiator, so compatibility is a real test
    assert!(!sklyanin2(2).add(&gl(2)).jacobi_defects().is_empty());
}

#[test]
fn elliptic_pencil_under_constraint() {
    let t = elliptic();
    let p = t.params().clone();
    let j31 = Scalar::parse(&p, "-J12 - J23").unwrap();
    let sub = |b: &BracketTable| b.map_entries(b.name(), |e| e.try_map_coeffs(|c| Ok(c.substitute("J31", &j31)?))).unwrap();
    let mut shift = std::collections::BTreeMap::new();
    shift.insert("S0".to_string(), Scalar::one(&p));
    let lin = shift_and_linearize(&t, &shift).unwrap().linear;
    let t = sub(&t);
    assert!(t.jacobi_defects().is_empty());
    let (s0, s1, s2) = (t.var(0), t.var(1), t.var(2));
    assert!(mixed_jacobiator(&sub(&lin), &t, &s0, &s1, &s2).unwrap().is_zero());
    assert!(mixed_defects(&sub(&lin), &t).unwrap().is_empty());
}

type M = Vec<Vec<i64>>;

fn kron(a: &M, b: &M) -> M {
    let (n, m) = (a.len(), b.len());
    let mut out = vec![vec![0; n * m]; n * m];
    for i in 0..n {
        for j in 0..n {
            for k in 0..m {
                for l in 0..m {
                    out[i * m + k][j * m + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

fn mul(a: &M, b: &M) -> M {
    let n = a.len();
    let mut out = vec![vec![0; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] != 0 {
                for j in 0..n {
                    out[i][j] += a[i][k] * b[k][j];
                }
            }
        }
    }
    out
}

fn lin(terms: &[(i64, &M)]) -> M {
    let n = terms[0].1.len();
    let mut out = vec![vec![0; n]; n];
    for (c, m) in terms {
        for i in 0..n {
            for j in 0..n {
                out[i][j] += c * m[i][j];
            }
        }
    }
    out
}

fn comm(a: &M, b: &M) -> M {
    lin(&[(1, &mul(a, b)), (-1, &mul(b, a))])
}

#[test]
fn sl2_defect_matches_matrix_computation() {
    let l = LieData::sl(2).unwrap();
    let d = cybe_defect(&l).unwrap();
    assert!(d.antisymmetric && d.ad_invariant);
    assert!(!d.is_zero());
    assert!(d.normalization.is_some());
    // fundamental representation, with 2R = E(x)F - F(x)E
    let e: M = vec![vec![0, 1], vec![0, 0]];
    let f: M = vec![vec![0, 0], vec![1, 0]];
    let h: M = vec![vec![1, 0], vec![0, -1]];
    let id: M = vec![vec![1, 0], vec![0, 1]];
    let r = lin(&[(1, &kron(&e, &f)), (-1, &kron(&f, &e))]);
    let r12 = kron(&r, &id);
    let r23 = kron(&id, &r);
    let p23 = kron(&id, &vec![vec![1, 0, 0, 0], vec![0, 0, 1, 0], vec![0, 1, 0, 0], vec![0, 0, 0, 1]]);
    let r13 = mul(&mul(&p23, &r12), &p23);
    let four_defect = lin(&[(1, &comm(&r12, &r13)), (1, &comm(&r12, &r23)), (1, &comm(&r13, &r23))]);
    let basis = [&e, &f, &h];
    let mut image = vec![vec![BigRational::from_integer(0.into()); 8]; 8];
    for ((a, b, c), x) in d.nonzero_entries() {
        let x = x.as_rational().unwrap();
        let m = kron(&kron(basis[a], basis[b]), basis[c]);
        for i in 0..8 {
            for j in 0..8 {
                image[i][j] += &x * BigRational::from_integer(m[i][j].into());
            }
        }
    }
    for i in 0..8 {
        for j in 0..8 {
            assert_eq!(image[i][j].clone() * BigRational::from_integer(4.into()), BigRational::from_integer(four_defect[i][j].into()));
        }
    }
}

#[test]
fn sl3_defect_is_invariant() {
    let d = cybe_defect(&LieData::sl(3).unwrap()).unwrap();
    assert!(d.ad_invariant);
    assert!(d.antisymmetric);
    assert!(d.normalization.is_some());
}

#[test]
fn bracket_file_round_trip() {
    for t in [sklyanin2(2), elliptic(), rmat(&LieData::sl(2).unwrap())] {
        let back = BracketTable::from_text(&t.to_text()).unwrap();
        assert!(back.same(&t), "{}", t.name());
    }
    let err = BracketTable::from_text("generators: x, y\nbracket x, z: x\n").unwrap_err();
    assert!(err.to_string().contains("line 2"));
    assert!(BracketTable::from_text("generators: x, y\nbracket x, x: y\n").is_err());
}

fn poly_strategy() -> impl Strategy<Value = Vec<(usize, usize, i64)>> {
    prop::collection::vec((0usize..4, 0usize..4, -3i64..4), 0..5)
}

fn build(t: &BracketTable, terms: &[(usize, usize, i64)]) -> CPoly {
    let mut f = CPoly::zero(t.gens(), t.params());
    for &(a, b, c) in terms {
        f = f.add(&t.var(a).mul(&t.var(b)).add(&t.var(a)).scale(&Scalar::from_int(t.params(), c)));
    }
    f
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn bracket_is_antisymmetric_biderivation(f in poly_strategy(), g in poly_strategy(), k in poly_strategy()) {
        let t = sklyanin2(2);
        let (f, g, k) = (build(&t, &f), build(&t, &g), build(&t, &k));
        prop_assert!(t.eval(&f, &g).unwrap().add(&t.eval(&g, &f).unwrap()).is_zero());
        let lhs = t.eval(&f, &g.mul(&k)).unwrap();
        let rhs = t.eval(&f, &g).unwrap().mul(&k).add(&g.mul(&t.eval(&f, &k).unwrap()));
        prop_assert!(lhs.same(&rhs));
        let lhs = t.eval(&f.add(&k), &g).unwrap();
        prop_assert!(lhs.same(&t.eval(&f, &g).unwrap().add(&t.eval(&k, &g).unwrap())));
    }

    #[test]
    fn jacobi_holds_on_polynomials(f in poly_strategy(), g in poly_strategy(), k in poly_strategy()) {
        let t = sklyanin2(2);
        let (f, g, k) = (build(&t, &f), build(&t, &g), build(&t, &k));
        prop_assert!(t.jacobiator(&f, &g, &k).unwrap().is_zero());
    }
}
