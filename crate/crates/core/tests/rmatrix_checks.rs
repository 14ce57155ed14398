use num_rational::BigRational;
use qpencil_core::algebra::{FamilyKind, RelationFamily};
use qpencil_core::linalg::{bareiss_rank, clear_denominators, kernel, PointSampler, SMat, Subspace};
use qpencil_core::rmatrix::*;
use qpencil_core::scalar::{Assignment, Scalar};

fn q_at(x: i64) -> Assignment {
    [("q".to_string(), BigRational::from_integer(x.into()))].into_iter().collect()
}

#[test]
fn doubled_operator_n3_at_random_points() {
    let w = s_w(&hecke_s(3)).unwrap();
    let mut sampler = PointSampler::new(7);
    let points = sampler.points(&["q"], 3, |_| true);
    assert!(qybe_at_points(&w.matrix, 9, &points).unwrap().is_empty());
}

#[test]
fn one_is_an_eigenvalue_of_the_doubled_operator() {
    let w = s_w(&hecke_s(2)).unwrap();
    let one = Scalar::one(&w.params());
    let d = w.matrix.sub(&SMat::identity(16, &one)).unwrap();
    assert_eq!(kernel(&d, &one).dim(), 10);
}

#[test]
fn bareiss_rank_agrees() {
    let w = s_w(&hecke_s(2)).unwrap();
    let one = Scalar::one(&w.params());
    let d = w.matrix.sub(&SMat::identity(16, &one)).unwrap();
    let dense: Vec<Vec<Scalar>> = (0..16).map(|r| (0..16).map(|c| d.get(r, c).cloned().unwrap_or_else(|| Scalar::zero(&w.params()))).collect()).collect();
    assert_eq!(bareiss_rank(clear_denominators(&dense)), 6);
}

#[test]
fn n3_spans_at_random_points() {
    let mut sampler = PointSampler::new(11);
    for a in sampler.points(&["q"], 3, |_| true) {
        let s = iq_spans_at(3, &a).unwrap();
        assert_eq!((s.minus.dim(), s.plus.dim()), (36, 45));
        assert!(s.minus_matches() && s.plus_matches() && s.direct_sum());
    }
}

#[test]
fn classical_dimensions_at_q_one() {
    for n in [2usize, 3] {
        let s = iq_spans_at(n, &q_at(1)).unwrap();
        let m = n * n;
        assert_eq!((s.minus.dim(), s.plus.dim()), (m * (m - 1) / 2, m * (m + 1) / 2));
    }
}

#[test]
fn j_hq_degenerates_to_i_minus() {
    for n in [2, 3] {
        let j = j_hq(n);
        let h0 = j.substitute("h", &Scalar::zero(&j.params)).unwrap();
        let as_space = |f: &RelationFamily| {
            let vs: Vec<_> = f.relations.iter().map(|r| quadratic_vector(r).unwrap()).collect();
            Subspace::span(n.pow(4), vs).unwrap()
        };
        let im = as_space(&i_minus(n));
        assert!(as_space(&h0).equals(&im).unwrap());
        let top = RelationFamily::new("top", &j.gens, &j.params, FamilyKind::Graded, j.top_parts()).unwrap();
        assert!(as_space(&top).equals(&im).unwrap());
    }
}

#[test]
fn families_export_and_reload() {
    for f in [i_minus(2), j_hq(2), elliptic_quantum(), re(&hecke_s(2))] {
        let back = RelationFamily::from_text(&f.to_text()).unwrap();
        assert_eq!(back.relations.len(), f.relations.len(), "{}", f.name);
        for (a, b) in back.relations.iter().zip(&f.relations) {
            assert!(a.to_canonical_string() == b.to_canonical_string(), "{}: {a} vs {b}", f.name);
        }
    }
}

#[test]
fn operator_triplets() {
    let t = hecke_s(2).triplets();
    assert_eq!(t.len(), 5);
    assert!(t.iter().any(|(r, c, x)| *r == 1 && *c == 1 && x.contains('q')));
}

#[test]
fn re_relations_vanish_on_commuting_scalars_at_q_one() {
    // at q = 1, S is the flip and the relations read P u1 P u1 = u1 P u1 P, i.e. u2 u1 = u1 u2
    let f = re(&hecke_s(2));
    let g = f.specialize(&q_at(1)).unwrap();
    for r in &g.relations {
        assert!(r.commutative_image().is_zero(), "{r}");
    }
}
