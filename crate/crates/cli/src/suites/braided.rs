use num_rational::BigRational;
use qpencil_core::braided::*;
use qpencil_core::linalg::SMat;
use qpencil_core::scalar::Scalar;
use serde_json::json;

use super::{Context, Job, Outcome};
use crate::config::{RunConfig, Suite};

fn seed(ctx: &Context) -> u64 {
    if ctx.config.probabilistic() {
        ctx.config.seed
    } else {
        0
    }
}

/// `k(k+2) M^2`, the classical Casimir `h^2 + 2ef + 2fe` on the spin-k/2
/// module in the commutator normalization of the bracket at `q = 1`.
fn classical_c0(b: &QLieBracket, k: usize) -> Scalar {
    Scalar::parse(&b.params, &format!("{}*M^2", k * (k + 2))).expect("valid expression")
}

fn clebsch_gordan(k: usize) -> Vec<Component> {
    (0..=k as i64).rev().map(|j| Component { weight: 2 * j, multiplicity: 1 }).collect()
}

fn weights(d: &[Component]) -> Vec<String> {
    d.iter().map(|c| format!("{}x{}", c.weight, c.multiplicity)).collect()
}

fn end_k(k: usize) -> Result<Outcome, BraidedError> {
    let b = q_lie_bracket()?;
    let u = irrep(k);
    let mut w = Vec::new();
    let d = decompose_end(&u)?;
    if d != clebsch_gordan(k) {
        w.push(format!("End(V_{k}) decomposes as {:?}", weights(&d)));
    }
    let s = match braided_structure(&u, &b) {
        Ok(s) => s,
        Err(e @ (BraidedError::NonScalarCasimir(_) | BraidedError::NotEquivariant(_) | BraidedError::Precondition(_))) => {
            return Ok(Outcome::new(false).detail("k", k).witness(e.to_string()));
        }
        Err(e) => return Err(e),
    };
    let a = &s.almost;
    let nu_ok = a.nu.as_ref().is_some_and(|x| !x.is_zero()) && a.nu_at_q1.as_ref().is_some_and(|x| !x.is_zero());
    if !nu_ok {
        w.push("nu vanishes".into());
    }
    let one = Scalar::one(&b.params);
    let c0_q1 = s.c0.substitute("q", &one)?;
    let expected = classical_c0(&b, k);
    if c0_q1 != expected {
        w.push(format!("c0 at q = 1 is {c0_q1}, classical value {expected}"));
    }
    Ok(Outcome::new(w.is_empty())
        .detail("k", k)
        .detail("end_decomposition", weights(&d))
        .detail("other_skew_checked", a.other_skew_checked)
        .detail("nu", a.nu.as_ref().map(|x| x.to_string()))
        .detail("casimir_scalar", true)
        .detail("c0", s.c0.to_string())
        .detail("c0_at_q1", c0_q1.to_string())
        .witnesses(w))
}

pub fn braided(c: &RunConfig) -> Vec<Job> {
    let kmax = c.kmax;
    let s = Suite::Braided;
    let mut jobs = vec![
        Job::new(s, "q_lie.table", |_| {
            let b = match q_lie_bracket() {
                Ok(b) => b,
                Err(e @ BraidedError::TableMismatch(_)) => return Ok(Outcome::new(false).witness(e.to_string())),
                Err(e) => return Err(e),
            };
            let names = &b.names;
            let entries: Vec<String> = (0..3)
                .flat_map(|x| (0..3).map(move |y| (x, y)))
                .map(|(x, y)| {
                    let rhs: Vec<String> = b.entry(x, y).iter().map(|(i, c)| format!("{c}*{}", names[*i])).collect();
                    format!("[{},{}] = {}", names[x], names[y], if rhs.is_empty() { "0".into() } else { rhs.join(" + ") })
                })
                .collect();
            Ok::<_, BraidedError>(
                Outcome::new(true)
                    .detail("entries", entries)
                    .detail("rescaling", b.rescaling.iter().filter(|(_, x)| !x.is_one()).map(|(n, x)| format!("{n} -> {x}*{n}")).collect::<Vec<_>>()),
            )
        }),
        Job::new(s, "q_lie.equivariance", |_| {
            let b = q_lie_bracket()?;
            let fail = b.equivariance_failure()?;
            let support = b.support();
            let pass = fail.is_none() && support == vec![(2, true)] && b.minus_rank() == 3;
            Ok::<_, BraidedError>(
                Outcome::new(pass)
                    .detail("support", support.iter().map(|(w, skew)| json!({"weight": w, "skew": skew})).collect::<Vec<_>>())
                    .detail("minus_rank", b.minus_rank())
                    .witnesses(fail),
            )
        }),
        Job::new(s, "c0_table", move |ctx| {
            let b = q_lie_bracket()?;
            let ks: Vec<usize> = (0..=kmax).collect();
            let rows = c0_table(&ks, &b)?;
            let a = ctx.config.assignment();
            let mut bad = Vec::new();
            let mut art = Vec::new();
            for r in &rows {
                if r.c0_at_q1 != classical_c0(&b, r.k) {
                    bad.push(format!("k = {}: c0 at q = 1 is {}", r.k, r.c0_at_q1));
                }
                let mut row = json!({"k": r.k, "c0": r.c0.to_string(), "c0_at_q1": r.c0_at_q1.to_string()});
                if !a.is_empty() {
                    row["c0_specialized"] = json!(r.c0.specialize_partial(&a).map(|x| x.to_string()).ok());
                }
                art.push(row);
            }
            let classical: Vec<usize> = ks.iter().map(|&k| k * (k + 2)).collect();
            Ok::<_, BraidedError>(
                Outcome::new(bad.is_empty())
                    .detail("k_range", [0, kmax])
                    .detail("classical_k(k+2)", classical)
                    .detail("proportionality", "c0(k)|q=1 = M^2 k(k+2)")
                    .witnesses(bad)
                    .artifact("c0_table", json!({"convention": "C_q = q(q^2+1) u(x)w + v(x)v + (q+q^-1) w(x)u", "rows": art})),
            )
        }),
        Job::new(s, "quantum_trace", |_| {
            let mut w = Vec::new();
            let mut qdims = Vec::new();
            for k in 1..=3usize {
                let u = irrep(k);
                let n = u.dim();
                let one = Scalar::one(&u.params);
                let q = Scalar::param(&u.params, "q")?;
                let mut expected = Scalar::zero(&u.params);
                for j in 0..=k as i32 {
                    expected = &expected + &q.pow(k as i32 - 2 * j)?;
                }
                let qd = quantum_trace(&u, &u.identity())?;
                if qd != expected {
                    w.push(format!("qdim V_{k} = {qd}"));
                }
                qdims.push(qd.to_string());
                for i in 0..n {
                    for j in 0..n {
                        let m = SMat::from_triplets(n, n, vec![(i, j, one.clone())])?;
                        for g in trace_invariance(&u, &m)? {
                            w.push(format!("k = {k}: trace not invariant under {g} on E_{i}{j}"));
                        }
                    }
                }
            }
            Ok::<_, BraidedError>(Outcome::new(w.is_empty()).detail("convention", "tr(K^-1 M)").detail("qdims", qdims).witnesses(w))
        }),
        Job::new(s, "end.product_equivariance", |_| {
            let mut w = Vec::new();
            for k in 1..=3 {
                if let Some(f) = irrep(k).product_equivariance()? {
                    w.push(format!("k = {k}: {f:?}"));
                }
            }
            Ok::<_, BraidedError>(Outcome::new(w.is_empty()).detail("k_range", [1, 3]).witnesses(w))
        }),
    ];
    for k in 1..=kmax {
        jobs.push(Job::new(s, &format!("end.k{k}"), move |_| end_k(k)));
    }
    jobs
}

fn conj_report(b: &QLieBracket, c: &Conjugation) -> serde_json::Value {
    let r = conjugation_check(b, c);
    json!({
        "name": r.name,
        "involutive": r.involutive,
        "compatible": r.compatible(),
        "violations": r.violations.iter().map(|(x, y)| format!("({x}, {y})")).collect::<Vec<_>>(),
    })
}

fn check_conj(signs: [i64; 3], expect: bool) -> Result<Outcome, BraidedError> {
    let b = q_lie_bracket()?;
    let c = Conjugation::diagonal(&b, signs);
    let r = conjugation_check(&b, &c);
    Ok(Outcome::new(r.compatible() == expect)
        .detail("conjugation", &r.name)
        .detail("involutive", r.involutive)
        .detail("compatible", r.compatible())
        .detail("pairs", 36)
        .witnesses(r.violations.iter().take(3).map(|(x, y)| format!("([{x},{y}])* != -[{x}*,{y}*]"))))
}

pub fn conjugations(_: &RunConfig) -> Vec<Job> {
    let s = Suite::Conjugations;
    let int = |x: i64| BigRational::from_integer(x.into());
    let mut jobs = vec![
        Job::new(s, "check.diag(-1,-1,-1)", |_| check_conj([-1, -1, -1], true)),
        Job::new(s, "check.diag(1,-1,1)", |_| check_conj([1, -1, 1], true)),
        Job::new(s, "check.identity_rejected", |_| check_conj([1, 1, 1], false)),
        Job::new(s, "diagonal_scan", |_| {
            let b = q_lie_bracket()?;
            let found: Vec<String> = classify_diagonal_conjugations(&b).into_iter().map(|c| c.name).collect();
            let expected = ["diag(1,-1,1)", "diag(-1,-1,-1)"];
            let mut all = Vec::new();
            for mask in 0..8 {
                let signs = [0, 1, 2].map(|k| if mask >> (2 - k) & 1 == 1 { -1 } else { 1 });
                all.push(conj_report(&b, &Conjugation::diagonal(&b, signs)));
            }
            Ok::<_, BraidedError>(
                Outcome::new(found == expected)
                    .detail("found", &found)
                    .artifact("conjugation_report", json!({"semantics": "identities in q, M on the real span of u, v, w, iu, iv, iw", "diagonal": all})),
            )
        }),
        Job::new(s, "general_scan", move |ctx| {
            let b = q_lie_bracket()?;
            let pts = ctx.sample(&["q"]);
            let mut w = Vec::new();
            let mut rows = Vec::new();
            for a in &pts {
                let r = general_conjugation_scan(&b, &a["q"], &int(1))?;
                if r.solutions != Some(2) || !r.known_points.iter().all(|(_, ok)| *ok) {
                    w.push(format!("at {}: {:?} solutions", r.point, r.solutions));
                }
                rows.push(json!({"solutions": r.solutions, "groebner_basis": r.groebner_basis}));
            }
            Ok::<_, BraidedError>(Outcome::new(w.is_empty()).at(&pts).detail("scans", rows).witnesses(w))
        }),
        Job::new(s, "general_scan.q1_control", move |_| {
            let b = q_lie_bracket()?;
            let r = general_conjugation_scan(&b, &int(1), &int(1))?;
            let more = r.solutions.is_none_or(|k| k > 2);
            Ok::<_, BraidedError>(
                Outcome::new(more)
                    .detail("point", &r.point)
                    .detail("solutions", r.solutions.map_or("positive-dimensional".to_string(), |k| k.to_string()))
                    .detail("note", "the classical case admits more conjugations than generic q"),
            )
        }),
    ];
    for signs in [[-1, -1, -1], [1, -1, 1]] {
        jobs.push(Job::new(s, &format!("odd_subalgebra.diag({},{},{})", signs[0], signs[1], signs[2]), move |ctx| {
            let b = q_lie_bracket()?;
            let r = odd_subalgebra_check(&b, &Conjugation::diagonal(&b, signs), seed(ctx), 8)?;
            Ok::<_, BraidedError>(
                Outcome::new(r.odd_closed && r.even_closed)
                    .detail("odd_dim", r.odd_dim)
                    .detail("samples", r.samples)
                    .detail("odd_closed", r.odd_closed)
                    .detail("even_closed", r.even_closed),
            )
        }));
    }
    jobs
}
