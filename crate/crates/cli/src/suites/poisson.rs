use std::collections::BTreeMap;

use qpencil_core::poisson::*;
use qpencil_core::scalar::Scalar;
use serde_json::json;

use super::{Job, Outcome};
use crate::config::{RunConfig, Suite};

const MAX_WITNESSES: usize = 5;

fn triple_names(t: &BracketTable, (i, j, k): (usize, usize, usize)) -> String {
    let g = t.gens();
    format!("{}, {}, {}", g.name(i), g.name(j), g.name(k))
}

fn jacobi(t: &BracketTable) -> Outcome {
    let d = t.jacobi_defects();
    Outcome::new(d.is_empty())
        .detail("bracket", t.name())
        .detail("generators", t.gens().len())
        .detail("triples", distinct_triples(t.gens().len()).len())
        .witnesses(d.iter().take(MAX_WITNESSES).map(|x| format!("Jac({}) = {}", triple_names(t, x.triple), x.value)))
}

fn mixed(a: &BracketTable, b: &BracketTable) -> Result<Outcome, PoissonError> {
    let d = mixed_defects(a, b)?;
    Ok(Outcome::new(d.is_empty())
        .detail("brackets", [a.name(), b.name()])
        .detail("triples", distinct_triples(a.gens().len()).len())
        .witnesses(d.iter().take(MAX_WITNESSES).map(|x| format!("mixed Jac({}) = {}", triple_names(a, x.triple), x.value))))
}

fn pair_witnesses(a: &BracketTable, b: &BracketTable) -> Vec<String> {
    a.differences(b)
        .into_iter()
        .take(MAX_WITNESSES)
        .map(|(i, j)| format!("{{{}, {}}}: {} vs {}", a.gens().name(i), a.gens().name(j), a.entry(i, j), b.entry(i, j)))
        .collect()
}

/// `J31 = -J12 - J23` substituted in every entry.
fn on_constraint(t: &BracketTable) -> Result<BracketTable, PoissonError> {
    let j31 = Scalar::parse(t.params(), "-J12 - J23")?;
    t.map_entries(t.name(), |e| e.try_map_coeffs(|c| Ok(c.substitute("J31", &j31)?)))
}

pub fn pencil(c: &RunConfig) -> Vec<Job> {
    let n = c.n;
    let s = Suite::PoissonPencil;
    let mut jobs = vec![
        Job::new(s, "jacobi.sklyanin2", move |_| Ok::<_, PoissonError>(jacobi(&sklyanin2(n)))),
        Job::new(s, "jacobi.linear1", move |_| Ok::<_, PoissonError>(jacobi(&linear1(n)))),
        Job::new(s, "jacobi.gl", move |_| Ok::<_, PoissonError>(jacobi(&gl(n)))),
        Job::new(s, "compatibility.linear1_sklyanin2", move |_| mixed(&linear1(n), &sklyanin2(n))),
        Job::new(s, "linearization", move |_| {
            let t = sklyanin2(n);
            let r = shift_and_linearize(&t, &trace_shift(t.gens()))?;
            let printed = linear1(n);
            Ok::<_, PoissonError>(
                Outcome::new(r.linear.same(&printed))
                    .detail("shift", "a_i^i -> a_i^i + h")
                    .detail("h_degrees", r.components.len())
                    .detail("entries", (n * n) * (n * n - 1) / 2)
                    .witnesses(pair_witnesses(&r.linear, &printed)),
            )
        }),
        Job::new(s, "no_diagonal_products", move |_| {
            let t = sklyanin2(n);
            Ok::<_, PoissonError>(Outcome::new(!has_diagonal_products(&t)).detail("bracket", t.name()))
        }),
        Job::new(s, "r_twist", move |_| {
            let bad = r_twisted_check_with(n, |x| x.signum());
            Ok::<_, PoissonError>(
                Outcome::new(bad.is_empty())
                    .detail("identity", "{a,b}_1 = {R a, b}_gl + {a, R b}_gl")
                    .detail("pairs", (n * n) * (n * n - 1) / 2)
                    .witnesses(bad.iter().map(|(a, b)| format!("{{{a}, {b}}}"))),
            )
        }),
        Job::new(s, "elliptic.jacobi", |_| {
            let t = on_constraint(&elliptic())?;
            Ok::<_, PoissonError>(jacobi(&t).detail("constraint", "J12 + J23 + J31 = 0"))
        }),
        Job::new(s, "elliptic.pencil", |_| {
            let t = elliptic();
            let p = t.params().clone();
            let mut shift = BTreeMap::new();
            shift.insert("S0".to_string(), Scalar::one(&p));
            let lin = shift_and_linearize(&t, &shift)?.linear;
            let (t, lin) = (on_constraint(&t)?, on_constraint(&lin)?);
            let lin_jacobi = lin.jacobi_defects().is_empty();
            let o = mixed(&lin, &t)?;
            let pass = o.pass && lin_jacobi && lin.degree() <= 1;
            Ok::<_, PoissonError>(Outcome { pass, ..o }.detail("shift", "S0 -> S0 + h").detail("linear_part", lin.to_text().lines().skip(2).collect::<Vec<_>>()))
        }),
        Job::new(s, "elliptic.printed_table_rejected", |_| {
            let t = on_constraint(&elliptic_as_printed())?;
            let d = t.jacobi_defects();
            Ok::<_, PoissonError>(
                Outcome::new(!d.is_empty())
                    .detail("expected", "the entry {S1,S2} = -2 S0 S1 violates Jacobi")
                    .witnesses(d.iter().take(1).map(|x| format!("Jac({}) = {}", triple_names(&t, x.triple), x.value))),
            )
        }),
    ];
    if c.brackets.is_some() {
        jobs.push(Job::new(s, "brackets_file.jacobi", |ctx| {
            let t = ctx.brackets.as_ref().expect("loaded with the context");
            Ok::<_, PoissonError>(jacobi(t).detail("file", ctx.config.brackets.as_ref().map(|p| p.display().to_string())))
        }));
    }
    jobs
}

fn cybe_check(n: usize) -> Result<Outcome, PoissonError> {
    let l = LieData::sl(n)?;
    let d = cybe_defect(&l)?;
    Ok(Outcome::new(d.ad_invariant)
        .detail("algebra", format!("sl({n})"))
        .detail("antisymmetric", d.antisymmetric)
        .detail("defect_zero", d.is_zero())
        .detail("normalization", d.normalization.as_ref().map(|a| a.to_string()))
        .witnesses(d.nonzero_entries().into_iter().take(usize::from(!d.ad_invariant) * MAX_WITNESSES).map(|((a, b, c), x)| format!("defect[{a},{b},{c}] = {x}"))))
}

pub fn cybe() -> Vec<Job> {
    let s = Suite::Cybe;
    vec![
        Job::new(s, "sl2", |_| cybe_check(2)),
        Job::new(s, "sl3", |_| cybe_check(3)),
        Job::new(s, "orbit.sl2", |_| {
            let r = rmatrix_bracket_orbit_check()?;
            let pass = r.jacobi_in_ideal && r.casimir_brackets_in_ideal && !r.control_brackets_in_ideal;
            Ok::<_, PoissonError>(
                Outcome::new(pass)
                    .detail("casimir", &r.casimir)
                    .detail("control", &r.control)
                    .detail("memberships", json!({
                        "jacobiator": r.jacobi_in_ideal,
                        "casimir_brackets": r.casimir_brackets_in_ideal,
                        "control_brackets": r.control_brackets_in_ideal,
                    }))
                    .witnesses(r.witnesses.clone()),
            )
        }),
    ]
}
