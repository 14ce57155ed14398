use qpencil_core::algebra::{FamilyKind, RelationFamily};
use qpencil_core::braided::{classical_nu_data, first_type_ideal, q_lie_bracket, quantum_nu_data, BraidedError};
use qpencil_core::linalg::{SMat, Subspace};
use qpencil_core::quotient::*;
use qpencil_core::rmatrix::{hecke_s, i_minus, j_hq, quadratic_vector, re, RMatrixError};
use qpencil_core::scalar::Scalar;
use serde_json::json;

use super::{Context, Job, Outcome};
use crate::config::{RunConfig, Suite};

fn mode_request(ctx: &Context) -> ModeRequest {
    if ctx.config.probabilistic() {
        ModeRequest::Probabilistic { seed: ctx.config.seed, points: ctx.config.points }
    } else {
        ModeRequest::Symbolic
    }
}

/// Applies the configured specializations the family knows about.
fn specialized(f: RelationFamily, ctx: &Context) -> Result<RelationFamily, String> {
    let mut f = f;
    for (k, v) in &ctx.config.specialize {
        if f.params.index(k).is_some() {
            let x = Scalar::parse(&f.params, v).map_err(|e| e.to_string())?;
            f = f.substitute(k, &x).map_err(|e| e.to_string())?;
        }
    }
    Ok(f)
}

fn flat(f: RelationFamily, reference: &[usize], degree: usize, mode: &ModeRequest) -> Result<Outcome, QuotientError> {
    let name = f.name.clone();
    let gens = f.gens.len();
    let cumulative = f.kind == FamilyKind::Filtered;
    let v = flatness_verdict(&QuotientPresentation::new(f, degree)?, reference, mode)?;
    let h = &v.hilbert;
    Ok(Outcome::new(v.pass)
        .mode(h.mode.clone())
        .detail("family", name)
        .detail("generators", gens)
        .detail("degrees", degree)
        .detail("cumulative", cumulative)
        .detail("dims", &h.dims)
        .detail("reference", &v.reference[..=degree.min(v.reference.len() - 1)])
        .detail("first_deviation", v.first_deviation)
        .detail("collapsed", h.collapsed)
        .witnesses(v.witness.clone())
        .witnesses(h.rejected_points.iter().map(|p| format!("rejected sample point {p}"))))
}

pub fn flatness(c: &RunConfig) -> Vec<Job> {
    let (n, d) = (c.n, c.degree);
    let s = Suite::Flatness;
    let mut jobs = vec![
        Job::new(s, "a0q", move |ctx| flat(specialized(i_minus(n), ctx)?, &sym_dims(n * n, d, false), d, &mode_request(ctx)).map_err(|e| e.to_string())),
        Job::new(s, "ahq", move |ctx| flat(specialized(j_hq(n), ctx)?, &sym_dims(n * n, d, true), d, &mode_request(ctx)).map_err(|e| e.to_string())),
        Job::new(s, "ahq.h0_subspace", move |_| {
            let j = j_hq(n);
            let h0 = j.substitute("h", &Scalar::zero(&j.params)).map_err(|e| e.to_string())?;
            let space = |f: &RelationFamily| -> Result<Subspace<Scalar>, RMatrixError> {
                let vs = f.relations.iter().map(quadratic_vector).collect::<Result<Vec<_>, _>>()?;
                Ok(Subspace::span(n.pow(4), vs)?)
            };
            let (a, b) = (space(&h0).map_err(|e| e.to_string())?, space(&i_minus(n)).map_err(|e| e.to_string())?);
            let eq = a.equals(&b).map_err(|e| e.to_string())?;
            Ok::<_, String>(
                Outcome::new(eq)
                    .detail("relations", j.relations.len())
                    .detail("dim", b.dim())
                    .witnesses((!eq).then(|| format!("span dims {} and {}", a.dim(), b.dim()))),
            )
        }),
        Job::new(s, "re_evidence", move |ctx| {
            // only evidence: always sampled, never certified
            let mode = ModeRequest::Probabilistic { seed: if ctx.config.probabilistic() { ctx.config.seed } else { 0 }, points: ctx.config.points.max(3) };
            let o = flat(specialized(re(&hecke_s(n)), ctx)?, &sym_dims(n * n, d, false), d, &mode).map_err(|e| e.to_string())?;
            Ok::<_, String>(o.detail("status", "evidence"))
        }),
    ];
    if c.relations.is_some() {
        jobs.push(Job::new(s, "relations_file", move |ctx| {
            let f = specialized(ctx.relations.clone().expect("loaded with the context"), ctx)?;
            let reference = sym_dims(f.gens.len(), d, f.kind == FamilyKind::Filtered);
            let file = ctx.config.relations.as_ref().map(|p| p.display().to_string());
            Ok::<_, String>(flat(f, &reference, d, &mode_request(ctx)).map_err(|e| e.to_string())?.detail("file", file))
        }));
    }
    jobs
}

fn pbw(data: &NuData) -> Result<Outcome, QuotientError> {
    let r = pbw_nu_check(data)?;
    let conditions: Vec<_> = r
        .conditions
        .iter()
        .map(|c| json!({"name": c.name, "holds_identically": c.holds_identically, "constraints": c.constraints}))
        .collect();
    Ok(Outcome::new(r.holds_identically())
        .detail("k_dim", r.k_dim)
        .detail("conditions", conditions)
        .detail("consistent", r.consistent)
        .detail("constraints", r.constraints.iter().map(|p| p.to_string_with(data.params.names())).collect::<Vec<_>>()))
}

pub fn pbw_nu(c: &RunConfig) -> Vec<Job> {
    let d = c.degree;
    let s = Suite::PbwNu;
    vec![
        Job::new(s, "zero_maps", |_| {
            let b = q_lie_bracket()?;
            let mut data = quantum_nu_data(&b)?;
            data.nu0 = Vec::new();
            data.nu1 = SMat::zeros(3, 9);
            Ok::<_, BraidedError>(pbw(&data)?)
        }),
        Job::new(s, "classical_sl2", |_| Ok::<_, BraidedError>(pbw(&classical_nu_data(&q_lie_bracket()?)?)?)),
        Job::new(s, "quantum_sl2", |_| {
            let o = pbw(&quantum_nu_data(&q_lie_bracket()?)?)?;
            let consistent = o.details["consistent"] == json!(true);
            Ok::<_, BraidedError>(Outcome { pass: consistent, ..o }.detail("verdict_basis", "constraint variety nonempty"))
        }),
        Job::new(s, "first_type.flatness", move |ctx| {
            let b = q_lie_bracket().map_err(|e| e.to_string())?;
            let c0 = Scalar::param(&b.params, "c0").map_err(|e| e.to_string())?;
            let f = specialized(first_type_ideal(&b, &c0).map_err(|e| e.to_string())?, ctx)?;
            // functions on the quadric: 2j + 1 in degree j
            let reference: Vec<usize> = (0..=d).map(|k| (k + 1) * (k + 1)).collect();
            flat(f, &reference, d, &mode_request(ctx)).map_err(|e| e.to_string())
        }),
    ]
}
