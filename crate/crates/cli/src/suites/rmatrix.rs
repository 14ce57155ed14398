use qpencil_core::linalg::{format_point, Field};
use qpencil_core::rmatrix::*;
use qpencil_core::scalar::Scalar;

use super::{Job, Outcome};
use crate::config::{RunConfig, Suite};

pub fn qybe(c: &RunConfig) -> Vec<Job> {
    let n = c.n;
    let s = Suite::Qybe;
    vec![
        Job::new(s, "hecke_s.qybe", move |_| {
            let h = hecke_s(n);
            let defect = qybe_defect(&h.matrix, n, &Scalar::one(&h.params()))?;
            Ok::<_, RMatrixError>(
                Outcome::new(defect.is_none())
                    .detail("operator", &h.name)
                    .detail("space", format!("V^(x)3, dim V = {n}"))
                    .witnesses(defect.map(|(r, c)| format!("S12 S23 S12 and S23 S12 S23 differ at entry ({r}, {c})"))),
            )
        }),
        Job::new(s, "hecke_s.hecke", move |_| {
            let h = hecke_s(n);
            Ok::<_, RMatrixError>(Outcome::new(check_hecke(&h)).detail("operator", &h.name).detail("identity", "(S - q)(S + q^-1) = 0"))
        }),
        Job::new(s, "s_w.qybe", move |ctx| {
            let w = s_w(&hecke_s(n))?;
            let d = n * n;
            let o = Outcome::new(true).detail("operator", &w.name).detail("space", format!("W^(x)3, dim W = {d}"));
            // symbolic only where it stays at desk scale
            if n == 2 && !ctx.config.probabilistic() {
                let defect = qybe_defect(&w.matrix, d, &Scalar::one(&w.params()))?;
                return Ok(Outcome { pass: defect.is_none(), ..o }.witnesses(defect.map(|(r, c)| format!("defect at entry ({r}, {c})"))));
            }
            let pts = ctx.sample(&["q"]);
            let bad = qybe_at_points(&w.matrix, d, &pts)?;
            Ok::<_, RMatrixError>(Outcome { pass: bad.is_empty(), ..o }.at(&pts).witnesses(bad.iter().map(|a| format!("QYBE fails at {}", format_point(a)))))
        }),
    ]
}

fn span_verdict<F: Field>(s: &IqSpans<F>, n: usize) -> (bool, Vec<String>) {
    let m = n * n;
    let (want_minus, want_plus) = (m * (m - 1) / 2, m * (m + 1) / 2);
    let mut w = Vec::new();
    if s.minus.dim() != want_minus || s.plus.dim() != want_plus {
        w.push(format!("dims {} and {}, expected {want_minus} and {want_plus}", s.minus.dim(), s.plus.dim()));
    }
    if !s.minus_matches() {
        w.push("Im(S_W - id) differs from the span of the listed I_-".into());
    }
    if !s.plus_matches() {
        w.push("Ker(S_W - id) differs from the span of the listed I_+".into());
    }
    if !s.direct_sum() {
        w.push("Im and Ker do not span W (x) W".into());
    }
    (w.is_empty(), w)
}

pub fn spans(c: &RunConfig) -> Vec<Job> {
    let n = c.n;
    vec![Job::new(Suite::Spans, "iq_spans", move |ctx| {
        let m = n * n;
        let o = Outcome::new(true).detail("n", n).detail("expected_minus_dim", m * (m - 1) / 2).detail("expected_plus_dim", m * (m + 1) / 2);
        if n == 2 && !ctx.config.probabilistic() {
            let (pass, w) = span_verdict(&iq_spans(n)?, n);
            return Ok(Outcome { pass, ..o }.witnesses(w));
        }
        let pts = ctx.sample(&["q"]);
        let mut pass = true;
        let mut ws = Vec::new();
        for a in &pts {
            let (ok, w) = span_verdict(&iq_spans_at(n, a)?, n);
            pass &= ok;
            ws.extend(w.into_iter().map(|x| format!("at {}: {x}", format_point(a))));
        }
        Ok::<_, RMatrixError>(Outcome { pass, ..o }.at(&pts).witnesses(ws))
    })]
}
