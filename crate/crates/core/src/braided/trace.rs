use crate::linalg::SMat;
use crate::scalar::Scalar;

use super::{BraidedError, WeightRep};

/// `tr(K^-1 M)`.
pub fn quantum_trace(u: &WeightRep, m: &SMat<Scalar>) -> Result<Scalar, BraidedError> {
    let km = u.kinv.mul(m)?;
    let mut acc = Scalar::zero(&u.params);
    for i in 0..u.dim() {
        if let Some(x) = km.get(i, i) {
            acc = &acc + x;
        }
    }
    Ok(acc)
}

/// Generators `a` for which `qtr(ρ^End(a) M) = ε(a) qtr(M)` fails.
pub fn trace_invariance(u: &WeightRep, m: &SMat<Scalar>) -> Result<Vec<String>, BraidedError> {
    let t = quantum_trace(u, m)?;
    let mut bad = Vec::new();
    if !quantum_trace(u, &u.end_e(m)?)?.is_zero() {
        bad.push("E".to_string());
    }
    if !quantum_trace(u, &u.end_f(m)?)?.is_zero() {
        bad.push("F".to_string());
    }
    if quantum_trace(u, &u.end_k(m)?)? != t {
        bad.push("K".to_string());
    }
    Ok(bad)
}
