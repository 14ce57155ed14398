use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{CPoly, GeneratorSet};
use crate::scalar::{ParamSet, Scalar};

use super::{BracketTable, PoissonError};

fn std_params() -> Arc<ParamSet> {
    ParamSet::standard()
}

fn idx(n: usize, i: usize, j: usize) -> usize {
    (i - 1) * n + (j - 1)
}

fn delta(i: usize, j: usize) -> i64 {
    (i == j) as i64
}

/// Quadratic Sklyanin bracket on the entries `a_i^j` of an `n x n` matrix.
pub fn sklyanin2(n: usize) -> BracketTable {
    let gens = GeneratorSet::matrix(n);
    let params = std_params();
    let mut t = BracketTable::zero(&format!("sklyanin2({n})"), &gens, &params);
    let v = |i: usize, j: usize| CPoly::var(&gens, &params, idx(n, i, j));
    for k in 1..=n {
        for i in 1..=n {
            for j in i + 1..=n {
                t.set(idx(n, k, i), idx(n, k, j), v(k, i).mul(&v(k, j))).unwrap();
                t.set(idx(n, i, k), idx(n, j, k), v(i, k).mul(&v(j, k))).unwrap();
            }
        }
    }
    for i in 1..=n {
        for k in i + 1..=n {
            for j in 1..=n {
                for l in j + 1..=n {
                    t.set(idx(n, i, j), idx(n, k, l), v(i, l).mul(&v(k, j)).scale(&Scalar::from_int(&params, 2))).unwrap();
                }
            }
        }
    }
    t
}

/// The linear bracket as printed: the `h`-linear part of the shifted
/// Sklyanin bracket, written with Kronecker deltas.
pub fn linear1(n: usize) -> BracketTable {
    let gens = GeneratorSet::matrix(n);
    let params = std_params();
    let mut t = BracketTable::zero(&format!("linear1({n})"), &gens, &params);
    let v = |i: usize, j: usize, c: i64| CPoly::var(&gens, &params, idx(n, i, j)).scale(&Scalar::from_int(&params, c));
    for k in 1..=n {
        for i in 1..=n {
            for j in i + 1..=n {
                t.set(idx(n, k, i), idx(n, k, j), v(k, j, delta(k, i)).add(&v(k, i, delta(k, j)))).unwrap();
                t.set(idx(n, i, k), idx(n, j, k), v(j, k, delta(i, k)).add(&v(i, k, delta(j, k)))).unwrap();
            }
        }
    }
    for i in 1..=n {
        for k in i + 1..=n {
            for j in 1..=n {
                for l in j + 1..=n {
                    let e = v(k, j, delta(i, l)).add(&v(i, l, delta(k, j))).scale(&Scalar::from_int(&params, 2));
                    t.set(idx(n, i, j), idx(n, k, l), e).unwrap();
                }
            }
        }
    }
    t
}

/// `{a_i^j, a_k^l} = a_i^l d_k^j - a_k^j d_i^l`.
pub fn gl(n: usize) -> BracketTable {
    r_twisted_with(n, &format!("gl({n})"), |_| 1, false)
}

fn gl_entry(n: usize, gens: &Arc<GeneratorSet>, params: &Arc<ParamSet>, (i, j): (usize, usize), (k, l): (usize, usize)) -> CPoly {
    let v = |a: usize, b: usize, c: i64| CPoly::var(gens, params, idx(n, a, b)).scale(&Scalar::from_int(params, c));
    v(i, l, delta(k, j)).sub(&v(k, j, delta(i, l)))
}

fn r_twisted_with(n: usize, name: &str, sign: impl Fn(i64) -> i64, twisted: bool) -> BracketTable {
    let gens = GeneratorSet::matrix(n);
    let params = std_params();
    let mut t = BracketTable::zero(name, &gens, &params);
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).collect();
    for (a, &p) in pairs.iter().enumerate() {
        for &r in &pairs[a + 1..] {
            let mut e = gl_entry(n, &gens, &params, p, r);
            if twisted {
                let s = sign(p.1 as i64 - p.0 as i64) + sign(r.1 as i64 - r.0 as i64);
                e = e.scale(&Scalar::from_int(&params, s));
            }
            t.set(idx(n, p.0, p.1), idx(n, r.0, r.1), e).unwrap();
        }
    }
    t
}

/// `{a, b} = {R a, b}_gl + {a, R b}_gl` with `R(a_i^j) = sign(j - i) a_i^j`.
pub fn r_twisted(n: usize) -> BracketTable {
    r_twisted_with(n, &format!("r_twisted({n})"), |x| x.signum(), true)
}

/// Whether the printed linear table equals the R-twisted gl table.
pub fn r_twisted_check(n: usize) -> bool {
    r_twisted_check_with(n, |x| x.signum()).is_empty()
}

/// Generator pairs where the printed linear table and the table twisted
/// by `sign` disagree.
pub fn r_twisted_check_with(n: usize, sign: impl Fn(i64) -> i64) -> Vec<(String, String)> {
    let t = r_twisted_with(n, "twisted", sign, true);
    let l = linear1(n);
    l.differences(&t).into_iter().map(|(i, j)| (l.gens().name(i).to_string(), l.gens().name(j).to_string())).collect()
}

fn named_gens(names: &[&str]) -> Arc<GeneratorSet> {
    GeneratorSet::new(names).expect("distinct names")
}

fn elliptic_table(name: &str, printed: bool) -> BracketTable {
    let gens = named_gens(&["S0", "S1", "S2", "S3"]);
    let params = std_params();
    let s = |i: usize| CPoly::var(&gens, &params, i);
    let j = |n: &str| Scalar::param(&params, n).unwrap().scale_int(2);
    let m2 = Scalar::from_int(&params, -2);
    let mut t = BracketTable::zero(name, &gens, &params);
    t.set(1, 0, s(2).mul(&s(3)).scale(&j("J23"))).unwrap();
    t.set(2, 0, s(3).mul(&s(1)).scale(&j("J31"))).unwrap();
    t.set(3, 0, s(1).mul(&s(2)).scale(&j("J12"))).unwrap();
    let s12 = if printed { s(0).mul(&s(1)) } else { s(0).mul(&s(3)) };
    t.set(1, 2, s12.scale(&m2)).unwrap();
    t.set(2, 3, s(0).mul(&s(1)).scale(&m2)).unwrap();
    t.set(3, 1, s(0).mul(&s(2)).scale(&m2)).unwrap();
    t
}

/// Elliptic Sklyanin bracket on `S0..S3` with formal `J12, J23, J31`,
/// with `{S1,S2} = -2 S0 S3` so that the cyclic symmetry holds.
pub fn elliptic() -> BracketTable {
    elliptic_table("elliptic", false)
}

/// The elliptic table with `{S1,S2} = -2 S0 S1` as typeset.
pub fn elliptic_as_printed() -> BracketTable {
    elliptic_table("elliptic_as_printed", true)
}

/// Result of the shift `x -> x + h c_x` applied to the table entries.
#[derive(Clone, Debug)]
pub struct ShiftResult {
    pub shifted: BracketTable,
    /// Component of `h^k` at position `k`.
    pub components: Vec<BracketTable>,
    pub linear: BracketTable,
}

/// Shift vector sending `a_i^j` to `a_i^j + h d_i^j`.
pub fn trace_shift(gens: &GeneratorSet) -> BTreeMap<String, Scalar> {
    let params = std_params();
    let mut out = BTreeMap::new();
    for name in gens.names() {
        let diag = name.strip_prefix("a_").and_then(|r| r.split_once('^')).map(|(i, j)| i == j).unwrap_or(false);
        out.insert(name.clone(), Scalar::from_int(&params, diag as i64));
    }
    out
}

/// Substitutes `x -> x + h c_x` in every entry and splits by powers of `h`.
/// Generators absent from `shift` stay fixed.
pub fn shift_and_linearize(t: &BracketTable, shift: &BTreeMap<String, Scalar>) -> Result<ShiftResult, PoissonError> {
    if t.degree() > 2 {
        return Err(PoissonError::NotQuadratic(format!("{} has degree {}", t.name(), t.degree())));
    }
    let gens = t.gens().clone();
    let params = t.params().clone();
    let h = Scalar::param(&params, "h")?;
    let images: Vec<CPoly> = (0..gens.len())
        .map(|i| {
            let v = CPoly::var(&gens, &params, i);
            match shift.get(gens.name(i)) {
                Some(c) if !c.is_zero() => v.add(&CPoly::constant(&gens, c * &h)),
                _ => v,
            }
        })
        .collect();
    let shifted = t.map_entries(&format!("{}_shifted", t.name()), |e| Ok(e.compose(&images)))?;
    let n = gens.len();
    let mut components: Vec<BracketTable> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let parts = shifted.entry(i, j).grade_by_param("h").map_err(|e| PoissonError::NonPolynomialInH(e.to_string()))?;
            for (k, p) in parts.into_iter().enumerate() {
                while components.len() <= k {
                    let c = components.len();
                    components.push(BracketTable::zero(&format!("{}_h{c}", t.name()), &gens, &params));
                }
                components[k].set(i, j, p)?;
            }
        }
    }
    let linear = components
        .get(1)
        .cloned()
        .unwrap_or_else(|| BracketTable::zero("", &gens, &params))
        .with_name(&format!("{}_linearized", t.name()));
    Ok(ShiftResult { shifted, components, linear })
}

/// Whether some entry contains a monomial `a_i^i a_j^j` (including `i = j`).
pub fn has_diagonal_products(t: &BracketTable) -> bool {
    let gens = t.gens();
    let diag: Vec<bool> = gens
        .names()
        .iter()
        .map(|n| n.strip_prefix("a_").and_then(|r| r.split_once('^')).map(|(i, j)| i == j).unwrap_or(false))
        .collect();
    let n = gens.len();
    (0..n).any(|i| {
        (0..n).any(|j| t.entry(i, j).terms().any(|(m, _)| m.iter().zip(&diag).filter(|(_, d)| **d).map(|(e, _)| *e as usize).sum::<usize>() >= 2))
    })
}

/// Catalog lookup: `sklyanin2(n)`, `linear1(n)`, `gl(n)`, `elliptic`,
/// `kks(sl2)`, `rmat(sl2)`.
pub fn by_name(name: &str) -> Result<BracketTable, PoissonError> {
    let name = name.trim();
    let arg = |prefix: &str| -> Option<usize> {
        name.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')?.trim().parse().ok().filter(|&n| n >= 1)
    };
    if let Some(n) = arg("sklyanin2") {
        return Ok(sklyanin2(n));
    }
    if let Some(n) = arg("linear1") {
        return Ok(linear1(n));
    }
    if let Some(n) = arg("gl") {
        return Ok(gl(n));
    }
    match name {
        "elliptic" => Ok(elliptic()),
        "kks(sl2)" => Ok(super::kks(&super::LieData::sl(2)?)),
        "rmat(sl2)" => Ok(super::rmat(&super::LieData::sl(2)?)),
        _ => Err(PoissonError::UnknownBracket(name.into())),
    }
}
