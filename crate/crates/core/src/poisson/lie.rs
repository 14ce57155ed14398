use std::sync::Arc;

use crate::algebra::{CPoly, GeneratorSet};
use crate::linalg::{inverse, SMat};
use crate::scalar::{ParamSet, Scalar};

use super::{BracketTable, PoissonError};

/// A Lie algebra by structure constants together with an element `R` of
/// `g (x) g`.
#[derive(Clone, Debug)]
pub struct LieData {
    pub name: String,
    pub names: Vec<String>,
    params: Arc<ParamSet>,
    /// `consts[a][b]` holds the sparse expansion of `[e_a, e_b]`.
    consts: Vec<Vec<Vec<(usize, Scalar)>>>,
    /// Entries `(a, b, r^{ab})` of `R = sum r^{ab} e_a (x) e_b`.
    pub r: Vec<(usize, usize, Scalar)>,
}

type IMat = Vec<Vec<i64>>;

fn commutator(x: &IMat, y: &IMat) -> IMat {
    let n = x.len();
    let mut out = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                out[i][j] += x[i][k] * y[k][j] - y[i][k] * x[k][j];
            }
        }
    }
    out
}

impl LieData {
    /// Checks antisymmetry and the Jacobi identity of the structure constants.
    pub fn new(
        name: &str,
        names: Vec<String>,
        params: &Arc<ParamSet>,
        consts: Vec<Vec<Vec<(usize, Scalar)>>>,
        r: Vec<(usize, usize, Scalar)>,
    ) -> Result<Self, PoissonError> {
        let l = LieData { name: name.into(), names, params: params.clone(), consts, r };
        let d = l.dim();
        for a in 0..d {
            for b in 0..d {
                let s = l.add(&l.consts[a][b], &l.consts[b][a]);
                if !s.is_empty() {
                    return Err(PoissonError::LieJacobi(format!("[{0},{1}] + [{1},{0}] != 0", l.names[a], l.names[b])));
                }
                for c in 0..d {
                    let j1 = l.bracket_vec(&[(a, Scalar::one(params))], &l.consts[b][c]);
                    let j2 = l.bracket_vec(&[(b, Scalar::one(params))], &l.consts[c][a]);
                    let j3 = l.bracket_vec(&[(c, Scalar::one(params))], &l.consts[a][b]);
                    if !l.add(&l.add(&j1, &j2), &j3).is_empty() {
                        return Err(PoissonError::LieJacobi(format!("({}, {}, {})", l.names[a], l.names[b], l.names[c])));
                    }
                }
            }
        }
        Ok(l)
    }

    /// `sl(n)` in the basis `E_ij` (`i < j`), `E_ji`, `H_i = E_ii - E_{i+1,i+1}`,
    /// with `R = 1/2 sum_{i<j} E_ij ^ E_ji`. For `n = 2` the basis is named
    /// `E, F, H`.
    pub fn sl(n: usize) -> Result<Self, PoissonError> {
        let params = ParamSet::standard();
        let mut mats: Vec<IMat> = Vec::new();
        let mut names: Vec<String> = Vec::new();
        let unit = |i: usize, j: usize| {
            let mut m = vec![vec![0i64; n]; n];
            m[i][j] = 1;
            m
        };
        let mut pos = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                pos.push((i, j));
            }
        }
        for &(i, j) in &pos {
            mats.push(unit(i, j));
            names.push(if n == 2 { "E".into() } else { format!("E{}{}", i + 1, j + 1) });
        }
        for &(i, j) in &pos {
            mats.push(unit(j, i));
            names.push(if n == 2 { "F".into() } else { format!("E{}{}", j + 1, i + 1) });
        }
        for i in 0..n - 1 {
            let mut m = unit(i, i);
            m[i + 1][i + 1] = -1;
            mats.push(m);
            names.push(if n == 2 { "H".into() } else { format!("H{}", i + 1) });
        }
        let np = pos.len();
        let decompose = |m: &IMat| -> Vec<(usize, Scalar)> {
            let mut out = Vec::new();
            for (k, &(i, j)) in pos.iter().enumerate() {
                if m[i][j] != 0 {
                    out.push((k, Scalar::from_int(&params, m[i][j])));
                }
            }
            for (k, &(i, j)) in pos.iter().enumerate() {
                if m[j][i] != 0 {
                    out.push((np + k, Scalar::from_int(&params, m[j][i])));
                }
            }
            let mut acc = 0;
            for i in 0..n - 1 {
                acc += m[i][i];
                if acc != 0 {
                    out.push((2 * np + i, Scalar::from_int(&params, acc)));
                }
            }
            out.sort_by_key(|e| e.0);
            out
        };
        let d = mats.len();
        let consts: Vec<Vec<Vec<(usize, Scalar)>>> = (0..d).map(|a| (0..d).map(|b| decompose(&commutator(&mats[a], &mats[b]))).collect()).collect();
        let half = Scalar::ratio(&params, 1, 2);
        let mut r = Vec::new();
        for k in 0..np {
            r.push((k, np + k, half.clone()));
            r.push((np + k, k, -&half));
        }
        Self::new(&format!("sl({n})"), names, &params, consts, r)
    }

    pub fn with_r(mut self, r: Vec<(usize, usize, Scalar)>) -> Self {
        self.r = r;
        self
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn params(&self) -> &Arc<ParamSet> {
        &self.params
    }

    pub fn bracket(&self, a: usize, b: usize) -> &[(usize, Scalar)] {
        &self.consts[a][b]
    }

    fn add(&self, x: &[(usize, Scalar)], y: &[(usize, Scalar)]) -> Vec<(usize, Scalar)> {
        crate::linalg::sparse::add(x, y)
    }

    fn bracket_vec(&self, x: &[(usize, Scalar)], y: &[(usize, Scalar)]) -> Vec<(usize, Scalar)> {
        let mut out = Vec::new();
        for (a, ca) in x {
            for (b, cb) in y {
                let c = ca * cb;
                out = self.add(&out, &crate::linalg::sparse::scale(&self.consts[*a][*b], &c));
            }
        }
        out
    }

    /// `K_ab = tr(ad e_a ad e_b)`.
    pub fn killing(&self) -> Vec<Vec<Scalar>> {
        let d = self.dim();
        let zero = Scalar::zero(&self.params);
        let mut k = vec![vec![zero.clone(); d]; d];
        for a in 0..d {
            for b in 0..d {
                let mut s = zero.clone();
                for m in 0..d {
                    // (ad_a ad_b)(e_m) coefficient on e_m
                    for (j, cb) in &self.consts[b][m] {
                        for (l, ca) in &self.consts[a][*j] {
                            if *l == m {
                                s = &s + &(ca * cb);
                            }
                        }
                    }
                }
                k[a][b] = s;
            }
        }
        k
    }
}

/// `{x_a, x_b} = [e_a, e_b]` on linear coordinates.
pub fn kks(l: &LieData) -> BracketTable {
    let gens = GeneratorSet::new(&l.names).expect("distinct names");
    let mut t = BracketTable::zero(&format!("kks({})", l.name.replace(['(', ')'], "")), &gens, &l.params);
    for a in 0..l.dim() {
        for b in a + 1..l.dim() {
            let mut e = CPoly::zero(&gens, &l.params);
            for (k, c) in l.bracket(a, b) {
                e = e.add(&CPoly::var(&gens, &l.params, *k).scale(c));
            }
            t.set(a, b, e).unwrap();
        }
    }
    t
}

/// `{f, g}_R = sum r^{ab} rho(e_a) f rho(e_b) g` where `rho(e_a)` is the
/// derivation `x_l -> [e_a, x_l]`.
pub fn rmat(l: &LieData) -> BracketTable {
    let gens = GeneratorSet::new(&l.names).expect("distinct names");
    let p = &l.params;
    let act = |a: usize, x: usize| -> CPoly {
        let mut e = CPoly::zero(&gens, p);
        for (k, c) in l.bracket(a, x) {
            e = e.add(&CPoly::var(&gens, p, *k).scale(c));
        }
        e
    };
    let mut t = BracketTable::zero(&format!("rmat({})", l.name.replace(['(', ')'], "")), &gens, p);
    for x in 0..l.dim() {
        for y in x + 1..l.dim() {
            let mut e = CPoly::zero(&gens, p);
            for (a, b, c) in &l.r {
                e = e.add(&act(*a, x).mul(&act(*b, y)).scale(c));
            }
            t.set(x, y, e).unwrap();
        }
    }
    t
}

/// `[R12,R13] + [R12,R23] + [R13,R23]` as a dense `dim^3` tensor, with
/// symmetry and invariance verdicts.
#[derive(Clone, Debug)]
pub struct CybeDefect {
    pub dim: usize,
    pub tensor: Vec<Scalar>,
    pub antisymmetric: bool,
    pub ad_invariant: bool,
    /// `a` with `defect = a [Omega12, Omega23]`, Omega the Killing-dual
    /// Casimir tensor; `None` if not proportional.
    pub normalization: Option<Scalar>,
}

impl CybeDefect {
    pub fn is_zero(&self) -> bool {
        self.tensor.iter().all(|x| x.is_zero())
    }

    pub fn nonzero_entries(&self) -> Vec<((usize, usize, usize), Scalar)> {
        let d = self.dim;
        self.tensor
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| ((i / (d * d), (i / d) % d, i % d), x.clone()))
            .collect()
    }
}

fn tidx(d: usize, a: usize, b: usize, c: usize) -> usize {
    (a * d + b) * d + c
}

fn cyb(l: &LieData, r1: &[(usize, usize, Scalar)], r2: &[(usize, usize, Scalar)]) -> Vec<Scalar> {
    let d = l.dim();
    let mut t = vec![Scalar::zero(&l.params); d * d * d];
    for (a, b, x) in r1 {
        for (c, e, y) in r2 {
            let xy = x * y;
            for (k, s) in l.bracket(*a, *c) {
                let i = tidx(d, *k, *b, *e);
                t[i] = &t[i] + &(&xy * s);
            }
            for (k, s) in l.bracket(*b, *c) {
                let i = tidx(d, *a, *k, *e);
                t[i] = &t[i] + &(&xy * s);
            }
            for (k, s) in l.bracket(*b, *e) {
                let i = tidx(d, *a, *c, *k);
                t[i] = &t[i] + &(&xy * s);
            }
        }
    }
    t
}

pub fn cybe_defect(l: &LieData) -> Result<CybeDefect, PoissonError> {
    let d = l.dim();
    let tensor = cyb(l, &l.r, &l.r);
    let antisymmetric = (0..d).all(|a| {
        (0..d).all(|b| {
            (0..d).all(|c| {
                let x = &tensor[tidx(d, a, b, c)];
                (x + &tensor[tidx(d, b, a, c)]).is_zero() && (x + &tensor[tidx(d, a, c, b)]).is_zero()
            })
        })
    });
    let ad_invariant = (0..d).all(|x| {
        let mut out = vec![Scalar::zero(&l.params); d * d * d];
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let v = &tensor[tidx(d, a, b, c)];
                    if v.is_zero() {
                        continue;
                    }
                    for (k, s) in l.bracket(x, a) {
                        let i = tidx(d, *k, b, c);
                        out[i] = &out[i] + &(v * s);
                    }
                    for (k, s) in l.bracket(x, b) {
                        let i = tidx(d, a, *k, c);
                        out[i] = &out[i] + &(v * s);
                    }
                    for (k, s) in l.bracket(x, c) {
                        let i = tidx(d, a, b, *k);
                        out[i] = &out[i] + &(v * s);
                    }
                }
            }
        }
        out.iter().all(|v| v.is_zero())
    });
    // [Omega12, Omega23] = sum w^{ab} w^{ce} e_a (x) [e_b, e_c] (x) e_e
    let k = l.killing();
    let triplets: Vec<(usize, usize, Scalar)> =
        (0..d).flat_map(|a| (0..d).map(move |b| (a, b))).filter(|&(a, b)| !k[a][b].is_zero()).map(|(a, b)| (a, b, k[a][b].clone())).collect();
    let kinv = SMat::from_triplets(d, d, triplets).ok().and_then(|m| inverse(&m).ok());
    let normalization = kinv.and_then(|kinv| {
        let w = kinv.triplets();
        let mut phi = vec![Scalar::zero(&l.params); d * d * d];
        for (a, b, x) in &w {
            for (c, e, y) in &w {
                for (m, s) in l.bracket(*b, *c) {
                    let i = tidx(d, *a, *m, *e);
                    phi[i] = &phi[i] + &(&(x * y) * s);
                }
            }
        }
        let (i0, p0) = phi.iter().enumerate().find(|(_, p)| !p.is_zero())?;
        let a = &tensor[i0] / p0;
        phi.iter().zip(&tensor).all(|(p, t)| (&(p * &a) - t).is_zero()).then_some(a)
    });
    Ok(CybeDefect { dim: d, tensor, antisymmetric, ad_invariant, normalization })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl_structure_constants() {
        let l = LieData::sl(2).unwrap();
        assert_eq!(l.names, vec!["E", "F", "H"]);
        let p = l.params().clone();
        assert_eq!(l.bracket(2, 0), &[(0, Scalar::from_int(&p, 2))][..]);
        assert_eq!(l.bracket(0, 1), &[(2, Scalar::one(&p))][..]);
        assert_eq!(LieData::sl(3).unwrap().dim(), 8);
    }

    #[test]
    fn jacobi_failure_is_rejected() {
        let p = ParamSet::standard();
        let one = Scalar::one(&p);
        // [x,y]=y, [x,z]=y, [y,z]=x violates Jacobi
        let mut c = vec![vec![Vec::new(); 3]; 3];
        c[0][1] = vec![(1, one.clone())];
        c[1][0] = vec![(1, -&one)];
        c[0][2] = vec![(1, one.clone())];
        c[2][0] = vec![(1, -&one)];
        c[1][2] = vec![(0, one.clone())];
        c[2][1] = vec![(0, -&one)];
        let names = vec!["x".into(), "y".into(), "z".into()];
        assert!(matches!(LieData::new("bad", names, &p, c, vec![]), Err(PoissonError::LieJacobi(_))));
    }

    #[test]
    fn zero_r_has_zero_defect() {
        let l = LieData::sl(2).unwrap().with_r(vec![]);
        assert!(cybe_defect(&l).unwrap().is_zero());
    }

    #[test]
    fn kks_is_poisson() {
        let t = kks(&LieData::sl(2).unwrap());
        assert!(t.jacobi_defects().is_empty());
        assert_eq!(t.degree(), 1);
    }
}
