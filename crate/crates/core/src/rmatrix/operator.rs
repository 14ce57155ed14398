use std::sync::Arc;

use num_rational::BigRational;
use rayon::prelude::*;

use crate::linalg::{inverse, Field, SMat};
use crate::scalar::{Assignment, ParamSet, Scalar};

use super::RMatrixError;

/// Operator on `V (x) V`, `dim V = n`. Column `i*n + j` is the image of
/// `a_i (x) a_j`: entry `(k*n + l, i*n + j)` is `S_ij^kl`.
#[derive(Clone, Debug)]
pub struct YBOperator {
    pub name: String,
    pub n: usize,
    pub matrix: SMat<Scalar>,
}

impl YBOperator {
    pub fn new(name: &str, n: usize, matrix: SMat<Scalar>) -> Result<Self, RMatrixError> {
        if matrix.nrows() != n * n || matrix.ncols() != n * n {
            return Err(RMatrixError::Shape(format!("{}x{} is not an operator on a {n}-dimensional tensor square", matrix.nrows(), matrix.ncols())));
        }
        Ok(YBOperator { name: name.into(), n, matrix })
    }

    pub fn params(&self) -> Arc<ParamSet> {
        ParamSet::standard()
    }

    /// `S_ij^kl`, 0-based.
    pub fn entry(&self, (i, j): (usize, usize), (k, l): (usize, usize)) -> Scalar {
        let n = self.n;
        self.matrix.get(k * n + l, i * n + j).cloned().unwrap_or_else(|| Scalar::zero(&self.params()))
    }

    pub fn specialize(&self, a: &Assignment) -> Result<SMat<BigRational>, RMatrixError> {
        Ok(self.matrix.map(|x| x.specialize(a))?)
    }

    pub fn substitute(&self, name: &str, value: &Scalar) -> Result<YBOperator, RMatrixError> {
        let m = self.matrix.map(|x| x.substitute(name, value))?;
        YBOperator::new(&self.name, self.n, m)
    }

    /// Sparse `(row, col, value)` triplets with canonical scalar strings.
    pub fn triplets(&self) -> Vec<(usize, usize, String)> {
        self.matrix.triplets().into_iter().map(|(r, c, x)| (r, c, x.to_canonical_string())).collect()
    }
}

fn q(params: &Arc<ParamSet>) -> Scalar {
    Scalar::param(params, "q").expect("standard parameters contain q")
}

/// `S(a_i (x) a_j) = (q-1) d_ij a_i (x) a_j + a_j (x) a_i + [i<j] (q - q^-1) a_i (x) a_j`.
pub fn hecke_s(n: usize) -> YBOperator {
    hecke_variant(n, Correction::Upper)
}

/// Perturbations used as negative controls.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Correction {
    Upper,
    None,
    Both,
}

pub(crate) fn hecke_variant(n: usize, correction: Correction) -> YBOperator {
    let params = ParamSet::standard();
    let q = q(&params);
    let qq = &q - &q.inv().unwrap();
    let mut t = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let col = i * n + j;
            if i == j {
                t.push((col, col, q.clone()));
                continue;
            }
            t.push((j * n + i, col, Scalar::one(&params)));
            if (i < j && correction != Correction::None) || (i > j && correction == Correction::Both) {
                t.push((col, col, qq.clone()));
            }
        }
    }
    let name = match correction {
        Correction::Upper => format!("hecke_s({n})"),
        Correction::None => format!("hecke_s_uncorrected({n})"),
        Correction::Both => format!("hecke_s_symmetric({n})"),
    };
    YBOperator::new(&name, n, SMat::from_triplets(n * n, n * n, t).unwrap()).unwrap()
}

pub fn flip(n: usize) -> YBOperator {
    let params = ParamSet::standard();
    let t = (0..n).flat_map(|i| (0..n).map(move |j| (j * n + i, i * n + j))).map(|(r, c)| (r, c, Scalar::one(&params))).collect();
    YBOperator::new(&format!("flip({n})"), n, SMat::from_triplets(n * n, n * n, t).unwrap()).unwrap()
}

/// First entry where `S12 S23 S12` and `S23 S12 S23` differ, for `m`
/// acting on `U (x) U` with `dim U = d`.
pub fn qybe_defect<F: Field>(m: &SMat<F>, d: usize, one: &F) -> Result<Option<(usize, usize)>, RMatrixError> {
    if m.nrows() != d * d || m.ncols() != d * d {
        return Err(RMatrixError::Shape(format!("{}x{} on a tensor square of dimension {d}", m.nrows(), m.ncols())));
    }
    let id = SMat::identity(d, one);
    let s12 = m.kron(&id);
    let s23 = id.kron(m);
    let (lhs, rhs) = rayon::join(|| s12.mul(&s23).and_then(|x| x.mul(&s12)), || s23.mul(&s12).and_then(|x| x.mul(&s23)));
    let diff = lhs?.sub(&rhs?)?;
    Ok(diff.triplets().into_iter().next().map(|(r, c, _)| (r, c)))
}

pub fn check_qybe<F: Field>(m: &SMat<F>, d: usize, one: &F) -> Result<bool, RMatrixError> {
    Ok(qybe_defect(m, d, one)?.is_none())
}

/// QYBE for `m` at each point; returns the failing points.
pub fn qybe_at_points(m: &SMat<Scalar>, d: usize, points: &[Assignment]) -> Result<Vec<Assignment>, RMatrixError> {
    let one = BigRational::from_integer(1.into());
    let results: Vec<Result<Option<Assignment>, RMatrixError>> = points
        .par_iter()
        .map(|a| {
            let s = m.map(|x| x.specialize(a))?;
            Ok((!check_qybe(&s, d, &one)?).then(|| a.clone()))
        })
        .collect();
    results.into_iter().filter_map(|r| r.transpose()).collect()
}

/// `(S - q id)(S + q^-1 id) = 0`.
pub fn check_hecke(s: &YBOperator) -> bool {
    let params = s.params();
    let q = q(&params);
    let id = SMat::identity(s.n * s.n, &Scalar::one(&params));
    let a = s.matrix.sub(&id.scale(&q)).unwrap();
    let b = s.matrix.add(&id.scale(&q.inv().unwrap())).unwrap();
    a.mul(&b).unwrap().is_zero()
}

/// `S_W (a_i^k (x) a_j^l) = S_ij^mn (S^-1)^kl_pq a_m^p (x) a_n^q` on
/// `W (x) W`, `a_i^k = a_i (x) a^k` with index `i*n + k`.
pub fn s_w(s: &YBOperator) -> Result<YBOperator, RMatrixError> {
    let n = s.n;
    let sinv = inverse(&s.matrix).map_err(|_| RMatrixError::NotInvertible(format!(": {}", s.name)))?;
    let nn = n * n;
    // columns of S and rows of S^-1 as sparse lists
    let st = s.matrix.transpose();
    let mut t = Vec::new();
    for i in 0..n {
        for k in 0..n {
            for j in 0..n {
                for l in 0..n {
                    let col = (i * n + k) * nn + (j * n + l);
                    for (mn, a) in st.row(i * n + j) {
                        let (m, nidx) = (mn / n, mn % n);
                        for (pq, b) in sinv.row(k * n + l) {
                            let (p, qi) = (pq / n, pq % n);
                            let row = (m * n + p) * nn + (nidx * n + qi);
                            t.push((row, col, a * b));
                        }
                    }
                }
            }
        }
    }
    let m = SMat::from_triplets(nn * nn, nn * nn, t)?;
    YBOperator::new(&format!("s_w({})", s.name), nn, m)
}
