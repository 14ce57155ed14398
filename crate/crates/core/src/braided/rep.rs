use std::sync::Arc;

use num_rational::BigRational;

use crate::linalg::{SMat, SVec};
use crate::scalar::{Assignment, ParamSet, Scalar};

use super::BraidedError;

/// `[n] = (q^n - q^-n)/(q - q^-1)`.
pub fn q_integer(params: &Arc<ParamSet>, n: i64) -> Scalar {
    let q = Scalar::param(params, "q").expect("q is a standard parameter");
    let num = q.pow(n as i32).unwrap() - q.pow(-(n as i32)).unwrap();
    let den = &q - &q.inv().unwrap();
    &num / &den
}

fn q_pow(params: &Arc<ParamSet>, n: i64) -> Scalar {
    Scalar::param(params, "q").unwrap().pow(n as i32).unwrap()
}

/// Row-major coordinates of a square matrix: entry `(a, b)` at `a*n + b`.
pub fn vec_of(m: &SMat<Scalar>) -> SVec<Scalar> {
    let n = m.ncols();
    let mut v: SVec<Scalar> = m.triplets().into_iter().map(|(a, b, x)| (a * n + b, x)).collect();
    v.sort_by_key(|e| e.0);
    v
}

pub fn mat_of(n: usize, v: &SVec<Scalar>) -> SMat<Scalar> {
    SMat::from_triplets(n, n, v.iter().map(|(i, x)| (i / n, i % n, x.clone())).collect()).expect("index inside n x n")
}

/// A finite-dimensional U_q(sl2)-module with diagonal `K = diag(q^w)`.
#[derive(Clone, Debug)]
pub struct WeightRep {
    pub params: Arc<ParamSet>,
    pub weights: Vec<i64>,
    pub e: SMat<Scalar>,
    pub f: SMat<Scalar>,
    pub k: SMat<Scalar>,
    pub kinv: SMat<Scalar>,
}

impl WeightRep {
    /// Builds `K` from the weights and checks the defining relations.
    pub fn new(params: &Arc<ParamSet>, weights: Vec<i64>, e: SMat<Scalar>, f: SMat<Scalar>) -> Result<Self, BraidedError> {
        let n = weights.len();
        if e.nrows() != n || e.ncols() != n || f.nrows() != n || f.ncols() != n {
            return Err(BraidedError::Shape(format!("expected {n} x {n} raising and lowering matrices")));
        }
        let diag = |sign: i64| {
            SMat::from_triplets(n, n, weights.iter().enumerate().map(|(i, w)| (i, i, q_pow(params, sign * w))).collect()).unwrap()
        };
        let rep = WeightRep { params: params.clone(), k: diag(1), kinv: diag(-1), weights, e, f };
        rep.check_relations()?;
        Ok(rep)
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn one(&self) -> Scalar {
        Scalar::one(&self.params)
    }

    pub fn identity(&self) -> SMat<Scalar> {
        SMat::identity(self.dim(), &self.one())
    }

    pub fn check_relations(&self) -> Result<(), BraidedError> {
        let q2 = q_pow(&self.params, 2);
        let q2i = q_pow(&self.params, -2);
        let ke = self.k.mul(&self.e)?.sub(&self.e.mul(&self.k)?.scale(&q2))?;
        if !ke.is_zero() {
            return Err(BraidedError::Relation("K E = q^2 E K".into()));
        }
        let kf = self.k.mul(&self.f)?.sub(&self.f.mul(&self.k)?.scale(&q2i))?;
        if !kf.is_zero() {
            return Err(BraidedError::Relation("K F = q^-2 F K".into()));
        }
        let q = Scalar::param(&self.params, "q")?;
        let den = &q - &q.inv()?;
        let lhs = self.e.mul(&self.f)?.sub(&self.f.mul(&self.e)?)?;
        let rhs = self.k.sub(&self.kinv)?.scale(&den.inv()?);
        if !lhs.same(&rhs) {
            return Err(BraidedError::Relation("[E, F] = (K - K^-1)/(q - q^-1)".into()));
        }
        Ok(())
    }

    /// `(E, F, H)` at `q = 1` with `H = diag(weights)`.
    pub fn classical(&self) -> Result<[SMat<BigRational>; 3], BraidedError> {
        let mut a = Assignment::new();
        a.insert("q".into(), BigRational::from_integer(1.into()));
        let e = self.e.map(|x| x.specialize(&a))?;
        let f = self.f.map(|x| x.specialize(&a))?;
        let n = self.dim();
        let h = SMat::from_triplets(n, n, self.weights.iter().enumerate().map(|(i, w)| (i, i, BigRational::from_integer((*w).into()))).collect())?;
        Ok([e, f, h])
    }

    /// Module on `self (x) other`, index `a*m + b`.
    pub fn tensor(&self, other: &WeightRep) -> Result<WeightRep, BraidedError> {
        let (i1, i2) = (self.identity(), other.identity());
        let e = self.e.kron(&i2).add(&self.k.kron(&other.e))?;
        let f = self.f.kron(&other.kinv).add(&i1.kron(&other.f))?;
        let weights = self.weights.iter().flat_map(|a| other.weights.iter().map(move |b| a + b)).collect();
        WeightRep::new(&self.params, weights, e, f)
    }

    /// Applies an operator `M -> op(M)` to every matrix unit and collects
    /// the result as an `n^2 x n^2` matrix on [`vec_of`] coordinates.
    fn end_operator(&self, op: impl Fn(&SMat<Scalar>) -> Result<SMat<Scalar>, BraidedError>) -> Result<SMat<Scalar>, BraidedError> {
        let n = self.dim();
        let mut trip = Vec::new();
        for c in 0..n {
            for d in 0..n {
                let unit = SMat::from_triplets(n, n, vec![(c, d, self.one())])?;
                for (r, x) in vec_of(&op(&unit)?) {
                    trip.push((r, c * n + d, x));
                }
            }
        }
        Ok(SMat::from_triplets(n * n, n * n, trip)?)
    }

    /// `ρ^End(E) M = E M - K M K^-1 E`.
    pub fn end_e(&self, m: &SMat<Scalar>) -> Result<SMat<Scalar>, BraidedError> {
        Ok(self.e.mul(m)?.sub(&self.k.mul(m)?.mul(&self.kinv)?.mul(&self.e)?)?)
    }

    /// `ρ^End(F) M = F M K - M F K`.
    pub fn end_f(&self, m: &SMat<Scalar>) -> Result<SMat<Scalar>, BraidedError> {
        Ok(self.f.mul(m)?.mul(&self.k)?.sub(&m.mul(&self.f)?.mul(&self.k)?)?)
    }

    /// `ρ^End(K) M = K M K^-1`.
    pub fn end_k(&self, m: &SMat<Scalar>) -> Result<SMat<Scalar>, BraidedError> {
        Ok(self.k.mul(m)?.mul(&self.kinv)?)
    }

    pub fn end_kinv(&self, m: &SMat<Scalar>) -> Result<SMat<Scalar>, BraidedError> {
        Ok(self.kinv.mul(m)?.mul(&self.k)?)
    }

    /// `End(U)` with `a -> (M -> ρ(a_1) M ρ(S(a_2)))`.
    pub fn end_module(&self) -> Result<WeightRep, BraidedError> {
        let e = self.end_operator(|m| self.end_e(m))?;
        let f = self.end_operator(|m| self.end_f(m))?;
        let weights = self.weights.iter().flat_map(|a| self.weights.iter().map(move |b| a - b)).collect();
        WeightRep::new(&self.params, weights, e, f)
    }

    /// First failing `(generator, i, j)` of
    /// `ρ^End(a)(M_i M_j) = ρ^End(a_1) M_i ρ^End(a_2) M_j` over matrix units.
    pub fn product_equivariance(&self) -> Result<Option<(String, usize, usize)>, BraidedError> {
        let n = self.dim();
        let units: Vec<SMat<Scalar>> =
            (0..n * n).map(|i| SMat::from_triplets(n, n, vec![(i / n, i % n, self.one())]).unwrap()).collect();
        for (i, a) in units.iter().enumerate() {
            for (j, b) in units.iter().enumerate() {
                let ab = a.mul(b)?;
                let e = self.end_e(a)?.mul(b)?.add(&self.end_k(a)?.mul(&self.end_e(b)?)?)?;
                if !self.end_e(&ab)?.same(&e) {
                    return Ok(Some(("E".into(), i, j)));
                }
                let f = self.end_f(a)?.mul(&self.end_kinv(b)?)?.add(&a.mul(&self.end_f(b)?)?)?;
                if !self.end_f(&ab)?.same(&f) {
                    return Ok(Some(("F".into(), i, j)));
                }
                if !self.end_k(&ab)?.same(&self.end_k(a)?.mul(&self.end_k(b)?)?) {
                    return Ok(Some(("K".into(), i, j)));
                }
            }
        }
        Ok(None)
    }

    /// Matrices in the basis `b_j = sum_i p[i][j] e_i` (columns of `p`).
    pub fn change_basis(&self, p: &SMat<Scalar>) -> Result<WeightRep, BraidedError> {
        let pinv = crate::linalg::inverse(p)?;
        let conj = |m: &SMat<Scalar>| -> Result<SMat<Scalar>, BraidedError> { Ok(pinv.mul(m)?.mul(p)?) };
        let k = conj(&self.k)?;
        let n = self.dim();
        let mut weights = Vec::with_capacity(n);
        for j in 0..n {
            let w = self
                .weights
                .iter()
                .find(|w| k.get(j, j).map(|x| *x == q_pow(&self.params, **w)).unwrap_or(false))
                .ok_or_else(|| BraidedError::Shape("basis change does not preserve weight vectors".into()))?;
            weights.push(*w);
        }
        WeightRep::new(&self.params, weights, conj(&self.e)?, conj(&self.f)?)
    }
}

/// The `(k+1)`-dimensional irreducible module with basis `v_0, ..., v_k`:
/// `K v_j = q^(k-2j) v_j`, `F v_j = [j+1] v_(j+1)`, `E v_j = [k-j+1] v_(j-1)`.
pub fn irrep(k: usize) -> WeightRep {
    let params = ParamSet::standard();
    let n = k + 1;
    let kk = k as i64;
    let mut e = Vec::new();
    let mut f = Vec::new();
    for j in 0..n {
        let jj = j as i64;
        if j + 1 < n {
            f.push((j + 1, j, q_integer(&params, jj + 1)));
        }
        if j > 0 {
            e.push((j - 1, j, q_integer(&params, kk - jj + 1)));
        }
    }
    let weights = (0..n as i64).map(|j| kk - 2 * j).collect();
    WeightRep::new(&params, weights, SMat::from_triplets(n, n, e).unwrap(), SMat::from_triplets(n, n, f).unwrap())
        .expect("standard irreducible module satisfies the defining relations")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(x: i64) -> BigRational {
        BigRational::from_integer(x.into())
    }

    #[test]
    fn trivial_module() {
        let r = irrep(0);
        assert_eq!(r.dim(), 1);
        assert!(r.e.is_zero() && r.f.is_zero());
        assert!(r.k.get(0, 0).unwrap().is_one());
    }

    #[test]
    fn fundamental_eigenvalues() {
        let r = irrep(1);
        let q = Scalar::param(&r.params, "q").unwrap();
        assert_eq!(r.k.get(0, 0).unwrap(), &q);
        assert_eq!(r.k.get(1, 1).unwrap(), &q.inv().unwrap());
    }

    #[test]
    fn spin_one_classical_limit() {
        let [e, f, h] = irrep(2).classical().unwrap();
        let e_ref = SMat::from_triplets(3, 3, vec![(0, 1, int(2)), (1, 2, int(1))]).unwrap();
        let f_ref = SMat::from_triplets(3, 3, vec![(1, 0, int(1)), (2, 1, int(2))]).unwrap();
        assert!(e.same(&e_ref) && f.same(&f_ref));
        let comm = e.mul(&f).unwrap().sub(&f.mul(&e).unwrap()).unwrap();
        assert!(comm.same(&h));
    }

    #[test]
    fn tensor_and_end_are_modules() {
        let r = irrep(1);
        assert_eq!(r.tensor(&r).unwrap().dim(), 4);
        let end = r.end_module().unwrap();
        assert_eq!(end.weights, vec![0, 2, -2, 0]);
        assert_eq!(r.product_equivariance().unwrap(), None);
        assert_eq!(irrep(2).product_equivariance().unwrap(), None);
    }

    #[test]
    fn q_integers() {
        let p = ParamSet::standard();
        let q = Scalar::param(&p, "q").unwrap();
        assert_eq!(q_integer(&p, 2), &q + &q.inv().unwrap());
        assert!(q_integer(&p, 1).is_one());
        assert!(q_integer(&p, 0).is_zero());
    }
}
