use std::sync::Arc;

use num_rational::BigRational;

use crate::linalg::{inverse, SMat, SVec};
use crate::scalar::{Assignment, ParamSet, Scalar};

use super::decompose::lowering_chain;
use super::{highest_weight_vectors, irrep, BraidedError, WeightRep};

/// One irreducible summand of `V (x) V` (index `a*3 + b`).
#[derive(Clone, Debug)]
pub struct TensorComponent {
    pub weight: i64,
    /// The flip fixes (`false`) or negates (`true`) the summand at `q = 1`.
    pub skew: bool,
    /// Highest weight vector followed by its `F`-images.
    pub basis: Vec<SVec<Scalar>>,
}

/// The q-Lie bracket on the adjoint module with basis `u, v, w`
/// (`u` lowest weight). `table` is `3 x 9`: column `a*3 + b` holds `[e_a, e_b]`.
#[derive(Clone, Debug)]
pub struct QLieBracket {
    pub params: Arc<ParamSet>,
    pub names: Vec<String>,
    pub module: WeightRep,
    pub table: SMat<Scalar>,
    /// `(name, c)`: the basis vector is `c` times the lowest-to-highest
    /// reordered standard weight vector.
    pub rescaling: Vec<(String, Scalar)>,
    pub components: Vec<TensorComponent>,
    /// Invariant vector in `V (x) V`, coefficient of `v (x) v` equal to 1.
    pub casimir: SVec<Scalar>,
}

fn sc(params: &Arc<ParamSet>, s: &str) -> Scalar {
    Scalar::parse(params, s).expect("well-formed constant")
}

/// `[u,u]=0, [u,v]=-q^2 M u, [u,w]=(q+q^-1)^-1 M v, [v,u]=M u,
/// [v,v]=(1-q^2) M v, [v,w]=-q^2 M w, [w,u]=-(q+q^-1)^-1 M v, [w,v]=M w, [w,w]=0`.
pub fn printed_table(params: &Arc<ParamSet>) -> SMat<Scalar> {
    let entries = [
        (0, 1, 0, "-q^2*M"),
        (0, 2, 1, "M/(q+q^-1)"),
        (1, 0, 0, "M"),
        (1, 1, 1, "(1-q^2)*M"),
        (1, 2, 2, "-q^2*M"),
        (2, 0, 1, "-M/(q+q^-1)"),
        (2, 1, 2, "M"),
    ];
    SMat::from_triplets(3, 9, entries.iter().map(|(a, b, k, s)| (*k, a * 3 + b, sc(params, s))).collect()).unwrap()
}

fn flip(v: &SVec<Scalar>, n: usize) -> SVec<Scalar> {
    let mut out: SVec<Scalar> = v.iter().map(|(i, x)| ((i % n) * n + i / n, x.clone())).collect();
    out.sort_by_key(|e| e.0);
    out
}

fn at_q1(v: &SVec<Scalar>) -> Result<Vec<(usize, BigRational)>, BraidedError> {
    let mut a = Assignment::new();
    a.insert("q".into(), BigRational::from_integer(1.into()));
    let mut out = Vec::new();
    for (i, x) in v {
        let y = x.specialize_partial(&a)?.as_rational().ok_or_else(|| BraidedError::Shape("weight vector depends on more than q".into()))?;
        if y != BigRational::from_integer(0.into()) {
            out.push((*i, y));
        }
    }
    Ok(out)
}

fn components(square: &WeightRep) -> Result<Vec<TensorComponent>, BraidedError> {
    let n = (square.dim() as f64).sqrt() as usize;
    let mut out = Vec::new();
    let mut ws: Vec<i64> = square.weights.iter().copied().filter(|w| *w >= 0).collect();
    ws.sort_unstable_by(|a, b| b.cmp(a));
    ws.dedup();
    for w in ws {
        for hw in highest_weight_vectors(square, w) {
            let c = at_q1(&hw)?;
            let f = at_q1(&flip(&hw, n))?;
            let neg: Vec<(usize, BigRational)> = c.iter().map(|(i, x)| (*i, -x.clone())).collect();
            let skew = if f == c {
                false
            } else if f == neg {
                true
            } else {
                return Err(BraidedError::Shape(format!("summand of highest weight {w} is neither symmetric nor skew at q = 1")));
            };
            out.push(TensorComponent { weight: w, skew, basis: lowering_chain(square, &hw)? });
        }
    }
    Ok(out)
}

/// Builds the bracket from the decomposition of `V (x) V`: projection onto
/// the skew adjoint summand along the others, followed by the equivariant
/// isomorphism onto `V`. The result is rescaled by one scalar and one basis
/// change `u -> c u` and must then agree with [`printed_table`] entry for entry.
pub fn q_lie_bracket() -> Result<QLieBracket, BraidedError> {
    let v0 = irrep(2);
    let params = v0.params.clone();
    let one = Scalar::one(&params);
    let rev = SMat::from_triplets(3, 3, vec![(2, 0, one.clone()), (1, 1, one.clone()), (0, 2, one.clone())])?;
    let vr = v0.change_basis(&rev)?;
    let raw = raw_bracket(&vr)?;

    let get = |k: usize, a: usize, b: usize| raw.get(k, a * 3 + b).cloned().unwrap_or_else(|| Scalar::zero(&params));
    let vw = get(2, 1, 2);
    let uw = get(1, 0, 2);
    if vw.is_zero() || uw.is_zero() {
        return Err(BraidedError::TableMismatch("constructed bracket vanishes on [v,w] or [u,w]".into()));
    }
    let lambda = &sc(&params, "-q^2*M") / &vw;
    let c = &(&sc(&params, "M/(q+q^-1)") / &lambda) / &uw;
    let d = [c.clone(), one.clone(), one.clone()];
    let mut trip = Vec::new();
    for (k, col, x) in raw.triplets() {
        let (a, b) = (col / 3, col % 3);
        trip.push((k, col, &(&(&lambda * &x) * &(&d[a] * &d[b])) / &d[k]));
    }
    let table = SMat::from_triplets(3, 9, trip)?;
    let printed = printed_table(&params);
    if !table.same(&printed) {
        let mut bad = Vec::new();
        for a in 0..3 {
            for b in 0..3 {
                let col = |m: &SMat<Scalar>| (0..3).map(|k| m.get(k, a * 3 + b).cloned()).collect::<Vec<_>>();
                if col(&table) != col(&printed) {
                    bad.push(format!("[{},{}]", ["u", "v", "w"][a], ["u", "v", "w"][b]));
                }
            }
        }
        return Err(BraidedError::TableMismatch(bad.join(", ")));
    }

    let dm = SMat::from_triplets(3, 3, vec![(0, 0, c.clone()), (1, 1, one.clone()), (2, 2, one.clone())])?;
    let module = vr.change_basis(&dm)?;
    let square = module.tensor(&module)?;
    let comps = components(&square)?;
    let inv = comps
        .iter()
        .find(|c| c.weight == 0)
        .ok_or_else(|| BraidedError::Precondition("no invariant vector in V (x) V".into()))?;
    let hw = &inv.basis[0];
    let lead = hw.iter().find(|(i, _)| *i == 4).map(|(_, x)| x.clone()).ok_or_else(|| BraidedError::Shape("Casimir has no v (x) v term".into()))?;
    let casimir = crate::linalg::sparse::scale(hw, &lead.inv()?);
    let out = QLieBracket {
        params: params.clone(),
        names: vec!["u".into(), "v".into(), "w".into()],
        module,
        table,
        rescaling: vec![("u".into(), c), ("v".into(), one.clone()), ("w".into(), one)],
        components: comps,
        casimir,
    };
    if let Some(g) = out.equivariance_failure()? {
        return Err(BraidedError::NotEquivariant(format!("bracket does not commute with {g}")));
    }
    Ok(out)
}

/// `Φ ∘ Q^-1` where `Q` lists the component bases of `V (x) V` and `Φ`
/// sends the skew weight-2 chain onto the chain of `V` and the rest to 0.
fn raw_bracket(v: &WeightRep) -> Result<SMat<Scalar>, BraidedError> {
    let square = v.tensor(v)?;
    let comps = components(&square)?;
    let top = (0..v.dim()).find(|&i| v.weights[i] == 2).ok_or_else(|| BraidedError::Shape("no weight 2 vector".into()))?;
    let chain_v = lowering_chain(v, &vec![(top, Scalar::one(&v.params))])?;
    let mut cols: Vec<SVec<Scalar>> = Vec::new();
    let mut images: Vec<SVec<Scalar>> = Vec::new();
    let minus = comps.iter().filter(|c| c.weight == 2 && c.skew).count();
    if minus != 1 {
        return Err(BraidedError::Precondition(format!("{minus} skew adjoint summands in V (x) V")));
    }
    for c in &comps {
        for (j, b) in c.basis.iter().enumerate() {
            cols.push(b.clone());
            images.push(if c.weight == 2 && c.skew { chain_v[j].clone() } else { Vec::new() });
        }
    }
    let q = SMat::from_rows(9, cols)?.transpose();
    let phi = SMat::from_rows(3, images)?.transpose();
    Ok(phi.mul(&inverse(&q)?)?)
}

impl QLieBracket {
    pub fn zero(&self) -> Scalar {
        Scalar::zero(&self.params)
    }

    pub fn dim(&self) -> usize {
        3
    }

    /// `[x, y]` for coordinate vectors.
    pub fn bracket(&self, x: &SVec<Scalar>, y: &SVec<Scalar>) -> SVec<Scalar> {
        let mut t: SVec<Scalar> = Vec::new();
        for (a, s) in x {
            for (b, r) in y {
                t.push((a * 3 + b, s * r));
            }
        }
        t.sort_by_key(|e| e.0);
        self.apply(&t)
    }

    /// The bracket applied to a tensor in `V (x) V`.
    pub fn apply(&self, t: &SVec<Scalar>) -> SVec<Scalar> {
        self.table.apply(t).expect("tensor of length 9")
    }

    pub fn entry(&self, a: usize, b: usize) -> SVec<Scalar> {
        self.apply(&vec![(a * 3 + b, Scalar::one(&self.params))])
    }

    /// The skew adjoint summand.
    pub fn minus(&self) -> &TensorComponent {
        self.components.iter().find(|c| c.weight == 2 && c.skew).expect("checked at construction")
    }

    /// Every skew summand other than the adjoint one.
    pub fn other_skew(&self) -> Vec<&TensorComponent> {
        self.components.iter().filter(|c| c.skew && c.weight != 2).collect()
    }

    /// Generator name for which `[ , ] ∘ Δ(a) = a ∘ [ , ]` fails.
    pub fn equivariance_failure(&self) -> Result<Option<String>, BraidedError> {
        let m = &self.module;
        let sq = m.tensor(m)?;
        for (name, big, small) in [("E", &sq.e, &m.e), ("F", &sq.f, &m.f), ("K", &sq.k, &m.k)] {
            if !self.table.mul(big)?.same(&small.mul(&self.table)?) {
                return Ok(Some(name.into()));
            }
        }
        Ok(None)
    }

    /// Summands of `V (x) V` on which the bracket is nonzero, by weight.
    pub fn support(&self) -> Vec<(i64, bool)> {
        self.components.iter().filter(|c| c.basis.iter().any(|b| !self.apply(b).is_empty())).map(|c| (c.weight, c.skew)).collect()
    }

    /// Rank of the bracket restricted to the skew adjoint summand.
    pub fn minus_rank(&self) -> usize {
        let imgs: Vec<SVec<Scalar>> = self.minus().basis.iter().map(|b| self.apply(b)).collect();
        crate::linalg::Subspace::span(3, imgs).map(|s| s.dim()).unwrap_or(0)
    }

    /// Table with some parameters specialized, `None` at a pole.
    pub fn table_at(&self, a: &Assignment) -> Option<SMat<Scalar>> {
        self.table.map(|x| x.specialize_partial(a)).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproduces_printed_table() {
        let b = q_lie_bracket().unwrap();
        let p = b.params.clone();
        assert!(b.entry(0, 0).is_empty());
        assert_eq!(b.entry(0, 1), vec![(0, sc(&p, "-q^2*M"))]);
        assert_eq!(b.entry(1, 1), vec![(1, sc(&p, "(1-q^2)*M"))]);
        assert_eq!(b.rescaling[0].1, sc(&p, "-q^-2"));
        assert_eq!(b.support(), vec![(2, true)]);
        assert_eq!(b.minus_rank(), 3);
        assert!(b.other_skew().is_empty());
    }

    #[test]
    fn classical_limit_is_antisymmetric() {
        let b = q_lie_bracket().unwrap();
        let mut a = Assignment::new();
        a.insert("q".into(), BigRational::from_integer(1.into()));
        let t = b.table_at(&a).unwrap();
        let p = b.params.clone();
        for x in 0..3 {
            for y in 0..3 {
                for k in 0..3 {
                    let s = t.get(k, x * 3 + y).cloned().unwrap_or_else(|| Scalar::zero(&p));
                    let r = t.get(k, y * 3 + x).cloned().unwrap_or_else(|| Scalar::zero(&p));
                    assert_eq!(s, -&r);
                }
            }
        }
        assert_eq!(t.get(0, 1).unwrap(), &sc(&p, "-M"));
        assert_eq!(t.get(2, 5).unwrap(), &sc(&p, "-M"));
    }

    #[test]
    fn casimir_is_invariant_and_classical() {
        let b = q_lie_bracket().unwrap();
        let sq = b.module.tensor(&b.module).unwrap();
        assert!(sq.e.apply(&b.casimir).unwrap().is_empty());
        assert!(sq.f.apply(&b.casimir).unwrap().is_empty());
        let c1 = at_q1(&b.casimir).unwrap();
        let two = BigRational::from_integer(2.into());
        assert_eq!(c1, vec![(2, two.clone()), (4, BigRational::from_integer(1.into())), (6, two)]);
    }
}
