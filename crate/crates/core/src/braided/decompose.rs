use crate::linalg::{kernel, SMat, SVec};
use crate::scalar::Scalar;

use super::{BraidedError, WeightRep};

/// An isotypic component: highest weight and multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub weight: i64,
    pub multiplicity: usize,
}

/// Basis of `ker E` inside the weight-`w` space.
pub fn highest_weight_vectors(rep: &WeightRep, w: i64) -> Vec<SVec<Scalar>> {
    let cols: Vec<usize> = (0..rep.dim()).filter(|&i| rep.weights[i] == w).collect();
    if cols.is_empty() {
        return Vec::new();
    }
    let pos = |c: usize| cols.iter().position(|&x| x == c);
    let rows: Vec<SVec<Scalar>> = rep
        .e
        .rows()
        .iter()
        .map(|r| r.iter().filter_map(|(c, x)| pos(*c).map(|p| (p, x.clone()))).collect())
        .filter(|r: &SVec<Scalar>| !r.is_empty())
        .collect();
    let m = SMat::from_rows(cols.len(), rows).expect("restricted rows fit");
    kernel(&m, &rep.one()).canonical_basis().into_iter().map(|v| v.into_iter().map(|(p, x)| (cols[p], x)).collect()).collect()
}

/// Highest weights with multiplicities, in decreasing weight order.
pub fn decompose(rep: &WeightRep) -> Result<Vec<Component>, BraidedError> {
    let mut ws: Vec<i64> = rep.weights.iter().copied().filter(|w| *w >= 0).collect();
    ws.sort_unstable_by(|a, b| b.cmp(a));
    ws.dedup();
    let mut out = Vec::new();
    let mut total = 0;
    for w in ws {
        let m = highest_weight_vectors(rep, w).len();
        if m > 0 {
            total += m * (w as usize + 1);
            out.push(Component { weight: w, multiplicity: m });
        }
    }
    if total != rep.dim() {
        return Err(BraidedError::Precondition(format!("highest weight vectors account for {total} of {} dimensions", rep.dim())));
    }
    Ok(out)
}

pub fn decompose_end(u: &WeightRep) -> Result<Vec<Component>, BraidedError> {
    decompose(&u.end_module()?)
}

/// `hw, F hw, F^2 hw, ...` until zero.
pub(crate) fn lowering_chain(rep: &WeightRep, hw: &SVec<Scalar>) -> Result<Vec<SVec<Scalar>>, BraidedError> {
    let mut out = vec![hw.clone()];
    loop {
        let next = rep.f.apply(out.last().unwrap())?;
        if next.is_empty() {
            return Ok(out);
        }
        out.push(next);
    }
}

#[cfg(test)]
mod tests {
    use super::super::irrep;
    use super::*;

    #[test]
    fn end_of_fundamental() {
        let d = decompose_end(&irrep(1)).unwrap();
        assert_eq!(d, vec![Component { weight: 2, multiplicity: 1 }, Component { weight: 0, multiplicity: 1 }]);
    }

    #[test]
    fn end_of_trivial() {
        assert_eq!(decompose_end(&irrep(0)).unwrap(), vec![Component { weight: 0, multiplicity: 1 }]);
    }

    #[test]
    fn adjoint_square() {
        let v = irrep(2);
        let d = decompose(&v.tensor(&v).unwrap()).unwrap();
        let ws: Vec<i64> = d.iter().map(|c| c.weight).collect();
        assert_eq!(ws, vec![4, 2, 0]);
        assert!(d.iter().all(|c| c.multiplicity == 1));
    }
}
