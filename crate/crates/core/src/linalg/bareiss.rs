use crate::scalar::{Poly, Scalar};

/// Rank by fraction-free (Bareiss) elimination over the polynomial ring.
/// Every division is exact; no rational functions are formed.
pub fn bareiss_rank(mut a: Vec<Vec<Poly>>) -> usize {
    let m = a.len();
    if m == 0 {
        return 0;
    }
    let n = a[0].len();
    let nvars = a[0].first().map(|p| p.nvars()).unwrap_or(0);
    let mut prev = Poly::one(nvars);
    let mut rank = 0;
    for col in 0..n {
        if rank == m {
            break;
        }
        let Some(p) = (rank..m).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(rank, p);
        for i in rank + 1..m {
            for j in col + 1..n {
                let t = a[rank][col].mul(&a[i][j]).sub(&a[i][col].mul(&a[rank][j]));
                a[i][j] = t.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][col] = Poly::zero(nvars);
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Clears denominators row by row, giving an integer-polynomial matrix with
/// the same row space.
pub fn clear_denominators(rows: &[Vec<Scalar>]) -> Vec<Vec<Poly>> {
    rows.iter()
        .map(|row| {
            let Some(first) = row.first() else { return Vec::new() };
            let nv = first.params().len();
            let mut l = Poly::one(nv);
            for x in row {
                if !x.denom().is_one() {
                    let g = l.gcd(x.denom());
                    l = l.mul(&x.denom().div_exact(&g).unwrap());
                }
            }
            row.iter()
                .map(|x| x.numer().mul(&l.div_exact(x.denom()).expect("common multiple")))
                .collect()
        })
        .collect()
}
