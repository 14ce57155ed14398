use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Sparse commutative polynomial over Q, terms sorted decreasing in grevlex.
pub type QPoly = Vec<(Vec<u16>, BigRational)>;

pub fn grevlex_cmp(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

pub fn normalize(mut p: QPoly) -> QPoly {
    p.sort_by(|a, b| grevlex_cmp(&b.0, &a.0));
    let mut out: QPoly = Vec::with_capacity(p.len());
    for (m, c) in p {
        match out.last_mut() {
            Some((m2, c2)) if *m2 == m => *c2 += c,
            _ => out.push((m, c)),
        }
    }
    out.retain(|t| !t.1.is_zero());
    out
}

fn divides(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u16], b: &[u16]) -> Vec<u16> {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn sub_mul(p: &QPoly, c: &BigRational, m: &[u16], g: &QPoly) -> QPoly {
    let mut shifted: QPoly = g.iter().map(|(e, x)| (e.iter().zip(m).map(|(a, b)| a + b).collect(), -(x * c))).collect();
    shifted.extend(p.iter().cloned());
    normalize(shifted)
}

fn monic(p: QPoly) -> QPoly {
    match p.first() {
        Some((_, c)) if !c.is_one() => {
            let inv = c.recip();
            p.into_iter().map(|(m, x)| (m, x * &inv)).collect()
        }
        _ => p,
    }
}

/// Full reduction of `p` modulo `g`.
pub fn reduce(p: &QPoly, g: &[QPoly]) -> QPoly {
    let mut p = p.clone();
    let mut rem: QPoly = Vec::new();
    while let Some((m, c)) = p.first().cloned() {
        let hit = g.iter().find(|h| divides(&h[0].0, &m));
        match hit {
            Some(h) => {
                let q: Vec<u16> = m.iter().zip(&h[0].0).map(|(a, b)| a - b).collect();
                let coef = &c / &h[0].1;
                p = sub_mul(&p, &coef, &q, h);
            }
            None => {
                rem.push((m, c));
                p.remove(0);
            }
        }
    }
    rem
}

fn s_poly(f: &QPoly, g: &QPoly) -> QPoly {
    let l = lcm(&f[0].0, &g[0].0);
    let mf: Vec<u16> = l.iter().zip(&f[0].0).map(|(a, b)| a - b).collect();
    let mg: Vec<u16> = l.iter().zip(&g[0].0).map(|(a, b)| a - b).collect();
    let a: QPoly = f.iter().map(|(e, x)| (e.iter().zip(&mf).map(|(p, q)| p + q).collect(), x / &f[0].1)).collect();
    sub_mul(&normalize(a), &g[0].1.recip(), &mg, g)
}

/// Reduced Groebner basis in grevlex.
pub fn groebner(input: Vec<QPoly>) -> Vec<QPoly> {
    let mut g: Vec<QPoly> = Vec::new();
    for p in input {
        let r = reduce(&normalize(p), &g);
        if !r.is_empty() {
            g.push(monic(r));
        }
    }
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for i in 0..g.len() {
        for j in 0..i {
            pairs.insert((j, i));
        }
    }
    while let Some(&(i, j)) = pairs.iter().next() {
        pairs.remove(&(i, j));
        let (a, b) = (&g[i][0].0, &g[j][0].0);
        // Coprime leading monomials reduce to zero.
        if a.iter().zip(b.iter()).all(|(x, y)| *x == 0 || *y == 0) {
            continue;
        }
        let r = reduce(&s_poly(&g[i], &g[j]), &g);
        if !r.is_empty() {
            let k = g.len();
            g.push(monic(r));
            for t in 0..k {
                pairs.insert((t, k));
            }
        }
    }
    // Interreduce.
    let mut out: Vec<QPoly> = Vec::new();
    let mut sorted = g;
    sorted.sort_by(|a, b| grevlex_cmp(&a[0].0, &b[0].0));
    for p in sorted {
        if out.iter().any(|h| divides(&h[0].0, &p[0].0)) {
            continue;
        }
        out.push(p);
    }
    let snapshot = out.clone();
    out = snapshot
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let others: Vec<QPoly> = snapshot.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, h)| h.clone()).collect();
            monic(reduce(p, &others))
        })
        .collect();
    out.sort_by(|a, b| grevlex_cmp(&a[0].0, &b[0].0));
    out
}

/// Number of standard monomials (the solution count with multiplicity) when
/// the ideal is zero-dimensional; `None` when it is positive-dimensional.
/// The unit ideal yields `Some(0)`.
pub fn standard_monomial_count(gb: &[QPoly], nvars: usize) -> Option<usize> {
    if gb.iter().any(|p| p[0].0.iter().all(|&e| e == 0)) {
        return Some(0);
    }
    let mut bounds = vec![None; nvars];
    for p in gb {
        let m = &p[0].0;
        let nz: Vec<usize> = (0..nvars).filter(|&i| m[i] > 0).collect();
        if nz.len() == 1 {
            let i = nz[0];
            bounds[i] = Some(bounds[i].map_or(m[i], |b: u16| b.min(m[i])));
        }
    }
    let bounds: Vec<u16> = bounds.into_iter().collect::<Option<Vec<_>>>()?;
    let mut count = 0;
    let mut e = vec![0u16; nvars];
    loop {
        if !gb.iter().any(|p| divides(&p[0].0, &e)) {
            count += 1;
        }
        let mut k = 0;
        loop {
            if k == nvars {
                return Some(count);
            }
            e[k] += 1;
            if e[k] < bounds[k] {
                break;
            }
            e[k] = 0;
            k += 1;
        }
    }
}

pub fn eval(p: &QPoly, point: &[BigRational]) -> BigRational {
    let mut acc = BigRational::zero();
    for (m, c) in p {
        let mut t = c.clone();
        for (x, &e) in point.iter().zip(m) {
            for _ in 0..e {
                t *= x;
            }
        }
        acc += t;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64) -> BigRational {
        BigRational::from_integer(a.into())
    }

    #[test]
    fn circle_and_line() {
        // x^2 + y^2 - 1, x - y: two intersection points.
        let f = vec![(vec![2, 0], r(1)), (vec![0, 2], r(1)), (vec![0, 0], r(-1))];
        let g = vec![(vec![1, 0], r(1)), (vec![0, 1], r(-1))];
        let gb = groebner(vec![f, g]);
        assert_eq!(standard_monomial_count(&gb, 2), Some(2));
    }

    #[test]
    fn positive_dimensional_and_unit() {
        let f = vec![(vec![1, 1], r(1))];
        assert_eq!(standard_monomial_count(&groebner(vec![f]), 2), None);
        let one = vec![(vec![1, 0], r(1)), (vec![0, 0], r(1))];
        let two = vec![(vec![1, 0], r(1))];
        assert_eq!(standard_monomial_count(&groebner(vec![one, two]), 2), Some(0));
    }
}
