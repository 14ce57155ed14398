use std::sync::Arc;

use crate::algebra::{FamilyKind, GeneratorSet, NCPoly, RelationFamily, Word};
use crate::poisson::{elliptic, BracketTable};
use crate::scalar::{ParamSet, Scalar};

use super::{hecke_s, RMatrixError, YBOperator};

struct Mat {
    n: usize,
    gens: Arc<GeneratorSet>,
    params: Arc<ParamSet>,
}

impl Mat {
    fn new(n: usize) -> Self {
        Mat { n, gens: GeneratorSet::matrix(n), params: ParamSet::standard() }
    }

    fn a(&self, i: usize, j: usize) -> NCPoly {
        NCPoly::generator(&self.gens, &self.params, (i - 1) * self.n + (j - 1))
    }

    fn c(&self, x: i64) -> Scalar {
        Scalar::from_int(&self.params, x)
    }

    fn q(&self) -> Scalar {
        Scalar::param(&self.params, "q").unwrap()
    }

    fn qq(&self) -> Scalar {
        let q = self.q();
        &q - &q.inv().unwrap()
    }

    fn d(&self, i: usize, j: usize) -> Scalar {
        self.c((i == j) as i64)
    }
}

/// Quadruples `(i, j, k, l)` with `i < k`, `j < l`.
fn corners(n: usize) -> Vec<(usize, usize, usize, usize)> {
    let mut out = Vec::new();
    for i in 1..=n {
        for k in i + 1..=n {
            for j in 1..=n {
                for l in j + 1..=n {
                    out.push((i, j, k, l));
                }
            }
        }
    }
    out
}

fn pairs(n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for k in 1..=n {
        for i in 1..=n {
            for j in i + 1..=n {
                out.push((k, i, j));
            }
        }
    }
    out
}

/// `I_-^q`, spanning `Im(S_W - id)`.
pub fn i_minus(n: usize) -> RelationFamily {
    j_like(n, false)
}

/// `J_{h,q}`: `I_-^q` with the `h`-linear terms, `m = 1 + q^-1`.
pub fn j_hq(n: usize) -> RelationFamily {
    j_like(n, true)
}

fn j_like(n: usize, with_h: bool) -> RelationFamily {
    let m = Mat::new(n);
    let q = m.q();
    let h = Scalar::param(&m.params, "h").unwrap();
    let hm = &h * &(&m.c(1) + &q.inv().unwrap());
    let h = if with_h { h } else { m.c(0) };
    let hm = if with_h { hm } else { m.c(0) };
    let mut rels = Vec::new();
    for (k, i, j) in pairs(n) {
        let lin = m.a(k, j).scale(&m.d(k, i)).add(&m.a(k, i).scale(&m.d(k, j)));
        rels.push(m.a(k, i).mul(&m.a(k, j)).sub(&m.a(k, j).mul(&m.a(k, i)).scale(&q)).sub(&lin.scale(&h)));
        let lin = m.a(j, k).scale(&m.d(i, k)).add(&m.a(i, k).scale(&m.d(j, k)));
        rels.push(m.a(i, k).mul(&m.a(j, k)).sub(&m.a(j, k).mul(&m.a(i, k)).scale(&q)).sub(&lin.scale(&h)));
    }
    for (i, j, k, l) in corners(n) {
        rels.push(m.a(i, l).mul(&m.a(k, j)).sub(&m.a(k, j).mul(&m.a(i, l))));
        let lin = m.a(k, j).scale(&m.d(i, l)).add(&m.a(i, l).scale(&m.d(k, j)));
        rels.push(
            m.a(i, j)
                .mul(&m.a(k, l))
                .sub(&m.a(k, l).mul(&m.a(i, j)))
                .sub(&m.a(k, j).mul(&m.a(i, l)).scale(&m.qq()))
                .sub(&lin.scale(&hm)),
        );
    }
    let (name, kind) = if with_h { (format!("j_hq({n})"), FamilyKind::Filtered) } else { (format!("i_minus({n})"), FamilyKind::Graded) };
    RelationFamily::new(&name, &m.gens, &m.params, kind, rels).expect("well-formed")
}

/// `I_+^q`, spanning `Ker(S_W - id)`.
pub fn i_plus(n: usize) -> RelationFamily {
    let m = Mat::new(n);
    let q = m.q();
    let mut rels = Vec::new();
    for i in 1..=n {
        for k in 1..=n {
            rels.push(m.a(i, k).mul(&m.a(i, k)));
        }
    }
    for (k, i, j) in pairs(n) {
        rels.push(m.a(k, i).mul(&m.a(k, j)).scale(&q).add(&m.a(k, j).mul(&m.a(k, i))));
        rels.push(m.a(i, k).mul(&m.a(j, k)).scale(&q).add(&m.a(j, k).mul(&m.a(i, k))));
    }
    for (i, j, k, l) in corners(n) {
        rels.push(m.a(i, j).mul(&m.a(k, l)).add(&m.a(k, l).mul(&m.a(i, j))));
        rels.push(m.a(i, l).mul(&m.a(k, j)).add(&m.a(k, j).mul(&m.a(i, l))).add(&m.a(i, j).mul(&m.a(k, l)).scale(&m.qq())));
    }
    RelationFamily::new(&format!("i_plus({n})"), &m.gens, &m.params, FamilyKind::Graded, rels).expect("well-formed")
}

/// Quantum elliptic relations on `S0..S3` with formal `i`, `J_ij`.
pub fn elliptic_quantum() -> RelationFamily {
    let gens = GeneratorSet::new(&["S0", "S1", "S2", "S3"]).unwrap();
    let params = ParamSet::standard();
    let texts = [
        "S1*S0 - S0*S1 + i*J23*(S2*S3 + S3*S2)",
        "S1*S2 - S2*S1 - i*(S0*S3 + S3*S0)",
        "S2*S0 - S0*S2 + i*J31*(S3*S1 + S1*S3)",
        "S2*S3 - S3*S2 - i*(S0*S1 + S1*S0)",
        "S3*S0 - S0*S3 + i*J12*(S1*S2 + S2*S1)",
        "S3*S1 - S1*S3 - i*(S0*S2 + S2*S0)",
    ];
    let rels = texts.iter().map(|t| NCPoly::parse(&gens, &params, t).expect("valid relation")).collect();
    RelationFamily::new("elliptic_quantum", &gens, &params, FamilyKind::Graded, rels).expect("well-formed")
}

/// Reflection-equation relations: the entries of `S u1 S u1 - u1 S u1 S`
/// with `u1 = u (x) id`, `u = (u_i^j)`.
pub fn re(s: &YBOperator) -> RelationFamily {
    let n = s.n;
    let nn = n * n;
    let gens = GeneratorSet::matrix_named("u", n);
    let params = ParamSet::standard();
    let zero = NCPoly::zero(&gens, &params);
    // u1[(a,b),(c,d)] = u_a^c d_bd
    let mut u1 = vec![vec![zero.clone(); nn]; nn];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                u1[a * n + b][c * n + b] = NCPoly::generator(&gens, &params, a * n + c);
            }
        }
    }
    let smat: Vec<Vec<Scalar>> =
        (0..nn).map(|r| (0..nn).map(|c| s.matrix.get(r, c).cloned().unwrap_or_else(|| Scalar::zero(&params))).collect()).collect();
    let su: Vec<Vec<NCPoly>> = (0..nn)
        .map(|r| {
            (0..nn)
                .map(|c| (0..nn).fold(zero.clone(), |acc, k| if smat[r][k].is_zero() { acc } else { acc.add(&u1[k][c].scale(&smat[r][k])) }))
                .collect()
        })
        .collect();
    let us: Vec<Vec<NCPoly>> = (0..nn)
        .map(|r| {
            (0..nn)
                .map(|c| (0..nn).fold(zero.clone(), |acc, k| if smat[k][c].is_zero() { acc } else { acc.add(&u1[r][k].scale(&smat[k][c])) }))
                .collect()
        })
        .collect();
    let square = |m: &Vec<Vec<NCPoly>>| -> Vec<Vec<NCPoly>> {
        (0..nn).map(|r| (0..nn).map(|c| (0..nn).fold(zero.clone(), |acc, k| acc.add(&m[r][k].mul(&m[k][c])))).collect()).collect()
    };
    let (l, r) = (square(&su), square(&us));
    let mut rels = Vec::new();
    for i in 0..nn {
        for j in 0..nn {
            rels.push(l[i][j].sub(&r[i][j]));
        }
    }
    RelationFamily::new(&format!("re({})", s.name), &gens, &params, FamilyKind::Graded, rels).expect("well-formed")
}

/// Catalog lookup: `i_minus(n)`, `i_plus(n)`, `j_hq(n)`, `elliptic_quantum`,
/// `re(hecke_s(n))`.
pub fn family_by_name(name: &str) -> Result<RelationFamily, RMatrixError> {
    let name = name.trim();
    let arg = |prefix: &str| -> Option<usize> {
        name.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')?.trim().parse().ok().filter(|&n| n >= 2)
    };
    if let Some(n) = arg("i_minus") {
        return Ok(i_minus(n));
    }
    if let Some(n) = arg("i_plus") {
        return Ok(i_plus(n));
    }
    if let Some(n) = arg("j_hq") {
        return Ok(j_hq(n));
    }
    if name == "elliptic_quantum" {
        return Ok(elliptic_quantum());
    }
    if let Some(inner) = name.strip_prefix("re(").and_then(|r| r.strip_suffix(')')) {
        if let Some(n) = inner.strip_prefix("hecke_s(").and_then(|r| r.strip_suffix(')')).and_then(|x| x.trim().parse::<usize>().ok()) {
            if n >= 2 {
                return Ok(re(&hecke_s(n)));
            }
        }
    }
    Err(RMatrixError::UnknownFamily(name.into()))
}

/// One quantum elliptic relation split as `c(xy - yx) + s`, compared with
/// `i c {x, y}` in the classical elliptic table.
#[derive(Clone, Debug)]
pub struct ClassicalLimitRow {
    pub relation: String,
    pub pair: (String, String),
    pub matches: bool,
}

fn reversed(p: &NCPoly) -> NCPoly {
    NCPoly::from_terms(
        p.gens(),
        p.params(),
        p.terms().map(|(w, c)| {
            let mut l = w.letters().to_vec();
            l.reverse();
            (Word::from_slice(&l), c.clone())
        }),
    )
}

/// Classical limit of the quantum elliptic relations: the symmetric part of
/// each relation, read commutatively, equals `i` times the classical bracket
/// of the pair in its antisymmetric part.
pub fn elliptic_classical_limit() -> Result<Vec<ClassicalLimitRow>, RMatrixError> {
    let fam = elliptic_quantum();
    let table: BracketTable = elliptic();
    let half = Scalar::ratio(&fam.params, 1, 2);
    let i = Scalar::param(&fam.params, "i")?;
    let mut out = Vec::new();
    for r in &fam.relations {
        let rev = reversed(r);
        let anti = r.sub(&rev).scale(&half);
        let sym = r.add(&rev).scale(&half);
        let (w, c) = anti.terms().next().map(|(w, c)| (w.clone(), c.clone())).ok_or_else(|| RMatrixError::NotQuadratic(r.to_string()))?;
        let (x, y) = (w.letters()[0] as usize, w.letters()[1] as usize);
        let commutator = NCPoly::word(&fam.gens, &fam.params, w.clone(), Scalar::one(&fam.params))
            .sub(&NCPoly::word(&fam.gens, &fam.params, Word::from_slice(&[y as u16, x as u16]), Scalar::one(&fam.params)))
            .scale(&c);
        let bracket = table.entry(x, y).scale(&(&i * &c));
        let matches = anti.same(&commutator) && sym.commutative_image().same(&bracket);
        out.push(ClassicalLimitRow { relation: r.to_string(), pair: (fam.gens.name(x).into(), fam.gens.name(y).into()), matches });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn listed_counts() {
        assert_eq!(i_minus(2).relations.len(), 6);
        assert_eq!(i_plus(2).relations.len(), 10);
        assert_eq!(i_minus(3).relations.len(), 36);
        assert_eq!(i_plus(3).relations.len(), 45);
    }

    #[test]
    fn j_hq_contains_printed_relation() {
        let f = j_hq(2);
        let r = NCPoly::parse(&f.gens, &f.params, "a_1^1*a_1^2 - q*a_1^2*a_1^1 - h*a_1^2").unwrap();
        assert!(f.relations.iter().any(|x| x.same(&r)));
        let top: Vec<NCPoly> = f.top_parts();
        for (t, m) in top.iter().zip(&i_minus(2).relations) {
            assert!(t.same(m));
        }
    }

    #[test]
    fn elliptic_quantum_rows() {
        let f = elliptic_quantum();
        let r = NCPoly::parse(&f.gens, &f.params, "S1*S0 - S0*S1 + i*J23*(S2*S3+S3*S2)").unwrap();
        assert!(f.relations[0].same(&r));
        let rows = elliptic_classical_limit().unwrap();
        assert_eq!(rows.len(), 6);
        assert!(rows.iter().all(|r| r.matches), "{rows:?}");
    }

    #[test]
    fn re_family_shape() {
        let f = re(&hecke_s(2));
        assert_eq!(f.gens.len(), 4);
        assert!(f.relations.len() <= 16);
        assert!(family_by_name("re(hecke_s(2))").is_ok());
        assert!(family_by_name("k_hq(2)").is_err());
    }
}
