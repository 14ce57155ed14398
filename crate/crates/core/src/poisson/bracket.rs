use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::{resolve_params, AlgebraError, CPoly, GeneratorSet};
use crate::scalar::ParamSet;

use super::PoissonError;

/// Antisymmetric table of brackets between generators, extended to all
/// polynomials as a biderivation.
#[derive(Clone, Debug)]
pub struct BracketTable {
    name: String,
    gens: Arc<GeneratorSet>,
    params: Arc<ParamSet>,
    table: Vec<Vec<CPoly>>,
}

/// Nonvanishing Jacobiator on a generator triple.
#[derive(Clone, Debug)]
pub struct TripleDefect {
    pub triple: (usize, usize, usize),
    pub value: CPoly,
}

impl BracketTable {
    pub fn zero(name: &str, gens: &Arc<GeneratorSet>, params: &Arc<ParamSet>) -> Self {
        let n = gens.len();
        let z = CPoly::zero(gens, params);
        BracketTable { name: name.into(), gens: gens.clone(), params: params.clone(), table: vec![vec![z; n]; n] }
    }

    /// Sets `{x_i, x_j} = value` and `{x_j, x_i} = -value`.
    pub fn set(&mut self, i: usize, j: usize, value: CPoly) -> Result<(), PoissonError> {
        if i == j {
            if !value.is_zero() {
                return Err(PoissonError::NotAntisymmetric(format!("{{{0},{0}}} must vanish", self.gens.name(i))));
            }
            return Ok(());
        }
        self.table[j][i] = value.neg();
        self.table[i][j] = value;
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn gens(&self) -> &Arc<GeneratorSet> {
        &self.gens
    }

    pub fn params(&self) -> &Arc<ParamSet> {
        &self.params
    }

    pub fn entry(&self, i: usize, j: usize) -> &CPoly {
        &self.table[i][j]
    }

    pub fn var(&self, i: usize) -> CPoly {
        CPoly::var(&self.gens, &self.params, i)
    }

    fn check(&self, f: &CPoly) -> Result<(), PoissonError> {
        if **f.gens() != *self.gens {
            return Err(PoissonError::GeneratorMismatch(format!("[{}] vs [{}]", f.gens(), self.gens)));
        }
        Ok(())
    }

    /// `{f, g} = sum_{i,j} d_i f * d_j g * {x_i, x_j}`.
    pub fn eval(&self, f: &CPoly, g: &CPoly) -> Result<CPoly, PoissonError> {
        self.check(f)?;
        self.check(g)?;
        let n = self.gens.len();
        let df: Vec<CPoly> = (0..n).map(|i| f.derivative(i)).collect();
        let dg: Vec<CPoly> = (0..n).map(|j| g.derivative(j)).collect();
        let mut out = CPoly::zero(&self.gens, &self.params);
        for i in 0..n {
            if df[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if dg[j].is_zero() || self.table[i][j].is_zero() {
                    continue;
                }
                out = out.add(&df[i].mul(&dg[j]).mul(&self.table[i][j]));
            }
        }
        Ok(out)
    }

    pub fn jacobiator(&self, f: &CPoly, g: &CPoly, h: &CPoly) -> Result<CPoly, PoissonError> {
        let a = self.eval(f, &self.eval(g, h)?)?;
        let b = self.eval(g, &self.eval(h, f)?)?;
        let c = self.eval(h, &self.eval(f, g)?)?;
        Ok(a.add(&b).add(&c))
    }

    /// Jacobiators on all triples of distinct generators; triples with a
    /// repeated entry vanish by antisymmetry alone.
    pub fn jacobi_defects(&self) -> Vec<TripleDefect> {
        let triples = distinct_triples(self.gens.len());
        triples
            .par_iter()
            .map(|&(i, j, k)| {
                let v = self.jacobiator(&self.var(i), &self.var(j), &self.var(k)).expect("same generators");
                TripleDefect { triple: (i, j, k), value: v }
            })
            .collect::<Vec<_>>()
            .into_iter()
            .filter(|d| !d.value.is_zero())
            .collect()
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.gens.len();
        (0..n).all(|i| self.table[i][i].is_zero() && (0..i).all(|j| self.table[i][j].add(&self.table[j][i]).is_zero()))
    }

    /// Largest degree of a table entry.
    pub fn degree(&self) -> usize {
        self.table.iter().flatten().filter_map(|p| p.degree()).max().unwrap_or(0)
    }

    pub fn same(&self, other: &BracketTable) -> bool {
        *self.gens == *other.gens
            && self.table.iter().zip(&other.table).all(|(a, b)| a.iter().zip(b).all(|(x, y)| x.same(y)))
    }

    /// Pairs `(i, j)`, `i < j`, where the tables differ.
    pub fn differences(&self, other: &BracketTable) -> Vec<(usize, usize)> {
        let n = self.gens.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if !self.table[i][j].same(&other.table[i][j]) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &crate::scalar::Scalar) -> BracketTable {
        let mut out = self.clone();
        for row in out.table.iter_mut() {
            for e in row.iter_mut() {
                *e = e.scale(c);
            }
        }
        out
    }

    pub fn add(&self, other: &BracketTable) -> BracketTable {
        let mut out = self.clone();
        for (i, row) in out.table.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = e.add(&other.table[i][j]);
            }
        }
        out
    }

    pub fn map_entries(&self, name: &str, f: impl Fn(&CPoly) -> Result<CPoly, AlgebraError>) -> Result<BracketTable, PoissonError> {
        let mut out = self.clone();
        out.name = name.into();
        for row in out.table.iter_mut() {
            for e in row.iter_mut() {
                *e = f(e)?;
            }
        }
        Ok(out)
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.into();
        self
    }

    /// Declarative text form: a `generators:` line and `bracket x, y: expr`
    /// lines for the nonzero entries above the diagonal.
    pub fn to_text(&self) -> String {
        let mut s = format!("name: {}\ngenerators: {}\n", self.name, self.gens.names().join(", "));
        let used: Vec<String> = self
            .params
            .names()
            .iter()
            .filter(|p| self.table.iter().flatten().any(|e| e.terms().any(|(_, c)| c.depends_on(p))))
            .cloned()
            .collect();
        if !used.is_empty() {
            s.push_str(&format!("params: {}\n", used.join(", ")));
        }
        let n = self.gens.len();
        for i in 0..n {
            for j in i + 1..n {
                if !self.table[i][j].is_zero() {
                    s.push_str(&format!("bracket {}, {}: {}\n", self.gens.name(i), self.gens.name(j), self.table[i][j]));
                }
            }
        }
        s
    }

    pub fn from_text(text: &str) -> Result<BracketTable, PoissonError> {
        let mut name = "unnamed".to_string();
        let mut gens = None;
        let mut params: Vec<String> = Vec::new();
        let mut entries: Vec<(usize, String, String, String)> = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let ln = ln + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("bracket ") {
                let (pair, expr) = rest
                    .split_once(':')
                    .ok_or_else(|| PoissonError::Parse(format!("line {ln}: expected `bracket x, y: expr`")))?;
                let (x, y) = pair
                    .split_once(',')
                    .ok_or_else(|| PoissonError::Parse(format!("line {ln}: expected two generators")))?;
                entries.push((ln, x.trim().into(), y.trim().into(), expr.trim().into()));
                continue;
            }
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| PoissonError::Parse(format!("line {ln}: expected `key: value`")))?;
            match key.trim() {
                "name" => name = value.trim().into(),
                "generators" => {
                    let names: Vec<String> = value.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
                    gens = Some(GeneratorSet::new(&names)?);
                }
                "params" => params = value.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect(),
                other => return Err(PoissonError::Parse(format!("line {ln}: unknown key `{other}`"))),
            }
        }
        let gens = gens.ok_or_else(|| PoissonError::Parse("missing `generators:` line".into()))?;
        let params = resolve_params(&params)?;
        let mut t = BracketTable::zero(&name, &gens, &params);
        let mut seen = std::collections::BTreeSet::new();
        for (ln, x, y, e) in entries {
            let i = gens.index(&x).ok_or_else(|| PoissonError::Parse(format!("line {ln}: unknown generator `{x}`")))?;
            let j = gens.index(&y).ok_or_else(|| PoissonError::Parse(format!("line {ln}: unknown generator `{y}`")))?;
            let v = CPoly::parse(&gens, &params, &e).map_err(|err| PoissonError::Parse(format!("line {ln}: {err}")))?;
            let key = (i.min(j), i.max(j));
            if !seen.insert(key) {
                return Err(PoissonError::Parse(format!("line {ln}: bracket {x}, {y} given twice")));
            }
            t.set(i, j, v).map_err(|err| PoissonError::Parse(format!("line {ln}: {err}")))?;
        }
        Ok(t)
    }
}

pub fn distinct_triples(n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                out.push((i, j, k));
            }
        }
    }
    out
}

/// Cyclic sum of `{f,{g,h}_1}_2 + {f,{g,h}_2}_1`; the pencil
/// `a{,}_1 + b{,}_2` is Poisson for all `a, b` iff this vanishes.
pub fn mixed_jacobiator(t1: &BracketTable, t2: &BracketTable, f: &CPoly, g: &CPoly, h: &CPoly) -> Result<CPoly, PoissonError> {
    let term = |a: &CPoly, b: &CPoly, c: &CPoly| -> Result<CPoly, PoissonError> {
        Ok(t2.eval(a, &t1.eval(b, c)?)?.add(&t1.eval(a, &t2.eval(b, c)?)?))
    };
    Ok(term(f, g, h)?.add(&term(g, h, f)?).add(&term(h, f, g)?))
}

pub fn mixed_defects(t1: &BracketTable, t2: &BracketTable) -> Result<Vec<TripleDefect>, PoissonError> {
    if *t1.gens != *t2.gens {
        return Err(PoissonError::GeneratorMismatch(format!("[{}] vs [{}]", t1.gens, t2.gens)));
    }
    let triples = distinct_triples(t1.gens.len());
    let out = triples
        .par_iter()
        .map(|&(i, j, k)| {
            let v = mixed_jacobiator(t1, t2, &t1.var(i), &t1.var(j), &t1.var(k)).expect("same generators");
            TripleDefect { triple: (i, j, k), value: v }
        })
        .collect::<Vec<_>>();
    Ok(out.into_iter().filter(|d| !d.value.is_zero()).collect())
}
