use std::fmt;
use std::sync::Arc;

use crate::scalar::{Assignment, ParamSet, Scalar};

use super::{AlgebraError, GeneratorSet, NCPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    /// Homogeneous quadratic relations.
    Graded,
    /// Relations of degree at most two with lower-degree tails.
    Filtered,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::Graded => "graded",
            FamilyKind::Filtered => "filtered",
        })
    }
}

/// A named finite list of quadratic (or quadratic-linear) relations.
#[derive(Clone, Debug)]
pub struct RelationFamily {
    pub name: String,
    pub gens: Arc<GeneratorSet>,
    pub params: Arc<ParamSet>,
    pub kind: FamilyKind,
    pub relations: Vec<NCPoly>,
}

impl RelationFamily {
    pub fn new(name: &str, gens: &Arc<GeneratorSet>, params: &Arc<ParamSet>, kind: FamilyKind, relations: Vec<NCPoly>) -> Result<Self, AlgebraError> {
        let relations: Vec<NCPoly> = relations.into_iter().filter(|r| !r.is_zero()).collect();
        for r in &relations {
            let d = r.degree().unwrap_or(0);
            match kind {
                FamilyKind::Graded if !(r.is_homogeneous() && d == 2) => {
                    return Err(AlgebraError::Family(format!("{name}: graded relation `{r}` is not homogeneous quadratic")));
                }
                FamilyKind::Filtered if d > 2 => {
                    return Err(AlgebraError::Family(format!("{name}: relation `{r}` has degree {d} > 2")));
                }
                _ => {}
            }
        }
        Ok(RelationFamily { name: name.into(), gens: gens.clone(), params: params.clone(), kind, relations })
    }

    /// Parameters occurring in some coefficient.
    pub fn parameters(&self) -> Vec<String> {
        self.params
            .names()
            .iter()
            .filter(|n| self.relations.iter().any(|r| r.terms().any(|(_, c)| c.depends_on(n))))
            .cloned()
            .collect()
    }

    pub fn top_parts(&self) -> Vec<NCPoly> {
        self.relations.iter().map(|r| r.top_part()).collect()
    }

    /// Substitutes rational values for some parameters.
    pub fn specialize(&self, a: &Assignment) -> Result<RelationFamily, AlgebraError> {
        let relations = self
            .relations
            .iter()
            .map(|r| r.try_map_coeffs(|c| c.specialize_partial(a)))
            .collect::<Result<Vec<_>, _>>()?;
        let kind = if relations.iter().all(|r| r.is_zero() || (r.is_homogeneous() && r.degree() == Some(2))) {
            FamilyKind::Graded
        } else {
            FamilyKind::Filtered
        };
        RelationFamily::new(&self.name, &self.gens, &self.params, kind, relations)
    }

    pub fn substitute(&self, name: &str, value: &Scalar) -> Result<RelationFamily, AlgebraError> {
        let relations = self
            .relations
            .iter()
            .map(|r| r.try_map_coeffs(|c| c.substitute(name, value)))
            .collect::<Result<Vec<_>, _>>()?;
        let kind = if relations.iter().all(|r| r.is_zero() || (r.is_homogeneous() && r.degree() == Some(2))) {
            FamilyKind::Graded
        } else {
            self.kind
        };
        RelationFamily::new(&self.name, &self.gens, &self.params, kind, relations)
    }

    /// Declarative text form read back by [`RelationFamily::from_text`].
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("name: {}\n", self.name));
        s.push_str(&format!("kind: {}\n", self.kind));
        s.push_str(&format!("params: {}\n", self.parameters().join(", ")));
        s.push_str(&format!("generators: {}\n", self.gens.names().join(", ")));
        for r in &self.relations {
            s.push_str(&format!("relation: {}\n", r.to_canonical_string()));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<RelationFamily, AlgebraError> {
        let mut name = None;
        let mut kind = None;
        let mut params: Option<Vec<String>> = None;
        let mut gens: Option<Arc<GeneratorSet>> = None;
        let mut rels: Vec<(usize, String)> = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let ln = ln + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| AlgebraError::Parse(format!("line {ln}: expected `key: value`")))?;
            let value = value.trim();
            match key.trim() {
                "name" => name = Some(value.to_string()),
                "kind" => {
                    kind = Some(match value {
                        "graded" => FamilyKind::Graded,
                        "filtered" => FamilyKind::Filtered,
                        other => return Err(AlgebraError::Parse(format!("line {ln}: unknown kind `{other}`"))),
                    })
                }
                "params" => params = Some(split_list(value)),
                "generators" => gens = Some(GeneratorSet::new(&split_list(value))?),
                "relation" => rels.push((ln, value.to_string())),
                other => return Err(AlgebraError::Parse(format!("line {ln}: unknown key `{other}`"))),
            }
        }
        let gens = gens.ok_or_else(|| AlgebraError::Parse("missing `generators:` line".into()))?;
        let params = resolve_params(&params.unwrap_or_default())?;
        let mut relations = Vec::with_capacity(rels.len());
        for (ln, r) in rels {
            let p = NCPoly::parse(&gens, &params, &r).map_err(|e| AlgebraError::Parse(format!("line {ln}: {e}")))?;
            relations.push(p);
        }
        let kind = kind.unwrap_or_else(|| {
            if relations.iter().all(|r| r.is_homogeneous()) {
                FamilyKind::Graded
            } else {
                FamilyKind::Filtered
            }
        });
        RelationFamily::new(name.as_deref().unwrap_or("unnamed"), &gens, &params, kind, relations)
    }
}

pub(crate) fn split_list(s: &str) -> Vec<String> {
    s.split(',').map(|x| x.trim().to_string()).filter(|x| !x.is_empty()).collect()
}

/// The standard parameter set when it covers `names`, else a fresh one.
pub fn resolve_params(names: &[String]) -> Result<Arc<ParamSet>, AlgebraError> {
    let std = ParamSet::standard();
    if names.iter().all(|n| std.index(n).is_some()) {
        return Ok(std);
    }
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let imaginary = if refs.contains(&"i") { Some("i") } else { None };
    Ok(Arc::new(ParamSet::with_imaginary(&refs, imaginary)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let text = "name: test\nkind: filtered\nparams: q, h\ngenerators: x, y\nrelation: x*y - q*y*x - h*y\n";
        let f = RelationFamily::from_text(text).unwrap();
        assert_eq!(f.kind, FamilyKind::Filtered);
        assert_eq!(f.parameters(), vec!["q".to_string(), "h".to_string()]);
        let g = RelationFamily::from_text(&f.to_text()).unwrap();
        assert_eq!(g.relations, f.relations);
    }

    #[test]
    fn malformed_files_name_the_line() {
        let err = RelationFamily::from_text("generators: x\nrelation: x*z\n").unwrap_err();
        assert!(err.to_string().contains("line 2"));
        assert!(RelationFamily::from_text("relation: x\n").is_err());
        let err = RelationFamily::from_text("generators: x\nkind: graded\nrelation: x\n").unwrap_err();
        assert!(matches!(err, AlgebraError::Family(_)));
    }
}
