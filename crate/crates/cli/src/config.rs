use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_rational::BigRational;
use qpencil_core::scalar::{Assignment, ParamSet};
use serde::{Deserialize, Serialize};

use crate::RunError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    PoissonPencil,
    Qybe,
    Spans,
    Flatness,
    PbwNu,
    Braided,
    Conjugations,
    Cybe,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 9] = ["poisson-pencil", "qybe", "spans", "flatness", "pbw-nu", "braided", "conjugations", "cybe", "all"];

    /// The concrete suites `all` expands to.
    pub fn members(self) -> Vec<Suite> {
        use Suite::*;
        match self {
            All => vec![PoissonPencil, Qybe, Spans, Flatness, PbwNu, Braided, Conjugations, Cybe],
            s => vec![s],
        }
    }

    pub fn name(self) -> &'static str {
        use Suite::*;
        match self {
            PoissonPencil => "poisson-pencil",
            Qybe => "qybe",
            Spans => "spans",
            Flatness => "flatness",
            PbwNu => "pbw-nu",
            Braided => "braided",
            Conjugations => "conjugations",
            Cybe => "cybe",
            All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = RunError;

    fn from_str(s: &str) -> Result<Self, RunError> {
        use Suite::*;
        let all = [PoissonPencil, Qybe, Spans, Flatness, PbwNu, Braided, Conjugations, Cybe, All];
        all.into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| RunError::UnknownSuite(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeKind {
    #[default]
    Symbolic,
    Probabilistic,
}

impl FromStr for ModeKind {
    type Err = RunError;

    fn from_str(s: &str) -> Result<Self, RunError> {
        match s {
            "symbolic" => Ok(ModeKind::Symbolic),
            "probabilistic" => Ok(ModeKind::Probabilistic),
            other => Err(RunError::Config(format!("mode must be symbolic or probabilistic, got `{other}`"))),
        }
    }
}

/// Everything that determines a report. `workers`, `out` and `timings` do
/// not change verdicts and are left out of the echo.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub suite: Suite,
    pub n: usize,
    pub degree: usize,
    pub mode: ModeKind,
    pub seed: u64,
    /// Sample points per probabilistic check.
    pub points: usize,
    /// Largest `k` for the braided `V_k` checks.
    pub kmax: usize,
    /// Parameter specializations, `name=value` pairs.
    pub specialize: BTreeMap<String, String>,
    pub relations: Option<PathBuf>,
    pub brackets: Option<PathBuf>,
    #[serde(skip)]
    pub workers: Option<usize>,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[serde(skip)]
    pub timings: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            suite: Suite::All,
            n: 2,
            degree: 3,
            mode: ModeKind::Symbolic,
            seed: 0,
            points: 3,
            kmax: 5,
            specialize: BTreeMap::new(),
            relations: None,
            brackets: None,
            workers: None,
            out: None,
            timings: true,
        }
    }
}

/// Flat key-value form read from `--config`; every key is optional.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub suite: Option<String>,
    pub n: Option<usize>,
    pub degree: Option<usize>,
    pub mode: Option<String>,
    pub seed: Option<u64>,
    pub points: Option<usize>,
    pub kmax: Option<usize>,
    /// `"q=2, M=1"`.
    pub specialize: Option<String>,
    pub relations: Option<PathBuf>,
    pub brackets: Option<PathBuf>,
    pub workers: Option<usize>,
    pub out: Option<PathBuf>,
    pub timings: Option<bool>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<ConfigFile, RunError> {
        let text = std::fs::read_to_string(path).map_err(|e| RunError::File(path.to_path_buf(), e.to_string()))?;
        let mut cf: ConfigFile = toml::from_str(&text).map_err(|e| RunError::File(path.to_path_buf(), e.message().to_string()))?;
        // relative paths in a config file are relative to the file
        let base = path.parent().unwrap_or(Path::new("."));
        for p in [&mut cf.relations, &mut cf.brackets, &mut cf.out].into_iter().flatten() {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        Ok(cf)
    }

    /// Applies the keys that are present on top of `c`.
    pub fn apply(self, c: &mut RunConfig) -> Result<(), RunError> {
        if let Some(s) = self.suite {
            c.suite = s.parse()?;
        }
        if let Some(m) = self.mode {
            c.mode = m.parse()?;
        }
        if let Some(s) = self.specialize {
            c.specialize = parse_specialize(&s)?;
        }
        c.n = self.n.unwrap_or(c.n);
        c.degree = self.degree.unwrap_or(c.degree);
        c.seed = self.seed.unwrap_or(c.seed);
        c.points = self.points.unwrap_or(c.points);
        c.kmax = self.kmax.unwrap_or(c.kmax);
        c.relations = self.relations.or(c.relations.take());
        c.brackets = self.brackets.or(c.brackets.take());
        c.workers = self.workers.or(c.workers);
        c.out = self.out.or(c.out.take());
        c.timings = self.timings.unwrap_or(c.timings);
        Ok(())
    }
}

pub fn parse_specialize(s: &str) -> Result<BTreeMap<String, String>, RunError> {
    let known = ParamSet::standard();
    let mut out = BTreeMap::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| RunError::Config(format!("specialization `{part}` is not `name=value`")))?;
        let (k, v) = (k.trim(), v.trim());
        let idx = known.index(k);
        if idx.is_none() || idx == known.imaginary() {
            return Err(RunError::Config(format!("unknown parameter `{k}`")));
        }
        let r: BigRational = v.parse().map_err(|_| RunError::Config(format!("`{v}` is not a rational number")))?;
        out.insert(k.to_string(), r.to_string());
    }
    Ok(out)
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), RunError> {
        if !(2..=4).contains(&self.n) {
            return Err(RunError::Config(format!("n must be between 2 and 4, got {}", self.n)));
        }
        if self.degree == 0 {
            return Err(RunError::Config("degree must be at least 1".into()));
        }
        if self.points == 0 {
            return Err(RunError::Config("points must be at least 1".into()));
        }
        if self.kmax == 0 {
            return Err(RunError::Config("kmax must be at least 1".into()));
        }
        if self.workers == Some(0) {
            return Err(RunError::Config("workers must be at least 1".into()));
        }
        Ok(())
    }

    pub fn assignment(&self) -> Assignment {
        self.specialize.iter().map(|(k, v)| (k.clone(), v.parse().expect("validated rational"))).collect()
    }

    pub fn probabilistic(&self) -> bool {
        self.mode == ModeKind::Probabilistic
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for n in Suite::NAMES {
            assert_eq!(n.parse::<Suite>().unwrap().name(), n);
        }
        assert!("jacobi".parse::<Suite>().is_err());
    }

    #[test]
    fn config_file_overrides_defaults() {
        let cf: ConfigFile = toml::from_str("suite = \"qybe\"\nn = 3\nmode = \"probabilistic\"\nspecialize = \"q=2, M=1/3\"\n").unwrap();
        let mut c = RunConfig::default();
        cf.apply(&mut c).unwrap();
        assert_eq!((c.suite, c.n, c.mode), (Suite::Qybe, 3, ModeKind::Probabilistic));
        assert_eq!(c.specialize.get("M").map(String::as_str), Some("1/3"));
        assert_eq!(c.degree, 3);
    }

    #[test]
    fn malformed_config_is_rejected() {
        assert!(toml::from_str::<ConfigFile>("sweet = 1").is_err());
        assert!(parse_specialize("z=1").is_err());
        assert!(parse_specialize("q").is_err());
        assert!(parse_specialize("q=x").is_err());
    }
}
