use std::collections::BTreeMap;

use qpencil_core::mode::Mode;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::RunConfig;

/// Bumped whenever a field is renamed, removed or changes meaning.
pub const SCHEMA_VERSION: u32 = 1;
pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    /// The check could not be evaluated.
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModeField {
    pub kind: String,
    pub points: Vec<String>,
}

impl From<&Mode> for ModeField {
    fn from(m: &Mode) -> Self {
        ModeField { kind: m.kind().to_string(), points: m.points().to_vec() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    pub mode: ModeField,
    pub details: BTreeMap<String, Value>,
    pub witnesses: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub first_failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub artifact_version: String,
    pub suite: String,
    pub config: Value,
    pub checks: Vec<Check>,
    /// Tables produced alongside the checks, keyed by artifact name.
    pub artifacts: BTreeMap<String, Value>,
    pub summary: Summary,
}

impl Report {
    /// Sorts checks by name and fills in the summary.
    pub fn assemble(config: &RunConfig, mut checks: Vec<Check>, artifacts: BTreeMap<String, Value>) -> Report {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        let passed = checks.iter().filter(|c| c.verdict == Verdict::Pass).count();
        let first_failure = checks.iter().find(|c| c.verdict != Verdict::Pass).map(|c| c.name.clone());
        Report {
            schema_version: SCHEMA_VERSION,
            artifact_version: ARTIFACT_VERSION.to_string(),
            suite: config.suite.to_string(),
            config: serde_json::to_value(config).expect("config serializes"),
            summary: Summary { total: checks.len(), passed, failed: checks.len() - passed, first_failure },
            checks,
            artifacts,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(name: &str, verdict: Verdict) -> Check {
        Check { name: name.into(), verdict, mode: ModeField::from(&Mode::Symbolic), details: BTreeMap::new(), witnesses: vec![], timing_ms: None }
    }

    #[test]
    fn assembly_sorts_and_counts() {
        let checks = vec![check("b/x", Verdict::Fail), check("a/y", Verdict::Pass), check("a/z", Verdict::Error)];
        let r = Report::assemble(&RunConfig::default(), checks, BTreeMap::new());
        let names: Vec<&str> = r.checks.iter().map(|c| c.name.as_str()).collect();
        assert_eq!(names, ["a/y", "a/z", "b/x"]);
        assert_eq!((r.summary.passed, r.summary.failed), (1, 2));
        assert_eq!(r.summary.first_failure.as_deref(), Some("a/z"));
        assert!(!r.to_json().contains("timing_ms"));
    }

    #[test]
    fn config_echo_leaves_out_run_plumbing() {
        let c = RunConfig { out: Some("x.json".into()), workers: Some(3), ..RunConfig::default() };
        let r = Report::assemble(&c, vec![], BTreeMap::new());
        let keys: Vec<&String> = r.config.as_object().unwrap().keys().collect();
        assert!(!keys.iter().any(|k| ["out", "workers", "timings"].contains(&k.as_str())));
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }
}
