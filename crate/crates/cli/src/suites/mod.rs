//! Named verification suites. Each suite is a list of independent jobs;
//! every job yields one check.

mod braided;
mod poisson;
mod quotient;
mod rmatrix;

use std::collections::BTreeMap;
use std::time::Instant;

use qpencil_core::algebra::RelationFamily;
use qpencil_core::linalg::{format_point, PointSampler};
use qpencil_core::mode::Mode;
use qpencil_core::poisson::BracketTable;
use qpencil_core::scalar::Assignment;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::config::{RunConfig, Suite};
use crate::report::{Check, ModeField, Report, Verdict};
use crate::RunError;

/// What a job found.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub pass: bool,
    pub mode: Mode,
    pub details: BTreeMap<String, Value>,
    pub witnesses: Vec<String>,
    pub artifacts: Vec<(String, Value)>,
}

impl Outcome {
    pub fn new(pass: bool) -> Self {
        Outcome { pass, mode: Mode::Symbolic, details: BTreeMap::new(), witnesses: Vec::new(), artifacts: Vec::new() }
    }

    pub fn mode(mut self, m: Mode) -> Self {
        self.mode = m;
        self
    }

    pub fn at(self, points: &[Assignment]) -> Self {
        self.mode(Mode::Probabilistic { points: points.iter().map(format_point).collect() })
    }

    pub fn detail(mut self, key: &str, v: impl Serialize) -> Self {
        self.details.insert(key.to_string(), serde_json::to_value(v).expect("detail serializes"));
        self
    }

    pub fn witness(mut self, w: impl Into<String>) -> Self {
        self.witnesses.push(w.into());
        self
    }

    pub fn witnesses<S: Into<String>>(mut self, ws: impl IntoIterator<Item = S>) -> Self {
        self.witnesses.extend(ws.into_iter().map(Into::into));
        self
    }

    pub fn artifact(mut self, name: &str, v: impl Serialize) -> Self {
        self.artifacts.push((name.to_string(), serde_json::to_value(v).expect("artifact serializes")));
        self
    }
}

type JobFn = Box<dyn Fn(&Context) -> Result<Outcome, String> + Send + Sync>;

pub struct Job {
    pub name: String,
    run: JobFn,
}

impl Job {
    pub fn new<E: ToString>(suite: Suite, name: &str, f: impl Fn(&Context) -> Result<Outcome, E> + Send + Sync + 'static) -> Job {
        Job { name: format!("{suite}/{name}"), run: Box::new(move |c| f(c).map_err(|e| e.to_string())) }
    }
}

/// The run configuration with its input files already parsed.
pub struct Context {
    pub config: RunConfig,
    pub relations: Option<RelationFamily>,
    pub brackets: Option<BracketTable>,
}

impl Context {
    pub fn load(config: &RunConfig) -> Result<Context, RunError> {
        let read = |p: &std::path::Path| std::fs::read_to_string(p).map_err(|e| RunError::File(p.to_path_buf(), e.to_string()));
        let relations = match &config.relations {
            Some(p) => Some(RelationFamily::from_text(&read(p)?).map_err(|e| RunError::File(p.clone(), e.to_string()))?),
            None => None,
        };
        let brackets = match &config.brackets {
            Some(p) => Some(BracketTable::from_text(&read(p)?).map_err(|e| RunError::File(p.clone(), e.to_string()))?),
            None => None,
        };
        Ok(Context { config: config.clone(), relations, brackets })
    }

    /// Seeded sample points in the given parameters; symbolic runs use the
    /// same draw so that verdicts never depend on the seed there.
    pub fn sample(&self, names: &[&str]) -> Vec<Assignment> {
        let seed = if self.config.probabilistic() { self.config.seed } else { 0 };
        PointSampler::new(seed).points(names, self.config.points.max(3), |_| true)
    }
}

pub fn jobs(suite: Suite, config: &RunConfig) -> Vec<Job> {
    suite
        .members()
        .into_iter()
        .flat_map(|s| match s {
            Suite::PoissonPencil => poisson::pencil(config),
            Suite::Cybe => poisson::cybe(),
            Suite::Qybe => rmatrix::qybe(config),
            Suite::Spans => rmatrix::spans(config),
            Suite::Flatness => quotient::flatness(config),
            Suite::PbwNu => quotient::pbw_nu(config),
            Suite::Braided => braided::braided(config),
            Suite::Conjugations => braided::conjugations(config),
            Suite::All => unreachable!("expanded by members"),
        })
        .collect()
}

/// Runs every job of the configured suite and assembles the report.
pub fn run_suite(config: &RunConfig) -> Result<Report, RunError> {
    config.validate()?;
    let ctx = Context::load(config)?;
    let jobs = jobs(config.suite, config);
    let run = || -> Vec<(Check, Vec<(String, Value)>)> {
        jobs.par_iter()
            .map(|j| {
                let start = Instant::now();
                let result = (j.run)(&ctx);
                let ms = start.elapsed().as_millis() as u64;
                let timing_ms = config.timings.then_some(ms);
                match result {
                    Ok(o) => (
                        Check {
                            name: j.name.clone(),
                            verdict: if o.pass { Verdict::Pass } else { Verdict::Fail },
                            mode: ModeField::from(&o.mode),
                            details: o.details,
                            witnesses: o.witnesses,
                            timing_ms,
                        },
                        o.artifacts,
                    ),
                    Err(e) => (
                        Check {
                            name: j.name.clone(),
                            verdict: Verdict::Error,
                            mode: ModeField::from(&Mode::Symbolic),
                            details: BTreeMap::new(),
                            witnesses: vec![e],
                            timing_ms,
                        },
                        Vec::new(),
                    ),
                }
            })
            .collect()
    };
    let results = match config.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map_err(|e| RunError::Config(e.to_string()))?
            .install(run),
        None => run(),
    };
    let mut checks = Vec::new();
    let mut artifacts = BTreeMap::new();
    for (c, arts) in results {
        checks.push(c);
        artifacts.extend(arts);
    }
    Ok(Report::assemble(config, checks, artifacts))
}
