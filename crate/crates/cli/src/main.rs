use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qpencil_cli::config::parse_specialize;
use qpencil_cli::{diff_reports, run_suite, ConfigFile, RunConfig, RunError};

#[derive(Parser)]
#[command(name = "qpencil", version, about = "Exact checks for Poisson pencils, quantum relation families and braided sl(2) modules")]
#[command(args_conflicts_with_subcommands = true)]
struct Cli {
    #[command(subcommand)]
    cmd: Option<Cmd>,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a suite and write its JSON report (the default command).
    Run(RunArgs),
    /// Field-level difference of two reports, ignoring timings.
    Diff {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Default)]
struct RunArgs {
    /// poisson-pencil, qybe, spans, flatness, pbw-nu, braided, conjugations, cybe or all
    #[arg(long)]
    suite: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    /// Truncation degree for Hilbert functions.
    #[arg(long)]
    degree: Option<usize>,
    /// symbolic or probabilistic
    #[arg(long)]
    mode: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Sample points per probabilistic check.
    #[arg(long)]
    points: Option<usize>,
    /// Largest k for the braided V_k checks.
    #[arg(long)]
    kmax: Option<usize>,
    /// Parameter values, e.g. "q=2, M=1/3".
    #[arg(long)]
    specialize: Option<String>,
    /// Relations file checked for flatness against Sym of its generators.
    #[arg(long)]
    relations: Option<PathBuf>,
    /// Bracket table file checked for the Jacobi identity.
    #[arg(long)]
    brackets: Option<PathBuf>,
    #[arg(long)]
    workers: Option<usize>,
    /// Flat TOML file with any of the keys above.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Report path; stdout if absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Leave per-check timings out of the report.
    #[arg(long)]
    no_timings: bool,
}

impl RunArgs {
    fn resolve(self) -> Result<RunConfig, RunError> {
        let mut c = RunConfig::default();
        if let Some(p) = &self.config {
            ConfigFile::load(p)?.apply(&mut c)?;
        }
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
        c.relations = self.relations.or(c.relations);
        c.brackets = self.brackets.or(c.brackets);
        c.workers = self.workers.or(c.workers);
        c.out = self.out.or(c.out);
        c.timings &= !self.no_timings;
        Ok(c)
    }
}

fn write(out: Option<&PathBuf>, text: &str) -> Result<(), RunError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| RunError::File(p.clone(), e.to_string())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(args: RunArgs) -> Result<ExitCode, RunError> {
    let config = args.resolve()?;
    let report = run_suite(&config)?;
    write(config.out.as_ref(), &report.to_json())?;
    for c in &report.checks {
        eprintln!("{:5} {}", format!("{:?}", c.verdict).to_uppercase(), c.name);
    }
    let s = &report.summary;
    match &s.first_failure {
        None => {
            eprintln!("qpencil: {}/{} checks pass", s.passed, s.total);
            Ok(ExitCode::SUCCESS)
        }
        Some(name) => {
            eprintln!("qpencil: {} of {} checks fail; first failing check: {name}", s.failed, s.total);
            Ok(ExitCode::from(1))
        }
    }
}

fn diff(a: PathBuf, b: PathBuf, out: Option<PathBuf>) -> Result<ExitCode, RunError> {
    let load = |p: &PathBuf| -> Result<serde_json::Value, RunError> {
        let text = std::fs::read_to_string(p).map_err(|e| RunError::File(p.clone(), e.to_string()))?;
        serde_json::from_str(&text).map_err(|e| RunError::File(p.clone(), e.to_string()))
    };
    let d = diff_reports(&load(&a)?, &load(&b)?)?;
    let mut text = serde_json::to_string_pretty(&d).expect("diff serializes");
    text.push('\n');
    write(out.as_ref(), &text)?;
    Ok(if d.is_empty() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Some(Cmd::Run(args)) => run(args),
        Some(Cmd::Diff { a, b, out }) => diff(a, b, out),
        None => run(cli.run),
    };
    result.unwrap_or_else(|e| {
        eprintln!("qpencil: error: {e}");
        ExitCode::from(2)
    })
}
