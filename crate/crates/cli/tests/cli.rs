use std::path::Path;
use std::process::{Command, Output};

use qpencil_core::poisson::{gl, sklyanin2};
use qpencil_core::rmatrix::j_hq;
use serde_json::Value;

fn qpencil(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qpencil")).args(args).output().expect("binary runs")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn report(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn run_to(dir: &Path, tag: &str, args: &[&str]) -> (Output, std::path::PathBuf) {
    let out = dir.join(format!("{tag}.json"));
    let mut a: Vec<&str> = args.to_vec();
    a.extend(["--out", out.to_str().unwrap()]);
    (qpencil(&a), out)
}

fn diff_paths(a: &Path, b: &Path) -> (i32, Vec<String>) {
    let o = qpencil(&["diff", a.to_str().unwrap(), b.to_str().unwrap()]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let paths = v.as_array().unwrap().iter().map(|e| e["path"].as_str().unwrap().to_string()).collect();
    (o.status.code().unwrap(), paths)
}

#[test]
fn qybe_suite_passes_with_exit_zero() {
    let dir = tempfile::tempdir().unwrap();
    let (o, out) = run_to(dir.path(), "q", &["--suite", "qybe", "--n", "2"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let r = report(&out);
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["suite"], "qybe");
    let names: Vec<&str> = r["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    assert!(r["checks"].as_array().unwrap().iter().all(|c| c["verdict"] == "PASS" && c["timing_ms"].is_u64()));
}

#[test]
fn failing_relations_file_names_the_check() {
    let dir = tempfile::tempdir().unwrap();
    let rel = dir.path().join("thin.rel");
    std::fs::write(&rel, "name: thin\ngenerators: x, y\nrelation: x*y\nrelation: x*x - y*y\n").unwrap();
    let (o, out) = run_to(dir.path(), "f", &["--suite", "flatness", "--relations", rel.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("first failing check: flatness/relations_file"), "{}", stderr(&o));
    let r = report(&out);
    assert_eq!(r["summary"]["first_failure"], "flatness/relations_file");
    let c = r["checks"].as_array().unwrap().iter().find(|c| c["name"] == "flatness/relations_file").unwrap();
    assert_eq!(c["details"]["first_deviation"], 2);
    assert!(!c["witnesses"].as_array().unwrap().is_empty());
}

#[test]
fn exported_family_round_trips_through_the_cli() {
    let dir = tempfile::tempdir().unwrap();
    let rel = dir.path().join("jhq.rel");
    std::fs::write(&rel, j_hq(2).to_text()).unwrap();
    let (o, out) = run_to(dir.path(), "j", &["--suite", "flatness", "--relations", rel.to_str().unwrap(), "--no-timings"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let r = report(&out);
    let get = |n: &str| r["checks"].as_array().unwrap().iter().find(|c| c["name"] == n).unwrap()["details"]["dims"].clone();
    assert_eq!(get("flatness/relations_file"), get("flatness/ahq"));
}

#[test]
fn corrupted_relations_file_is_named() {
    let dir = tempfile::tempdir().unwrap();
    let rel = dir.path().join("broken.rel");
    std::fs::write(&rel, "name: broken\ngenerators: x, y\nrelation: x*(y - \n").unwrap();
    let o = qpencil(&["--suite", "all", "--relations", rel.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("broken.rel"), "{}", stderr(&o));
    let o = qpencil(&["--suite", "all", "--relations", dir.path().join("absent.rel").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("absent.rel"));
}

#[test]
fn brackets_file_is_checked_for_jacobi() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.br");
    let bad = dir.path().join("bad.br");
    std::fs::write(&good, sklyanin2(2).to_text()).unwrap();
    std::fs::write(&bad, sklyanin2(2).add(&gl(2)).to_text()).unwrap();
    let (o, _) = run_to(dir.path(), "g", &["--suite", "poisson-pencil", "--brackets", good.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let (o, _) = run_to(dir.path(), "b", &["--suite", "poisson-pencil", "--brackets", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("poisson-pencil/brackets_file.jacobi"));
}

#[test]
fn unknown_suite_and_malformed_config_exit_nonzero() {
    let o = qpencil(&["--suite", "jacobi"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown suite `jacobi`"));
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "suite = \"qybe\"\ndegre = 3\n").unwrap();
    let o = qpencil(&["--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("run.toml"));
    let o = qpencil(&["--suite", "qybe", "--mode", "exact"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn config_file_matches_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "suite = \"spans\"\nn = 3\nmode = \"probabilistic\"\nseed = 4\ntimings = false\nout = \"from-config.json\"\n").unwrap();
    let o = qpencil(&["--config", cfg.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let (o, flags) = run_to(dir.path(), "flags", &["--suite", "spans", "--n", "3", "--mode", "probabilistic", "--seed", "4", "--no-timings"]);
    assert!(o.status.success());
    let a = std::fs::read(dir.path().join("from-config.json")).unwrap();
    assert_eq!(a, std::fs::read(flags).unwrap());
}

#[test]
fn identical_runs_have_an_empty_diff() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--suite", "conjugations", "--mode", "probabilistic", "--seed", "3"];
    let (_, a) = run_to(dir.path(), "a", &args);
    let (_, b) = run_to(dir.path(), "b", &args);
    assert_eq!(diff_paths(&a, &b), (0, vec![]));
}

#[test]
fn degree_diff_is_confined_to_degree_tables() {
    let dir = tempfile::tempdir().unwrap();
    let (_, a) = run_to(dir.path(), "d2", &["--suite", "flatness", "--degree", "2"]);
    let (_, b) = run_to(dir.path(), "d3", &["--suite", "flatness", "--degree", "3"]);
    let (code, paths) = diff_paths(&a, &b);
    assert_eq!(code, 1);
    assert!(!paths.is_empty());
    for p in paths {
        let ok = p == "config.degree" || [".details.degrees", ".details.dims[", ".details.reference["].iter().any(|s| p.contains(s));
        assert!(ok, "{p}");
    }
}

#[test]
fn mode_diff_is_confined_to_mode_fields() {
    let dir = tempfile::tempdir().unwrap();
    let (o, a) = run_to(dir.path(), "s", &["--suite", "all", "--mode", "symbolic"]);
    assert!(o.status.success());
    let (o, b) = run_to(dir.path(), "p", &["--suite", "all", "--mode", "probabilistic", "--seed", "11"]);
    assert!(o.status.success());
    let (_, paths) = diff_paths(&a, &b);
    assert!(paths.iter().any(|p| p.ends_with(".mode.kind")));
    for p in paths {
        assert!(p.contains(".mode.") || p == "config.mode" || p == "config.seed", "{p}");
    }
}

#[test]
fn diff_of_different_suites_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let (_, a) = run_to(dir.path(), "a", &["--suite", "cybe"]);
    let (_, b) = run_to(dir.path(), "b", &["--suite", "spans"]);
    let o = qpencil(&["diff", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("different suites"));
}

#[test]
fn artifacts_are_emitted() {
    let dir = tempfile::tempdir().unwrap();
    let (o, out) = run_to(dir.path(), "b", &["--suite", "braided", "--kmax", "3", "--specialize", "M=1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let r = report(&out);
    let rows = r["artifacts"]["c0_table"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[1]["c0_at_q1"], "(3*M^2)");
    assert_eq!(rows[1]["c0_specialized"], "(q^4+q^2+1)");
    let (_, out) = run_to(dir.path(), "c", &["--suite", "conjugations"]);
    let diag = report(&out)["artifacts"]["conjugation_report"]["diagonal"].as_array().unwrap().clone();
    assert_eq!(diag.len(), 8);
    assert_eq!(diag.iter().filter(|d| d["compatible"] == true).count(), 2);
}
