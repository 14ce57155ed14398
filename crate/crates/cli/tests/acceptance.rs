//! One pass/fail line per acceptance criterion. Runs the suites in-process
//! and checks the report entries against independently computed values.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use qpencil_cli::{run_suite, ModeKind, Report, RunConfig, Suite, Verdict};
use qpencil_core::scalar::{ParamSet, Scalar};
use serde_json::Value;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn run(suite: Suite, n: usize, mode: ModeKind) -> Result<Report, String> {
    let c = RunConfig { suite, n, mode, seed: 2024, timings: false, ..RunConfig::default() };
    run_suite(&c).map_err(|e| e.to_string())
}

fn require(r: &Report, name: &str) -> Result<Value, String> {
    let c = r.check(name).ok_or_else(|| format!("missing check {name}"))?;
    if c.verdict != Verdict::Pass {
        return Err(format!("{name}: {:?} {:?}", c.verdict, c.witnesses));
    }
    serde_json::to_value(c).map_err(|e| e.to_string())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn dims(c: &Value) -> Vec<u64> {
    c["details"]["dims"].as_array().map(|a| a.iter().filter_map(Value::as_u64).collect()).unwrap_or_default()
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn jacobi() -> Outcome {
    let start = Instant::now();
    let r2 = run(Suite::PoissonPencil, 2, ModeKind::Symbolic)?;
    let t2 = start.elapsed();
    let r3 = run(Suite::PoissonPencil, 3, ModeKind::Symbolic)?;
    for r in [&r2, &r3] {
        for name in ["jacobi.sklyanin2", "jacobi.linear1", "jacobi.gl", "compatibility.linear1_sklyanin2"] {
            let c = require(r, &format!("poisson-pencil/{name}"))?;
            ensure(c["mode"]["kind"] == "symbolic", || format!("{name} not symbolic"))?;
        }
    }
    ensure(t2 < Duration::from_secs(60), || format!("n=2 took {t2:?}"))?;
    Ok(format!("n=2,3 symbolic, n=2 in {} ms", t2.as_millis()))
}

fn linearization() -> Outcome {
    for n in [2, 3] {
        let r = run(Suite::PoissonPencil, n, ModeKind::Symbolic)?;
        require(&r, "poisson-pencil/linearization")?;
        require(&r, "poisson-pencil/no_diagonal_products")?;
    }
    Ok("n=2,3 coefficient-exact".into())
}

fn r_twist() -> Outcome {
    for n in [2usize, 3] {
        let r = run(Suite::PoissonPencil, n, ModeKind::Symbolic)?;
        let c = require(&r, "poisson-pencil/r_twist")?;
        let m = (n * n) as u64;
        ensure(c["details"]["pairs"] == m * (m - 1) / 2, || "pair count".into())?;
    }
    Ok("n=2,3 all generator pairs".into())
}

fn qybe() -> Outcome {
    let r2 = run(Suite::Qybe, 2, ModeKind::Symbolic)?;
    let r3 = run(Suite::Qybe, 3, ModeKind::Symbolic)?;
    for r in [&r2, &r3] {
        for name in ["hecke_s.qybe", "hecke_s.hecke"] {
            let c = require(r, &format!("qybe/{name}"))?;
            ensure(c["mode"]["kind"] == "symbolic", || format!("{name} not symbolic"))?;
        }
    }
    let w2 = require(&r2, "qybe/s_w.qybe")?;
    ensure(w2["mode"]["kind"] == "symbolic", || "s_w n=2 not symbolic".into())?;
    let w3 = require(&r3, "qybe/s_w.qybe")?;
    let pts = w3["mode"]["points"].as_array().map_or(0, Vec::len);
    ensure(pts >= 3, || format!("s_w n=3 at {pts} points"))?;
    Ok(format!("hecke_s(2), hecke_s(3) symbolic; s_w n=2 symbolic, n=3 at {pts} points"))
}

fn spans() -> Outcome {
    let r2 = run(Suite::Spans, 2, ModeKind::Symbolic)?;
    let c2 = require(&r2, "spans/iq_spans")?;
    ensure(c2["mode"]["kind"] == "symbolic", || "n=2 not symbolic".into())?;
    ensure(c2["details"]["expected_minus_dim"] == 6 && c2["details"]["expected_plus_dim"] == 10, || "n=2 dims".into())?;
    let r3 = run(Suite::Spans, 3, ModeKind::Probabilistic)?;
    let c3 = require(&r3, "spans/iq_spans")?;
    ensure(c3["details"]["expected_minus_dim"] == 36 && c3["details"]["expected_plus_dim"] == 45, || "n=3 dims".into())?;
    Ok("n=2 exact (6, 10), n=3 probabilistic (36, 45)".into())
}

fn flatness() -> Outcome {
    let r = run(Suite::Flatness, 2, ModeKind::Symbolic)?;
    // Sym of 4 generators: C(d+3, 3) in degree d, accumulated for the filtered family
    let graded: Vec<u64> = (0..=3).map(|d| binomial(d + 3, 3)).collect();
    let cumulative: Vec<u64> = (0..=3).map(|d| (0..=d).map(|e| binomial(e + 3, 3)).sum()).collect();
    let a0 = require(&r, "flatness/a0q")?;
    ensure(dims(&a0) == graded && a0["mode"]["kind"] == "symbolic", || format!("A_0q dims {:?}", dims(&a0)))?;
    let ah = require(&r, "flatness/ahq")?;
    ensure(dims(&ah) == cumulative, || format!("A_hq dims {:?}", dims(&ah)))?;
    require(&r, "flatness/ahq.h0_subspace")?;
    let re = require(&r, "flatness/re_evidence")?;
    ensure(re["mode"]["kind"] == "probabilistic" && re["details"]["status"] == "evidence", || "RE evidence mode".into())?;
    Ok(format!("A_0q {graded:?}, A_hq {cumulative:?}, h=0 subspace, RE evidence {:?}", dims(&re)))
}

fn pbw_nu() -> Outcome {
    let r = run(Suite::PbwNu, 2, ModeKind::Symbolic)?;
    require(&r, "pbw-nu/zero_maps")?;
    require(&r, "pbw-nu/classical_sl2")?;
    let q = require(&r, "pbw-nu/quantum_sl2")?;
    ensure(q["details"]["consistent"] == true, || "quantum variety empty".into())?;
    let f = require(&r, "pbw-nu/first_type.flatness")?;
    ensure(f["mode"]["kind"] == "symbolic" && f["details"]["degrees"] == 3, || "first_type not symbolic through degree 3".into())?;
    // functions on a quadric surface in 3 variables
    let quadric: Vec<u64> = (0..=3).map(|d| binomial(d + 3, 3) - if d >= 2 { binomial(d + 1, 3) } else { 0 }).collect();
    ensure(dims(&f) == quadric, || format!("first_type dims {:?}", dims(&f)))?;
    Ok(format!("zero, classical, quantum consistent; first_type {quadric:?} with symbolic c0"))
}

fn braided() -> Outcome {
    let start = Instant::now();
    let r = run(Suite::Braided, 2, ModeKind::Symbolic)?;
    let elapsed = start.elapsed();
    let t = require(&r, "braided/q_lie.table")?;
    let rescalings = t["details"]["rescaling"].as_array().map_or(0, Vec::len);
    ensure(t["details"]["entries"].as_array().map_or(0, Vec::len) == 9 && rescalings == 1, || "table entries or rescaling".into())?;
    let params = ParamSet::standard();
    let mut unit: Option<Scalar> = None;
    for k in 1..=5u64 {
        let c = require(&r, &format!("braided/end.k{k}"))?;
        let c0 = Scalar::parse(&params, c["details"]["c0_at_q1"].as_str().unwrap_or("")).map_err(|e| e.to_string())?;
        // c0(k)|q=1 / (k(k+2)/4) must not depend on k
        let ratio = &c0 / &Scalar::ratio(&params, (k * (k + 2)) as i64, 4);
        match &unit {
            None => unit = Some(ratio),
            Some(u) => ensure(&ratio == u, || format!("k={k}: ratio {ratio} vs {u}"))?,
        }
        ensure(c["details"]["nu"].is_string(), || format!("k={k}: nu missing"))?;
    }
    ensure(elapsed < Duration::from_secs(300), || format!("took {elapsed:?}"))?;
    Ok(format!("k=1..5, c0|q=1 = {} * k(k+2)/4, {} ms", unit.expect("k=1 ran"), elapsed.as_millis()))
}

fn conjugations() -> Outcome {
    let r = run(Suite::Conjugations, 2, ModeKind::Symbolic)?;
    for name in ["check.diag(-1,-1,-1)", "check.diag(1,-1,1)", "check.identity_rejected", "odd_subalgebra.diag(-1,-1,-1)", "odd_subalgebra.diag(1,-1,1)"] {
        require(&r, &format!("conjugations/{name}"))?;
    }
    let scan = require(&r, "conjugations/diagonal_scan")?;
    ensure(scan["details"]["found"].as_array().map_or(0, Vec::len) == 2, || "diagonal scan count".into())?;
    Ok("-id, diag(1,-1,1) pass; scan finds 2; odd closure; identity rejected".into())
}

fn cybe() -> Outcome {
    let r = run(Suite::Cybe, 2, ModeKind::Symbolic)?;
    require(&r, "cybe/sl2")?;
    require(&r, "cybe/sl3")?;
    Ok("sl(2), sl(3) ad-invariant".into())
}

fn determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("qpencil-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let once = |tag: &str| -> Result<Vec<u8>, String> {
        let out = dir.join(format!("{tag}.json"));
        let st = Command::new(env!("CARGO_BIN_EXE_qpencil"))
            .args(["--suite", "all", "--mode", "probabilistic", "--seed", "17", "--no-timings", "--out"])
            .arg(&out)
            .output()
            .map_err(|e| e.to_string())?;
        ensure(st.status.success(), || String::from_utf8_lossy(&st.stderr).into_owned())?;
        std::fs::read(&out).map_err(|e| e.to_string())
    };
    let (a, b) = (once("a")?, once("b")?);
    let _ = std::fs::remove_dir_all(&dir);
    ensure(a == b, || "reports differ".into())?;
    Ok(format!("two runs, {} identical bytes", a.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("Jacobi suite", jacobi),
        ("Linearization", linearization),
        ("R-twist identity", r_twist),
        ("QYBE/Hecke", qybe),
        ("Span fidelity", spans),
        ("Flatness certificates", flatness),
        ("PBW nu-checker", pbw_nu),
        ("Braided layer", braided),
        ("Conjugations", conjugations),
        ("CYBE", cybe),
        ("Determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(note) => println!("PASS [{:>2}] {name}: {note}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL [{:>2}] {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
