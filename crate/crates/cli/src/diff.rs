use serde::Serialize;
use serde_json::Value;

use crate::RunError;

/// One differing leaf. `path` uses `.key` for objects, `[name]` for checks
/// and `[i]` for other arrays; a missing side is `null`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiffEntry {
    pub path: String,
    pub left: Value,
    pub right: Value,
}

/// Field-level difference of two reports, ignoring `timing_ms`.
pub fn diff_reports(a: &Value, b: &Value) -> Result<Vec<DiffEntry>, RunError> {
    let suite = |v: &Value| v.get("suite").and_then(Value::as_str).map(str::to_string);
    match (suite(a), suite(b)) {
        (Some(x), Some(y)) if x == y => {}
        (Some(x), Some(y)) => return Err(RunError::SuiteMismatch(x, y)),
        _ => return Err(RunError::Config("not a report: missing `suite`".into())),
    }
    let mut out = Vec::new();
    walk("", a, b, &mut out);
    Ok(out)
}

fn walk(path: &str, a: &Value, b: &Value, out: &mut Vec<DiffEntry>) {
    match (a, b) {
        (Value::Object(x), Value::Object(y)) => {
            let mut keys: Vec<&String> = x.keys().chain(y.keys()).filter(|k| *k != "timing_ms").collect();
            keys.sort();
            keys.dedup();
            for k in keys {
                let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                walk(&p, x.get(k).unwrap_or(&Value::Null), y.get(k).unwrap_or(&Value::Null), out);
            }
        }
        (Value::Array(x), Value::Array(y)) if named(x) && named(y) => {
            let name = |v: &Value| v["name"].as_str().unwrap_or_default().to_string();
            let mut names: Vec<String> = x.iter().chain(y).map(name).collect();
            names.sort();
            names.dedup();
            for n in names {
                let find = |s: &[Value]| s.iter().find(|v| name(v) == n).cloned().unwrap_or(Value::Null);
                walk(&format!("{path}[{n}]"), &find(x), &find(y), out);
            }
        }
        (Value::Array(x), Value::Array(y)) => {
            for i in 0..x.len().max(y.len()) {
                walk(&format!("{path}[{i}]"), x.get(i).unwrap_or(&Value::Null), y.get(i).unwrap_or(&Value::Null), out);
            }
        }
        _ if a == b => {}
        _ => out.push(DiffEntry { path: path.to_string(), left: strip(a), right: strip(b) }),
    }
}

fn named(v: &[Value]) -> bool {
    !v.is_empty() && v.iter().all(|x| x.get("name").and_then(Value::as_str).is_some())
}

fn strip(v: &Value) -> Value {
    match v {
        Value::Object(m) => Value::Object(m.iter().filter(|(k, _)| *k != "timing_ms").map(|(k, v)| (k.clone(), strip(v))).collect()),
        Value::Array(a) => Value::Array(a.iter().map(strip).collect()),
        x => x.clone(),
    }
}
