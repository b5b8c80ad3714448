//! Frozen check outcomes, one `<check-id>.json` file per check.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde_json::{json, Value};

use crate::report::{Check, Stage, Status};
use crate::CliError;

fn frozen(c: &Check) -> Value {
    json!({ "status": c.status, "witness": c.witness })
}

/// JSON pointers where `a` and `b` differ, at most `limit` of them.
fn diff(a: &Value, b: &Value, path: &str, out: &mut Vec<String>, limit: usize) {
    if out.len() >= limit || a == b {
        return;
    }
    match (a, b) {
        (Value::Object(x), Value::Object(y)) => {
            let keys: std::collections::BTreeSet<&String> = x.keys().chain(y.keys()).collect();
            for k in keys {
                let (va, vb) = (x.get(k).unwrap_or(&Value::Null), y.get(k).unwrap_or(&Value::Null));
                diff(va, vb, &format!("{path}/{k}"), out, limit);
            }
        }
        (Value::Array(x), Value::Array(y)) if x.len() == y.len() => {
            for (i, (va, vb)) in x.iter().zip(y).enumerate() {
                diff(va, vb, &format!("{path}/{i}"), out, limit);
            }
        }
        _ => out.push(format!(
            "{}: expected {b}, got {a}",
            if path.is_empty() { "/" } else { path }
        )),
    }
}

fn io(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Differences per check id. Checks without a fixture file are skipped.
pub fn compare(checks: &[Check], dir: &Path) -> Result<BTreeMap<String, Vec<String>>, CliError> {
    if !dir.is_dir() {
        return Err(CliError::Usage(format!(
            "fixture directory {} does not exist",
            dir.display()
        )));
    }
    let mut out = BTreeMap::new();
    for c in checks {
        let path = dir.join(format!("{}.json", c.id));
        if !path.exists() {
            continue;
        }
        let text = fs::read_to_string(&path).map_err(io(&path))?;
        let want: Value =
            serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        let mut d = Vec::new();
        diff(&frozen(c), &want, "", &mut d, 8);
        if !d.is_empty() {
            eprintln!("warning: fixture drift in {}: {}", c.id, d.join("; "));
            out.insert(c.id.clone(), d);
        }
    }
    Ok(out)
}

/// The check added under `--strict`: FAIL on any drift.
pub fn strict_check(checks: &[Check], drift: &BTreeMap<String, Vec<String>>) -> Check {
    Check::new(
        Stage::Fixtures,
        "fixtures",
        "frozen values unchanged",
        Status::from_bool(drift.is_empty()),
        json!({ "checks": checks.len(), "drifted": drift.keys().collect::<Vec<_>>() }),
    )
}

pub fn write(checks: &[Check], dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(io(dir))?;
    for c in checks.iter().filter(|c| c.stage != Stage::Fixtures) {
        let path = dir.join(format!("{}.json", c.id));
        let mut text = serde_json::to_string_pretty(&frozen(c)).expect("serializes");
        text.push('\n');
        fs::write(&path, text).map_err(io(&path))?;
    }
    Ok(())
}
