//! Text tables derived from the report JSON.

use std::fmt::Write;

use serde_json::Value;

use crate::report::Report;

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

/// One-line form of any value.
fn inline(v: &Value) -> String {
    if let Some(s) = scalar(v) {
        return s;
    }
    match v {
        Value::Array(xs) => format!("[{}]", xs.iter().map(inline).collect::<Vec<_>>().join(", ")),
        Value::Object(m) => format!(
            "{{{}}}",
            m.iter()
                .map(|(k, x)| format!("{k}: {}", inline(x)))
                .collect::<Vec<_>>()
                .join(", ")
        ),
        _ => unreachable!(),
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(xs) => xs.iter().all(|x| scalar(x).is_some()),
        Value::Object(m) => m.values().all(|x| scalar(x).is_some()),
        _ => true,
    }
}

fn table(rows: &[Value], indent: &str, out: &mut String) {
    let mut cols: Vec<&String> = Vec::new();
    for r in rows {
        if let Value::Object(m) = r {
            for k in m.keys() {
                if !cols.contains(&k) {
                    cols.push(k);
                }
            }
        }
    }
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            cols.iter()
                .map(|k| inline(r.get(k.as_str()).unwrap_or(&Value::Null)))
                .collect()
        })
        .collect();
    let widths: Vec<usize> = cols
        .iter()
        .enumerate()
        .map(|(i, k)| {
            cells
                .iter()
                .map(|r| r[i].chars().count())
                .chain([k.len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |xs: Vec<&str>| -> String {
        let parts: Vec<String> = xs.iter().zip(&widths).map(|(x, w)| format!("{x:<w$}")).collect();
        format!("{indent}{}", parts.join("  ").trim_end())
    };
    let _ = writeln!(out, "{}", line(cols.iter().map(|k| k.as_str()).collect()));
    for r in &cells {
        let _ = writeln!(out, "{}", line(r.iter().map(String::as_str).collect()));
    }
}

fn block(v: &Value, indent: &str, out: &mut String) {
    let Value::Object(m) = v else {
        let _ = writeln!(out, "{indent}{}", inline(v));
        return;
    };
    for (k, x) in m {
        match x {
            Value::Array(rows) if !rows.is_empty() && rows.iter().all(Value::is_object) => {
                let _ = writeln!(out, "{indent}{k}:");
                table(rows, &format!("{indent}  "), out);
            }
            Value::Object(_) if !is_flat(x) => {
                let _ = writeln!(out, "{indent}{k}:");
                block(x, &format!("{indent}  "), out);
            }
            _ => {
                let _ = writeln!(out, "{indent}{k}: {}", inline(x));
            }
        }
    }
}

/// Every check with its witness, then the summary lines and the verdict.
pub fn render(r: &Report) -> String {
    let mut out = String::new();
    let body = &r.report;
    let _ = writeln!(out, "fivesq {}: {}", body.tool.version, body.command);
    for c in &body.checks {
        let _ = writeln!(out, "\n[{}] {}  ({})", c.status, c.id, c.anchor);
        block(&c.witness, "  ", &mut out);
    }
    let _ = writeln!(out, "\nsummary:");
    for l in &body.summary_lines {
        let _ = writeln!(out, "  {l}");
    }
    let n = &body.counts;
    let _ = writeln!(
        out,
        "verdict: {} ({} pass, {} conditional, {} fail)",
        body.verdict, n.pass, n.conditional, n.fail
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::{Check, Stage, Status};
    use serde_json::json;

    #[test]
    fn tables_and_inline_maps() {
        let w = json!({
            "histogram": {"1": 120, "2": 8},
            "rows": [{"i": 0, "ell": 1}, {"i": 1, "ell": 2, "extra": [1, 2]}],
        });
        let r = Report::new(
            "sweep --degree 3",
            json!({}),
            vec![Check::new(Stage::Sweep3, "s", "a", Status::Pass, w)],
            1,
        );
        let text = render(&r);
        assert!(text.contains("histogram: {1: 120, 2: 8}"), "{text}");
        assert!(text.contains("i  ell  extra"), "{text}");
        assert!(text.contains("1  2    [1, 2]"), "{text}");
        assert!(text.contains("a: PASS"));
        assert!(text.contains("verdict: PASS (1 pass, 0 conditional, 0 fail)"));
    }
}
