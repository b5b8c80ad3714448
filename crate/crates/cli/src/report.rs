//! Check records and the JSON report.
//!
//! The report body depends only on the command and its configuration. Timings and
//! the thread count live in a separate `metadata` object so that bodies from
//! different runs compare byte for byte.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Duration;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CONDITIONAL_ONLY: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Conditional,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Conditional => "CONDITIONAL",
        })
    }
}

/// Pipeline stages in report order. The discriminant is the exit code when the stage fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stage {
    Curve = 10,
    GoodReduction = 11,
    Count = 12,
    Torsion = 13,
    TwoTorsion = 14,
    Sweep1 = 15,
    Sweep2 = 16,
    Sweep3 = 17,
    Pullback = 18,
    Identity = 19,
    Gjx = 20,
    Fixtures = 21,
}

impl Stage {
    pub fn exit_code(self) -> i32 {
        self as i32
    }

    pub fn name(self) -> &'static str {
        match self {
            Stage::Curve => "curve",
            Stage::GoodReduction => "good-reduction",
            Stage::Count => "count",
            Stage::Torsion => "torsion",
            Stage::TwoTorsion => "two-torsion",
            Stage::Sweep1 => "sweep-1",
            Stage::Sweep2 => "sweep-2",
            Stage::Sweep3 => "sweep-3",
            Stage::Pullback => "pullback",
            Stage::Identity => "identity",
            Stage::Gjx => "gjx",
            Stage::Fixtures => "fixtures",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub id: String,
    pub stage: Stage,
    /// The claim being checked, as a short quotation.
    pub anchor: String,
    pub status: Status,
    pub witness: Value,
    #[serde(skip)]
    pub duration: Duration,
}

impl Check {
    pub fn new(stage: Stage, id: &str, anchor: &str, status: Status, witness: Value) -> Self {
        Check {
            id: id.to_string(),
            stage,
            anchor: anchor.to_string(),
            status,
            witness,
            duration: Duration::ZERO,
        }
    }

    pub fn timed(mut self, d: Duration) -> Self {
        self.duration = d;
        self
    }

    pub fn line(&self) -> String {
        format!("{}: {}", self.anchor, self.status)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub conditional: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportBody {
    pub schema_version: u32,
    pub tool: Tool,
    pub command: String,
    pub config: Value,
    pub checks: Vec<Check>,
    pub summary_lines: Vec<String>,
    pub counts: Counts,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckTiming {
    pub id: String,
    pub duration_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Metadata {
    pub threads: usize,
    pub timings: Vec<CheckTiming>,
    pub total_ms: f64,
    /// Differences from the fixture directory, reported even without `--strict`.
    pub fixture_drift: BTreeMap<String, Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub report: ReportBody,
    pub metadata: Metadata,
}

impl Report {
    pub fn new(command: &str, config: Value, checks: Vec<Check>, threads: usize) -> Self {
        let mut counts = Counts::default();
        for c in &checks {
            match c.status {
                Status::Pass => counts.pass += 1,
                Status::Fail => counts.fail += 1,
                Status::Conditional => counts.conditional += 1,
            }
        }
        let verdict = if counts.fail == 0 {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        let timings: Vec<CheckTiming> = checks
            .iter()
            .map(|c| CheckTiming {
                id: c.id.clone(),
                duration_ms: c.duration.as_secs_f64() * 1e3,
            })
            .collect();
        let total_ms = timings.iter().map(|t| t.duration_ms).sum();
        Report {
            report: ReportBody {
                schema_version: SCHEMA_VERSION,
                tool: Tool {
                    name: "fivesq",
                    version: env!("CARGO_PKG_VERSION"),
                },
                command: command.to_string(),
                config,
                summary_lines: checks.iter().map(Check::line).collect(),
                checks,
                counts,
                verdict,
            },
            metadata: Metadata {
                threads,
                timings,
                total_ms,
                fixture_drift: BTreeMap::new(),
            },
        }
    }

    pub fn verdict(&self) -> Verdict {
        self.report.verdict
    }

    /// 0 on PASS with at least one PASS check, the stage code of the first failure,
    /// or [`EXIT_CONDITIONAL_ONLY`] when every check is CONDITIONAL.
    pub fn exit_code(&self) -> i32 {
        let checks = &self.report.checks;
        if let Some(c) = checks.iter().find(|c| c.status == Status::Fail) {
            return c.stage.exit_code();
        }
        if !checks.is_empty() && checks.iter().all(|c| c.status == Status::Conditional) {
            return EXIT_CONDITIONAL_ONLY;
        }
        EXIT_PASS
    }

    pub fn body_json(&self) -> String {
        serde_json::to_string_pretty(&self.report).expect("report serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.report.checks.iter().find(|c| c.id == id)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn check(stage: Stage, id: &str, s: Status) -> Check {
        Check::new(stage, id, id, s, json!(null))
    }

    #[test]
    fn verdict_and_exit_codes() {
        let r = Report::new(
            "x",
            json!({}),
            vec![
                check(Stage::Curve, "a", Status::Pass),
                check(Stage::Torsion, "b", Status::Conditional),
            ],
            1,
        );
        assert_eq!(r.verdict(), Verdict::Pass);
        assert_eq!(r.exit_code(), EXIT_PASS);

        let r = Report::new(
            "x",
            json!({}),
            vec![check(Stage::Torsion, "b", Status::Conditional)],
            1,
        );
        assert_eq!(r.verdict(), Verdict::Pass);
        assert_eq!(r.exit_code(), EXIT_CONDITIONAL_ONLY);

        let r = Report::new(
            "x",
            json!({}),
            vec![
                check(Stage::Curve, "a", Status::Pass),
                check(Stage::Sweep3, "c", Status::Fail),
                check(Stage::Gjx, "d", Status::Fail),
            ],
            1,
        );
        assert_eq!(r.verdict(), Verdict::Fail);
        assert_eq!(r.exit_code(), Stage::Sweep3.exit_code());
    }

    #[test]
    fn body_excludes_timing_and_threads() {
        let a = Report::new(
            "x",
            json!({"seed": "0x1"}),
            vec![check(Stage::Curve, "a", Status::Pass).timed(Duration::from_millis(5))],
            1,
        );
        let b = Report::new(
            "x",
            json!({"seed": "0x1"}),
            vec![check(Stage::Curve, "a", Status::Pass).timed(Duration::from_millis(9))],
            8,
        );
        assert_eq!(a.body_json(), b.body_json());
        assert_ne!(a.to_json(), b.to_json());
        assert!(a.body_json().contains("\"schema_version\": 1"));
        assert!(a.body_json().contains("a: PASS"));
    }
}
