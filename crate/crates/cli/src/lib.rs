//! Pipeline driver behind the `fivesq` binary.
//!
//! A command selects a list of stages. Each stage yields check records in a fixed
//! order, and the records become a [`Report`]. Text output is rendered from the
//! report, so the JSON and the tables always agree.

pub mod fixtures;
pub mod render;
pub mod report;
pub mod stages;

use std::fmt;
use std::path::PathBuf;
use std::time::Instant;

use fivesq::curve::ENUMERATION_BUDGET;
use fivesq::jacobian::DEFAULT_SPAN_BUDGET;
use fivesq::par::Exec;
use serde_json::{json, Value};

pub use report::{Check, Report, Stage, Status, Verdict};
pub use stages::Context;

pub const DEFAULT_SEED: u64 = 0x5af5;

/// Everything that can change the report body.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub seed: u64,
    pub span_budget: usize,
    pub reduction_primes: Vec<u64>,
    pub map_primes: Vec<u64>,
    pub map_samples: usize,
    pub point_search_height: u64,
    pub gjx_height: i64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            seed: DEFAULT_SEED,
            span_budget: DEFAULT_SPAN_BUDGET,
            reduction_primes: vec![5, 7],
            map_primes: vec![11, 13, 17],
            map_samples: 500,
            point_search_height: 1000,
            gjx_height: 100,
        }
    }
}

impl Config {
    pub fn to_json(&self) -> Value {
        json!({
            "seed": format!("{:#x}", self.seed),
            "span_budget": self.span_budget,
            "enumeration_budget": ENUMERATION_BUDGET,
            "reduction_primes": self.reduction_primes,
            "map_primes": self.map_primes,
            "map_samples": self.map_samples,
            "point_search_height": self.point_search_height,
            "gjx_height": self.gjx_height,
        })
    }
}

/// Named points accepted by `pullback --point`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointSpec {
    /// `(theta, 2theta^2 + theta - 1)` with `theta^3 - 2theta^2 + 2theta + 1 = 0`.
    ThetaExample,
    /// `(i, 4)`.
    IExample,
    /// The sixteen cubic points from the degree-3 sweep.
    AllCubic,
    /// A place `(u, v)` given by its polynomials.
    Place { u: String, v: String },
}

impl PointSpec {
    pub fn parse(s: &str) -> Result<Self, String> {
        match s {
            "theta-example" | "theta" => Ok(PointSpec::ThetaExample),
            "i-example" | "i" => Ok(PointSpec::IExample),
            "all-cubic" | "cubic" => Ok(PointSpec::AllCubic),
            _ => {
                let body = s.trim().trim_start_matches('(').trim_end_matches(')');
                match body.split_once(',') {
                    Some((u, v)) if !u.trim().is_empty() && !v.trim().is_empty() => Ok(PointSpec::Place {
                        u: u.trim().to_string(),
                        v: v.trim().to_string(),
                    }),
                    _ => Err(format!(
                        "unknown point '{s}': expected theta-example, i-example, all-cubic or 'u,v'"
                    )),
                }
            }
        }
    }
}

impl fmt::Display for PointSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointSpec::ThetaExample => f.write_str("theta-example"),
            PointSpec::IExample => f.write_str("i-example"),
            PointSpec::AllCubic => f.write_str("all-cubic"),
            PointSpec::Place { u, v } => write!(f, "({u}, {v})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    VerifyAll,
    JacobianTorsion,
    JacobianTwoTorsion,
    JacobianStructure,
    Count { prime: u64, ext: usize },
    Sweep { degree: i64 },
    Points { degree: i64 },
    Pullback { point: PointSpec },
    Gjx { height: i64 },
    Identity,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Command::VerifyAll => f.write_str("verify all"),
            Command::JacobianTorsion => f.write_str("jacobian torsion"),
            Command::JacobianTwoTorsion => f.write_str("jacobian two-torsion"),
            Command::JacobianStructure => f.write_str("jacobian structure"),
            Command::Count { prime, ext } => write!(f, "count --prime {prime} --ext {ext}"),
            Command::Sweep { degree } => write!(f, "sweep --degree {degree}"),
            Command::Points { degree } => write!(f, "points --degree {degree}"),
            Command::Pullback { point } => write!(f, "pullback --point {point}"),
            Command::Gjx { height } => write!(f, "gjx --height {height}"),
            Command::Identity => f.write_str("identity"),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub config: Config,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
    pub fixtures: Option<PathBuf>,
    pub strict: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("thread pool: {0}")]
    Pool(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => report::EXIT_USAGE,
            CliError::Io { .. } | CliError::Pool(_) => report::EXIT_IO,
        }
    }
}

/// Runs `cmd` and assembles its report, comparing against fixtures when asked.
pub fn execute(cmd: &Command, opts: &Options) -> Result<Report, CliError> {
    validate(cmd)?;
    let run = || -> Result<Report, CliError> {
        let start = Instant::now();
        let exec = match opts.threads {
            Some(1) => Exec::Sequential,
            _ => Exec::Parallel,
        };
        let ctx = Context::new(opts.config.clone(), exec);
        let mut checks = stages::run(cmd, &ctx);
        let drift = match &opts.fixtures {
            Some(dir) => {
                let drift = fixtures::compare(&checks, dir)?;
                if opts.strict {
                    checks.push(fixtures::strict_check(&checks, &drift));
                }
                drift
            }
            None => Default::default(),
        };
        let mut config = opts.config.to_json();
        config["fixtures"] = json!(opts.fixtures.is_some());
        config["strict"] = json!(opts.strict);
        let mut r = Report::new(&cmd.to_string(), config, checks, current_threads());
        r.metadata.fixture_drift = drift;
        r.metadata.total_ms = start.elapsed().as_secs_f64() * 1e3;
        Ok(r)
    };
    with_threads(opts.threads, run)
}

fn validate(cmd: &Command) -> Result<(), CliError> {
    let bad = |m: String| Err(CliError::Usage(m));
    match cmd {
        Command::Sweep { degree } | Command::Points { degree } if !(1..=3).contains(degree) => {
            bad(format!("degree must be 1, 2 or 3, got {degree}"))
        }
        Command::Count { prime, .. } if *prime == 2 || !fivesq::arith::is_prime(*prime) => {
            bad(format!("--prime must be an odd prime, got {prime}"))
        }
        Command::Count { prime, ext }
            if *ext == 0 || (*prime as f64).powi(*ext as i32) > ENUMERATION_BUDGET as f64 =>
        {
            bad(format!("--ext must satisfy 1 <= p^ext <= {ENUMERATION_BUDGET}"))
        }
        Command::Gjx { height } if *height < 1 => bad(format!("--height must be positive, got {height}")),
        _ => Ok(()),
    }
}

#[cfg(feature = "parallel")]
fn current_threads() -> usize {
    rayon::current_num_threads()
}

#[cfg(not(feature = "parallel"))]
fn current_threads() -> usize {
    1
}

#[cfg(feature = "parallel")]
fn with_threads<T: Send>(
    threads: Option<usize>,
    f: impl FnOnce() -> Result<T, CliError> + Send,
) -> Result<T, CliError> {
    match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Pool(e.to_string()))?
            .install(f),
        None => f(),
    }
}

#[cfg(not(feature = "parallel"))]
fn with_threads<T: Send>(
    _threads: Option<usize>,
    f: impl FnOnce() -> Result<T, CliError> + Send,
) -> Result<T, CliError> {
    f()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_spec_parsing() {
        assert_eq!(PointSpec::parse("theta-example"), Ok(PointSpec::ThetaExample));
        assert_eq!(
            PointSpec::parse("(x^2 + 1, 4)"),
            Ok(PointSpec::Place {
                u: "x^2 + 1".into(),
                v: "4".into()
            })
        );
        assert!(PointSpec::parse("nowhere").is_err());
        assert!(PointSpec::parse(",4").is_err());
    }

    #[test]
    fn commands_render_as_typed() {
        assert_eq!(
            Command::Count { prime: 5, ext: 3 }.to_string(),
            "count --prime 5 --ext 3"
        );
        assert_eq!(
            Command::Pullback {
                point: PointSpec::ThetaExample
            }
            .to_string(),
            "pullback --point theta-example"
        );
    }

    #[test]
    fn usage_errors() {
        let o = Options::default();
        for cmd in [
            Command::Sweep { degree: 4 },
            Command::Count { prime: 4, ext: 1 },
            Command::Count { prime: 5, ext: 7 },
            Command::Gjx { height: 0 },
        ] {
            let e = execute(&cmd, &o).unwrap_err();
            assert_eq!(e.exit_code(), report::EXIT_USAGE, "{cmd}");
        }
    }
}
