use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fivesq_cli::report::EXIT_IO;
use fivesq_cli::{execute, fixtures, render, CliError, Command, Config, Options, PointSpec};

/// Re-derives the proof that no cubic field contains five squares in arithmetic progression.
#[derive(Parser, Debug)]
#[command(name = "fivesq", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    #[command(flatten)]
    global: Global,
}

#[derive(Args, Debug)]
struct Global {
    /// Write the JSON report here; timings go to the sibling `.meta.json` file.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Seed for the sampled checks, in hex.
    #[arg(long, global = true, value_parser = parse_hex, default_value = "0x5af5")]
    seed: u64,
    /// Worker threads. Changes speed only, never output.
    #[arg(long, global = true, value_name = "N", value_parser = clap::value_parser!(u64).range(1..))]
    threads: Option<u64>,
    /// Compare witnesses with the frozen values in this directory.
    #[arg(long, global = true, value_name = "DIR")]
    fixtures: Option<PathBuf>,
    /// With --fixtures: any drift fails the run.
    #[arg(long, global = true, requires = "fixtures")]
    strict: bool,
    /// Freeze the witnesses of this run into a fixture directory.
    #[arg(long, global = true, value_name = "DIR")]
    write_fixtures: Option<PathBuf>,
    /// Print only the summary lines.
    #[arg(long, short, global = true)]
    quiet: bool,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Run the whole pipeline.
    Verify {
        #[arg(value_enum)]
        what: VerifyWhat,
    },
    /// Torsion subgroup, its 2-torsion, or the group structures.
    Jacobian {
        #[arg(value_enum)]
        what: JacobianWhat,
    },
    /// Point counts over F_p, ..., F_(p^ext), and L(1) when ext >= 3.
    Count {
        #[arg(long)]
        prime: u64,
        #[arg(long, default_value_t = 3)]
        ext: usize,
    },
    /// l(D_i + k inf-) over the 128 torsion classes.
    Sweep {
        #[arg(long)]
        degree: i64,
    },
    /// The points of degree k found by the sweep.
    Points {
        #[arg(long)]
        degree: i64,
    },
    /// Field of definition of the preimage on S of a point of C.
    Pullback {
        /// theta-example, i-example, all-cubic, or a place as 'u,v'.
        #[arg(long, value_parser = PointSpec::parse)]
        point: PointSpec,
    },
    /// Quadratic five-square progressions from x = t, |num t|, den t <= H.
    Gjx {
        #[arg(long)]
        height: i64,
    },
    /// The quotient map identities, symbolically and over finite fields.
    Identity,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VerifyWhat {
    All,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum JacobianWhat {
    Torsion,
    TwoTorsion,
    Structure,
}

fn parse_hex(s: &str) -> Result<u64, String> {
    let digits = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")).unwrap_or(s);
    u64::from_str_radix(digits, 16).map_err(|e| format!("bad hex seed '{s}': {e}"))
}

fn command(c: Cmd) -> Command {
    match c {
        Cmd::Verify {
            what: VerifyWhat::All,
        } => Command::VerifyAll,
        Cmd::Jacobian { what } => match what {
            JacobianWhat::Torsion => Command::JacobianTorsion,
            JacobianWhat::TwoTorsion => Command::JacobianTwoTorsion,
            JacobianWhat::Structure => Command::JacobianStructure,
        },
        Cmd::Count { prime, ext } => Command::Count { prime, ext },
        Cmd::Sweep { degree } => Command::Sweep { degree },
        Cmd::Points { degree } => Command::Points { degree },
        Cmd::Pullback { point } => Command::Pullback { point },
        Cmd::Gjx { height } => Command::Gjx { height },
        Cmd::Identity => Command::Identity,
    }
}

fn meta_path(p: &std::path::Path) -> PathBuf {
    let stem = p
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    p.with_file_name(format!("{stem}.meta.json"))
}

fn write(path: &std::path::Path, text: String) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let g = cli.global;
    let opts = Options {
        config: Config {
            seed: g.seed,
            ..Config::default()
        },
        threads: g.threads.map(|n| n as usize),
        fixtures: g.fixtures,
        strict: g.strict,
    };
    let report = execute(&command(cli.command), &opts)?;
    if g.quiet {
        for l in &report.report.summary_lines {
            println!("{l}");
        }
        println!("verdict: {}", report.verdict());
    } else {
        print!("{}", render::render(&report));
    }
    if let Some(path) = &g.json {
        write(path, report.body_json() + "\n")?;
        let meta = serde_json::to_string_pretty(&report.metadata).expect("serializes") + "\n";
        write(&meta_path(path), meta)?;
    }
    if let Some(dir) = &g.write_fixtures {
        fixtures::write(&report.report.checks, dir)?;
    }
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = run(cli).unwrap_or_else(|e| {
        eprintln!("error: {e}");
        e.exit_code()
    });
    ExitCode::from(u8::try_from(code).unwrap_or(EXIT_IO as u8))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hex_seeds() {
        assert_eq!(parse_hex("0x5af5"), Ok(0x5af5));
        assert_eq!(parse_hex("ff"), Ok(255));
        assert!(parse_hex("0xzz").is_err());
    }

    #[test]
    fn meta_sits_next_to_the_report() {
        assert_eq!(
            meta_path("out/report.json".as_ref()),
            PathBuf::from("out/report.meta.json")
        );
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
