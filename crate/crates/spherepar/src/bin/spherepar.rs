//! Command-line runner: `verify` executes a check suite over a frame
//! configuration, `eval` prints a frame at a supplied point, `embed`
//! exercises the recursive product-of-spheres embedding.
//!
//! Exit codes: 0 all checks pass, 1 verification failure, 2 usage or
//! configuration error, 3 symbolic budget refusal.

use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use spherepar::cli::{
    cmd_embed, cmd_eval, cmd_verify, parse_point_text, EmbedConfig, EvalConfig, FrameChoice,
    RunConfig,
};
use spherepar::error::Error;
use spherepar::report::VerificationReport;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FrameArg {
    #[value(name = "B", alias = "b")]
    B,
    #[value(name = "P", alias = "p")]
    P,
}

impl From<FrameArg> for FrameChoice {
    fn from(f: FrameArg) -> Self {
        match f {
            FrameArg::B => FrameChoice::B,
            FrameArg::P => FrameChoice::P,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "spherepar",
    about = "Explicit orthonormal frames on products of spheres, verified numerically and symbolically"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suite for a frame configuration
    Verify {
        /// Frame family: B (meridian/quaternionic, n = 1 or 3) or P (any odd n)
        #[arg(long, value_enum)]
        frame: FrameArg,
        /// Base sphere dimension m >= 1
        #[arg(long)]
        m: usize,
        /// Fiber sphere dimension n >= 1 (odd)
        #[arg(long)]
        n: usize,
        /// Sample points per numeric check
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Seed for the sampling stream
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Numeric tolerance for sampled identity checks
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        /// Also reduce every bracket identity to an exact normal form
        #[arg(long)]
        symbolic: bool,
        /// Record wall-clock times per check (makes reports non-reproducible)
        #[arg(long)]
        timings: bool,
        /// Print the human-readable report to stdout instead of JSON
        #[arg(long)]
        text: bool,
        /// Write the JSON report to a file (stdout then carries the text form)
        #[arg(long)]
        out: Option<String>,
    },
    /// Print a frame, its Gram residual, and optionally one bracket at a point
    Eval {
        #[arg(long, value_enum)]
        frame: FrameArg,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Inline point: whitespace-separated decimals, first m+1 = x, next n+1 = y
        #[arg(long, conflicts_with = "point_file")]
        point: Option<String>,
        /// Read the point from a file in the same format
        #[arg(long)]
        point_file: Option<String>,
        /// Evaluate the closed-form bracket of fields I and J at the point
        #[arg(long, num_args = 2, value_names = ["I", "J"])]
        bracket: Option<Vec<usize>>,
    },
    /// Round-trip and immersion-rank report for the recursive embedding
    Embed {
        /// Factor dimensions, comma separated, e.g. 2,3
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Record wall-clock times per check (makes reports non-reproducible)
        #[arg(long)]
        timings: bool,
        /// Print the human-readable report to stdout instead of JSON
        #[arg(long)]
        text: bool,
        /// Write the JSON report to a file (stdout then carries the text form)
        #[arg(long)]
        out: Option<String>,
    },
}

fn exit_code_for_error(err: &Error) -> ExitCode {
    match err {
        Error::BudgetExceeded { .. } => ExitCode::from(3),
        _ => ExitCode::from(2),
    }
}

fn emit_report(
    report: &VerificationReport,
    text: bool,
    out: Option<&str>,
) -> std::io::Result<ExitCode> {
    match out {
        Some(path) => {
            fs::write(path, report.to_json())?;
            print!("{}", report.to_text());
        }
        None => {
            if text {
                print!("{}", report.to_text());
            } else {
                println!("{}", report.to_json());
            }
        }
    }
    Ok(if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code_for_error(&err)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Verify {
            frame,
            m,
            n,
            samples,
            seed,
            tolerance,
            symbolic,
            timings,
            text,
            out,
        } => {
            let mut cfg = RunConfig::new(frame.into(), m, n);
            cfg.samples = samples;
            cfg.seed = seed;
            cfg.tolerance = tolerance;
            cfg.symbolic = symbolic;
            cfg.timings = timings;
            let report = cmd_verify(&cfg)?;
            Ok(emit_report(&report, text, out.as_deref())?)
        }
        Command::Eval {
            frame,
            m,
            n,
            point,
            point_file,
            bracket,
        } => {
            let source = match (point, point_file) {
                (Some(inline), None) => inline,
                (None, Some(path)) => fs::read_to_string(path)?,
                _ => {
                    return Err(Error::InvalidConfig(
                        "provide exactly one of --point or --point-file".into(),
                    ))
                }
            };
            let parsed = parse_point_text(&source, m, n)?;
            let bracket = bracket.map(|idx| (idx[0], idx[1]));
            let cfg = EvalConfig {
                frame: frame.into(),
                m,
                n,
                point: parsed,
                bracket,
            };
            print!("{}", cmd_eval(&cfg)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Embed {
            dims,
            samples,
            seed,
            timings,
            text,
            out,
        } => {
            let mut cfg = EmbedConfig::new(dims);
            cfg.samples = samples;
            cfg.seed = seed;
            cfg.timings = timings;
            let report = cmd_embed(&cfg)?;
            Ok(emit_report(&report, text, out.as_deref())?)
        }
    }
}
