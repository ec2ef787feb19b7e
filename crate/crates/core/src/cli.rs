//! Command-line front end: argument parsing and command execution.
//!
//! [`parse_args`] and [`run`] are pure enough to drive from tests; the binary
//! only prints what [`run`] returns and maps errors to exit codes.

use std::fmt::Write as _;
use std::fs;
use std::io::IsTerminal;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;
use thiserror::Error;

use crate::generator::{generate_quadrangle, run_campaign, GenerateError, GeneratorConfig};
use crate::geom::Point;
use crate::homothety::construct;
use crate::quadrangle::{QuadClass, QuadError, Quadrangle, QuadrangleDoc};
use crate::render::{render_svg, RenderError, RenderOptions, Scene};
use crate::scalar::{parse_rational, ratio, Rational, Scalar};
use crate::theorems::{parallelogram_area, squared_sides, verify_all, ClaimId, VerificationReport};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFICATION_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_IO: u8 = 3;
pub const EXIT_INVALID_QUADRANGLE: u8 = 4;
pub const EXIT_MALFORMED_INPUT: u8 = 5;
pub const EXIT_GENERATION_EXHAUSTED: u8 = 6;

const EXIT_CODES_HELP: &str = "\
Exit codes:
  0  success; every verification report passed
  1  at least one verification report failed
  2  usage error (bad flag or value)
  3  I/O error reading or writing a file
  4  invalid quadrangle (duplicate vertex or parallel diagonals)
  5  malformed input document
  6  random generation exhausted its attempt budget

Scalars are written \"p\" or \"p/q\", e.g. 1/3, -2/5, 4.
Set HOMQUAD_COLOR=never to disable colored summaries.";

/// Ratios used by `verify` and `campaign` when no `--lambda` is given.
pub fn default_lambdas() -> Vec<Rational> {
    vec![
        ratio(1, 2),
        ratio(1, 3),
        ratio(0, 1),
        ratio(1, 1),
        ratio(-1, 3),
        ratio(4, 3),
    ]
}

fn scalar_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Parser, Debug)]
#[command(
    name = "homquad",
    version,
    about = "Homothetic parallelograms of a quadrangle: construct, verify, render",
    after_help = EXIT_CODES_HELP
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Clone, PartialEq)]
pub enum Command {
    /// Print the homothetic parallelogram for one ratio as JSON.
    Construct {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_parser = scalar_arg, allow_hyphen_values = true)]
        lambda: Rational,
    },
    /// Print the class, diagonal intersection and signed area.
    Classify {
        #[arg(long)]
        input: PathBuf,
    },
    /// Verify every applicable claim on one quadrangle (JSON lines).
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long = "lambda", value_parser = scalar_arg, allow_hyphen_values = true)]
        lambdas: Vec<Rational>,
        /// Only report these claims (repeatable).
        #[arg(long = "claim")]
        claims: Vec<ClaimId>,
    },
    /// Verify all claims on seeded random quadrangles (JSON lines).
    Campaign {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(2..))]
        range: u32,
        #[arg(long)]
        class: Option<QuadClass>,
        #[arg(long = "lambda", value_parser = scalar_arg, allow_hyphen_values = true)]
        lambdas: Vec<Rational>,
    },
    /// Tabulate area and perimeter over evenly spaced ratios.
    Sweep {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_parser = scalar_arg, allow_hyphen_values = true)]
        from: Rational,
        #[arg(long, value_parser = scalar_arg, allow_hyphen_values = true)]
        to: Rational,
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        steps: u32,
    },
    /// Draw the quadrangle and its parallelograms as SVG.
    Render {
        #[arg(long)]
        input: PathBuf,
        #[arg(long = "lambda", value_parser = scalar_arg, allow_hyphen_values = true, required = true)]
        lambdas: Vec<Rational>,
        #[arg(long)]
        show_construction: bool,
        #[arg(long)]
        show_rays: bool,
        #[arg(long)]
        labels: bool,
        #[arg(long, default_value_t = 800)]
        width: u32,
        #[arg(long)]
        output: PathBuf,
    },
    /// Write a seeded random quadrangle as JSON.
    Generate {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(2..))]
        range: u32,
        #[arg(long)]
        class: Option<QuadClass>,
        #[arg(long)]
        output: PathBuf,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    /// `--help` / `--version` output; not a failure.
    #[error("{0}")]
    Help(String),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("invalid quadrangle: {0}")]
    InvalidQuadrangle(#[from] QuadError),
    #[error("{path}: malformed quadrangle document: {message}")]
    MalformedInput { path: PathBuf, message: String },
    #[error(transparent)]
    Generation(GenerateError),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Help(_) => EXIT_OK,
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io { .. } => EXIT_IO,
            CliError::InvalidQuadrangle(_) => EXIT_INVALID_QUADRANGLE,
            CliError::MalformedInput { .. } => EXIT_MALFORMED_INPUT,
            CliError::Generation(GenerateError::GenerationExhausted(_)) => {
                EXIT_GENERATION_EXHAUSTED
            }
            CliError::Generation(_) => EXIT_USAGE,
        }
    }
}

impl From<GenerateError> for CliError {
    fn from(e: GenerateError) -> Self {
        CliError::Generation(e)
    }
}

impl From<RenderError> for CliError {
    fn from(e: RenderError) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// Parses arguments (without the program name).
pub fn parse_args<S: AsRef<str>>(argv: &[S]) -> Result<Command, CliError> {
    let args = std::iter::once("homquad").chain(argv.iter().map(AsRef::as_ref));
    let cli = Cli::try_parse_from(args).map_err(|e| match e.kind() {
        clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
            CliError::Help(e.to_string())
        }
        _ => CliError::Usage(e.to_string()),
    })?;
    let cmd = cli.command;
    match &cmd {
        Command::Sweep { from, to, .. } if from == to => {
            return Err(CliError::Usage("--to must differ from --from".to_string()))
        }
        Command::Construct { input, .. }
        | Command::Classify { input }
        | Command::Verify { input, .. }
        | Command::Sweep { input, .. }
        | Command::Render { input, .. }
            if input.as_os_str().is_empty() =>
        {
            return Err(CliError::Usage("--input must not be empty".to_string()))
        }
        Command::Render { output, .. } | Command::Generate { output, .. }
            if output.as_os_str().is_empty() =>
        {
            return Err(CliError::Usage("--output must not be empty".to_string()))
        }
        _ => {}
    }
    Ok(cmd)
}

/// What a command produced: the stdout document, a one-line human summary
/// for stderr, and whether any verification failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub stdout: String,
    pub summary: Option<String>,
    pub failed: bool,
}

impl RunOutput {
    fn ok(stdout: String) -> Self {
        RunOutput {
            stdout,
            summary: None,
            failed: false,
        }
    }

    pub fn exit_code(&self) -> u8 {
        if self.failed {
            EXIT_VERIFICATION_FAILED
        } else {
            EXIT_OK
        }
    }
}

/// Reads and validates a quadrangle document.
pub fn read_quadrangle(path: &Path) -> Result<Quadrangle<Rational>, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let doc: QuadrangleDoc<Rational> =
        serde_json::from_str(&text).map_err(|e| CliError::MalformedInput {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
    Ok(Quadrangle::try_from(doc)?)
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[derive(Serialize)]
struct ClassifyOutput {
    class: QuadClass,
    #[serde(rename = "O")]
    o: Point<Rational>,
    signed_area: String,
}

fn reports_output(reports: &[VerificationReport]) -> RunOutput {
    let mut stdout = String::new();
    for r in reports {
        stdout.push_str(&serde_json::to_string(r).expect("reports serialize"));
        stdout.push('\n');
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    RunOutput {
        stdout,
        summary: Some(summary_line(reports.len(), failed, color_enabled())),
        failed: failed > 0,
    }
}

/// `HOMQUAD_COLOR=never` disables color; otherwise color is used when stderr
/// is a terminal.
pub fn color_enabled() -> bool {
    match std::env::var("HOMQUAD_COLOR") {
        Ok(v) if v.eq_ignore_ascii_case("never") => false,
        _ => std::io::stderr().is_terminal(),
    }
}

pub fn summary_line(total: usize, failed: usize, color: bool) -> String {
    let text = format!(
        "{total} reports, {} passed, {failed} failed",
        total - failed
    );
    match (color, failed) {
        (false, _) => text,
        (true, 0) => format!("\x1b[32m{text}\x1b[0m"),
        (true, _) => format!("\x1b[31m{text}\x1b[0m"),
    }
}

/// Formats `value` with `digits` significant digits, no exponent.
pub fn format_significant(value: f64, digits: usize) -> String {
    if value == 0.0 || !value.is_finite() {
        return format!("{value}");
    }
    let magnitude = value.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    format!("{value:.decimals$}")
}

fn sweep_table(q: &Quadrangle<Rational>, from: &Rational, to: &Rational, steps: u32) -> String {
    let mut out = String::from("lambda\tarea\tKL^2\tLM^2\tperimeter\n");
    let step = (to.clone() - from.clone()) / Rational::from_i64(i64::from(steps) - 1);
    for i in 0..steps {
        let lambda = from.clone() + step.clone() * Rational::from_i64(i64::from(i));
        let result = construct(q, &lambda);
        let sides = squared_sides(&result);
        let perimeter: f64 = sides.iter().map(|s| s.approx_f64().sqrt()).sum();
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}",
            lambda.to_text(),
            parallelogram_area(&result).to_text(),
            sides[0].to_text(),
            sides[1].to_text(),
            format_significant(perimeter, 15)
        );
    }
    out
}

pub fn run(cmd: &Command) -> Result<RunOutput, CliError> {
    match cmd {
        Command::Construct { input, lambda } => {
            let q = read_quadrangle(input)?;
            let json = serde_json::to_string(&construct(&q, lambda)).expect("result serializes");
            Ok(RunOutput::ok(json + "\n"))
        }
        Command::Classify { input } => {
            let q = read_quadrangle(input)?;
            let out = ClassifyOutput {
                class: q.classify()?,
                o: q.diagonal_intersection(),
                signed_area: q.signed_area().to_text(),
            };
            Ok(RunOutput::ok(
                serde_json::to_string(&out).expect("classification serializes") + "\n",
            ))
        }
        Command::Verify {
            input,
            lambdas,
            claims,
        } => {
            let q = read_quadrangle(input)?;
            let lambdas = if lambdas.is_empty() {
                default_lambdas()
            } else {
                lambdas.clone()
            };
            let mut reports = verify_all(&q, &lambdas);
            if !claims.is_empty() {
                reports.retain(|r| claims.contains(&r.claim));
            }
            Ok(reports_output(&reports))
        }
        Command::Campaign {
            seed,
            trials,
            range,
            class,
            lambdas,
        } => {
            let cfg = GeneratorConfig::new(*seed, *range, *class);
            let lambdas = if lambdas.is_empty() {
                default_lambdas()
            } else {
                lambdas.clone()
            };
            let reports = run_campaign(&cfg, *trials, &lambdas)?;
            Ok(reports_output(&reports))
        }
        Command::Sweep {
            input,
            from,
            to,
            steps,
        } => {
            let q = read_quadrangle(input)?;
            Ok(RunOutput::ok(sweep_table(&q, from, to, *steps)))
        }
        Command::Render {
            input,
            lambdas,
            show_construction,
            show_rays,
            labels,
            width,
            output,
        } => {
            let q = read_quadrangle(input)?;
            let scene = Scene::new(q, lambdas)?
                .with_construction_lines(*show_construction)
                .with_perspective_rays(*show_rays)
                .with_labels(*labels);
            let opts = RenderOptions::new(*width, ratio(1, 10))?;
            write_file(output, &render_svg(&scene, &opts))?;
            Ok(RunOutput {
                stdout: String::new(),
                summary: Some(format!("wrote {}", output.display())),
                failed: false,
            })
        }
        Command::Generate {
            seed,
            range,
            class,
            output,
        } => {
            let q = generate_quadrangle(&GeneratorConfig::new(*seed, *range, *class))?;
            let json = serde_json::to_string(&q).expect("quadrangle serializes");
            write_file(output, &(json + "\n"))?;
            Ok(RunOutput {
                stdout: String::new(),
                summary: Some(format!("wrote {}", output.display())),
                failed: false,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_construct() {
        let cmd = parse_args(&["construct", "--input", "q.json", "--lambda", "1/3"]).unwrap();
        assert_eq!(
            cmd,
            Command::Construct {
                input: "q.json".into(),
                lambda: ratio(1, 3)
            }
        );
    }

    #[test]
    fn parse_sweep_with_negative_bound() {
        let cmd = parse_args(&[
            "sweep", "--input", "q.json", "--from", "-1", "--to", "2", "--steps", "7",
        ])
        .unwrap();
        assert_eq!(
            cmd,
            Command::Sweep {
                input: "q.json".into(),
                from: ratio(-1, 1),
                to: ratio(2, 1),
                steps: 7
            }
        );
    }

    #[test]
    fn usage_errors_name_the_flag() {
        let err = parse_args(&["construct", "--lambda", "1/0"]).unwrap_err();
        assert_eq!(err.exit_code(), EXIT_USAGE);
        assert!(err.to_string().contains("--lambda"), "{err}");

        let err = parse_args(&[
            "sweep", "--input", "q", "--from", "1", "--to", "1", "--steps", "3",
        ])
        .unwrap_err();
        assert!(err.to_string().contains("--to"));

        let err = parse_args(&[
            "sweep", "--input", "q", "--from", "0", "--to", "1", "--steps", "1",
        ])
        .unwrap_err();
        assert!(err.to_string().contains("--steps"), "{err}");

        let err = parse_args(&["generate", "--range", "1", "--output", "x"]).unwrap_err();
        assert!(err.to_string().contains("--range"), "{err}");
    }

    #[test]
    fn help_is_not_a_failure() {
        let err = parse_args(&["--help"]).unwrap_err();
        assert_eq!(err.exit_code(), EXIT_OK);
        assert!(err.to_string().contains("Exit codes"));
    }

    #[test]
    fn parse_verify_with_filters() {
        let cmd = parse_args(&[
            "verify",
            "--input",
            "q.json",
            "--lambda",
            "-1/3",
            "--lambda",
            "2",
            "--claim",
            "AreaFormula",
        ])
        .unwrap();
        assert_eq!(
            cmd,
            Command::Verify {
                input: "q.json".into(),
                lambdas: vec![ratio(-1, 3), ratio(2, 1)],
                claims: vec![ClaimId::AreaFormula]
            }
        );
    }

    #[test]
    fn significant_digits() {
        assert_eq!(format_significant(4.0, 15), "4.00000000000000");
        assert_eq!(
            format_significant(2.0f64.sqrt() * 2.0, 15),
            "2.82842712474619"
        );
        assert_eq!(format_significant(123.456, 4), "123.5");
        assert_eq!(format_significant(0.0, 15), "0");
    }

    #[test]
    fn summary_colors() {
        assert_eq!(summary_line(3, 0, false), "3 reports, 3 passed, 0 failed");
        assert!(summary_line(3, 1, true).starts_with("\x1b[31m"));
    }
}
