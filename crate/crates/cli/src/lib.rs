//! Command-line front end for the `podles` engine.
//!
//! [`run_command`] takes the full argument vector and returns the exit code
//! together with what should be written to stdout and stderr, so that the
//! binary is a thin shell and every command is testable in-process.

pub mod config;
pub mod eval;
pub mod parse;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::Serialize;

use podles::lefschetz::{OpName, OperatorHandle};
use podles::scalar::parse_rational;
use podles::verify::{self, build_block, Mode, Options, Sector, Suite};

use config::Config;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },
    #[error(transparent)]
    Core(#[from] podles::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

#[derive(Parser, Debug)]
#[command(name = "podles", version, about = "Exact q-deformed geometry of the Podleś sphere")]
struct Cli {
    /// `key = value` file with defaults for max_level, s0, mode and budget
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default)]
struct ModeArgs {
    #[arg(long)]
    max_level: Option<usize>,
    /// Verify over Q(i)(s) (the default)
    #[arg(long, conflicts_with = "numeric")]
    symbolic: bool,
    /// Verify after specializing s to this rational, e.g. 7/10
    #[arg(long, value_name = "S0")]
    numeric: Option<String>,
    /// Largest symbolic entry size before a block is sampled instead
    #[arg(long)]
    budget: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate an expression and print its canonical form
    Eval { expr: String },
    /// Run a verification suite: hopf, calculus, metric, hodge, sl2, kahler or all
    Verify {
        suite: String,
        #[command(flatten)]
        mode: ModeArgs,
    },
    /// Harmonic dimensions per block, flavor and sector
    Cohomology {
        #[command(flatten)]
        mode: ModeArgs,
    },
    /// Dump the matrix of an operator on one sector of a block
    Matrix {
        #[arg(long)]
        op: String,
        #[arg(long)]
        level: usize,
        #[arg(long)]
        sector: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Re-derive the calculus constants from the pinning tests
    Calibrate,
}

/// Result of one invocation.
#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String, passed: bool) -> Self {
        Outcome { code: if passed { 0 } else { 1 }, stdout, stderr: String::new() }
    }
}

fn rational(text: &str) -> Result<BigRational, CliError> {
    parse_rational(text).map_err(|_| CliError::Usage(format!("`{text}` is not a rational number")))
}

fn options(cfg: &Config, args: &ModeArgs) -> Result<Options, CliError> {
    let defaults = Options::default();
    let mode = if args.symbolic {
        Mode::Symbolic
    } else if let Some(s0) = &args.numeric {
        Mode::Numeric(rational(s0)?)
    } else {
        match (cfg.numeric, &cfg.s0) {
            (Some(false), _) | (None, None) => Mode::Symbolic,
            (_, Some(s0)) => Mode::Numeric(s0.clone()),
            (Some(true), None) => Mode::Numeric(verify::positivity_point(&Mode::Symbolic)),
        }
    };
    Ok(Options {
        max_level: args.max_level.or(cfg.max_level).unwrap_or(defaults.max_level),
        mode,
        budget: args.budget.or(cfg.budget).unwrap_or(defaults.budget),
    })
}

fn json<T: Serialize>(value: &T) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

#[derive(Serialize)]
struct Entry {
    row: usize,
    col: usize,
    value: String,
}

#[derive(Serialize)]
struct MatrixDump {
    op: String,
    level: usize,
    sector: String,
    /// Labels of the whole block basis; rows and columns index into it.
    basis: Vec<String>,
    columns: Vec<usize>,
    entries: Vec<Entry>,
}

fn matrix(op: &str, level: usize, sector: &str, format: Format) -> Result<Outcome, CliError> {
    let op = OpName::parse(op).map_err(|e| CliError::Usage(e.to_string()))?;
    let sector = Sector::parse(sector).map_err(|e| CliError::Usage(e.to_string()))?;
    let block = build_block(level);
    let m = match block.matrix_of(&OperatorHandle::op(op)) {
        Ok(m) => m,
        Err(e) => return Ok(Outcome { code: 1, stdout: String::new(), stderr: format!("{e}\n") }),
    };
    let columns = block.sector_indices(sector).to_vec();
    let mut entries = Vec::new();
    for &c in &columns {
        for r in 0..m.rows {
            let v = m.get(r, c);
            if !v.is_zero() {
                entries.push(Entry { row: r, col: c, value: v.render() });
            }
        }
    }
    let stdout = match format {
        Format::Json => json(&MatrixDump {
            op: op.name().to_string(),
            level,
            sector: sector.name().to_string(),
            basis: (0..block.dim()).map(|i| block.label(i)).collect(),
            columns,
            entries,
        })?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["row", "col", "value"])?;
            for e in &entries {
                w.write_record([e.row.to_string(), e.col.to_string(), e.value.clone()])?;
            }
            String::from_utf8(w.into_inner().map_err(|e| CliError::Io(e.into_error()))?)
                .expect("csv output is UTF-8")
        }
    };
    Ok(Outcome::ok(stdout, true))
}

fn dispatch(cli: Cli) -> Result<Outcome, CliError> {
    let cfg = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    match cli.command {
        Command::Eval { expr } => Ok(Outcome::ok(eval::eval_text(&expr)? + "\n", true)),
        Command::Verify { suite, mode } => {
            let suite = Suite::parse(&suite).map_err(|e| CliError::Usage(e.to_string()))?;
            let report = verify::run(suite, &options(&cfg, &mode)?);
            Ok(Outcome::ok(json(&report)?, report.passed()))
        }
        Command::Cohomology { mode } => {
            let report = verify::cohomology(&options(&cfg, &mode)?)?;
            Ok(Outcome::ok(json(&report)?, report.consistent()))
        }
        Command::Matrix { op, level, sector, format } => matrix(&op, level, &sector, format),
        Command::Calibrate => match podles::calculus::calibrate() {
            Ok(report) => Ok(Outcome::ok(json(&report)?, true)),
            Err(e) => Ok(Outcome { code: 1, stdout: String::new(), stderr: format!("{e}\n") }),
        },
    }
}

/// Runs one invocation. Exit codes: 0 all checks pass, 1 a check failed,
/// 2 usage, parse or input error.
pub fn run_command<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match dispatch(cli) {
        Ok(out) => out,
        Err(e) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}
