//! `bose-casimir` command line: `sweep`, `verify` and `figures`.
//!
//! Exit codes: 0 success, 1 verification failure, 2 configuration error,
//! 3 numerical domain error, 4 I/O error.

mod config;
mod sweep;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use crate::casimir::TermSelector;
use crate::oracles::{run_verification_suite, OracleReport, SuiteConfig};
use crate::physics::PhysicalParams;

pub use config::{
    resolve_params, ConfigFile, GridArgs, OutputFormat, ParamArgs, SweepConfig, DEFAULT_D_MAX,
    DEFAULT_D_MIN, DEFAULT_FIELDS, DEFAULT_POINTS,
};
pub use sweep::{
    distance_grid, evaluate, summarize, write_csv, write_jsonl, zero_crossings, FieldSummary,
    SweepRow, CSV_HEADER,
};

/// Figure files and the term each one plots.
pub const FIGURES: [(&str, TermSelector); 4] = [
    ("fig1", TermSelector::OrderN5),
    ("fig2", TermSelector::OrderN4),
    ("fig3", TermSelector::OrderN3),
    ("fig4", TermSelector::All),
];

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("configuration: {0}")]
    Config(String),
    #[error("numerical: {0}")]
    Numerical(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            Self::Verification(_) => 1,
            Self::Config(_) => 2,
            Self::Numerical(_) => 3,
            Self::Io(_) => 4,
        }
    }
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        Self::Numerical(e.to_string())
    }
}

fn io_error(path: &Path) -> impl Fn(io::Error) -> CliError + '_ {
    move |e| CliError::Io(format!("{}: {e}", path.display()))
}

#[derive(Debug, Parser)]
#[command(name = "bose-casimir", version, about = "Casimir force of a charged Bose gas between plates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Potential and force over a (d, B) grid
    Sweep(SweepArgs),
    /// Run the oracle suite and print one JSON report per line
    Verify(VerifyArgs),
    /// Write the four figure datasets and summary.json
    Figures(FiguresArgs),
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub grid: GridArgs,
    /// n3, n4, n5 or all
    #[arg(long, value_parser = parse_term)]
    pub term: Option<TermSelector>,
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    /// Directory for sweep.csv / sweep.jsonl; stdout if omitted
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub params: ParamArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Magnetic field(s); one suite per value
    #[arg(long = "B", value_name = "LIST", value_delimiter = ',')]
    pub b_values: Option<Vec<f64>>,
    /// Plate separation for the distance-dependent checks
    #[arg(long)]
    pub separation: Option<f64>,
    /// Skip decaying-regime checks instead of moving to a reference field
    #[arg(long)]
    pub strict_regime: bool,
    /// Replace every tolerance
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// Directory for verify.jsonl; stdout if omitted
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub params: ParamArgs,
}

#[derive(Debug, Args)]
pub struct FiguresArgs {
    #[arg(long, value_name = "DIR", default_value = "figures")]
    pub out: PathBuf,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub params: ParamArgs,
}

fn parse_term(s: &str) -> Result<TermSelector, String> {
    s.parse().map_err(|e: crate::Error| e.to_string())
}

/// Parses `args` and runs the command, returning the process exit code.
pub fn run_from<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("bose-casimir: {e}");
            ExitCode::from(e.code())
        }
    }
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Sweep(args) => cmd_sweep(&args),
        Command::Verify(args) => cmd_verify(&args),
        Command::Figures(args) => cmd_figures(&args),
    }
}

fn field_params(params: &ParamArgs, file: &ConfigFile, fields: &[f64]) -> Result<Vec<PhysicalParams>, CliError> {
    fields.iter().map(|&b| resolve_params(params, file, b)).collect()
}

/// Opens `dir/name` (creating `dir`) or stdout.
fn sink(dir: Option<&Path>, name: &str) -> Result<Box<dyn Write>, CliError> {
    match dir {
        None => Ok(Box::new(BufWriter::new(io::stdout().lock()))),
        Some(dir) => {
            fs::create_dir_all(dir).map_err(io_error(dir))?;
            let path = dir.join(name);
            let file = File::create(&path).map_err(io_error(&path))?;
            Ok(Box::new(BufWriter::new(file)))
        }
    }
}

pub fn cmd_sweep(args: &SweepArgs) -> Result<(), CliError> {
    let file = ConfigFile::load(args.params.config.as_deref())?;
    let config = SweepConfig::resolve(&args.grid, &file, args.term, args.format)?;
    let params = field_params(&args.params, &file, &config.b_values)?;
    let rows = evaluate(&config, &params)?;

    let out_dir = args.out.clone().or(file.out.clone());
    let name = format!("sweep.{}", config.output_format.extension());
    let mut out = sink(out_dir.as_deref(), &name)?;
    let target = out_dir.map(|d| d.join(&name)).unwrap_or_else(|| "stdout".into());
    match config.output_format {
        OutputFormat::Csv => write_csv(&mut out, &rows),
        OutputFormat::Jsonl => write_jsonl(&mut out, &rows),
    }
    .and_then(|_| out.flush())
    .map_err(io_error(&target))
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<(), CliError> {
    let file = ConfigFile::load(args.params.config.as_deref())?;
    let fields = args
        .b_values
        .clone()
        .or_else(|| file.fields())
        .unwrap_or_else(|| vec![PhysicalParams::default().magnetic_field]);
    if fields.is_empty() {
        return Err(CliError::Config("B list is empty".into()));
    }
    let tolerance = args.tolerance.or(file.tolerance);
    if let Some(t) = tolerance {
        if !(t.is_finite() && t > 0.0) {
            return Err(CliError::Config(format!("tolerance must be > 0, got {t}")));
        }
    }
    let separation = args.separation.or(file.separation).unwrap_or(1.0);
    if !(separation.is_finite() && separation > 0.0) {
        return Err(CliError::Config(format!("separation must be > 0, got {separation}")));
    }
    let suite = SuiteConfig {
        separation,
        strict_regime: args.strict_regime || file.strict_regime.unwrap_or(false),
        tolerance_override: tolerance,
    };
    let params = field_params(&args.params, &file, &fields)?;

    #[derive(Serialize)]
    struct Line<'a> {
        #[serde(rename = "B")]
        b: f64,
        #[serde(flatten)]
        report: &'a OracleReport,
    }

    let out_dir = args.out.clone().or(file.out.clone());
    let target = out_dir.as_ref().map(|d| d.join("verify.jsonl")).unwrap_or_else(|| "stdout".into());
    let mut out = sink(out_dir.as_deref(), "verify.jsonl")?;
    let mut failed = Vec::new();
    let mut total = 0;
    for p in &params {
        for report in run_verification_suite(p, &suite) {
            total += 1;
            if report.is_failure() {
                failed.push(format!("{} (B = {})", report.name, p.magnetic_field));
            }
            let line = Line {
                b: p.magnetic_field,
                report: &report,
            };
            serde_json::to_writer(&mut out, &line)
                .map_err(io::Error::from)
                .and_then(|_| out.write_all(b"\n"))
                .map_err(io_error(&target))?;
        }
    }
    out.flush().map_err(io_error(&target))?;
    eprintln!("{total} checks, {} failed", failed.len());
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(failed.join(", ")))
    }
}

#[derive(Debug, Serialize)]
struct FigureSummary {
    file: String,
    term: TermSelector,
    points: usize,
    d_min: f64,
    d_max: f64,
    fields: Vec<FieldSummary>,
}

pub fn cmd_figures(args: &FiguresArgs) -> Result<(), CliError> {
    let file = ConfigFile::load(args.params.config.as_deref())?;
    let base = SweepConfig::resolve(&args.grid, &file, None, Some(OutputFormat::Csv))?;
    let params = field_params(&args.params, &file, &base.b_values)?;

    fs::create_dir_all(&args.out).map_err(io_error(&args.out))?;
    let mut summaries = Vec::new();
    for (stem, term) in FIGURES {
        let config = SweepConfig { term, ..base.clone() };
        let rows = evaluate(&config, &params)?;
        let name = format!("{stem}.csv");
        let path = args.out.join(&name);
        let mut out = BufWriter::new(File::create(&path).map_err(io_error(&path))?);
        write_csv(&mut out, &rows)
            .and_then(|_| out.flush())
            .map_err(io_error(&path))?;
        summaries.push(FigureSummary {
            file: name,
            term,
            points: rows.len() / params.len(),
            d_min: config.d_min,
            d_max: config.d_max,
            fields: summarize(&rows),
        });
    }
    let path = args.out.join("summary.json");
    let mut text = serde_json::to_string_pretty(&summaries).map_err(|e| CliError::Io(e.to_string()))?;
    text.push('\n');
    fs::write(&path, text).map_err(io_error(&path))
}
