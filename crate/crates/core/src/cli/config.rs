//! Flag and config-file ingestion. Precedence is flags > file > defaults.

use clap::{Args, ValueEnum};
use serde::Deserialize;
use std::fs;
use std::path::{Path, PathBuf};

use super::CliError;
use crate::casimir::TermSelector;
use crate::physics::PhysicalParams;

pub const DEFAULT_FIELDS: [f64; 4] = [0.02, 0.04, 0.06, 0.08];
pub const DEFAULT_D_MIN: f64 = 0.1;
pub const DEFAULT_D_MAX: f64 = 3.0;
pub const DEFAULT_POINTS: usize = 600;
/// Grid density used when the point count is not given explicitly.
pub const SAMPLES_PER_PERIOD: f64 = 20.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Jsonl,
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            Self::Csv => "csv",
            Self::Jsonl => "jsonl",
        }
    }
}

/// Physical parameters; any left unset fall back to the config file, then to
/// the unit convention.
#[derive(Debug, Clone, Default, Args)]
pub struct ParamArgs {
    /// JSON config file whose keys mirror the long flag names
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub mass: Option<f64>,
    #[arg(long)]
    pub charge: Option<f64>,
    #[arg(long)]
    pub light_speed: Option<f64>,
    #[arg(long)]
    pub planck_h: Option<f64>,
    #[arg(long)]
    pub boltzmann_k: Option<f64>,
    #[arg(long)]
    pub temperature: Option<f64>,
    #[arg(long)]
    pub electric_field: Option<f64>,
}

/// Grid flags shared by `sweep` and `figures`.
#[derive(Debug, Clone, Default, Args)]
pub struct GridArgs {
    /// Magnetic field values, comma separated
    #[arg(long = "B", value_name = "LIST", value_delimiter = ',')]
    pub b_values: Option<Vec<f64>>,
    #[arg(long)]
    pub d_min: Option<f64>,
    #[arg(long)]
    pub d_max: Option<f64>,
    /// Samples per field; if unset, raised to 20 per oscillation period
    #[arg(long)]
    pub points: Option<usize>,
}

/// Contents of `--config`: a flat JSON object, keys as the long flags.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(rename = "B", alias = "b")]
    pub b_values: Option<FieldList>,
    #[serde(alias = "d_min")]
    pub d_min: Option<f64>,
    #[serde(alias = "d_max")]
    pub d_max: Option<f64>,
    pub points: Option<usize>,
    pub term: Option<TermSelector>,
    pub format: Option<OutputFormat>,
    pub out: Option<PathBuf>,
    #[serde(alias = "strict_regime")]
    pub strict_regime: Option<bool>,
    pub tolerance: Option<f64>,
    pub separation: Option<f64>,
    pub mass: Option<f64>,
    pub charge: Option<f64>,
    #[serde(alias = "light_speed")]
    pub light_speed: Option<f64>,
    #[serde(alias = "planck_h")]
    pub planck_h: Option<f64>,
    #[serde(alias = "boltzmann_k")]
    pub boltzmann_k: Option<f64>,
    pub temperature: Option<f64>,
    #[serde(alias = "electric_field")]
    pub electric_field: Option<f64>,
}

/// `"B": 0.02` or `"B": [0.02, 0.04]`.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum FieldList {
    One(f64),
    Many(Vec<f64>),
}

impl FieldList {
    fn into_vec(self) -> Vec<f64> {
        match self {
            Self::One(b) => vec![b],
            Self::Many(v) => v,
        }
    }
}

impl ConfigFile {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("invalid config {}: {e}", path.display())))
    }

    pub fn fields(&self) -> Option<Vec<f64>> {
        self.b_values.clone().map(FieldList::into_vec)
    }
}

/// Physical parameters with `field` as the magnetic field, validated.
pub fn resolve_params(args: &ParamArgs, file: &ConfigFile, field: f64) -> Result<PhysicalParams, CliError> {
    let base = PhysicalParams::unit(field);
    let pick = |flag: Option<f64>, from_file: Option<f64>, default: f64| flag.or(from_file).unwrap_or(default);
    let params = PhysicalParams {
        mass: pick(args.mass, file.mass, base.mass),
        charge: pick(args.charge, file.charge, base.charge),
        light_speed: pick(args.light_speed, file.light_speed, base.light_speed),
        planck_h: pick(args.planck_h, file.planck_h, base.planck_h),
        boltzmann_k: pick(args.boltzmann_k, file.boltzmann_k, base.boltzmann_k),
        temperature: pick(args.temperature, file.temperature, base.temperature),
        electric_field: pick(args.electric_field, file.electric_field, base.electric_field),
        magnetic_field: field,
    };
    params
        .validate()
        .map_err(|e| CliError::Config(e.to_string()))?;
    Ok(params)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub d_min: f64,
    pub d_max: f64,
    pub points: usize,
    /// Whether `points` came from a flag or the file rather than the default.
    pub points_explicit: bool,
    pub b_values: Vec<f64>,
    pub term: TermSelector,
    pub output_format: OutputFormat,
}

impl SweepConfig {
    pub fn resolve(
        grid: &GridArgs,
        file: &ConfigFile,
        term: Option<TermSelector>,
        format: Option<OutputFormat>,
    ) -> Result<Self, CliError> {
        let points = grid.points.or(file.points);
        let config = Self {
            d_min: grid.d_min.or(file.d_min).unwrap_or(DEFAULT_D_MIN),
            d_max: grid.d_max.or(file.d_max).unwrap_or(DEFAULT_D_MAX),
            points: points.unwrap_or(DEFAULT_POINTS),
            points_explicit: points.is_some(),
            b_values: grid
                .b_values
                .clone()
                .or_else(|| file.fields())
                .unwrap_or_else(|| DEFAULT_FIELDS.to_vec()),
            term: term.or(file.term).unwrap_or(TermSelector::All),
            output_format: format.or(file.format).unwrap_or(OutputFormat::Csv),
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |msg: String| Err(CliError::Config(msg));
        if !(self.d_min.is_finite() && self.d_min > 0.0) {
            return bad(format!("d-min must be > 0, got {}", self.d_min));
        }
        if !(self.d_max.is_finite() && self.d_max > self.d_min) {
            return bad(format!("d-max must exceed d-min, got {} ≤ {}", self.d_max, self.d_min));
        }
        if self.points < 2 {
            return bad(format!("points must be at least 2, got {}", self.points));
        }
        if self.b_values.is_empty() {
            return bad("B list is empty".into());
        }
        if let Some(b) = self.b_values.iter().find(|b| !(b.is_finite() && **b > 0.0)) {
            return bad(format!("every B must be > 0, got {b}"));
        }
        Ok(())
    }
}
