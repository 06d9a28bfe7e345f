use std::path::PathBuf;
use std::str::FromStr;

use chrono::NaiveDate;
use clap::{Args, Parser, Subcommand, ValueEnum};

use projection::{DcOption, Interpolation};
use scheme_core::DevaluationSource;

#[derive(Debug, Parser)]
#[command(name = "pensionlab", version, about = "Pension scheme cut projections and cohort reports")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Project one member under two rule sets and report the loss.
    Project(ProjectArgs),
    /// Evaluate every heat-map cell and write grids, summaries and histograms.
    Cohort(CohortArgs),
    /// Reproduce a published table with computed values, targets and deltas.
    Tables(TablesArgs),
    /// Run the JSON API.
    Serve(ServeArgs),
}

/// Old and new rule-set ids, written `old:new`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RulesPair {
    pub old: String,
    pub new: String,
}

impl FromStr for RulesPair {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.split_once(':') {
            Some((old, new)) if !old.trim().is_empty() && !new.trim().is_empty() => Ok(Self {
                old: old.trim().to_string(),
                new: new.trim().to_string(),
            }),
            _ => Err(format!("expected OLD:NEW, got `{s}`")),
        }
    }
}

impl Default for RulesPair {
    fn default() -> Self {
        Self {
            old: "uss2021".into(),
            new: "uuk2021".into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InterpArg {
    Linear,
    Geometric,
}

impl From<InterpArg> for Interpolation {
    fn from(value: InterpArg) -> Self {
        match value {
            InterpArg::Linear => Interpolation::Linear,
            InterpArg::Geometric => Interpolation::Geometric,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DcOptionArg {
    Annuity,
    Drawdown,
    Cash,
}

impl From<DcOptionArg> for DcOption {
    fn from(value: DcOptionArg) -> Self {
        match value {
            DcOptionArg::Annuity => DcOption::Annuity,
            DcOptionArg::Drawdown => DcOption::Drawdown,
            DcOptionArg::Cash => DcOption::Cash,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Csv,
    Json,
}

/// Model settings shared by every computing subcommand.
#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    /// Rule sets to compare, as OLD:NEW preset ids.
    #[arg(long, default_value = "uss2021:uuk2021")]
    pub rules: RulesPair,
    #[arg(long, value_enum, default_value_t = InterpArg::Linear)]
    pub interp: InterpArg,
    /// Devaluation assumption behind the hard cap.
    #[arg(long, default_value_t = DevaluationSource::Uuk)]
    pub devaluation: DevaluationSource,
    /// Replace the hard-cap delay of the new rule set.
    #[arg(long)]
    pub delay_years: Option<u32>,
    /// Round incomes to the nearest ten pounds.
    #[arg(long)]
    pub modeller_rounding: bool,
    /// Override the calibrated annuity factor.
    #[arg(long)]
    pub annuity_factor: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct ProjectArgs {
    #[arg(long)]
    pub dob: NaiveDate,
    #[arg(long)]
    pub salary: f64,
    #[arg(long)]
    pub cpi: f64,
    #[arg(long, default_value_t = 66.0)]
    pub retirement_age: f64,
    #[arg(long)]
    pub start_date: Option<NaiveDate>,
    #[arg(long, value_enum, default_value_t = DcOptionArg::Annuity)]
    pub dc_option: DcOptionArg,
    #[command(flatten)]
    pub model: ModelArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CohortArgs {
    /// Comma-separated mean CPI values; defaults to 0.025,0.028,0.03 (0.028 in replay mode).
    #[arg(long, value_delimiter = ',')]
    pub cpi: Option<Vec<f64>>,
    /// Heat map CSV; the bundled one when omitted.
    #[arg(long)]
    pub heatmap: Option<PathBuf>,
    #[arg(long, default_value = "pensionlab-out")]
    pub out: PathBuf,
    /// Summarise published grids instead of running the engine.
    #[arg(long)]
    pub replay: bool,
    /// Signed percent grid to replay; implies --replay.
    #[arg(long, requires = "replay_gbp")]
    pub replay_pct: Option<PathBuf>,
    /// Signed thousand-pound grid to replay; implies --replay.
    #[arg(long, requires = "replay_pct")]
    pub replay_gbp: Option<PathBuf>,
    #[command(flatten)]
    pub model: ModelArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableName {
    Erosion,
    Oneyear,
    Quartiles,
    Personas,
    Devaluation,
}

#[derive(Debug, Clone, Args)]
pub struct TablesArgs {
    #[arg(value_enum)]
    pub table: TableName,
    #[arg(long)]
    pub heatmap: Option<PathBuf>,
    /// Seed for the Monte-Carlo devaluation column.
    #[arg(long, default_value_t = 2022)]
    pub seed: u64,
    /// CPI volatility for the Monte-Carlo devaluation column.
    #[arg(long, default_value_t = 0.013_527)]
    pub sigma: f64,
    #[arg(long, default_value_t = 4000)]
    pub paths: u32,
    #[command(flatten)]
    pub model: ModelArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ServeArgs {
    /// Port; PENSIONLAB_PORT or 8080 when omitted.
    #[arg(long)]
    pub port: Option<u16>,
    #[arg(long)]
    pub host: Option<std::net::IpAddr>,
}
