//! The `cohort` subcommand: per-cell grids, distribution summaries and histogram matrices.

use std::fs::{self, File};
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use cohort::{
    cohort_losses, filter_cohort, histogram, replay_grid, summarize, BandedTable, CohortDistribution,
    CohortFilter, CohortGrid, GroupBy, HeatMap, Histogram, LossMeasure, MONEY_BIN, PERCENT_BIN,
    PUBLISHED_PERCENT_GRID_CPI28, PUBLISHED_POUND_GRID_CPI28, UNDER_40, UNDER_40K,
};
use projection::Interpolation;

use crate::cli::CohortArgs;
use crate::config::RunConfig;
use crate::error::{CliError, Result};
use crate::output::{format_fixed, write_file, Cell, ReportTable};

pub const COHORTS: [CohortFilter; 3] = [CohortFilter::All, UNDER_40, UNDER_40K];
pub const SUMMARY_FILE: &str = "summary.csv";
const DEFAULT_CPIS: [f64; 3] = [0.025, 0.028, 0.030];
const REPLAY_CPI: f64 = 0.028;

/// One line of `summary.csv`. Percent columns are percent, money columns pounds; positive is a cut.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub cpi_pct: f64,
    pub source: String,
    pub cohort: String,
    pub members: u64,
    pub pct_q1: f64,
    pub pct_q2: f64,
    pub pct_q3: f64,
    pub pct_mean: f64,
    pub pct_mode_low: f64,
    pub pct_mode_high: f64,
    pub gbp_q1: f64,
    pub gbp_q2: f64,
    pub gbp_q3: f64,
    pub gbp_mean: f64,
    pub gbp_mode_low: f64,
    pub gbp_mode_high: f64,
    pub global_loss_gbp: f64,
}

fn round_to(x: f64, decimals: i32) -> f64 {
    let k = 10f64.powi(decimals);
    let r = (x * k).round() / k;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

impl SummaryRow {
    pub fn new(cpi: f64, source: &str, filter: CohortFilter, d: &CohortDistribution) -> Self {
        let p = |x: f64| round_to(x * 100.0, 2);
        let g = |x: f64| round_to(x, 0);
        Self {
            cpi_pct: round_to(cpi * 100.0, 2),
            source: source.into(),
            cohort: filter.label(),
            members: d.population,
            pct_q1: p(d.percent.q1),
            pct_q2: p(d.percent.q2),
            pct_q3: p(d.percent.q3),
            pct_mean: p(d.percent.mean),
            pct_mode_low: p(d.percent.mode_bin.0),
            pct_mode_high: p(d.percent.mode_bin.1),
            gbp_q1: g(d.monetary.q1),
            gbp_q2: g(d.monetary.q2),
            gbp_q3: g(d.monetary.q3),
            gbp_mean: g(d.monetary.mean),
            gbp_mode_low: g(d.monetary.mode_bin.0),
            gbp_mode_high: g(d.monetary.mode_bin.1),
            global_loss_gbp: g(d.global_monetary_loss),
        }
    }
}

/// File-name tag for a CPI value, e.g. `cpi2.8`.
pub fn cpi_tag(cpi: f64) -> String {
    format!("cpi{}", format_fixed(cpi * 100.0, 1))
}

fn read_table(path: &Path) -> Result<BandedTable> {
    let file = File::open(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    BandedTable::read(file).map_err(|source| CliError::Input {
        path: path.to_path_buf(),
        source,
    })
}

fn write_grid(path: &Path, table: &BandedTable, comments: &[&str]) -> Result<()> {
    let mut buf = Vec::new();
    table.write(&mut buf, comments, |v| {
        if v.is_nan() {
            String::new()
        } else {
            format_fixed(v, 2)
        }
    })?;
    write_file(path, &buf)
}

fn write_histogram(path: &Path, h: &Histogram, comments: &[String]) -> Result<()> {
    let scale = match h.measure {
        LossMeasure::Percent => 100.0,
        LossMeasure::Money => 1.0,
    };
    let mut buf = Vec::new();
    for c in comments {
        writeln!(buf, "# {c}")?;
    }
    let mut w = csv::Writer::from_writer(&mut buf);
    let mut header = vec!["bin_low".to_string(), "bin_high".to_string()];
    header.extend(h.groups.iter().cloned());
    w.write_record(&header)?;
    for (low, counts) in h.bin_lows.iter().zip(&h.counts) {
        let mut rec = vec![
            format_fixed(low * scale, 0),
            format_fixed((low + h.bin_width) * scale, 0),
        ];
        rec.extend(counts.iter().map(u64::to_string));
        w.write_record(&rec)?;
    }
    w.flush()?;
    drop(w);
    write_file(path, &buf)
}

pub fn interpolation_name(method: Interpolation) -> &'static str {
    match method {
        Interpolation::Linear => "linear",
        Interpolation::Geometric => "geometric",
    }
}

/// Paths of every file written, in order.
pub struct CohortReport {
    pub files: Vec<PathBuf>,
    pub summary: Vec<SummaryRow>,
}

fn evaluate(config: &RunConfig, heatmap: &HeatMap, cpi: f64) -> Result<CohortGrid> {
    Ok(cohort_losses(
        heatmap,
        &config.rules_old,
        &config.rules_new,
        &config.assumptions(cpi),
        config.interpolation,
    )?)
}

pub fn run_cohort(args: &CohortArgs) -> Result<(RunConfig, CohortReport)> {
    let replay = args.replay || args.replay_pct.is_some();
    let cpis = match (&args.cpi, replay) {
        (Some(c), _) => c.clone(),
        (None, true) => vec![REPLAY_CPI],
        (None, false) => DEFAULT_CPIS.to_vec(),
    };
    if replay && cpis.len() != 1 {
        return Err(CliError::usage("replay mode takes exactly one --cpi value, the grids' own"));
    }
    let config = RunConfig::new(&args.model, cpis, args.heatmap.clone(), args.out.clone())?;
    let heatmap = config.load_heatmap()?;
    let replay_tables = if replay {
        Some(match (&args.replay_pct, &args.replay_gbp) {
            (Some(p), Some(g)) => (read_table(p)?, read_table(g)?),
            _ => (
                BandedTable::read(PUBLISHED_PERCENT_GRID_CPI28.as_bytes())?,
                BandedTable::read(PUBLISHED_POUND_GRID_CPI28.as_bytes())?,
            ),
        })
    } else {
        None
    };

    fs::create_dir_all(&config.out).map_err(|source| CliError::Io {
        path: config.out.clone(),
        source,
    })?;
    let rules = format!("{} to {}", config.rules_old.id, config.rules_new.id);
    let source = if replay { "replay" } else { "engine" };
    let mut report = CohortReport {
        files: Vec::new(),
        summary: Vec::new(),
    };
    for &cpi in &config.cpis {
        let grid = match &replay_tables {
            Some((pct, gbp)) => replay_grid(&heatmap, pct, gbp)?,
            None => evaluate(&config, &heatmap, cpi)?,
        };
        let tag = cpi_tag(cpi);
        let scenario = format!(
            "{rules}, CPI {}%, {source}, {} interpolation.",
            format_fixed(cpi * 100.0, 1),
            interpolation_name(config.interpolation)
        );

        let pct_path = config.out.join(format!("loss_pct_{tag}.csv"));
        write_grid(
            &pct_path,
            &grid.to_table(|c| -c.percent_loss * 100.0, f64::NAN),
            &[
                &format!("Percentage loss of future pension, {scenario}"),
                "Signed percent, negative is a cut.",
            ],
        )?;
        let gbp_path = config.out.join(format!("loss_gbp_{tag}.csv"));
        write_grid(
            &gbp_path,
            &grid.to_table(|c| -c.monetary_loss / 1000.0, f64::NAN),
            &[
                &format!("Loss per member over 20 years of retirement, {scenario}"),
                "Signed thousands of pounds in today's money, negative is a cut.",
            ],
        )?;
        report.files.extend([pct_path, gbp_path]);

        for (measure, width, unit, name) in [
            (LossMeasure::Percent, PERCENT_BIN, "percent", "pct"),
            (LossMeasure::Money, MONEY_BIN, "pounds", "gbp"),
        ] {
            for (group, gname) in [(GroupBy::Salary, "salary"), (GroupBy::Age, "age")] {
                let h = histogram(&grid, measure, width, group)?;
                let path = config.out.join(format!("hist_{name}_{gname}_{tag}.csv"));
                write_histogram(
                    &path,
                    &h,
                    &[
                        format!("Members by loss bin and {gname} group, {scenario}"),
                        format!("Bins in {unit}, positive is a cut; lower edge inclusive."),
                    ],
                )?;
                report.files.push(path);
            }
        }
        for filter in COHORTS {
            let d = summarize(&filter_cohort(&grid, filter))?;
            report.summary.push(SummaryRow::new(cpi, source, filter, &d));
        }
    }

    let mut buf = Vec::new();
    writeln!(buf, "# Loss distribution by CPI scenario and cohort, {rules}.")?;
    writeln!(buf, "# Positive values are cuts. pct_ columns in percent, gbp_ columns in pounds.")?;
    {
        let mut w = csv::Writer::from_writer(&mut buf);
        for row in &report.summary {
            w.serialize(row)?;
        }
        w.flush()?;
    }
    let summary_path = config.out.join(SUMMARY_FILE);
    write_file(&summary_path, &buf)?;
    report.files.push(summary_path);
    Ok((config, report))
}

pub fn summary_table(rows: &[SummaryRow]) -> ReportTable {
    let mut t = ReportTable::new(
        "Loss distribution (positive is a cut)",
        &[
            "cpi %", "source", "cohort", "members", "Q1 %", "Q2 %", "Q3 %", "mean %", "mode %",
            "mean £k", "mode £k", "global £bn",
        ],
    );
    for r in rows {
        t.push(vec![
            Cell::num(r.cpi_pct, 1),
            Cell::text(&r.source),
            Cell::text(&r.cohort),
            Cell::num(r.members as f64, 0),
            Cell::num(r.pct_q1, 1),
            Cell::num(r.pct_q2, 1),
            Cell::num(r.pct_q3, 1),
            Cell::num(r.pct_mean, 1),
            Cell::text(format!("{}-{}", format_fixed(r.pct_mode_low, 0), format_fixed(r.pct_mode_high, 0))),
            Cell::num(r.gbp_mean / 1e3, 1),
            Cell::text(format!(
                "{}-{}",
                format_fixed(r.gbp_mode_low / 1e3, 0),
                format_fixed(r.gbp_mode_high / 1e3, 0)
            )),
            Cell::num(r.global_loss_gbp / 1e9, 2),
        ]);
    }
    t
}

pub fn cmd_cohort(args: &CohortArgs, out: &mut dyn Write) -> Result<()> {
    let (config, report) = run_cohort(args)?;
    summary_table(&report.summary).render(config.format, out)?;
    Ok(())
}
