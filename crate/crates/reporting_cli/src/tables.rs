//! Published tables recomputed, with the printed targets and deltas alongside.

use std::io::Write;

use cohort::reference::{
    QuartileRow, CPI_SCENARIOS, EROSION_TABLE, GLOBAL_LOSS, MONEY_QUARTILES, ONE_YEAR_TABLE,
    PERCENT_QUARTILES, PERSONA_LOSSES, PUBLISHED_DEVALUATION,
};
use cohort::{
    cohort_losses, filter_cohort, global_one_year_loss, persona_check, summarize, CohortFilter,
    HeatMap, Persona, QuantileSummary, UNDER_40,
};
use scheme_core::{
    annual_devaluation, average_retirement_erosion, erosion_factor, monte_carlo_devaluation,
    CapRule, DevaluationSource, MonteCarloConfig,
};

use crate::cli::{TableName, TablesArgs};
use crate::config::RunConfig;
use crate::error::Result;
use crate::output::{format_fixed, Cell, ReportTable};

const HARD_CAP: f64 = 0.025;
const USS_ADJUSTMENT: f64 = 0.0059;

fn delta(ours: f64, published: Option<f64>) -> Cell {
    Cell::opt(published.map(|p| ours - p), 2)
}

fn pct(x: f64) -> String {
    format!("{}%", format_fixed(x * 100.0, 2))
}

pub fn erosion_table() -> Result<ReportTable> {
    let mut t = ReportTable::new(
        "Pension value erosion under a 2.5% hard cap",
        &["devaluation", "horizon", "loss %", "published %", "delta pp"],
    )
    .note("Losses are signed, negative is a cut. Averages cover ages 66 to 86 after a 40-year career.")
    .note("The 0.87% column is computed from a = 0.59% at CPI 2.8%.");
    for (d, printed) in EROSION_TABLE {
        let d = match d {
            Some(d) => d,
            None => annual_devaluation(HARD_CAP, USS_ADJUSTMENT, 0.028)?,
        };
        let ours = [
            1.0 - erosion_factor(d, 20.0)?,
            1.0 - erosion_factor(d, 40.0)?,
            1.0 - erosion_factor(d, 60.0)?,
            average_retirement_erosion(d, 40, 20)?,
        ];
        let horizons = ["20 years", "40 years", "60 years", "ages 66-86 average"];
        for ((h, v), p) in horizons.iter().zip(ours).zip(printed) {
            let v = -v * 100.0;
            t.push(vec![
                Cell::text(pct(d)),
                Cell::text(*h),
                Cell::num(v, 2),
                Cell::num(-p, 0),
                delta(v, Some(-p)),
            ]);
        }
    }
    Ok(t)
}

pub fn one_year_table(config: &RunConfig, heatmap: &HeatMap) -> Result<ReportTable> {
    let mut t = ReportTable::new(
        "Global percentage loss in retirement income from one year's contribution",
        &["cpi %", "devaluation", "delay years", "loss %", "published %", "delta pp"],
    )
    .note(format!(
        "{} to {}, whole heat map, linear interpolation.",
        config.rules_old.id, config.rules_new.id
    ))
    .note("The third block is printed under a 2.8% heading; its values belong to CPI 3.0%.");
    for e in ONE_YEAR_TABLE {
        let source = if e.uss_basis {
            DevaluationSource::Uss
        } else {
            DevaluationSource::Uuk
        };
        let a = config.assumptions(e.cpi).with_devaluation(source.basis());
        let new = config.rules_new.with_delay(e.delay_years);
        let v = global_one_year_loss(heatmap, &config.rules_old, &new, &a)? * 100.0;
        t.push(vec![
            Cell::num(e.cpi * 100.0, 1),
            Cell::text(source.to_string()),
            Cell::num(f64::from(e.delay_years), 0),
            Cell::num(v, 2),
            Cell::num(e.percent, 1),
            delta(v, Some(e.percent)),
        ]);
    }
    Ok(t)
}

fn quartile_rows(
    t: &mut ReportTable,
    cpi: f64,
    cohort: &str,
    ours: &QuantileSummary,
    published: &QuartileRow,
    money: bool,
) {
    let (scale, unit, decimals) = if money { (1e-3, "£k", 1) } else { (100.0, "%", 1) };
    let stats = [
        ("Q1", ours.q1, Some(published.q1)),
        ("Q2", ours.q2, Some(published.q2)),
        ("Q3", ours.q3, Some(published.q3)),
        ("mean", ours.mean, Some(published.mean)),
        ("mode from", ours.mode_bin.0, Some(published.mode_low)),
    ];
    for (name, v, p) in stats {
        let v = v * scale;
        let p = p.map(|p| if money { p * 1e-3 } else { p });
        t.push(vec![
            Cell::num(cpi * 100.0, 1),
            Cell::text(cohort),
            Cell::text(format!("{name} {unit}")),
            Cell::num(v, decimals),
            Cell::opt(p, 0),
            delta(v, p),
        ]);
    }
}

pub fn quartiles_table(config: &RunConfig, heatmap: &HeatMap) -> Result<ReportTable> {
    let mut t = ReportTable::new(
        "Interquartile ranges of loss, engine cohort run",
        &["cpi %", "cohort", "statistic", "ours", "published", "delta"],
    )
    .note(format!(
        "{} to {}, positive is a cut.",
        config.rules_old.id, config.rules_new.id
    ));
    for (k, &cpi) in CPI_SCENARIOS.iter().enumerate() {
        let grid = cohort_losses(
            heatmap,
            &config.rules_old,
            &config.rules_new,
            &config.assumptions(cpi),
            config.interpolation,
        )?;
        for (g, (filter, name)) in [(CohortFilter::All, "all"), (UNDER_40, "under 40")]
            .into_iter()
            .enumerate()
        {
            let d = summarize(&filter_cohort(&grid, filter))?;
            quartile_rows(&mut t, cpi, name, &d.percent, &PERCENT_QUARTILES[g][k], false);
            quartile_rows(&mut t, cpi, name, &d.monetary, &MONEY_QUARTILES[g][k], true);
            let global = d.global_monetary_loss / 1e9;
            let published = if g == 0 { GLOBAL_LOSS[k].0 } else { GLOBAL_LOSS[k].1 } / 1e9;
            t.push(vec![
                Cell::num(cpi * 100.0, 1),
                Cell::text(name),
                Cell::text("global £bn"),
                Cell::num(global, 2),
                Cell::num(published, 1),
                delta(global, Some(published)),
            ]);
        }
    }
    Ok(t)
}

pub fn personas_table(config: &RunConfig, heatmap: &HeatMap) -> Result<ReportTable> {
    let mut t = ReportTable::new(
        "Percentage loss for three personas",
        &["persona", "age", "salary", "cpi %", "loss %", "published %", "delta pp"],
    )
    .note("Interpolated in salary between heat-map cells of the persona's age band.");
    for persona in Persona::ALL {
        let published = PERSONA_LOSSES
            .iter()
            .find(|(name, _)| *name == persona.to_string())
            .map(|(_, v)| *v);
        for (k, &cpi) in CPI_SCENARIOS.iter().enumerate() {
            let v = persona_check(
                persona,
                heatmap,
                &config.rules_old,
                &config.rules_new,
                &config.assumptions(cpi),
                config.interpolation,
            )? * 100.0;
            let p = published.map(|row| row[k]);
            t.push(vec![
                Cell::text(persona.to_string()),
                Cell::num(persona.age(), 0),
                Cell::num(persona.salary(), 0),
                Cell::num(cpi * 100.0, 1),
                Cell::num(v, 2),
                Cell::opt(p, 0),
                delta(v, p),
            ]);
        }
    }
    Ok(t)
}

pub fn devaluation_table(config: &RunConfig, args: &TablesArgs) -> Result<ReportTable> {
    let cap = match config.rules_new.cap_rule {
        CapRule::Hard { cap, .. } => cap,
        CapRule::Soft { .. } => HARD_CAP,
    };
    let mut t = ReportTable::new(
        "Annual devaluation from the hard cap",
        &["cpi %", "basis", "d %", "published %", "delta pp", "monte carlo %"],
    )
    .note(format!(
        "Cap {}. Monte Carlo: normal CPI with sd {}, 40 years, {} paths, seed {}.",
        pct(cap),
        args.sigma,
        args.paths,
        args.seed
    ));
    for &cpi in &CPI_SCENARIOS {
        let mc = monte_carlo_devaluation(&MonteCarloConfig {
            cap,
            cpi_mean: cpi,
            cpi_sigma: args.sigma,
            years: 40,
            paths: args.paths,
            seed: args.seed,
        })? * 100.0;
        let published = PUBLISHED_DEVALUATION.iter().find(|row| (row.0 - cpi).abs() < 1e-12);
        for source in [DevaluationSource::Uuk, DevaluationSource::Uss] {
            let d = source.basis().rate(cap, cpi)? * 100.0;
            let p = published.map(|row| match source {
                DevaluationSource::Uuk => row.1 * 100.0,
                DevaluationSource::Uss => row.2 * 100.0,
            });
            t.push(vec![
                Cell::num(cpi * 100.0, 1),
                Cell::text(source.to_string()),
                Cell::num(d, 4),
                Cell::opt(p, 2),
                Cell::opt(p.map(|p| d - p), 4),
                Cell::num(mc, 4),
            ]);
        }
    }
    Ok(t)
}

pub fn build_table(args: &TablesArgs) -> Result<(RunConfig, ReportTable)> {
    let config = RunConfig::new(
        &args.model,
        CPI_SCENARIOS.to_vec(),
        args.heatmap.clone(),
        Default::default(),
    )?;
    let table = match args.table {
        TableName::Erosion => erosion_table()?,
        TableName::Devaluation => devaluation_table(&config, args)?,
        name => {
            let heatmap = config.load_heatmap()?;
            match name {
                TableName::Oneyear => one_year_table(&config, &heatmap)?,
                TableName::Quartiles => quartiles_table(&config, &heatmap)?,
                _ => personas_table(&config, &heatmap)?,
            }
        }
    };
    Ok((config, table))
}

pub fn cmd_tables(args: &TablesArgs, out: &mut dyn Write) -> Result<()> {
    let (config, table) = build_table(args)?;
    table.render(config.format, out)
}
