use std::io::Write;

use serde::{Deserialize, Serialize};

use projection::{scheme_change_date, ProjectionResult};
use scenario_service::{AssumptionOverrides, ProjectRequest, ProjectResponse};
use scheme_core::bundled;

use crate::cli::{Format, ProjectArgs};
use crate::config::{check_cpi, RunConfig};
use crate::error::Result;
use crate::output::{format_fixed, Cell, ReportTable};

/// One CSV row per rule set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjectionRow {
    pub rules_id: String,
    pub income_66: f64,
    pub income_86: f64,
    pub db_66: f64,
    pub db_86: f64,
    pub dc_66: f64,
    pub total_linear: f64,
    pub total_geometric: f64,
}

pub fn request_for(args: &ProjectArgs) -> Result<ProjectRequest> {
    check_cpi(args.cpi)?;
    let config = RunConfig::new(&args.model, vec![args.cpi], None, Default::default())?;
    Ok(ProjectRequest {
        date_of_birth: args.dob,
        salary: args.salary,
        start_date: args.start_date.unwrap_or_else(scheme_change_date),
        retirement_age: args.retirement_age,
        dc_option: args.dc_option.into(),
        rules_old: args.model.rules.old.clone(),
        rules_new: args.model.rules.new.clone(),
        assumptions: AssumptionOverrides {
            cpi: Some(args.cpi),
            annuity_factor: config.annuity_factor,
            devaluation: Some(config.devaluation),
            ..Default::default()
        },
        delay_years: args.model.delay_years,
        modeller_rounding: args.model.modeller_rounding,
        interpolation: config.interpolation,
    })
}

pub fn cmd_project(args: &ProjectArgs, out: &mut dyn Write) -> Result<()> {
    let request = request_for(args)?;
    let response = scenario_service::project(bundled(), &request)?;
    match args.model.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &response)?;
            writeln!(out)?;
        }
        Format::Csv => write_csv(&response, out)?,
        Format::Text => write_text(&response, out)?,
    }
    Ok(())
}

fn row(r: &ProjectionResult, linear: f64, geometric: f64) -> ProjectionRow {
    ProjectionRow {
        rules_id: r.rules_id.clone(),
        income_66: r.income_66,
        income_86: r.income_86,
        db_66: r.db_66,
        db_86: r.db_86,
        dc_66: r.dc_66,
        total_linear: linear,
        total_geometric: geometric,
    }
}

pub fn rows(response: &ProjectResponse) -> [ProjectionRow; 2] {
    let l = &response.loss;
    [
        row(&response.old, l.linear.old_total, l.geometric.old_total),
        row(&response.new, l.linear.new_total, l.geometric.new_total),
    ]
}

fn write_csv(response: &ProjectResponse, out: &mut dyn Write) -> Result<()> {
    let l = &response.loss;
    writeln!(out, "# Annual incomes and 20-year totals in today's money (pounds).")?;
    writeln!(
        out,
        "# Loss {} to {}: linear {}% (£{}), geometric {}% (£{}). Positive is a cut.",
        response.old.rules_id,
        response.new.rules_id,
        format_fixed(l.linear.percent_loss * 100.0, 2),
        format_fixed(l.linear.monetary_loss, 0),
        format_fixed(l.geometric.percent_loss * 100.0, 2),
        format_fixed(l.geometric.monetary_loss, 0),
    )?;
    let mut w = csv::Writer::from_writer(out);
    for r in rows(response) {
        w.serialize(ProjectionRow {
            income_66: round2(r.income_66),
            income_86: round2(r.income_86),
            db_66: round2(r.db_66),
            db_86: round2(r.db_86),
            dc_66: round2(r.dc_66),
            total_linear: round2(r.total_linear),
            total_geometric: round2(r.total_geometric),
            ..r
        })?;
    }
    w.flush()?;
    Ok(())
}

fn round2(x: f64) -> f64 {
    (x * 100.0).round() / 100.0
}

fn write_text(response: &ProjectResponse, out: &mut dyn Write) -> Result<()> {
    let s = &response.old.scenario;
    let a = &response.old.assumptions;
    let mut t = ReportTable::new(
        format!(
            "Member born {}, salary £{}, age {} on {}, retiring at {}",
            s.date_of_birth,
            format_fixed(s.salary, 0),
            format_fixed(s.age_at_start(), 1),
            s.start_date,
            format_fixed(s.retirement_age, 1),
        ),
        &["", &response.old.rules_id, &response.new.rules_id],
    )
    .note(format!(
        "CPI {}%, annuity factor {}, incomes a year in today's money",
        format_fixed(a.cpi * 100.0, 2),
        format_fixed(a.annuity_factor, 1),
    ));
    let [o, n] = rows(response);
    for (label, x, y) in [
        ("income at 66", o.income_66, n.income_66),
        ("income at 86", o.income_86, n.income_86),
        ("DB at 66", o.db_66, n.db_66),
        ("DB at 86", o.db_86, n.db_86),
        ("DC annuity", o.dc_66, n.dc_66),
        ("20-year total, linear", o.total_linear, n.total_linear),
        ("20-year total, geometric", o.total_geometric, n.total_geometric),
    ] {
        t.push(vec![Cell::text(label), Cell::num(x, 0), Cell::num(y, 0)]);
    }
    t.write_text(out)?;
    let l = &response.loss;
    writeln!(out)?;
    writeln!(
        out,
        "loss: {}% (£{}) linear, {}% (£{}) geometric",
        format_fixed(l.linear.percent_loss * 100.0, 1),
        format_fixed(l.linear.monetary_loss, 0),
        format_fixed(l.geometric.percent_loss * 100.0, 1),
        format_fixed(l.geometric.monetary_loss, 0),
    )?;
    Ok(())
}
