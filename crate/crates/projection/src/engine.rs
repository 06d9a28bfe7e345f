//! Annual-step projection of future-service benefits in today's money.

use serde::{Deserialize, Serialize};

use scheme_core::{EconomicAssumptions, SchemeRules};

use crate::error::Result;
use crate::income::{retirement_income_total, Interpolation, RETIREMENT_YEARS};
use crate::scenario::MemberScenario;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ProjectionOptions {
    /// Round DB and DC incomes to the nearest ten pounds, as the USS modeller displays them.
    pub modeller_rounding: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjectionResult {
    pub rules_id: String,
    pub scenario: MemberScenario,
    pub assumptions: EconomicAssumptions,
    /// Annual income at retirement age, today's money.
    pub income_66: f64,
    /// Annual income twenty years after retirement, today's money.
    pub income_86: f64,
    pub db_66: f64,
    pub db_86: f64,
    /// DC annuity income; CPI-linked so the same at both ages.
    pub dc_66: f64,
}

impl ProjectionResult {
    pub fn has_future_service(&self) -> bool {
        self.income_66 > 0.0 || self.income_86 > 0.0
    }
}

/// Accumulated benefits from the first `horizon` years of future service.
#[derive(Debug, Clone, Copy, Default)]
struct Accrued {
    db_66: f64,
    db_86: f64,
    dc_income: f64,
}

fn accrue(
    scenario: &MemberScenario,
    rules: &SchemeRules,
    assumptions: &EconomicAssumptions,
    horizon: f64,
) -> Result<Accrued> {
    let to_retirement = scenario.years_to_retirement();
    let mut out = Accrued::default();
    if to_retirement <= 0.0 {
        return Ok(out);
    }
    let cpi = assumptions.cpi;
    let basis = &assumptions.devaluation;
    let keep = 1.0 - rules.pension_devaluation(cpi, basis)?;
    let threshold_factor = rules.threshold_real_factor(cpi, basis)?;
    let delay = f64::from(rules.cap_rule.delay_years());
    let denominator = rules.accrual_denominator.as_f64();
    let real_salary_growth = (1.0 + assumptions.salary_growth) / (1.0 + cpi);
    let real_dc_growth = (1.0 + assumptions.dc_growth) / (1.0 + cpi);
    let end = to_retirement.min(horizon);
    let retirement_span = f64::from(RETIREMENT_YEARS);

    let mut pot = 0.0;
    let mut year = 0u32;
    loop {
        let t = f64::from(year);
        if t >= end - 1e-12 {
            break;
        }
        let part = (end - t).min(1.0);
        let salary = scenario.salary * real_salary_growth.powf(t);
        let threshold = rules.db_dc_threshold * threshold_factor.powf(t);

        let tranche = salary.min(threshold) / denominator * part;
        let eroded_from = t.max(delay);
        out.db_66 += tranche * keep.powf((to_retirement - eroded_from).max(0.0));
        out.db_86 += tranche * keep.powf((to_retirement + retirement_span - eroded_from).max(0.0));

        let contribution = assumptions.dc_contribution_rate * (salary - threshold).max(0.0) * part;
        pot += contribution * real_dc_growth.powf(to_retirement - (t + part));
        year += 1;
    }
    out.dc_income = pot / assumptions.annuity_factor;
    Ok(out)
}

fn check(
    scenario: &MemberScenario,
    rules: &SchemeRules,
    assumptions: &EconomicAssumptions,
) -> Result<()> {
    scenario.validate()?;
    rules.validate()?;
    assumptions.validate()?;
    Ok(())
}

fn round_ten(x: f64) -> f64 {
    (x / 10.0).round() * 10.0
}

/// Project one member's future-service pension under `rules`.
pub fn project_member(
    scenario: &MemberScenario,
    rules: &SchemeRules,
    assumptions: &EconomicAssumptions,
) -> Result<ProjectionResult> {
    project_member_with(scenario, rules, assumptions, ProjectionOptions::default())
}

pub fn project_member_with(
    scenario: &MemberScenario,
    rules: &SchemeRules,
    assumptions: &EconomicAssumptions,
    options: ProjectionOptions,
) -> Result<ProjectionResult> {
    check(scenario, rules, assumptions)?;
    let mut acc = accrue(scenario, rules, assumptions, f64::INFINITY)?;
    if options.modeller_rounding {
        acc.db_66 = round_ten(acc.db_66);
        acc.db_86 = round_ten(acc.db_86);
        acc.dc_income = round_ten(acc.dc_income);
    }
    Ok(ProjectionResult {
        rules_id: rules.id.clone(),
        scenario: *scenario,
        assumptions: *assumptions,
        income_66: acc.db_66 + acc.dc_income,
        income_86: acc.db_86 + acc.dc_income,
        db_66: acc.db_66,
        db_86: acc.db_86,
        dc_66: acc.dc_income,
    })
}

/// Share of retirement income lost on the benefits bought by one year of contributions from the start date.
///
/// Members with less than a year to retirement contribute the part-year they have left.
/// Members with no future service lose nothing.
pub fn one_year_contribution_loss(
    scenario: &MemberScenario,
    rules_old: &SchemeRules,
    rules_new: &SchemeRules,
    assumptions: &EconomicAssumptions,
) -> Result<f64> {
    check(scenario, rules_old, assumptions)?;
    rules_new.validate()?;
    let total = |rules: &SchemeRules| -> Result<f64> {
        let acc = accrue(scenario, rules, assumptions, 1.0)?;
        Ok(retirement_income_total(
            acc.db_66 + acc.dc_income,
            acc.db_86 + acc.dc_income,
            Interpolation::Linear,
        )?
        .amount)
    };
    let old = total(rules_old)?;
    if old <= 0.0 {
        return Ok(0.0);
    }
    Ok(1.0 - total(rules_new)? / old)
}
