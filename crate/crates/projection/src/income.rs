//! Retirement-income totals over the twenty-year window and loss between two projections.

use serde::{Deserialize, Serialize};

use crate::engine::ProjectionResult;
use crate::error::{ProjectionError, Result};

/// Payments counted in the retirement window, at ages 66 to 85.
pub const RETIREMENT_YEARS: u32 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Interpolation {
    #[default]
    Linear,
    Geometric,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IncomeTotal {
    pub amount: f64,
    /// Method actually used; geometric falls back to linear when an endpoint is zero.
    pub method: Interpolation,
}

fn payment(income_66: f64, income_86: f64, k: u32, method: Interpolation) -> f64 {
    let s = f64::from(k) / f64::from(RETIREMENT_YEARS);
    match method {
        Interpolation::Linear => income_66 + (income_86 - income_66) * s,
        Interpolation::Geometric => income_66 * (income_86 / income_66).powf(s),
    }
}

fn effective(income_66: f64, income_86: f64, method: Interpolation) -> Result<Interpolation> {
    for x in [income_66, income_86] {
        if !(x.is_finite() && x >= 0.0) {
            return Err(ProjectionError::NegativeIncome(x));
        }
    }
    Ok(match method {
        Interpolation::Geometric if income_66 == 0.0 || income_86 == 0.0 => Interpolation::Linear,
        m => m,
    })
}

/// Sum of the 20 annual payments interpolated between the incomes at 66 and 86.
pub fn retirement_income_total(
    income_66: f64,
    income_86: f64,
    method: Interpolation,
) -> Result<IncomeTotal> {
    let method = effective(income_66, income_86, method)?;
    let amount = (0..RETIREMENT_YEARS)
        .map(|k| payment(income_66, income_86, k, method))
        .sum();
    Ok(IncomeTotal { amount, method })
}

/// Annual income at each age from 66 to 86 inclusive (21 points).
pub fn income_trajectory(
    income_66: f64,
    income_86: f64,
    method: Interpolation,
) -> Result<Vec<f64>> {
    let method = effective(income_66, income_86, method)?;
    Ok((0..=RETIREMENT_YEARS)
        .map(|k| match k {
            0 => income_66,
            RETIREMENT_YEARS => income_86,
            _ => payment(income_66, income_86, k, method),
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LossMetrics {
    /// Fraction of the old retirement total lost; positive is a cut.
    pub percent_loss: f64,
    /// Today's money lost over the retirement window.
    pub monetary_loss: f64,
    pub interpolation: Interpolation,
    pub old_total: f64,
    pub new_total: f64,
}

/// Loss from moving `old` to `new`; both must come from the same scenario and assumptions.
pub fn future_loss(
    old: &ProjectionResult,
    new: &ProjectionResult,
    method: Interpolation,
) -> Result<LossMetrics> {
    if old.scenario != new.scenario {
        return Err(ProjectionError::Mismatch("scenarios"));
    }
    if old.assumptions != new.assumptions {
        return Err(ProjectionError::Mismatch("assumptions"));
    }
    let old_total = retirement_income_total(old.income_66, old.income_86, method)?;
    let new_total = retirement_income_total(new.income_66, new.income_86, method)?;
    let interpolation = if old_total.method == method && new_total.method == method {
        method
    } else {
        Interpolation::Linear
    };
    if old_total.amount <= 0.0 {
        return Ok(LossMetrics {
            percent_loss: 0.0,
            monetary_loss: 0.0,
            interpolation,
            old_total: old_total.amount,
            new_total: new_total.amount,
        });
    }
    let monetary_loss = old_total.amount - new_total.amount;
    Ok(LossMetrics {
        percent_loss: monetary_loss / old_total.amount,
        monetary_loss,
        interpolation,
        old_total: old_total.amount,
        new_total: new_total.amount,
    })
}
