//! Fitting the annuity factor to a published percent-loss grid.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use projection::{scenario_loss, Interpolation};
use scheme_core::{EconomicAssumptions, SchemeRules, ANNUITY_FACTOR_RANGE};

use crate::error::{CohortError, Result};
use crate::grid::cell_scenario;
use crate::heatmap::HeatMap;
use crate::table::BandedTable;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Calibration {
    pub annuity_factor: f64,
    /// Mean absolute deviation in percentage points at the fitted factor.
    pub mad_points: f64,
    pub cells: usize,
}

/// Mean absolute deviation (percentage points) between engine and `target` over cells
/// whose salary band starts at `min_salary` or above. `target` holds signed percent.
pub fn grid_deviation(
    heatmap: &HeatMap,
    target: &BandedTable,
    rules_old: &SchemeRules,
    rules_new: &SchemeRules,
    assumptions: &EconomicAssumptions,
    min_salary: f64,
) -> Result<(f64, usize)> {
    if !heatmap.to_table().same_bands(target) {
        return Err(CohortError::Shape("target grid bands differ from heat map".into()));
    }
    let cells: Vec<(usize, usize)> = heatmap
        .cells()
        .filter(|&(i, _, _)| heatmap.salary_bands[i].low >= min_salary)
        .map(|(i, j, _)| (i, j))
        .collect();
    if cells.is_empty() {
        return Err(CohortError::Empty("no cells above the salary floor"));
    }
    let errors = cells
        .par_iter()
        .map(|&(i, j)| {
            let s = cell_scenario(&heatmap.salary_bands[i], &heatmap.age_bands[j])?;
            let l = scenario_loss(&s, rules_old, rules_new, assumptions, Interpolation::Linear)?;
            Ok((l.percent_loss * 100.0 + target.values[i][j]).abs())
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok((errors.iter().sum::<f64>() / errors.len() as f64, errors.len()))
}

/// Grid search of the annuity factor over its valid range.
pub fn calibrate_annuity_factor(
    heatmap: &HeatMap,
    target: &BandedTable,
    rules_old: &SchemeRules,
    rules_new: &SchemeRules,
    assumptions: &EconomicAssumptions,
    min_salary: f64,
    step: f64,
) -> Result<Calibration> {
    if !(step.is_finite() && step > 0.0) {
        return Err(CohortError::Invalid {
            field: "step",
            message: format!("{step} must be positive"),
        });
    }
    let (lo, hi) = ANNUITY_FACTOR_RANGE;
    let n = ((hi - lo) / step).round() as usize;
    let mut best: Option<Calibration> = None;
    for k in 0..=n {
        let factor = (lo + step * k as f64).min(hi);
        let mut a = *assumptions;
        a.annuity_factor = factor;
        let (mad, cells) = grid_deviation(heatmap, target, rules_old, rules_new, &a, min_salary)?;
        if best.is_none_or(|b| mad < b.mad_points) {
            best = Some(Calibration {
                annuity_factor: factor,
                mad_points: mad,
                cells,
            });
        }
    }
    Ok(best.expect("at least one step"))
}
