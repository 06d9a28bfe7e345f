//! Per-cell losses across the heat map.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use projection::{one_year_contribution_loss, scenario_loss, Interpolation, MemberScenario};
use scheme_core::{EconomicAssumptions, SchemeRules};

use crate::bands::{AgeBand, SalaryBand};
use crate::error::{CohortError, Result};
use crate::heatmap::HeatMap;
use crate::table::BandedTable;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CellLoss {
    pub row: usize,
    pub column: usize,
    pub salary_band: SalaryBand,
    pub age_band: AgeBand,
    pub count: u64,
    /// Fraction of retirement income lost; positive is a cut.
    pub percent_loss: f64,
    /// Per-member loss in today's money over the retirement window.
    pub monetary_loss: f64,
}

/// Cell losses in row-major order (salary band, then age band).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CohortGrid {
    pub salary_bands: Vec<SalaryBand>,
    pub age_bands: Vec<AgeBand>,
    pub cells: Vec<CellLoss>,
}

/// Whole-band cohort selections.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "limit", rename_all = "snake_case")]
pub enum CohortFilter {
    All,
    AgeUnder(f64),
    SalaryUnder(f64),
}

impl CohortFilter {
    pub fn keeps(&self, cell: &CellLoss) -> bool {
        match *self {
            CohortFilter::All => true,
            CohortFilter::AgeUnder(limit) => cell.age_band.below(limit),
            CohortFilter::SalaryUnder(limit) => cell.salary_band.below(limit),
        }
    }

    pub fn label(&self) -> String {
        match *self {
            CohortFilter::All => "all".into(),
            CohortFilter::AgeUnder(a) => format!("age_under_{a}"),
            CohortFilter::SalaryUnder(s) => format!("salary_under_{}k", s / 1000.0),
        }
    }
}

impl CohortGrid {
    pub fn population(&self) -> u64 {
        self.cells.iter().map(|c| c.count).sum()
    }

    /// Values in band layout; cells filtered out are left as `missing`.
    pub fn to_table(&self, value: impl Fn(&CellLoss) -> f64, missing: f64) -> BandedTable {
        let mut values = vec![vec![missing; self.age_bands.len()]; self.salary_bands.len()];
        for c in &self.cells {
            values[c.row][c.column] = value(c);
        }
        BandedTable {
            salary_bands: self.salary_bands.clone(),
            age_bands: self.age_bands.clone(),
            values,
        }
    }

    pub fn cell(&self, row: usize, column: usize) -> Option<&CellLoss> {
        self.cells.iter().find(|c| c.row == row && c.column == column)
    }
}

/// Keep only cells whose whole band satisfies `filter`.
pub fn filter_cohort(grid: &CohortGrid, filter: CohortFilter) -> CohortGrid {
    CohortGrid {
        salary_bands: grid.salary_bands.clone(),
        age_bands: grid.age_bands.clone(),
        cells: grid.cells.iter().copied().filter(|c| filter.keeps(c)).collect(),
    }
}

/// Sum over cells of member count times per-member loss, in a fixed order.
pub fn global_monetary_loss(grid: &CohortGrid) -> f64 {
    grid.cells
        .iter()
        .map(|c| c.count as f64 * c.monetary_loss)
        .sum()
}

/// Representative member of a cell: band midpoints, born on the first of the month.
pub fn cell_scenario(salary_band: &SalaryBand, age_band: &AgeBand) -> Result<MemberScenario> {
    Ok(MemberScenario::aged(age_band.midpoint(), salary_band.midpoint())?)
}

/// Project every cell's representative member under both rule sets.
pub fn cohort_losses(
    heatmap: &HeatMap,
    rules_old: &SchemeRules,
    rules_new: &SchemeRules,
    assumptions: &EconomicAssumptions,
    method: Interpolation,
) -> Result<CohortGrid> {
    let cells: Vec<(usize, usize, u64)> = heatmap.cells().collect();
    let cells = cells
        .par_iter()
        .map(|&(row, column, count)| {
            let salary_band = heatmap.salary_bands[row];
            let age_band = heatmap.age_bands[column];
            let scenario = cell_scenario(&salary_band, &age_band)?;
            let loss = scenario_loss(&scenario, rules_old, rules_new, assumptions, method)?;
            Ok(CellLoss {
                row,
                column,
                salary_band,
                age_band,
                count,
                percent_loss: loss.percent_loss,
                monetary_loss: loss.monetary_loss,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CohortGrid {
        salary_bands: heatmap.salary_bands.clone(),
        age_bands: heatmap.age_bands.clone(),
        cells,
    })
}

/// Combine the heat map with published loss grids (signed percent and signed £k).
pub fn replay_grid(
    heatmap: &HeatMap,
    percent: &BandedTable,
    thousands: &BandedTable,
) -> Result<CohortGrid> {
    let hm = heatmap.to_table();
    for (name, t) in [("percent grid", percent), ("pound grid", thousands)] {
        if !hm.same_bands(t) {
            return Err(CohortError::Shape(format!("{name} bands differ from heat map")));
        }
    }
    let cells = heatmap
        .cells()
        .map(|(row, column, count)| CellLoss {
            row,
            column,
            salary_band: heatmap.salary_bands[row],
            age_band: heatmap.age_bands[column],
            count,
            percent_loss: -percent.values[row][column] / 100.0,
            monetary_loss: -thousands.values[row][column] * 1000.0,
        })
        .collect();
    Ok(CohortGrid {
        salary_bands: heatmap.salary_bands.clone(),
        age_bands: heatmap.age_bands.clone(),
        cells,
    })
}

/// Heat-map weighted mean of the one-year contribution loss over cells with future service.
pub fn global_one_year_loss(
    heatmap: &HeatMap,
    rules_old: &SchemeRules,
    rules_new: &SchemeRules,
    assumptions: &EconomicAssumptions,
) -> Result<f64> {
    let cells: Vec<(usize, usize, u64)> = heatmap.cells().collect();
    let parts = cells
        .par_iter()
        .map(|&(row, column, count)| {
            let scenario = cell_scenario(&heatmap.salary_bands[row], &heatmap.age_bands[column])?;
            if scenario.years_to_retirement() <= 0.0 {
                return Ok((0.0, 0.0));
            }
            let loss = one_year_contribution_loss(&scenario, rules_old, rules_new, assumptions)?;
            Ok((count as f64 * loss, count as f64))
        })
        .collect::<Result<Vec<(f64, f64)>>>()?;
    let (num, den) = parts
        .iter()
        .fold((0.0, 0.0), |(n, d), &(a, b)| (n + a, d + b));
    if den == 0.0 {
        return Err(CohortError::Empty("no members with future service"));
    }
    Ok(num / den)
}
