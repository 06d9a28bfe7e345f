//! Weighted quantiles, means, mode bins and histograms over cell losses.

use serde::{Deserialize, Serialize};

use crate::error::{CohortError, Result};
use crate::grid::{global_monetary_loss, CellLoss, CohortGrid};

/// Percent-loss bins are 5 percentage points wide.
pub const PERCENT_BIN: f64 = 0.05;
/// Money-loss bins are 50,000 pounds wide.
pub const MONEY_BIN: f64 = 50_000.0;

/// Guards bin edges against representation error, e.g. 0.35 / 0.05 = 6.999...
const EDGE_SLACK: f64 = 1e-9;

fn check(values: &[f64], weights: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(CohortError::Empty("no values"));
    }
    if values.len() != weights.len() {
        return Err(CohortError::Shape(format!(
            "{} values, {} weights",
            values.len(),
            weights.len()
        )));
    }
    if weights.iter().any(|w| !(w.is_finite() && *w >= 0.0)) {
        return Err(CohortError::Invalid {
            field: "weights",
            message: "must be finite and non-negative".into(),
        });
    }
    let total: f64 = weights.iter().sum();
    if total <= 0.0 {
        return Err(CohortError::Empty("zero total weight"));
    }
    Ok(total)
}

/// Smallest value whose cumulative weight reaches `q` of the total.
pub fn weighted_quantile(values: &[f64], weights: &[f64], q: f64) -> Result<f64> {
    let total = check(values, weights)?;
    if !(q > 0.0 && q < 1.0) {
        return Err(CohortError::Invalid {
            field: "q",
            message: format!("{q} is not in (0, 1)"),
        });
    }
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let target = q * total;
    let mut cum = 0.0;
    for &i in &order {
        cum += weights[i];
        if weights[i] > 0.0 && cum >= target * (1.0 - 1e-12) {
            return Ok(values[i]);
        }
    }
    Ok(values[*order.last().expect("non-empty")])
}

pub fn weighted_mean(values: &[f64], weights: &[f64]) -> Result<f64> {
    let total = check(values, weights)?;
    Ok(values.iter().zip(weights).map(|(v, w)| v * w).sum::<f64>() / total)
}

fn bin_index(value: f64, width: f64) -> i64 {
    (value / width + EDGE_SLACK).floor() as i64
}

/// `[low, high)` of the heaviest fixed-width bin; ties go to the lower bin.
pub fn mode_bin(values: &[f64], weights: &[f64], bin_width: f64) -> Result<(f64, f64)> {
    check(values, weights)?;
    if !(bin_width.is_finite() && bin_width > 0.0) {
        return Err(CohortError::Invalid {
            field: "bin_width",
            message: format!("{bin_width} must be positive"),
        });
    }
    let mut bins: std::collections::BTreeMap<i64, f64> = std::collections::BTreeMap::new();
    for (v, w) in values.iter().zip(weights) {
        *bins.entry(bin_index(*v, bin_width)).or_default() += w;
    }
    let (best, _) = bins
        .iter()
        .fold((None, f64::NEG_INFINITY), |(best, bw), (&k, &w)| {
            if w > bw {
                (Some(k), w)
            } else {
                (best, bw)
            }
        });
    let k = best.expect("non-empty") as f64;
    Ok((k * bin_width, (k + 1.0) * bin_width))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuantileSummary {
    pub q1: f64,
    pub q2: f64,
    pub q3: f64,
    pub mean: f64,
    pub mode_bin: (f64, f64),
}

pub fn summarize_values(values: &[f64], weights: &[f64], bin_width: f64) -> Result<QuantileSummary> {
    Ok(QuantileSummary {
        q1: weighted_quantile(values, weights, 0.25)?,
        q2: weighted_quantile(values, weights, 0.50)?,
        q3: weighted_quantile(values, weights, 0.75)?,
        mean: weighted_mean(values, weights)?,
        mode_bin: mode_bin(values, weights, bin_width)?,
    })
}

/// Distribution of a (possibly filtered) cohort grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CohortDistribution {
    pub population: u64,
    pub percent: QuantileSummary,
    pub monetary: QuantileSummary,
    pub global_monetary_loss: f64,
}

fn columns(grid: &CohortGrid, value: impl Fn(&CellLoss) -> f64) -> (Vec<f64>, Vec<f64>) {
    grid.cells
        .iter()
        .map(|c| (value(c), c.count as f64))
        .unzip()
}

pub fn summarize(grid: &CohortGrid) -> Result<CohortDistribution> {
    let (pct, w) = columns(grid, |c| c.percent_loss);
    let (money, _) = columns(grid, |c| c.monetary_loss);
    Ok(CohortDistribution {
        population: grid.population(),
        percent: summarize_values(&pct, &w, PERCENT_BIN)?,
        monetary: summarize_values(&money, &w, MONEY_BIN)?,
        global_monetary_loss: global_monetary_loss(grid),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupBy {
    Salary,
    Age,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LossMeasure {
    Percent,
    Money,
}

/// Salary groups used for histograms: upper edges in pounds, last open.
pub const SALARY_GROUP_EDGES: [f64; 4] = [20_000.0, 40_000.0, 60_000.0, 100_000.0];

fn salary_group(cell: &CellLoss) -> usize {
    let mid = cell.salary_band.midpoint();
    SALARY_GROUP_EDGES
        .iter()
        .position(|&edge| mid < edge)
        .unwrap_or(SALARY_GROUP_EDGES.len())
}

fn salary_group_labels() -> Vec<String> {
    let k = |x: f64| x / 1000.0;
    let mut out = vec![format!("<{}k", k(SALARY_GROUP_EDGES[0]))];
    for w in SALARY_GROUP_EDGES.windows(2) {
        out.push(format!("{}-{}k", k(w[0]), k(w[1])));
    }
    out.push(format!("{}k+", k(SALARY_GROUP_EDGES[SALARY_GROUP_EDGES.len() - 1])));
    out
}

/// Member counts by loss bin (rows) and group (columns).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub measure: LossMeasure,
    pub bin_width: f64,
    /// Lower edge of each bin row.
    pub bin_lows: Vec<f64>,
    pub groups: Vec<String>,
    pub counts: Vec<Vec<u64>>,
}

impl Histogram {
    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    /// Share of members in bins that start at or above `threshold`.
    pub fn share_at_least(&self, threshold: f64) -> f64 {
        let total = self.total();
        if total == 0 {
            return 0.0;
        }
        let above: u64 = self
            .bin_lows
            .iter()
            .zip(&self.counts)
            .filter(|(low, _)| **low >= threshold - EDGE_SLACK * self.bin_width)
            .map(|(_, row)| row.iter().sum::<u64>())
            .sum();
        above as f64 / total as f64
    }
}

pub fn histogram(
    grid: &CohortGrid,
    measure: LossMeasure,
    bin_width: f64,
    group_by: GroupBy,
) -> Result<Histogram> {
    if !(bin_width.is_finite() && bin_width > 0.0) {
        return Err(CohortError::Invalid {
            field: "bin_width",
            message: format!("{bin_width} must be positive"),
        });
    }
    let value = |c: &CellLoss| match measure {
        LossMeasure::Percent => c.percent_loss,
        LossMeasure::Money => c.monetary_loss,
    };
    let groups = match group_by {
        GroupBy::Salary => salary_group_labels(),
        GroupBy::Age => grid.age_bands.iter().map(|b| b.to_string()).collect(),
    };
    let group_of = |c: &CellLoss| match group_by {
        GroupBy::Salary => salary_group(c),
        GroupBy::Age => c.column,
    };
    let populated = grid.cells.iter().filter(|c| c.count > 0);
    let indices: Vec<i64> = populated.clone().map(|c| bin_index(value(c), bin_width)).collect();
    let (lo, hi) = match (indices.iter().min(), indices.iter().max()) {
        (Some(&lo), Some(&hi)) => (lo.min(0), hi),
        _ => (0, 0),
    };
    let rows = (hi - lo + 1) as usize;
    let mut counts = vec![vec![0u64; groups.len()]; rows];
    for (c, idx) in populated.zip(&indices) {
        counts[(idx - lo) as usize][group_of(c)] += c.count;
    }
    Ok(Histogram {
        measure,
        bin_width,
        bin_lows: (lo..=hi).map(|k| k as f64 * bin_width).collect(),
        groups,
        counts,
    })
}
