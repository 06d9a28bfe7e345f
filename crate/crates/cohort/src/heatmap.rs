use std::io::Read;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::bands::{AgeBand, SalaryBand};
use crate::error::{CohortError, Result};
use crate::table::BandedTable;

/// Member counts by salary band (rows) and age band (columns).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeatMap {
    pub salary_bands: Vec<SalaryBand>,
    pub age_bands: Vec<AgeBand>,
    pub counts: Vec<Vec<u64>>,
}

impl HeatMap {
    pub fn from_table(table: BandedTable) -> Result<Self> {
        let mut counts = Vec::with_capacity(table.values.len());
        for (r, row) in table.values.iter().enumerate() {
            let mut out = Vec::with_capacity(row.len());
            for (c, &v) in row.iter().enumerate() {
                if v < 0.0 || v.fract() != 0.0 {
                    return Err(CohortError::InvalidCell {
                        row: table.salary_bands[r].to_string(),
                        column: table.age_bands[c].to_string(),
                        message: format!("count must be a non-negative integer, got {v}"),
                    });
                }
                out.push(v as u64);
            }
            counts.push(out);
        }
        Ok(Self {
            salary_bands: table.salary_bands,
            age_bands: table.age_bands,
            counts,
        })
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    pub fn cells(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, &n)| (i, j, n)))
    }

    pub fn to_table(&self) -> BandedTable {
        BandedTable {
            salary_bands: self.salary_bands.clone(),
            age_bands: self.age_bands.clone(),
            values: self
                .counts
                .iter()
                .map(|r| r.iter().map(|&n| n as f64).collect())
                .collect(),
        }
    }
}

/// Parse a heat-map CSV: header of age bands, first column salary bands.
pub fn load_heatmap(source: impl Read) -> Result<HeatMap> {
    HeatMap::from_table(BandedTable::read(source)?)
}

/// Representative salary and age of every band.
pub fn band_midpoints(heatmap: &HeatMap) -> (Vec<f64>, Vec<f64>) {
    (
        heatmap.salary_bands.iter().map(SalaryBand::midpoint).collect(),
        heatmap.age_bands.iter().map(AgeBand::midpoint).collect(),
    )
}

pub const BUNDLED_HEATMAP: &str = include_str!("../data/heatmap.csv");
pub const PUBLISHED_PERCENT_GRID_CPI28: &str = include_str!("../data/published_loss_pct_cpi28.csv");
pub const PUBLISHED_POUND_GRID_CPI28: &str = include_str!("../data/published_loss_gbp_cpi28.csv");

/// The UUK heat map of 2021 active membership.
pub fn bundled_heatmap() -> &'static HeatMap {
    static MAP: OnceLock<HeatMap> = OnceLock::new();
    MAP.get_or_init(|| load_heatmap(BUNDLED_HEATMAP.as_bytes()).expect("bundled heat map parses"))
}
