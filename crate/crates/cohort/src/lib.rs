//! Cohort analysis over the salary-by-age heat map of scheme members.

pub mod bands;
pub mod calibration;
pub mod error;
pub mod grid;
pub mod heatmap;
pub mod personas;
pub mod reference;
pub mod stats;
pub mod table;

pub use bands::{AgeBand, SalaryBand};
pub use calibration::{calibrate_annuity_factor, grid_deviation, Calibration};
pub use error::{CohortError, Result};
pub use grid::{
    cell_scenario, cohort_losses, filter_cohort, global_monetary_loss, global_one_year_loss,
    replay_grid, CellLoss, CohortFilter, CohortGrid,
};
pub use heatmap::{
    band_midpoints, bundled_heatmap, load_heatmap, HeatMap, BUNDLED_HEATMAP,
    PUBLISHED_PERCENT_GRID_CPI28, PUBLISHED_POUND_GRID_CPI28,
};
pub use personas::{persona_check, Persona};
pub use stats::{
    histogram, mode_bin, summarize, summarize_values, weighted_mean, weighted_quantile,
    CohortDistribution, GroupBy, Histogram, LossMeasure, QuantileSummary, MONEY_BIN, PERCENT_BIN,
};
pub use table::BandedTable;

/// Filter for members under 40: the first four age bands.
pub const UNDER_40: CohortFilter = CohortFilter::AgeUnder(40.0);
/// Filter for members earning under 40k: the first eight salary bands.
pub const UNDER_40K: CohortFilter = CohortFilter::SalaryUnder(40_000.0);

/// The bundled heat map with the published CPI 2.8% grids.
pub fn published_replay_cpi28() -> Result<CohortGrid> {
    let pct = BandedTable::read(PUBLISHED_PERCENT_GRID_CPI28.as_bytes())?;
    let gbp = BandedTable::read(PUBLISHED_POUND_GRID_CPI28.as_bytes())?;
    replay_grid(bundled_heatmap(), &pct, &gbp)
}
