//! Scheme rules, CPI cap arithmetic and the annual devaluation model.
//!
//! Pure functions only; the preset file is compiled in.

pub mod assumptions;
pub mod devaluation;
pub mod error;
pub mod montecarlo;
pub mod presets;
pub mod rules;

pub use assumptions::{EconomicAssumptions, ANNUITY_FACTOR_RANGE, CPI_RANGE};
pub use devaluation::{
    accrual_only_reduction, annual_devaluation, average_retirement_erosion, erosion_factor,
    implied_adjustment, DevaluationBasis, DevaluationSource,
};
pub use error::{Result, SchemeError};
pub use montecarlo::{monte_carlo_devaluation, MonteCarloConfig};
pub use presets::{bundled, PresetRegistry};
pub use rules::{capped_uplift, AccrualDenominator, CapRule, SchemeRules, ThresholdIndexation};
