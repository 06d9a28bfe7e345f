use serde::{Deserialize, Serialize};

use crate::devaluation::DevaluationBasis;
use crate::error::{finite, Result, SchemeError};

/// Lowest and highest mean CPI the modeller accepts.
pub const CPI_RANGE: (f64, f64) = (0.0, 0.05);
pub const ANNUITY_FACTOR_RANGE: (f64, f64) = (30.0, 50.0);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct EconomicAssumptions {
    /// Mean CPI `c`, also the deflator to today's money.
    pub cpi: f64,
    pub salary_growth: f64,
    pub dc_growth: f64,
    /// DC pot divided by this gives a CPI-linked annual income.
    pub annuity_factor: f64,
    /// Share of salary above the DB/DC threshold paid into DC.
    pub dc_contribution_rate: f64,
    pub devaluation: DevaluationBasis,
}

impl Default for EconomicAssumptions {
    fn default() -> Self {
        Self {
            cpi: 0.025,
            salary_growth: 0.04,
            dc_growth: 0.0477,
            annuity_factor: 40.0,
            dc_contribution_rate: 0.20,
            devaluation: DevaluationBasis::uuk(),
        }
    }
}

impl EconomicAssumptions {
    pub fn with_cpi(mut self, cpi: f64) -> Self {
        self.cpi = cpi;
        self
    }

    pub fn with_devaluation(mut self, devaluation: DevaluationBasis) -> Self {
        self.devaluation = devaluation;
        self
    }

    /// The CPI adjustment `a`, where the basis has one.
    pub fn cpi_adjustment(&self) -> Option<f64> {
        match self.devaluation {
            DevaluationBasis::Adjustment { adjustment, .. } => Some(adjustment),
            DevaluationBasis::Fixed { .. } => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        finite("cpi", self.cpi)?;
        if !(CPI_RANGE.0..=CPI_RANGE.1).contains(&self.cpi) {
            return Err(SchemeError::OutOfRange {
                field: "cpi",
                value: self.cpi,
                reason: "modeller supports 0% to 5%",
            });
        }
        finite("salary_growth", self.salary_growth)?;
        finite("dc_growth", self.dc_growth)?;
        for (field, g) in [("salary_growth", self.salary_growth), ("dc_growth", self.dc_growth)] {
            if g <= -1.0 {
                return Err(SchemeError::OutOfRange {
                    field,
                    value: g,
                    reason: "must exceed -100%",
                });
            }
        }
        finite("annuity_factor", self.annuity_factor)?;
        if !(ANNUITY_FACTOR_RANGE.0..=ANNUITY_FACTOR_RANGE.1).contains(&self.annuity_factor) {
            return Err(SchemeError::OutOfRange {
                field: "annuity_factor",
                value: self.annuity_factor,
                reason: "must lie in [30, 50]",
            });
        }
        finite("dc_contribution_rate", self.dc_contribution_rate)?;
        if !(0.0..=1.0).contains(&self.dc_contribution_rate) {
            return Err(SchemeError::OutOfRange {
                field: "dc_contribution_rate",
                value: self.dc_contribution_rate,
                reason: "must lie in [0, 1]",
            });
        }
        self.devaluation.validate()
    }
}
