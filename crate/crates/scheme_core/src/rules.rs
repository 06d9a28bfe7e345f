use serde::{Deserialize, Serialize};

use crate::devaluation::DevaluationBasis;
use crate::error::{finite, Result, SchemeError};

/// Indexation applied to accrued pension each year.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CapRule {
    /// Full CPI to `full_match_to`, half of the excess up to `half_match_to`, never above `max_uplift`.
    Soft {
        full_match_to: f64,
        half_match_to: f64,
        max_uplift: f64,
    },
    /// `min(cpi, cap)`, switched on `delay_years` after the start date.
    Hard { cap: f64, delay_years: u32 },
}

impl CapRule {
    pub const fn soft() -> Self {
        CapRule::Soft {
            full_match_to: 0.05,
            half_match_to: 0.15,
            max_uplift: 0.10,
        }
    }

    pub const fn hard(cap: f64, delay_years: u32) -> Self {
        CapRule::Hard { cap, delay_years }
    }

    pub fn delay_years(&self) -> u32 {
        match *self {
            CapRule::Soft { .. } => 0,
            CapRule::Hard { delay_years, .. } => delay_years,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            CapRule::Soft {
                full_match_to,
                half_match_to,
                max_uplift,
            } => {
                finite("full_match_to", full_match_to)?;
                finite("half_match_to", half_match_to)?;
                finite("max_uplift", max_uplift)?;
                if !(0.0 <= full_match_to && full_match_to <= half_match_to) {
                    return Err(SchemeError::OutOfRange {
                        field: "full_match_to",
                        value: full_match_to,
                        reason: "need 0 <= full_match_to <= half_match_to",
                    });
                }
                if max_uplift < full_match_to {
                    return Err(SchemeError::OutOfRange {
                        field: "max_uplift",
                        value: max_uplift,
                        reason: "must be at least full_match_to",
                    });
                }
                Ok(())
            }
            CapRule::Hard { cap, .. } => {
                finite("cap", cap)?;
                if cap < 0.0 {
                    return Err(SchemeError::OutOfRange {
                        field: "cap",
                        value: cap,
                        reason: "must be non-negative",
                    });
                }
                Ok(())
            }
        }
    }
}

/// Nominal uplift granted for a year with inflation `cpi`. Negative CPI gives no uplift.
pub fn capped_uplift(cpi: f64, rule: &CapRule) -> f64 {
    if cpi <= 0.0 {
        return 0.0;
    }
    match *rule {
        CapRule::Soft {
            full_match_to,
            half_match_to,
            max_uplift,
        } => {
            let uplift = if cpi <= full_match_to {
                cpi
            } else {
                full_match_to + 0.5 * (cpi.min(half_match_to) - full_match_to)
            };
            uplift.min(max_uplift)
        }
        CapRule::Hard { cap, .. } => cpi.min(cap),
    }
}

/// How the DB/DC salary threshold is revalued.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ThresholdIndexation {
    FullCpi,
    CappedCpi { cap: f64 },
}

/// Positive accrual denominator, e.g. 75 for 1/75 of salary per year.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct AccrualDenominator(u32);

impl AccrualDenominator {
    pub fn new(value: u32) -> Result<Self> {
        if value == 0 {
            return Err(SchemeError::OutOfRange {
                field: "accrual_denominator",
                value: 0.0,
                reason: "must be positive",
            });
        }
        Ok(Self(value))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.0)
    }
}

impl TryFrom<u32> for AccrualDenominator {
    type Error = SchemeError;

    fn try_from(value: u32) -> Result<Self> {
        Self::new(value)
    }
}

impl From<AccrualDenominator> for u32 {
    fn from(value: AccrualDenominator) -> u32 {
        value.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchemeRules {
    pub id: String,
    #[serde(default)]
    pub label: String,
    pub accrual_denominator: AccrualDenominator,
    pub db_dc_threshold: f64,
    pub threshold_indexation: ThresholdIndexation,
    pub cap_rule: CapRule,
    /// Contribution rates are carried for display only.
    pub member_rate: f64,
    pub employer_rate: f64,
}

impl SchemeRules {
    pub fn validate(&self) -> Result<()> {
        finite("db_dc_threshold", self.db_dc_threshold)?;
        if self.db_dc_threshold < 0.0 {
            return Err(SchemeError::OutOfRange {
                field: "db_dc_threshold",
                value: self.db_dc_threshold,
                reason: "must be non-negative",
            });
        }
        for (field, rate) in [
            ("member_rate", self.member_rate),
            ("employer_rate", self.employer_rate),
        ] {
            finite(field, rate)?;
            if !(0.0..=1.0).contains(&rate) {
                return Err(SchemeError::OutOfRange {
                    field,
                    value: rate,
                    reason: "must lie in [0, 1]",
                });
            }
        }
        if let ThresholdIndexation::CappedCpi { cap } = self.threshold_indexation {
            finite("threshold cap", cap)?;
            if cap < 0.0 {
                return Err(SchemeError::OutOfRange {
                    field: "threshold cap",
                    value: cap,
                    reason: "must be non-negative",
                });
            }
        }
        self.cap_rule.validate()
    }

    /// Real-terms devaluation per year of accrued pension at mean CPI `cpi`.
    ///
    /// Soft cap: loss only where CPI outruns the uplift (zero up to 5%).
    /// Hard cap: the variance model in `basis`.
    pub fn pension_devaluation(&self, cpi: f64, basis: &DevaluationBasis) -> Result<f64> {
        match self.cap_rule {
            CapRule::Soft { .. } => {
                let uplift = capped_uplift(cpi, &self.cap_rule);
                Ok((1.0 - (1.0 + uplift) / (1.0 + cpi)).max(0.0))
            }
            CapRule::Hard { cap, .. } => basis.rate(cap, cpi),
        }
    }

    /// Factor by which the real value of the threshold changes each year.
    pub fn threshold_real_factor(&self, cpi: f64, basis: &DevaluationBasis) -> Result<f64> {
        match self.threshold_indexation {
            ThresholdIndexation::FullCpi => Ok(1.0),
            ThresholdIndexation::CappedCpi { cap } => Ok(1.0 - basis.rate(cap, cpi)?),
        }
    }

    /// Same rules with the hard-cap delay replaced.
    pub fn with_delay(&self, delay_years: u32) -> Self {
        let mut out = self.clone();
        if let CapRule::Hard { cap, .. } = self.cap_rule {
            out.cap_rule = CapRule::Hard { cap, delay_years };
        }
        out
    }
}
