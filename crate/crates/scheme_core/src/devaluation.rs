//! Annual devaluation under a hard CPI cap, and compounding of it into erosion.
//!
//! A hard cap `h` with mean CPI `c` and a variance adjustment `a` gives the
//! annual real-terms devaluation `1 - d = (1 + h - a) / (1 + c)`.

use serde::{Deserialize, Serialize};

use crate::error::{finite, Result, SchemeError};

/// Annual devaluation `d` for hard cap `cap`, CPI adjustment `adjustment` and mean CPI `cpi`.
///
/// Unclamped: negative when `cpi < cap - adjustment`.
pub fn annual_devaluation(cap: f64, adjustment: f64, cpi: f64) -> Result<f64> {
    finite("cap", cap)?;
    finite("adjustment", adjustment)?;
    finite("cpi", cpi)?;
    if 1.0 + cpi <= 0.0 {
        return Err(SchemeError::OutOfRange {
            field: "cpi",
            value: cpi,
            reason: "1 + cpi must be positive",
        });
    }
    Ok(1.0 - (1.0 + cap - adjustment) / (1.0 + cpi))
}

/// Inverse of [`annual_devaluation`]: the adjustment `a` that yields `devaluation`.
pub fn implied_adjustment(cap: f64, devaluation: f64, cpi: f64) -> Result<f64> {
    finite("cap", cap)?;
    finite("devaluation", devaluation)?;
    finite("cpi", cpi)?;
    if devaluation >= 1.0 {
        return Err(SchemeError::OutOfRange {
            field: "devaluation",
            value: devaluation,
            reason: "must be below 1",
        });
    }
    Ok(1.0 + cap - (1.0 - devaluation) * (1.0 + cpi))
}

/// Real-terms factor `(1 - d)^years` left after compounding the devaluation.
pub fn erosion_factor(devaluation: f64, years: f64) -> Result<f64> {
    finite("devaluation", devaluation)?;
    finite("years", years)?;
    if devaluation >= 1.0 {
        return Err(SchemeError::OutOfRange {
            field: "devaluation",
            value: devaluation,
            reason: "must be below 1",
        });
    }
    if years < 0.0 {
        return Err(SchemeError::OutOfRange {
            field: "years",
            value: years,
            reason: "must be non-negative",
        });
    }
    Ok((1.0 - devaluation).powf(years))
}

/// One minus the mean erosion factor over the yearly ages of a retirement window.
///
/// The window spans `career_years ..= career_years + retirement_years`, so the
/// defaults (40, 20) average 21 factors.
pub fn average_retirement_erosion(
    devaluation: f64,
    career_years: u32,
    retirement_years: u32,
) -> Result<f64> {
    let mut sum = 0.0;
    for n in career_years..=career_years + retirement_years {
        sum += erosion_factor(devaluation, f64::from(n))?;
    }
    Ok(1.0 - sum / f64::from(retirement_years + 1))
}

/// Loss of future pension from a change of accrual rate alone: `1 - old/new`.
pub fn accrual_only_reduction(old_denominator: u32, new_denominator: u32) -> Result<f64> {
    if old_denominator == 0 || new_denominator == 0 {
        return Err(SchemeError::OutOfRange {
            field: "accrual_denominator",
            value: 0.0,
            reason: "must be positive",
        });
    }
    Ok(1.0 - f64::from(old_denominator) / f64::from(new_denominator))
}

/// How a projection turns a hard cap and a mean CPI into an annual devaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DevaluationBasis {
    /// `annual_devaluation(cap, adjustment, cpi)`, optionally rounded to a multiple of `round_to`.
    Adjustment {
        adjustment: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        round_to: Option<f64>,
    },
    /// A fixed `d`, whatever the CPI.
    Fixed { devaluation: f64 },
}

impl DevaluationBasis {
    /// UUK assumption a = 0.5%, with d rounded to 0.1pp as displayed by the USS modeller.
    pub const fn uuk() -> Self {
        DevaluationBasis::Adjustment {
            adjustment: 0.005,
            round_to: Some(0.001),
        }
    }

    /// USS assumption a = 0.59%, implied by d = 0.58% at CPI 2.5%.
    pub const fn uss() -> Self {
        DevaluationBasis::Adjustment {
            adjustment: 0.0059,
            round_to: None,
        }
    }

    pub const fn none() -> Self {
        DevaluationBasis::Adjustment {
            adjustment: 0.0,
            round_to: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            DevaluationBasis::Adjustment {
                adjustment,
                round_to,
            } => {
                finite("adjustment", adjustment)?;
                if let Some(step) = round_to {
                    if !(step.is_finite() && step > 0.0) {
                        return Err(SchemeError::OutOfRange {
                            field: "round_to",
                            value: step,
                            reason: "must be positive",
                        });
                    }
                }
                Ok(())
            }
            DevaluationBasis::Fixed { devaluation } => {
                finite("devaluation", devaluation)?;
                if devaluation >= 1.0 {
                    return Err(SchemeError::OutOfRange {
                        field: "devaluation",
                        value: devaluation,
                        reason: "must be below 1",
                    });
                }
                Ok(())
            }
        }
    }

    /// Devaluation applied as erosion, clamped at zero.
    pub fn rate(&self, cap: f64, cpi: f64) -> Result<f64> {
        let d = match *self {
            DevaluationBasis::Adjustment {
                adjustment,
                round_to,
            } => {
                let d = annual_devaluation(cap, adjustment, cpi)?;
                match round_to {
                    Some(step) => (d / step).round() * step,
                    None => d,
                }
            }
            DevaluationBasis::Fixed { devaluation } => devaluation,
        };
        Ok(d.max(0.0))
    }
}

impl Default for DevaluationBasis {
    fn default() -> Self {
        Self::uuk()
    }
}

/// Named devaluation assumptions behind the two sets of modeller figures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DevaluationSource {
    #[default]
    Uuk,
    Uss,
}

impl DevaluationSource {
    pub const fn basis(self) -> DevaluationBasis {
        match self {
            DevaluationSource::Uuk => DevaluationBasis::uuk(),
            DevaluationSource::Uss => DevaluationBasis::uss(),
        }
    }
}

impl std::str::FromStr for DevaluationSource {
    type Err = SchemeError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "uuk" => Ok(DevaluationSource::Uuk),
            "uss" => Ok(DevaluationSource::Uss),
            _ => Err(SchemeError::UnknownDevaluation(s.to_string())),
        }
    }
}

impl std::fmt::Display for DevaluationSource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            DevaluationSource::Uuk => "uuk",
            DevaluationSource::Uss => "uss",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uuk_rounding_matches_modeller_rows() {
        let uuk = DevaluationBasis::uuk();
        let rows = [(0.025, 0.005), (0.028, 0.008), (0.030, 0.010)];
        for (c, want) in rows {
            assert!((uuk.rate(0.025, c).unwrap() - want).abs() < 1e-12, "c={c}");
        }
    }

    #[test]
    fn negative_devaluation_is_clamped() {
        let d = DevaluationBasis::uss().rate(0.025, 0.0).unwrap();
        assert_eq!(d, 0.0);
        assert!(annual_devaluation(0.025, 0.0059, 0.0).unwrap() < 0.0);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(annual_devaluation(f64::NAN, 0.0, 0.02).is_err());
        assert!(annual_devaluation(0.025, 0.0, -1.0).is_err());
        assert!(implied_adjustment(0.025, 1.0, 0.02).is_err());
        assert!(erosion_factor(1.0, 3.0).is_err());
        assert!(erosion_factor(0.01, -1.0).is_err());
        assert!(accrual_only_reduction(0, 85).is_err());
    }

    #[test]
    fn accrual_reduction_signs() {
        assert!((accrual_only_reduction(75, 85).unwrap() - 10.0 / 85.0).abs() < 1e-15);
        assert_eq!(accrual_only_reduction(75, 75).unwrap(), 0.0);
        assert!((accrual_only_reduction(85, 75).unwrap() + 10.0 / 75.0).abs() < 1e-15);
    }
}
