use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use projection::{scenario_loss, Interpolation};
use scheme_core::{EconomicAssumptions, SchemeRules};

use crate::error::{CohortError, Result};
use crate::grid::cell_scenario;
use crate::heatmap::HeatMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Persona {
    Aria,
    Bryn,
    Chloe,
}

impl Persona {
    pub const ALL: [Persona; 3] = [Persona::Aria, Persona::Bryn, Persona::Chloe];

    pub fn age(self) -> f64 {
        match self {
            Persona::Aria => 37.0,
            Persona::Bryn => 43.0,
            Persona::Chloe => 51.0,
        }
    }

    pub fn salary(self) -> f64 {
        match self {
            Persona::Aria => 30_000.0,
            Persona::Bryn => 50_000.0,
            Persona::Chloe => 70_000.0,
        }
    }
}

impl fmt::Display for Persona {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for Persona {
    type Err = CohortError;

    fn from_str(s: &str) -> Result<Self> {
        Persona::ALL
            .into_iter()
            .find(|p| p.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| CohortError::Invalid {
                field: "persona",
                message: format!("unknown persona `{s}`"),
            })
    }
}

/// Percent loss for a persona, interpolated in salary between the two nearest cells
/// of the persona's age band.
pub fn persona_check(
    persona: Persona,
    heatmap: &HeatMap,
    rules_old: &SchemeRules,
    rules_new: &SchemeRules,
    assumptions: &EconomicAssumptions,
    method: Interpolation,
) -> Result<f64> {
    let age_band = heatmap
        .age_bands
        .iter()
        .find(|b| b.contains(persona.age()))
        .ok_or_else(|| CohortError::Invalid {
            field: "persona",
            message: format!("no age band holds {}", persona.age()),
        })?;
    let salary = persona.salary();
    let upper = heatmap
        .salary_bands
        .iter()
        .position(|b| b.midpoint() >= salary)
        .filter(|&i| i > 0)
        .ok_or_else(|| CohortError::Invalid {
            field: "persona",
            message: format!("salary {salary} is outside the band midpoints"),
        })?;
    let (lo, hi) = (&heatmap.salary_bands[upper - 1], &heatmap.salary_bands[upper]);
    let loss = |band| -> Result<f64> {
        let s = cell_scenario(band, age_band)?;
        Ok(scenario_loss(&s, rules_old, rules_new, assumptions, method)?.percent_loss)
    };
    let weight = (salary - lo.midpoint()) / (hi.midpoint() - lo.midpoint());
    Ok(loss(lo)? * (1.0 - weight) + loss(hi)? * weight)
}
