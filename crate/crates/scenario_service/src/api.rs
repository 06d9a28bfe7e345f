//! Request and response bodies, and the pure functions behind each endpoint.

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use projection::{
    future_loss, income_trajectory, project_member_with, scheme_change_date, DcOption,
    Interpolation, LossMetrics, MemberScenario, ProjectionError, ProjectionOptions,
    ProjectionResult, RETIREMENT_YEARS,
};
use scheme_core::{
    erosion_factor, DevaluationSource, EconomicAssumptions, PresetRegistry, SchemeRules,
};

use crate::error::{projection_field_error, scheme_field_error, ApiError, FieldError};

/// Longest erosion curve served.
pub const MAX_EROSION_YEARS: u32 = 100;
pub const DEFAULT_EROSION_YEARS: u32 = 40;

fn default_rules_old() -> String {
    "uss2021".into()
}

fn default_rules_new() -> String {
    "uuk2021".into()
}

fn default_retirement_age() -> f64 {
    66.0
}

/// Overrides on top of the registry's calibrated assumptions.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssumptionOverrides {
    pub cpi: Option<f64>,
    pub salary_growth: Option<f64>,
    pub dc_growth: Option<f64>,
    pub annuity_factor: Option<f64>,
    pub dc_contribution_rate: Option<f64>,
    pub devaluation: Option<DevaluationSource>,
}

impl AssumptionOverrides {
    pub fn apply(&self, base: EconomicAssumptions) -> EconomicAssumptions {
        EconomicAssumptions {
            cpi: self.cpi.unwrap_or(base.cpi),
            salary_growth: self.salary_growth.unwrap_or(base.salary_growth),
            dc_growth: self.dc_growth.unwrap_or(base.dc_growth),
            annuity_factor: self.annuity_factor.unwrap_or(base.annuity_factor),
            dc_contribution_rate: self.dc_contribution_rate.unwrap_or(base.dc_contribution_rate),
            devaluation: self.devaluation.map_or(base.devaluation, DevaluationSource::basis),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjectRequest {
    pub date_of_birth: NaiveDate,
    pub salary: f64,
    #[serde(default = "scheme_change_date")]
    pub start_date: NaiveDate,
    #[serde(default = "default_retirement_age")]
    pub retirement_age: f64,
    #[serde(default)]
    pub dc_option: DcOption,
    #[serde(default = "default_rules_old")]
    pub rules_old: String,
    #[serde(default = "default_rules_new")]
    pub rules_new: String,
    #[serde(default)]
    pub assumptions: AssumptionOverrides,
    /// Replaces the hard-cap delay of `rules_new`.
    #[serde(default)]
    pub delay_years: Option<u32>,
    #[serde(default)]
    pub modeller_rounding: bool,
    /// Interpolation used for the trajectories.
    #[serde(default)]
    pub interpolation: Interpolation,
}

impl ProjectRequest {
    pub fn new(date_of_birth: NaiveDate, salary: f64, cpi: f64) -> Self {
        Self {
            date_of_birth,
            salary,
            start_date: scheme_change_date(),
            retirement_age: default_retirement_age(),
            dc_option: DcOption::default(),
            rules_old: default_rules_old(),
            rules_new: default_rules_new(),
            assumptions: AssumptionOverrides {
                cpi: Some(cpi),
                ..Default::default()
            },
            delay_years: None,
            modeller_rounding: false,
            interpolation: Interpolation::default(),
        }
    }

    pub fn scenario(&self) -> MemberScenario {
        MemberScenario {
            date_of_birth: self.date_of_birth,
            salary: self.salary,
            start_date: self.start_date,
            retirement_age: self.retirement_age,
            dc_option: self.dc_option,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LossPair {
    pub linear: LossMetrics,
    pub geometric: LossMetrics,
}

/// Income at each age from retirement to twenty years on, under both rule sets.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub interpolation: Interpolation,
    pub ages: Vec<f64>,
    pub old: Vec<f64>,
    pub new: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjectResponse {
    pub old: ProjectionResult,
    pub new: ProjectionResult,
    pub loss: LossPair,
    pub trajectory: Trajectory,
}

fn compute_error(err: ProjectionError) -> ApiError {
    ApiError::Invalid(vec![projection_field_error(&err)])
}

/// Both projections, both loss measures and the trajectories for one request.
pub fn project(
    registry: &PresetRegistry,
    request: &ProjectRequest,
) -> Result<ProjectResponse, ApiError> {
    let mut errors = Vec::new();
    let mut lookup = |field: &str, id: &str| -> Option<SchemeRules> {
        match registry.get(id) {
            Ok(r) => Some(r.clone()),
            Err(e) => {
                errors.push(FieldError::new(field, e.to_string()));
                None
            }
        }
    };
    let old = lookup("rules_old", &request.rules_old);
    let new = lookup("rules_new", &request.rules_new)
        .map(|r| match request.delay_years {
            Some(n) => r.with_delay(n),
            None => r,
        });

    let assumptions = request.assumptions.apply(registry.assumptions);
    if let Err(e) = assumptions.validate() {
        errors.push(scheme_field_error("assumptions", &e));
    }
    let scenario = request.scenario();
    let mut unsupported = None;
    match scenario.validate() {
        Ok(()) => {}
        Err(e @ ProjectionError::UnsupportedDcOption(_)) => {
            unsupported = Some(projection_field_error(&e));
        }
        Err(e) => errors.push(projection_field_error(&e)),
    }
    let (Some(old), Some(new), true) = (old, new, errors.is_empty()) else {
        return Err(ApiError::Invalid(errors));
    };
    if let Some(e) = unsupported {
        return Err(ApiError::Unsupported(vec![e]));
    }

    let options = ProjectionOptions {
        modeller_rounding: request.modeller_rounding,
    };
    let old = project_member_with(&scenario, &old, &assumptions, options).map_err(compute_error)?;
    let new = project_member_with(&scenario, &new, &assumptions, options).map_err(compute_error)?;
    let loss = LossPair {
        linear: future_loss(&old, &new, Interpolation::Linear).map_err(compute_error)?,
        geometric: future_loss(&old, &new, Interpolation::Geometric).map_err(compute_error)?,
    };
    let method = request.interpolation;
    let trajectory = Trajectory {
        interpolation: method,
        ages: (0..=RETIREMENT_YEARS)
            .map(|k| scenario.retirement_age + f64::from(k))
            .collect(),
        old: income_trajectory(old.income_66, old.income_86, method).map_err(compute_error)?,
        new: income_trajectory(new.income_66, new.income_86, method).map_err(compute_error)?,
    };
    Ok(ProjectResponse {
        old,
        new,
        loss,
        trajectory,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PresetListing {
    pub assumptions: EconomicAssumptions,
    pub presets: Vec<SchemeRules>,
}

pub fn preset_listing(registry: &PresetRegistry) -> PresetListing {
    PresetListing {
        assumptions: registry.assumptions,
        presets: registry.presets.clone(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErosionPoint {
    pub year: u32,
    /// Real value left after `year` years, as a fraction of the starting value.
    pub factor: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErosionCurve {
    pub devaluation: f64,
    pub years: u32,
    pub points: Vec<ErosionPoint>,
}

/// `(1 - d)^n` for `n = 0..=years`.
pub fn erosion_curve(devaluation: f64, years: u32) -> Result<ErosionCurve, ApiError> {
    if !(devaluation.is_finite() && (0.0..1.0).contains(&devaluation)) {
        return Err(ApiError::invalid("d", format!("{devaluation} must be in [0, 1)")));
    }
    if years > MAX_EROSION_YEARS {
        return Err(ApiError::invalid(
            "years",
            format!("{years} exceeds the limit of {MAX_EROSION_YEARS}"),
        ));
    }
    let points = (0..=years)
        .map(|n| {
            erosion_factor(devaluation, f64::from(n))
                .map(|factor| ErosionPoint { year: n, factor })
                .map_err(|e| ApiError::Invalid(vec![scheme_field_error("", &e)]))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ErosionCurve {
        devaluation,
        years,
        points,
    })
}
