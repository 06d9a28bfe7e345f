//! Future-service pension projection for a single member.
//!
//! Benefits accrue in annual steps from the start date to retirement. DB tranches
//! are eroded in real terms by the scheme's devaluation; salary above the DB/DC
//! threshold funds a DC pot that is annuitised at retirement.

pub mod engine;
pub mod error;
pub mod income;
pub mod scenario;

pub use engine::{
    one_year_contribution_loss, project_member, project_member_with, ProjectionOptions,
    ProjectionResult,
};
pub use error::{ProjectionError, Result};
pub use income::{
    future_loss, income_trajectory, retirement_income_total, IncomeTotal, Interpolation,
    LossMetrics, RETIREMENT_YEARS,
};
pub use scenario::{age_on, scheme_change_date, DcOption, MemberScenario};

/// Project `scenario` under both rule sets and return the linear-interpolation loss.
pub fn scenario_loss(
    scenario: &MemberScenario,
    rules_old: &scheme_core::SchemeRules,
    rules_new: &scheme_core::SchemeRules,
    assumptions: &scheme_core::EconomicAssumptions,
    method: Interpolation,
) -> Result<LossMetrics> {
    let old = project_member(scenario, rules_old, assumptions)?;
    let new = project_member(scenario, rules_new, assumptions)?;
    future_loss(&old, &new, method)
}
