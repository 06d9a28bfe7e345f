use chrono::{Datelike, Months, NaiveDate};
use serde::{Deserialize, Serialize};

use crate::error::{ProjectionError, Result};

/// Date the new benefit structure took effect.
pub fn scheme_change_date() -> NaiveDate {
    NaiveDate::from_ymd_opt(2022, 4, 1).expect("valid date")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum DcOption {
    #[default]
    Annuity,
    Drawdown,
    Cash,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MemberScenario {
    pub date_of_birth: NaiveDate,
    /// Annual salary at the start date.
    pub salary: f64,
    #[serde(default = "scheme_change_date")]
    pub start_date: NaiveDate,
    #[serde(default = "default_retirement_age")]
    pub retirement_age: f64,
    #[serde(default)]
    pub dc_option: DcOption,
}

fn default_retirement_age() -> f64 {
    66.0
}

impl MemberScenario {
    pub fn new(date_of_birth: NaiveDate, salary: f64) -> Self {
        Self {
            date_of_birth,
            salary,
            start_date: scheme_change_date(),
            retirement_age: default_retirement_age(),
            dc_option: DcOption::Annuity,
        }
    }

    /// Member of the given age on the start date, born on the first of a month.
    ///
    /// Ages are rounded to whole months, so 42.5 at 1 April 2022 gives a birthday of 1 October 1979.
    pub fn aged(age: f64, salary: f64) -> Result<Self> {
        let start = scheme_change_date();
        if !(age.is_finite() && age >= 0.0) {
            return Err(ProjectionError::InvalidScenario {
                field: "age",
                message: format!("{age} is not a valid age"),
            });
        }
        let months = (age * 12.0).round() as u32;
        let dob = start
            .checked_sub_months(Months::new(months))
            .ok_or_else(|| ProjectionError::InvalidScenario {
                field: "age",
                message: format!("{age} is out of calendar range"),
            })?;
        Ok(Self::new(dob, salary))
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.salary.is_finite() && self.salary >= 0.0) {
            return Err(ProjectionError::InvalidScenario {
                field: "salary",
                message: format!("{} must be a non-negative amount", self.salary),
            });
        }
        if !(self.retirement_age.is_finite() && self.retirement_age > 0.0) {
            return Err(ProjectionError::InvalidScenario {
                field: "retirement_age",
                message: format!("{} must be positive", self.retirement_age),
            });
        }
        if self.date_of_birth > self.start_date {
            return Err(ProjectionError::InvalidScenario {
                field: "date_of_birth",
                message: "must not be after the start date".into(),
            });
        }
        if self.dc_option != DcOption::Annuity {
            return Err(ProjectionError::UnsupportedDcOption(self.dc_option));
        }
        Ok(())
    }

    pub fn age_at_start(&self) -> f64 {
        age_on(self.date_of_birth, self.start_date)
    }

    /// Years of future service, possibly fractional; zero or negative means none.
    pub fn years_to_retirement(&self) -> f64 {
        self.retirement_age - self.age_at_start()
    }
}

/// Age in years, counting whole months and then the day fraction of the month in progress.
pub fn age_on(birth: NaiveDate, on: NaiveDate) -> f64 {
    if on < birth {
        return -age_on(on, birth);
    }
    let mut months = (on.year() - birth.year()) * 12 + on.month() as i32 - birth.month() as i32;
    let anniversary = |m: i32| birth.checked_add_months(Months::new(m as u32));
    let mut last = anniversary(months);
    if last.is_none_or(|d| d > on) {
        months -= 1;
        last = anniversary(months);
    }
    let last = last.expect("month anniversary in range");
    let next = anniversary(months + 1).expect("month anniversary in range");
    let part = (on - last).num_days() as f64 / (next - last).num_days() as f64;
    (f64::from(months) + part) / 12.0
}
