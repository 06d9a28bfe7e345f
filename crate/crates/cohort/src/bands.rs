//! Salary and age bands as labelled in the heat map.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Representative salary of the open top band.
pub const TOP_SALARY: f64 = 200_000.0;
/// Representative age of the open top band.
pub const TOP_AGE: f64 = 65.5;
/// Lower edge assumed for the open bottom age band "<=25".
pub const YOUNGEST_AGE: f64 = 20.0;

/// `[low, high)` in pounds; `high` is `None` for the open top band.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SalaryBand {
    pub low: f64,
    pub high: Option<f64>,
}

impl SalaryBand {
    /// Parses `0-5k`, `145-150k`, `150k+`, or plain pounds such as `5000-10000`.
    pub fn parse(label: &str) -> Option<Self> {
        let s = label.trim().to_ascii_lowercase().replace(['£', ',', ' '], "");
        if let Some(low) = s.strip_suffix('+') {
            return Some(Self {
                low: money(low)?,
                high: None,
            });
        }
        let (lo, hi) = s.split_once('-')?;
        let thousands = hi.ends_with('k');
        let mut low = money(lo)?;
        if thousands && !lo.ends_with('k') {
            low *= 1000.0;
        }
        let high = money(hi)?;
        (high > low).then_some(Self {
            low,
            high: Some(high),
        })
    }

    pub fn midpoint(&self) -> f64 {
        match self.high {
            Some(high) => 0.5 * (self.low + high),
            None => TOP_SALARY,
        }
    }

    /// Whole band lies below `limit`.
    pub fn below(&self, limit: f64) -> bool {
        self.high.is_some_and(|h| h <= limit)
    }
}

fn money(s: &str) -> Option<f64> {
    let (digits, scale) = match s.strip_suffix('k') {
        Some(d) => (d, 1000.0),
        None => (s, 1.0),
    };
    let v: f64 = digits.parse().ok()?;
    (v.is_finite() && v >= 0.0).then_some(v * scale)
}

impl fmt::Display for SalaryBand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = |x: f64| x / 1000.0;
        match self.high {
            Some(h) => write!(f, "{}-{}k", k(self.low), k(h)),
            None => write!(f, "{}k+", k(self.low)),
        }
    }
}

/// Ages `[low, high)` in years. `25-29` covers `[25, 30)`; `<=25` is taken as `[20, 25)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AgeBand {
    pub low: f64,
    pub high: Option<f64>,
}

impl AgeBand {
    pub fn parse(label: &str) -> Option<Self> {
        let s = label.trim().replace(' ', "");
        if let Some(top) = s.strip_prefix("<=").or_else(|| s.strip_prefix('≤')) {
            let high: f64 = top.parse().ok()?;
            return (high > YOUNGEST_AGE).then_some(Self {
                low: YOUNGEST_AGE,
                high: Some(high),
            });
        }
        if let Some(low) = s.strip_suffix('+') {
            return Some(Self {
                low: low.parse().ok()?,
                high: None,
            });
        }
        let (lo, hi) = s.split_once('-')?;
        let low: f64 = lo.parse().ok()?;
        let last: f64 = hi.parse().ok()?;
        (last >= low).then_some(Self {
            low,
            high: Some(last + 1.0),
        })
    }

    pub fn midpoint(&self) -> f64 {
        match self.high {
            Some(h) => 0.5 * (self.low + h),
            None => TOP_AGE,
        }
    }

    pub fn below(&self, limit: f64) -> bool {
        self.high.is_some_and(|h| h <= limit)
    }

    pub fn contains(&self, age: f64) -> bool {
        age >= self.low && self.high.is_none_or(|h| age < h)
    }
}

impl fmt::Display for AgeBand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.high {
            Some(h) if self.low == YOUNGEST_AGE => write!(f, "<={h}"),
            Some(h) => write!(f, "{}-{}", self.low, h - 1.0),
            None => write!(f, "{}+", self.low),
        }
    }
}
