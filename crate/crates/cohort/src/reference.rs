//! Published reference figures the engine is compared against.
//!
//! Percentages are whole-percent or one-decimal values as printed; money is in pounds.

/// Mean CPI values of the three published scenarios.
pub const CPI_SCENARIOS: [f64; 3] = [0.025, 0.028, 0.030];

/// Hard-cap erosion table: devaluation, then losses (percent) after 20, 40 and 60 years
/// and averaged over ages 66 to 86. `None` marks the USS column at CPI 2.8%, printed as
/// 0.87% and computed here from a = 0.59%.
pub const EROSION_TABLE: [(Option<f64>, [f64; 4]); 5] = [
    (Some(0.004), [8.0, 15.0, 21.0, 18.0]),
    (Some(0.005), [10.0, 18.0, 26.0, 22.0]),
    (Some(0.0058), [11.0, 21.0, 29.0, 25.0]),
    (Some(0.008), [15.0, 27.0, 38.0, 33.0]),
    (None, [15.0, 29.0, 41.0, 35.0]),
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OneYearEntry {
    pub cpi: f64,
    pub delay_years: u32,
    /// `true` for the USS devaluation basis, `false` for UUK.
    pub uss_basis: bool,
    pub percent: f64,
}

const fn oy(cpi: f64, delay_years: u32, uss_basis: bool, percent: f64) -> OneYearEntry {
    OneYearEntry {
        cpi,
        delay_years,
        uss_basis,
        percent,
    }
}

/// Global loss from one year's contribution. The third block is labelled 2.8% where
/// printed; its values only make sense at 3.0%.
pub const ONE_YEAR_TABLE: [OneYearEntry; 12] = [
    oy(0.025, 0, false, 27.2),
    oy(0.025, 0, true, 28.7),
    oy(0.025, 2, false, 26.6),
    oy(0.025, 2, true, 28.0),
    oy(0.028, 0, false, 32.0),
    oy(0.028, 0, true, 33.4),
    oy(0.028, 2, false, 31.1),
    oy(0.028, 2, true, 32.4),
    oy(0.030, 0, false, 35.0),
    oy(0.030, 0, true, 36.3),
    oy(0.030, 2, false, 33.9),
    oy(0.030, 2, true, 35.1),
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuartileRow {
    pub q1: f64,
    pub q2: f64,
    pub q3: f64,
    pub mean: f64,
    pub mode_low: f64,
}

const fn qr(q1: f64, q2: f64, q3: f64, mean: f64, mode_low: f64) -> QuartileRow {
    QuartileRow {
        q1,
        q2,
        q3,
        mean,
        mode_low,
    }
}

/// Percent loss quartiles by CPI scenario: all staff, then staff under 40.
pub const PERCENT_QUARTILES: [[QuartileRow; 3]; 2] = [
    [
        qr(22.0, 29.0, 33.0, 27.0, 30.0),
        qr(26.0, 33.0, 37.0, 31.0, 35.0),
        qr(28.0, 35.0, 40.0, 33.0, 40.0),
    ],
    [
        qr(26.0, 32.0, 35.0, 30.0, 30.0),
        qr(30.0, 37.0, 40.0, 35.0, 35.0),
        qr(33.0, 39.0, 43.0, 38.0, 40.0),
    ],
];

/// Money loss quartiles (pounds) by CPI scenario: all staff, then staff under 40.
pub const MONEY_QUARTILES: [[QuartileRow; 3]; 2] = [
    [
        qr(31e3, 78e3, 125e3, 82e3, 0.0),
        qr(36e3, 85e3, 149e3, 90e3, 0.0),
        qr(38e3, 89e3, 140e3, 94e3, 0.0),
    ],
    [
        qr(81e3, 136e3, 157e3, 121e3, 100e3),
        qr(91e3, 149e3, 173e3, 133e3, 150e3),
        qr(97e3, 154e3, 181e3, 139e3, 150e3),
    ],
];

/// Global loss in pounds by CPI scenario: all staff and staff under 40.
pub const GLOBAL_LOSS: [(f64, f64); 3] = [(16.1e9, 8.5e9), (17.6e9, 9.4e9), (18.4e9, 9.8e9)];

/// Persona percent losses by CPI scenario.
pub const PERSONA_LOSSES: [(&str, [f64; 3]); 3] = [
    ("Aria", [25.0, 29.0, 33.0]),
    ("Bryn", [35.0, 39.0, 41.0]),
    ("Chloe", [31.0, 34.0, 36.0]),
];

/// Members quoted for the whole scheme, under 40, and earning under 40k.
pub const QUOTED_COUNTS: (u64, u64, u64) = (196_000, 71_000, 84_000);

/// Under-40k members with a loss above 15% at CPI 2.5%.
pub const UNDER_40K_ABOVE_15_SHARE: f64 = 0.90;

/// Annual devaluation by CPI projection: UUK figure, USS figure. The USS value at 2.8%
/// is the computed 0.87%.
pub const PUBLISHED_DEVALUATION: [(f64, f64, f64); 2] = [(0.025, 0.005, 0.0058), (0.028, 0.008, 0.0087)];
