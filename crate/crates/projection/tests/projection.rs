use projection::*;
use scheme_core::{bundled, DevaluationBasis, EconomicAssumptions, SchemeRules};

fn rules(id: &str) -> &'static SchemeRules {
    bundled().get(id).unwrap()
}

fn calibrated(cpi: f64) -> EconomicAssumptions {
    bundled().assumptions_at(cpi)
}

fn pct_loss(age: f64, salary: f64, cpi: f64) -> f64 {
    let s = MemberScenario::aged(age, salary).unwrap();
    scenario_loss(&s, rules("uss2021"), rules("uuk2021"), &calibrated(cpi), Interpolation::Linear)
        .unwrap()
        .percent_loss
}

/// Independent oracle for a member below both thresholds: one tranche per year with
/// a closed-form erosion sum, no DC.
fn below_threshold_oracle(years: u32, salary: f64, denominator: f64, keep: f64) -> (f64, f64) {
    let mut i66 = 0.0;
    let mut i86 = 0.0;
    for t in 0..years {
        let n = f64::from(years - t);
        i66 += salary / denominator * keep.powf(n);
        i86 += salary / denominator * keep.powf(n + 20.0);
    }
    (i66, i86)
}

#[test]
fn accrual_headline_exact() {
    let a = EconomicAssumptions::default().with_devaluation(DevaluationBasis::none());
    for (age, salary) in [(65.0, 37_500.0), (40.0, 10_000.0), (22.5, 2_500.0)] {
        let s = MemberScenario::aged(age, salary).unwrap();
        let m = scenario_loss(&s, rules("uss2021"), rules("uuk2021"), &a, Interpolation::Linear).unwrap();
        assert!((m.percent_loss - 10.0 / 85.0).abs() < 1e-9, "{age} {salary}: {}", m.percent_loss);
    }
    let s = MemberScenario::aged(65.0, 37_500.0).unwrap();
    let old = project_member(&s, rules("uss2021"), &a).unwrap();
    let new = project_member(&s, rules("uuk2021"), &a).unwrap();
    assert!((old.income_66 - 500.0).abs() < 1e-9);
    assert!((new.income_66 - 441.18).abs() < 0.01);
}

#[test]
fn matches_below_threshold_oracle() {
    // Zero salary growth in real terms keeps the member below the threshold.
    let mut a = calibrated(0.028);
    a.salary_growth = 0.028;
    let s = MemberScenario::aged(56.0, 20_000.0).unwrap();
    let keep = 1.0 - 0.008;
    let (i66, i86) = below_threshold_oracle(10, 20_000.0, 85.0, keep);
    let r = project_member(&s, rules("uuk2021"), &a).unwrap();
    assert!((r.income_66 - i66).abs() < 1e-9);
    assert!((r.income_86 - i86).abs() < 1e-9);
    let (o66, o86) = below_threshold_oracle(10, 20_000.0, 75.0, 1.0);
    let r = project_member(&s, rules("uss2021"), &a).unwrap();
    assert!((r.income_66 - o66).abs() < 1e-9);
    assert!((r.income_86 - o86).abs() < 1e-9);
}

#[test]
fn published_cells() {
    let cell = pct_loss(42.5, 52_500.0, 0.028);
    assert!((cell - 0.40).abs() <= 0.03, "{cell}");
    let aria = pct_loss(37.0, 30_000.0, 0.028);
    assert!((aria - 0.29).abs() <= 0.02, "{aria}");
    let pink = pct_loss(37.5, 27_500.0, 0.028);
    assert!((pink - 0.27).abs() <= 0.03, "{pink}");
}

#[test]
fn no_future_service_reports_zero_loss() {
    let s = MemberScenario::aged(67.5, 60_000.0).unwrap();
    let m = scenario_loss(&s, rules("uss2021"), rules("uuk2021"), &calibrated(0.028), Interpolation::Linear).unwrap();
    assert_eq!(m.percent_loss, 0.0);
    assert_eq!(m.monetary_loss, 0.0);
}

#[test]
fn one_year_examples() {
    let a = EconomicAssumptions::default().with_devaluation(DevaluationBasis::none());
    let s = MemberScenario::aged(40.0, 20_000.0).unwrap();
    let l = one_year_contribution_loss(&s, rules("uss2021"), rules("uuk2021"), &a).unwrap();
    assert!((l - 10.0 / 85.0).abs() < 1e-12);

    let s = MemberScenario::aged(40.0, 40_000.0).unwrap();
    let a = calibrated(0.025);
    let no_delay = one_year_contribution_loss(&s, rules("uss2021"), rules("uuk2021"), &a).unwrap();
    assert!((no_delay - 0.272).abs() <= 0.015, "{no_delay}");
    let delayed = one_year_contribution_loss(&s, rules("uss2021"), rules("uuk2022_adjusted"), &a).unwrap();
    let drop = no_delay - delayed;
    assert!((0.005..=0.010).contains(&drop), "{drop}");
}

#[test]
fn one_year_matches_oracle() {
    // 40-year-old at 40k: DB only under both; 26 years to 66, 46 to 86.
    let s = MemberScenario::aged(40.0, 40_000.0).unwrap();
    let a = calibrated(0.028);
    let keep: f64 = 1.0 - 0.008;
    let old = 40_000.0 / 75.0 * 20.0;
    let new_66 = 40_000.0 / 85.0 * keep.powi(26);
    let new_86 = 40_000.0 / 85.0 * keep.powi(46);
    let new: f64 = (0..20).map(|k| new_66 + (new_86 - new_66) * f64::from(k) / 20.0).sum();
    let l = one_year_contribution_loss(&s, rules("uss2021"), rules("uuk2021"), &a).unwrap();
    assert!((l - (1.0 - new / old)).abs() < 1e-12);
}

#[test]
fn interpolation_examples() {
    let g = retirement_income_total(1000.0, 500.0, Interpolation::Geometric).unwrap();
    let oracle: f64 = (0..20).map(|k| 1000.0 * 0.5f64.powf(f64::from(k) / 20.0)).sum();
    assert!((g.amount - oracle).abs() < 1e-9);
    assert!((g.amount - 14_678.39).abs() < 0.01);
}

#[test]
fn mismatched_results_rejected() {
    let a = calibrated(0.028);
    let s1 = MemberScenario::aged(40.0, 40_000.0).unwrap();
    let s2 = MemberScenario::aged(41.0, 40_000.0).unwrap();
    let r1 = project_member(&s1, rules("uss2021"), &a).unwrap();
    let r2 = project_member(&s2, rules("uuk2021"), &a).unwrap();
    assert_eq!(
        future_loss(&r1, &r2, Interpolation::Linear),
        Err(ProjectionError::Mismatch("scenarios"))
    );
    let r3 = project_member(&s1, rules("uuk2021"), &a.with_cpi(0.03)).unwrap();
    assert!(future_loss(&r1, &r3, Interpolation::Linear).is_err());
}

#[test]
fn invalid_inputs_rejected() {
    let s = MemberScenario::aged(40.0, 40_000.0).unwrap();
    assert!(project_member(&s, rules("uuk2021"), &calibrated(0.09)).is_err());
    let mut bad = rules("uuk2021").clone();
    bad.db_dc_threshold = -1.0;
    assert!(project_member(&s, &bad, &calibrated(0.028)).is_err());
    let mut drawdown = s;
    drawdown.dc_option = DcOption::Drawdown;
    assert!(matches!(
        project_member(&drawdown, rules("uuk2021"), &calibrated(0.028)),
        Err(ProjectionError::UnsupportedDcOption(DcOption::Drawdown))
    ));
}
