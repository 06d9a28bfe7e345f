use proptest::prelude::*;
use projection::*;
use scheme_core::{bundled, DevaluationBasis, EconomicAssumptions, SchemeRules};

const AGE_MIDS: [f64; 10] = [22.5, 27.5, 32.5, 37.5, 42.5, 47.5, 52.5, 57.5, 62.5, 65.5];

fn rules(id: &str) -> &'static SchemeRules {
    bundled().get(id).unwrap()
}

fn loss_with(
    s: &MemberScenario,
    new: &SchemeRules,
    a: &EconomicAssumptions,
    method: Interpolation,
) -> LossMetrics {
    scenario_loss(s, rules("uss2021"), new, a, method).unwrap()
}

fn basis_strategy() -> impl Strategy<Value = DevaluationBasis> {
    prop_oneof![Just(DevaluationBasis::uuk()), Just(DevaluationBasis::uss())]
}

#[test]
fn loss_non_decreasing_in_cpi() {
    for &age in &AGE_MIDS {
        for salary in [7_500.0, 27_500.0, 52_500.0, 92_500.0, 200_000.0] {
            let s = MemberScenario::aged(age, salary).unwrap();
            let mut prev = f64::NEG_INFINITY;
            for step in 0..=5 {
                let c = 0.025 + 0.001 * f64::from(step);
                let a = bundled().assumptions_at(c);
                let l = loss_with(&s, rules("uuk2021"), &a, Interpolation::Linear).percent_loss;
                assert!(l >= prev - 1e-12, "age {age} salary {salary} c {c}: {l} < {prev}");
                prev = l;
            }
        }
    }
}

/// Largest rise in loss from one age band to the next older one. Below 40k the loss
/// never rises with age. Higher up, a younger member's old-scheme DC years rise, and the
/// published CPI 2.8% grid itself climbs by up to 1pp along its top rows.
const AGE_RISE_ALLOWANCE: f64 = 0.0125;

#[test]
fn loss_non_increasing_in_age() {
    for c in [0.025, 0.028, 0.03] {
        let a = bundled().assumptions_at(c);
        for i in 0..31 {
            let salary = if i == 30 { 200_000.0 } else { 2_500.0 + 5_000.0 * f64::from(i) };
            let slack = if salary < 40_000.0 { 1e-12 } else { AGE_RISE_ALLOWANCE };
            let mut prev = f64::INFINITY;
            for &age in &AGE_MIDS {
                let s = MemberScenario::aged(age, salary).unwrap();
                let l = loss_with(&s, rules("uuk2021"), &a, Interpolation::Linear).percent_loss;
                assert!(l <= prev + slack, "c {c} salary {salary} age {age}: {l} > {prev}");
                prev = l;
            }
        }
    }
}

#[test]
fn interpolation_methods_close_below_40k() {
    let a = bundled().assumptions_at(0.028);
    for &age in &AGE_MIDS {
        for i in 0..8 {
            let s = MemberScenario::aged(age, 2_500.0 + 5_000.0 * f64::from(i)).unwrap();
            let lin = loss_with(&s, rules("uuk2021"), &a, Interpolation::Linear).percent_loss;
            let geo = loss_with(&s, rules("uuk2021"), &a, Interpolation::Geometric).percent_loss;
            assert!((lin - geo).abs() < 0.002, "age {age}: {lin} vs {geo}");
        }
    }
}

proptest! {
    #[test]
    fn identical_rules_give_zero_loss(
        age in 20.0..70.0f64, salary in 0.0..300_000.0f64, c in 0.0..0.05f64,
        id in prop::sample::select(vec!["uss2021", "acas2018", "uuk2021", "uuk2022_adjusted"]),
    ) {
        let s = MemberScenario::aged(age, salary).unwrap();
        let a = bundled().assumptions_at(c);
        let r = rules(id);
        let m = scenario_loss(&s, r, r, &a, Interpolation::Linear).unwrap();
        prop_assert_eq!(m.percent_loss, 0.0);
        prop_assert_eq!(m.monetary_loss, 0.0);
    }

    #[test]
    fn delay_never_increases_loss(
        age in 20.0..66.0f64, salary in 1_000.0..250_000.0f64, c in 0.02..0.05f64,
        basis in basis_strategy(),
    ) {
        let s = MemberScenario::aged(age, salary).unwrap();
        let a = bundled().assumptions_at(c).with_devaluation(basis);
        let no_delay = loss_with(&s, rules("uuk2021"), &a, Interpolation::Linear).percent_loss;
        let delayed = loss_with(&s, &rules("uuk2021").with_delay(2), &a, Interpolation::Linear).percent_loss;
        prop_assert!(delayed <= no_delay + 1e-12);
    }

    #[test]
    fn linear_total_at_least_geometric(i66 in 1.0..1e6f64, ratio in 0.01..1.0f64) {
        let i86 = i66 * ratio;
        let lin = retirement_income_total(i66, i86, Interpolation::Linear).unwrap().amount;
        let geo = retirement_income_total(i66, i86, Interpolation::Geometric).unwrap().amount;
        prop_assert!(lin >= geo - 1e-9 * lin);
    }

    #[test]
    fn result_invariants(
        age in 20.0..66.0f64, salary in 0.0..300_000.0f64, c in 0.0..0.05f64,
        basis in basis_strategy(),
        id in prop::sample::select(vec!["uss2021", "acas2018", "uuk2021", "uuk2022_adjusted"]),
    ) {
        let s = MemberScenario::aged(age, salary).unwrap();
        let a = bundled().assumptions_at(c).with_devaluation(basis);
        let r = project_member(&s, rules(id), &a).unwrap();
        prop_assert!(r.db_66 >= 0.0 && r.dc_66 >= 0.0 && r.income_86 >= 0.0);
        prop_assert!((r.income_66 - (r.db_66 + r.dc_66)).abs() <= 1e-9 * r.income_66.max(1.0));
        if id == "uss2021" {
            prop_assert!((r.income_86 - r.income_66).abs() < 1e-9);
        } else {
            prop_assert!(r.income_86 <= r.income_66 + 1e-9);
        }
        let m = scenario_loss(&s, rules("uss2021"), rules(id), &a, Interpolation::Linear).unwrap();
        prop_assert!(m.percent_loss <= 1.0);
        if m.old_total > 0.0 {
            prop_assert!((m.percent_loss - m.monetary_loss / m.old_total).abs() < 1e-12);
        }
    }

    #[test]
    fn threshold_above_salaries_ignores_dc_inputs(
        age in 20.0..66.0f64, salary in 0.0..100_000.0f64, c in 0.0..0.05f64,
        dc_growth in 0.0..0.1f64, annuity_factor in 30.0..50.0f64,
    ) {
        let mut high = rules("uuk2021").clone();
        high.db_dc_threshold = 1e9;
        high.threshold_indexation = scheme_core::ThresholdIndexation::FullCpi;
        let s = MemberScenario::aged(age, salary).unwrap();
        let base = bundled().assumptions_at(c);
        let mut other = base;
        other.dc_growth = dc_growth;
        other.annuity_factor = annuity_factor;
        let r1 = project_member(&s, &high, &base).unwrap();
        let r2 = project_member(&s, &high, &other).unwrap();
        prop_assert_eq!(r1.income_66, r2.income_66);
        prop_assert_eq!(r1.income_86, r2.income_86);
        prop_assert_eq!(r1.dc_66, 0.0);
    }
}
