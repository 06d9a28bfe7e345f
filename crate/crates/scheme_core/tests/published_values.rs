use scheme_core::*;

const PP: f64 = 0.01;

#[test]
fn devaluation_examples() {
    let d = annual_devaluation(0.025, 0.005, 0.025).unwrap();
    assert!((d - 0.004878).abs() < 1e-6);
    assert!((d - 0.005).abs() < 0.02 * PP);

    let d = annual_devaluation(0.025, 0.0059, 0.028).unwrap();
    assert!((d - 0.008658).abs() < 1e-6);
    assert!((d - 0.0087).abs() < 0.02 * PP);

    let d = annual_devaluation(0.025, 0.005, 0.028).unwrap();
    assert!((d - 0.007782).abs() < 1e-6);
    assert!((d - 0.008).abs() < 0.03 * PP);
    assert!((DevaluationBasis::uuk().rate(0.025, 0.028).unwrap() - 0.008).abs() < 1e-12);

    assert!(annual_devaluation(0.025, 0.025 - 0.031, 0.031).unwrap().abs() < 1e-15);
}

#[test]
fn implied_adjustment_examples() {
    let a = implied_adjustment(0.025, 0.0058, 0.025).unwrap();
    assert!((a - 0.00595).abs() < 1e-5);
    assert!((a - 0.0059).abs() < 0.02 * PP);
    assert!(implied_adjustment(0.025, 0.0, 0.025).unwrap().abs() < 1e-15);
    let d = annual_devaluation(0.025, 0.005, 0.03).unwrap();
    assert!((implied_adjustment(0.025, d, 0.03).unwrap() - 0.005).abs() < 1e-12);
}

#[test]
fn erosion_examples() {
    assert!((erosion_factor(0.005, 40.0).unwrap() - 0.8183).abs() < 1e-4);
    assert!((erosion_factor(0.008, 60.0).unwrap() - 0.992f64.powi(60)).abs() < 1e-12);
    assert!((erosion_factor(0.008, 60.0).unwrap() - 0.62).abs() < 0.01);
    assert_eq!(erosion_factor(0.3, 0.0).unwrap(), 1.0);
    let oracle = 1.0 - (40..=60).map(|n| 0.995f64.powi(n)).sum::<f64>() / 21.0;
    let avg = average_retirement_erosion(0.005, 40, 20).unwrap();
    assert!((avg - oracle).abs() < 1e-12);
    assert!((avg - 0.22).abs() < 0.01);
    assert!((average_retirement_erosion(0.0087, 40, 20).unwrap() - 0.35).abs() < 0.01);
    assert_eq!(average_retirement_erosion(0.0, 40, 20).unwrap(), 0.0);
}

/// Columns of the hard-cap erosion table: d and the printed 20/40/60-year and 66-86 average losses.
/// The last column is the USS basis at CPI 2.8%, which the table prints as 0.87%.
fn erosion_table() -> Vec<(f64, [f64; 4])> {
    let italic = annual_devaluation(0.025, 0.0059, 0.028).unwrap();
    vec![
        (0.004, [8.0, 15.0, 21.0, 18.0]),
        (0.005, [10.0, 18.0, 26.0, 22.0]),
        (0.0058, [11.0, 21.0, 29.0, 25.0]),
        (0.008, [15.0, 27.0, 38.0, 33.0]),
        (italic, [15.0, 29.0, 41.0, 35.0]),
    ]
}

#[test]
fn erosion_table_within_one_point() {
    for (d, printed) in erosion_table() {
        let ours = [
            1.0 - erosion_factor(d, 20.0).unwrap(),
            1.0 - erosion_factor(d, 40.0).unwrap(),
            1.0 - erosion_factor(d, 60.0).unwrap(),
            average_retirement_erosion(d, 40, 20).unwrap(),
        ];
        for (o, p) in ours.iter().zip(printed) {
            assert!((o * 100.0 - p).abs() <= 1.0, "d={d}: {o} vs {p}%");
        }
    }
}

#[test]
fn accrual_headline() {
    let r = accrual_only_reduction(75, 85).unwrap();
    assert!((r - 0.117_647_058_823_529_4).abs() < 1e-12);
    assert!((r * 100.0 - 12.0).abs() < 0.5);
}
