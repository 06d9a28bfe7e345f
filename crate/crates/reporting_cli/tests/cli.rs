use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use cohort::reference::{GLOBAL_LOSS, PERCENT_QUARTILES};
use cohort::BandedTable;
use reporting_cli::output::{read_raw, read_records};
use reporting_cli::report::SummaryRow;

fn pensionlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pensionlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = pensionlab(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    pensionlab(args).status.code().expect("exit code")
}

fn summary(dir: &Path) -> Vec<SummaryRow> {
    read_records(fs::File::open(dir.join("summary.csv")).unwrap()).unwrap()
}

fn find<'a>(rows: &'a [SummaryRow], cpi: f64, cohort: &str) -> &'a SummaryRow {
    rows.iter()
        .find(|r| (r.cpi_pct - cpi).abs() < 1e-9 && r.cohort == cohort)
        .unwrap_or_else(|| panic!("no row for {cpi} {cohort}"))
}

#[test]
fn project_example_near_published_cell() {
    let json = ok(&[
        "project", "--dob", "1985-10-01", "--salary", "30000", "--cpi", "0.028", "--rules",
        "uss2021:uuk2021", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    let loss = v["loss"]["linear"]["percent_loss"].as_f64().unwrap() * 100.0;
    assert!((loss - 27.0).abs() <= 3.0, "loss {loss}");
    assert_eq!(v["old"]["rules_id"], "uss2021");
    assert_eq!(v["new"]["rules_id"], "uuk2021");
}

#[test]
fn project_csv_round_trips() {
    let csv = ok(&[
        "project", "--dob", "1985-10-01", "--salary", "30000", "--cpi", "0.028", "--format", "csv",
    ]);
    let rows: Vec<reporting_cli::project::ProjectionRow> = read_records(csv.as_bytes()).unwrap();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].total_linear > rows[1].total_linear);
    assert!(rows[0].total_linear >= rows[0].total_geometric);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&["project", "--dob", "1985-10-01", "--cpi", "0.028"]), 2);
    assert_eq!(
        code(&["project", "--dob", "1985-10-01", "--salary", "30000", "--cpi", "0.09"]),
        2
    );
    assert_eq!(code(&["tables", "bogus"]), 2);
    assert_eq!(code(&["tables", "erosion", "--rules", "uss2021:nope"]), 2);
    assert_eq!(code(&["cohort", "--cpi", "0.025,0.028", "--replay"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
}

#[test]
fn cpi_out_of_range_is_reported() {
    let out = pensionlab(&["project", "--dob", "1985-10-01", "--salary", "30000", "--cpi", "0.09"]);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("0.09") && err.contains("range"), "{err}");
}

#[test]
fn erosion_table_forty_years() {
    let csv = ok(&["tables", "erosion", "--format", "csv"]);
    let (header, rows) = read_raw(csv.as_bytes()).unwrap();
    let col = |name: &str| header.iter().position(|h| h == name).unwrap();
    let row = rows
        .iter()
        .find(|r| r[col("devaluation")] == "0.50%" && r[col("horizon")] == "40 years")
        .expect("0.5% 40-year row");
    let loss: f64 = row[col("loss %")].parse().unwrap();
    assert!((loss + 18.0).abs() <= 1.0, "loss {loss}");
}

#[test]
fn personas_table_aria() {
    let csv = ok(&["tables", "personas", "--format", "csv"]);
    let (header, rows) = read_raw(csv.as_bytes()).unwrap();
    let col = |name: &str| header.iter().position(|h| h == name).unwrap();
    let row = rows
        .iter()
        .find(|r| r[col("persona")] == "Aria" && r[col("cpi %")] == "2.8")
        .expect("Aria at 2.8%");
    let loss: f64 = row[col("loss %")].parse().unwrap();
    assert!((loss - 29.0).abs() <= 2.0, "loss {loss}");
}

#[test]
fn tables_json_is_structured() {
    let json = ok(&["tables", "devaluation", "--format", "json", "--paths", "200"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 6);
    assert_eq!(v["rows"][0][2].as_f64().unwrap(), 0.5);
}

#[test]
fn cohort_means_and_globals() {
    let dir = tempfile::tempdir().unwrap();
    ok(&["cohort", "--out", dir.path().to_str().unwrap(), "--format", "csv"]);
    let rows = summary(dir.path());
    assert_eq!(rows.len(), 9);
    for (k, cpi) in [2.5, 2.8, 3.0].into_iter().enumerate() {
        let all = find(&rows, cpi, "all");
        let mean = PERCENT_QUARTILES[0][k].mean;
        assert!((all.pct_mean - mean).abs() <= 2.0, "cpi {cpi} mean {}", all.pct_mean);
        let global = GLOBAL_LOSS[k].0;
        assert!(
            (all.global_loss_gbp - global).abs() <= 0.10 * global,
            "cpi {cpi} global {}",
            all.global_loss_gbp
        );
        assert!(all.pct_q1 <= all.pct_q2 && all.pct_q2 <= all.pct_q3);
        assert_eq!(all.members, 195_557);
    }
}

#[test]
fn replay_reproduces_global_loss() {
    let dir = tempfile::tempdir().unwrap();
    ok(&["cohort", "--replay", "--out", dir.path().to_str().unwrap()]);
    let rows = summary(dir.path());
    assert_eq!(rows.len(), 3);
    let all = find(&rows, 2.8, "all");
    assert!((all.global_loss_gbp / 1e9 - 17.6).abs() <= 0.3);
    assert!((all.pct_mean - 31.0).abs() <= 1.0);
    assert_eq!(all.source, "replay");
    let young = find(&rows, 2.8, "age_under_40");
    assert!((young.global_loss_gbp / 1e9 - 9.4).abs() <= 0.2);
}

#[test]
fn replay_from_emitted_grids_matches_engine_summary() {
    let dir = tempfile::tempdir().unwrap();
    let engine = dir.path().join("engine");
    let replay = dir.path().join("replay");
    ok(&["cohort", "--cpi", "0.028", "--out", engine.to_str().unwrap()]);
    ok(&[
        "cohort",
        "--cpi",
        "0.028",
        "--replay-pct",
        engine.join("loss_pct_cpi2.8.csv").to_str().unwrap(),
        "--replay-gbp",
        engine.join("loss_gbp_cpi2.8.csv").to_str().unwrap(),
        "--out",
        replay.to_str().unwrap(),
    ]);
    let a = find(&summary(&engine), 2.8, "all").clone();
    let b = find(&summary(&replay), 2.8, "all").clone();
    // Grids are written to 2dp, so replayed statistics agree to that precision.
    assert!((a.pct_mean - b.pct_mean).abs() < 0.01);
    assert!((a.global_loss_gbp - b.global_loss_gbp).abs() / a.global_loss_gbp < 1e-3);
}

#[test]
fn cohort_outputs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    ok(&["cohort", "--out", a.to_str().unwrap()]);
    ok(&["cohort", "--out", b.to_str().unwrap()]);
    let mut names: Vec<_> = fs::read_dir(&a)
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    names.sort();
    assert_eq!(names.len(), 19);
    for name in names {
        assert_eq!(
            fs::read(a.join(&name)).unwrap(),
            fs::read(b.join(&name)).unwrap(),
            "{name:?} differs"
        );
    }
}

#[test]
fn every_emitted_csv_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    ok(&["cohort", "--cpi", "0.025", "--out", dir.path().to_str().unwrap()]);
    for entry in fs::read_dir(dir.path()).unwrap() {
        let path = entry.unwrap().path();
        let name = path.file_name().unwrap().to_str().unwrap().to_string();
        let bytes = fs::read(&path).unwrap();
        assert!(bytes.starts_with(b"# "), "{name} has no header comment");
        if name.starts_with("loss_") {
            let table = BandedTable::read(bytes.as_slice()).unwrap();
            let mut again = Vec::new();
            let comments: Vec<String> = String::from_utf8_lossy(&bytes)
                .lines()
                .take_while(|l| l.starts_with("# "))
                .map(|l| l[2..].to_string())
                .collect();
            let comments: Vec<&str> = comments.iter().map(String::as_str).collect();
            table
                .write(&mut again, &comments, |v| {
                    if v.is_nan() {
                        String::new()
                    } else {
                        reporting_cli::output::format_fixed(v, 2)
                    }
                })
                .unwrap();
            assert_eq!(again, bytes, "{name} does not round-trip");
            assert!(table
                .values
                .iter()
                .flatten()
                .all(|v| v.is_nan() || *v <= 0.0));
        } else if name.starts_with("hist_") {
            let (header, rows) = read_raw(bytes.as_slice()).unwrap();
            assert_eq!(&header[..2], ["bin_low", "bin_high"]);
            let total: u64 = rows
                .iter()
                .flat_map(|r| r[2..].iter().map(|c| c.parse::<u64>().unwrap()))
                .sum();
            assert_eq!(total, 195_557, "{name}");
        } else {
            assert_eq!(name, "summary.csv");
            let rows: Vec<SummaryRow> = read_records(bytes.as_slice()).unwrap();
            assert_eq!(rows.len(), 3);
            assert!(rows.iter().all(|r| r.pct_mean > 0.0 && r.global_loss_gbp > 0.0));
        }
    }
}

#[test]
fn runtime_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.csv");
    fs::write(&empty, "# nothing here\n").unwrap();
    let out = dir.path().join("out");
    let args = ["cohort", "--heatmap", empty.to_str().unwrap(), "--out", out.to_str().unwrap()];
    assert_eq!(code(&args), 1);
    let stderr = String::from_utf8(pensionlab(&args).stderr).unwrap();
    assert!(stderr.contains("empty.csv"), "{stderr}");

    let missing = dir.path().join("missing.csv");
    let out = pensionlab(&["tables", "quartiles", "--heatmap", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing.csv"));
}
