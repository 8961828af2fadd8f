use std::process::{Command, Output};

use prequant_cli::GroupSpec;
use prequant_core::levels::TableGroup;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prequant"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn table_csv_agrees_up_to_rank_8() {
    let out = run(&["table", "--max-rank", "8", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("group,l0_table,lb_lattice,agree"));
    let rows: Vec<&str> = lines.collect();
    assert!(rows.iter().all(|r| r.ends_with(",true")));
    assert!(rows.contains(&"PE7,2,2,true"));
    assert!(rows.contains(&"PE6,3,3,true"));
    assert!(rows.contains(&"SU(4)/Z2,1,1,true"));
}

#[test]
fn table_rows_round_trip_through_group_specs() {
    for g in TableGroup::instances(8) {
        let parsed: GroupSpec = g.to_string().parse().unwrap();
        assert_eq!(parsed.table_group(), Some(g), "{g}");
        let (rs, z) = parsed.resolve().unwrap();
        let (rs2, z2) = g.realize().unwrap();
        assert_eq!(rs.lie_type(), rs2.lie_type(), "{g}");
        assert_eq!(z.elements(), z2.elements(), "{g}");
    }
}

#[test]
fn classify_pe6_at_level_3_splits() {
    let out = run(&["classify", "PE6", "--level", "3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["splits"], true);
    assert_eq!(v["basic_level"], 3);
    assert_eq!(v["line_bundle_count"], 9);
}

#[test]
fn classify_so3_at_level_1_reports_witness() {
    let out = run(&["classify", "SO(3)", "--level", "1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["splits"], false);
    assert_eq!(v["line_bundle_count"], 0);
    assert_eq!(v["witness"], serde_json::json!([[[1], [0]], [[0], [1]]]));
}

#[test]
fn pairing_so3_has_half_turn() {
    let out = run(&["pairing", "SO(3)", "--level", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("1/2"));
    assert!(text.contains("trivial: false"));
}

#[test]
fn verify_passes_and_rejects_small_grids() {
    let ok = run(&["verify", "SO(3)", "--level", "1", "--grid", "64"]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
    let bad = run(&["verify", "SO(3)", "--level", "1", "--grid", "2"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("grid"));
}

#[test]
fn usage_errors_exit_1() {
    for args in [
        &["table", "--max-rank", "1"][..],
        &["basic-level", "SO(4)"],
        &["basic-level", "PO(7)"],
        &["basic-level", "A3/Ss"],
        &["classify", "PE6", "--level", "0"],
        &["classify", "PE6", "--level", "3", "--format", "csv"],
        &["frobnicate"],
    ] {
        assert_eq!(run(args).status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["table", "--format", "json"][..],
        &["basic-level", "Ss(8)", "--format", "json"],
        &["pairing", "D4/full", "--level", "1"],
        &["verify", "B2/full", "--level", "1", "--grid", "32", "--seed", "7"],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code(), "{args:?}");
    }
}
