use std::process::{Command, Output};

use serde_json::Value;

fn howe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_howe")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Vec<Value> {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = howe(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json array")
}

#[test]
fn symbol_statistics() {
    let row = &json(&["symbol", "|2,1,0"])[0];
    assert_eq!((row["rank"].as_u64(), row["defect"].as_i64(), row["delta"].as_u64()), (Some(2), Some(-3), Some(0)));
    assert_eq!(row["cuspidal"], true);
    assert_eq!(row["series"], "sp");

    let row = &json(&["symbol", "1,0|2"])[0];
    assert_eq!((row["rank"].as_u64(), row["defect"].as_i64(), row["delta"].as_u64()), (Some(2), Some(1), Some(2)));
    assert_eq!(row["upsilon"], "[]/[2]");

    let row = &json(&["symbol", "|"])[0];
    assert_eq!((row["rank"].as_u64(), row["defect"].as_i64()), (Some(0), Some(0)));
}

#[test]
fn symbols_are_printed_normalized() {
    assert_eq!(json(&["symbol", "2,1,0|2,1,0"])[0]["symbol"], "|");
}

#[test]
fn enumeration_row_counts() {
    assert_eq!(json(&["enumerate", "--group", "sp", "--rank", "0"]).len(), 1);
    assert_eq!(json(&["enumerate", "--group", "u", "--rank", "3"]).len(), 3);
    let o_plus = json(&["enumerate", "--group", "o+", "--rank", "1"]);
    assert!(o_plus.iter().all(|r| r["defect"].as_i64().unwrap().rem_euclid(4) == 0));
    let expected = howe_core::symbol::enumerate_series(howe_core::symbol::SeriesTag::new(
        howe_core::symbol::SeriesFamily::OEvenPlus,
        1,
    ))
    .unwrap();
    assert_eq!(o_plus.len(), expected.len());
}

#[test]
fn first_occurrence_of_the_rank_two_cuspidal() {
    let minus = &json(&["theta", "first", "--group", "sp", "--symbol", "|2,1,0", "--target", "o-"])[0];
    assert_eq!(minus["closed_dimension"], 2);
    assert_eq!(minus["oracle_dimension"], 2);
    assert_eq!(minus["agree"], true);
    let plus = &json(&["theta", "first", "--group", "sp", "--symbol", "|2,1,0", "--target", "o+"])[0];
    assert_eq!(plus["closed_dimension"], 8);
    assert_eq!(plus["agree"], true);
}

#[test]
fn unitary_first_occurrence() {
    let row = &json(&["theta", "first", "--group", "u", "--symbol", "2,1", "--target", "even"])[0];
    assert_eq!(row["closed_dimension"], 6);
    assert_eq!(row["agree"], true);
}

#[test]
fn trivial_pair() {
    let rows = json(&["theta", "partners", "--pair", "sp:o+", "--rank", "0", "--corank", "0"]);
    assert_eq!(rows.len(), 1);
}

#[test]
fn character_queries() {
    let literal = r#"{"family":"sp","n":3,"d0_blocks":[2],"lambda1":"1|0","lambda2":"1,0|1","sign":null}"#;
    let row = &json(&["character", "first", "--character", literal, "--target", "o+"])[0];
    assert_eq!(row["closed_dimension"], row["oracle_dimension"]);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rho.json");
    std::fs::write(&path, literal).unwrap();
    let arg = format!("@{}", path.display());
    for targets in ["even", "odd"] {
        let row = &json(&["character", "preservation", "--character", &arg, "--targets", targets])[0];
        assert_eq!(row["pass"], true);
        assert_eq!(row["lhs"], row["rhs"]);
    }
}

#[test]
fn exit_codes() {
    assert_eq!(howe(&["symbol", "1,1|"]).status.code(), Some(2));
    assert_eq!(howe(&["symbol", "x|"]).status.code(), Some(2));
    assert_eq!(howe(&["verify", "unknown-suite"]).status.code(), Some(2));
    assert_eq!(howe(&["enumerate", "--group", "q", "--rank", "1"]).status.code(), Some(2));
    assert_eq!(howe(&["theta", "first", "--group", "sp", "--symbol", "|", "--target", "o+"]).status.code(), Some(2));
    assert_eq!(howe(&["character", "first", "--character", "{}", "--target", "sp"]).status.code(), Some(2));
    assert_eq!(howe(&["verify", "symbol-lemmas", "--max-rank", "8"]).status.code(), Some(0));
}

#[test]
fn verify_reports_the_orthogonal_minus_non_uniqueness() {
    let out = howe(&["verify", "preservation-o", "--max-rank", "3", "--samples", "50", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let rows: Vec<Value> = serde_json::from_slice(&out.stdout).unwrap();
    let failing: Vec<&Value> = rows.iter().filter(|r| r["pass"] == false).collect();
    assert!(!failing.is_empty());
    assert!(failing.iter().all(|r| r["check"] == "unique-orthogonal-minus-extreme"));
}

#[test]
fn sampled_suite_passes_with_seed() {
    let rows = json(&["verify", "preservation-sp-even", "--max-rank", "10", "--seed", "42"]);
    assert!(rows.iter().all(|r| r["pass"] == true));
    assert!(rows[0]["parameters"].as_str().unwrap().contains("samples=500"));
}

#[test]
fn output_is_deterministic_and_json_round_trips() {
    let args = ["verify", "preservation-u", "--seed", "7", "--samples", "100", "--format", "json"];
    let a = howe(&args).stdout;
    let b = howe(&args).stdout;
    assert_eq!(a, b);
    let parsed: Value = serde_json::from_slice(&a).unwrap();
    let reparsed: Value = serde_json::from_str(&serde_json::to_string(&parsed).unwrap()).unwrap();
    assert_eq!(parsed, reparsed);
    let text = String::from_utf8(a).unwrap();
    let positions: Vec<usize> = ["\"suite\"", "\"check\"", "\"parameters\"", "\"expected\"", "\"actual\"", "\"pass\""]
        .iter()
        .map(|k| text.find(k).unwrap())
        .collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]), "stable key order");
}

#[test]
fn csv_and_file_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sp2.csv");
    let out = howe(&["enumerate", "--group", "sp", "--rank", "2", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("partition,symbol,rank,defect,delta,upsilon,cuspidal,series"));
    assert_eq!(lines.count(), 6);
}
