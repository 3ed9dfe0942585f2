use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn faberkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_faberkit")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn csv_rows(bytes: &[u8]) -> (csv::StringRecord, Vec<csv::StringRecord>) {
    let mut r = csv::Reader::from_reader(bytes);
    let header = r.headers().unwrap().clone();
    let rows = r.records().collect::<Result<Vec<_>, _>>().unwrap();
    (header, rows)
}

#[test]
fn invert_geometric_coefficients() {
    let out = faberkit(&["invert", "--coeffs", "1,1,1", "--order", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["match"], true);
    let b: Vec<&str> = v["rows"].as_array().unwrap().iter().map(|r| r["faber"].as_str().unwrap()).collect();
    assert_eq!(b, ["-1", "1", "-1"]);
    assert_eq!(v["rows"][0]["faber_decimal"], "-1.000000000000");
}

#[test]
fn invert_identity_and_random_mode() {
    let out = faberkit(&["invert", "--coeffs", "0,0", "--order", "3", "--format", "csv"]);
    let (_, rows) = csv_rows(&out.stdout);
    assert!(rows.iter().all(|r| &r[1] == "0" && &r[3] == "0"));

    let out = faberkit(&["invert", "--coeffs", "a", "--order", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 9);
    assert!(rows.iter().all(|r| r["closed_form"] == r["faber"] && r["match"] == true));
    assert_eq!(out.stdout, faberkit(&["invert", "--coeffs", "a", "--order", "4"]).stdout);
}

#[test]
fn malformed_input_exits_with_one() {
    for args in [
        &["invert", "--coeffs", "1,/2"][..],
        &["invert", "--coeffs", "1,1,1", "--order", "2"],
        &["bounds", "--mu", "1", "--lambda", "0.5"],
        &["bounds", "--mu", "-1"],
        &["bounds", "--n", "3"],
        &["verify", "--coeffs", "1/10", "--phi", "wedge:1"],
        &["verify", "--coeffs", "1/10", "--radius-list", "0.5,1.2"],
        &["faber", "--coeffs", "1", "--p", "0"],
        &["frobnicate"],
    ] {
        assert_eq!(faberkit(args).status.code(), Some(1), "{args:?}");
    }
    let out = faberkit(&["bounds", "--mu", "1", "--lambda", "0.5"]);
    assert!(stderr(&out).contains("lambda >= 1"));
}

#[test]
fn bounds_tables() {
    let v = json(&faberkit(&["bounds", "--mu", "1", "--lambda", "1", "--delta", "0", "--n", "4"]));
    assert_eq!(v["a2_bound"], "1");
    assert_eq!(v["a3_bound"], "5/3");
    assert_eq!(v["a3_bound_decimal"], "1.666666666667");
    assert_eq!(v["rows"][2]["quantity"], "a4");
    assert_eq!(v["rows"][2]["bound"], "1/2");

    let out = faberkit(&["bounds", "--mu", "0", "--lambda", "1", "--delta", "0", "--format", "csv"]);
    let (header, rows) = csv_rows(&out.stdout);
    assert_eq!(&header[0], "quantity");
    assert_eq!((&rows[0][0], &rows[0][1], &rows[0][3]), ("a2", "2", "linear"));
}

#[test]
fn bounds_with_delta_warn_and_strict_exits_three() {
    let out = faberkit(&["bounds", "--delta", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stderr(&out).contains("warning: delta > 0"));
    assert_eq!(faberkit(&["bounds", "--delta", "1", "--strict"]).status.code(), Some(3));
    assert_eq!(faberkit(&["bounds", "--delta", "0", "--strict"]).status.code(), Some(0));
}

#[test]
fn faber_matches_power_route() {
    let v = json(&faberkit(&["faber", "--coeffs", "1/2,-1/3,2", "--p", "-3/2", "--n", "1,2,3"]));
    assert_eq!(v["match"], true);
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
    // K_1^p = p a_2
    assert_eq!(v["rows"][0]["value"], "-3/4");
}

#[test]
fn expand_reports_the_second_functional_gap() {
    let out = faberkit(&["expand", "--coeffs", "0,1/10", "--mu", "1", "--lambda", "1", "--delta", "1"]);
    let v = json(&out);
    assert_eq!(v["rows"][1]["direct"], "9/10");
    assert_eq!(v["rows"][1]["published"], "27/10");
    assert_eq!(v["rows"][1]["difference"], "-9/5");
    assert!(stderr(&out).contains("F_2"));
    assert_eq!(faberkit(&["expand", "--coeffs", "0,1/10", "--delta", "1", "--strict"]).status.code(), Some(3));
    let v = json(&faberkit(&["expand", "--coeffs", "1/3,1/10", "--delta", "0", "--strict"]));
    assert!(v["rows"].as_array().unwrap().iter().all(|r| r["consistent"] == true));
}

#[test]
fn verify_members_pass_the_audit() {
    let v = json(&faberkit(&["verify", "--coeffs", "1/10", "--mu", "1", "--lambda", "1", "--delta", "0"]));
    assert_eq!(v["verdict"], "member");
    assert_eq!(v["counterexamples"], 0);
    assert_eq!(v["rows"][0]["target"], "a2");
    assert_eq!(v["rows"][0]["holds"], true);

    let v = json(&faberkit(&["verify", "--coeffs", "0,0,0.1", "--mu", "1", "--lambda", "1", "--delta", "0"]));
    assert_eq!(v["verdict"], "member");
    let gap = v["rows"].as_array().unwrap().iter().find(|r| r["target"] == "a4").unwrap();
    assert_eq!((gap["coefficient"].as_str(), gap["bound"].as_str()), (Some("1/10"), Some("1/2")));

    let v = json(&faberkit(&["verify", "--coeffs", "", "--mu", "3/2", "--lambda", "2", "--delta", "1/2"]));
    assert_eq!(v["verdict"], "member");
}

#[test]
fn verify_subordination_outside_the_halfplane() {
    let out = faberkit(&[
        "verify",
        "--coeffs",
        "0.4",
        "--alpha",
        "1/2",
        "--phi",
        "halfplane:1/2",
        "--samples",
        "512",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let (header, rows) = csv_rows(&out.stdout);
    assert_eq!(&header[0], "verdict");
    assert_eq!(&rows[0][0], "non-member");
    assert_eq!(&rows[0][2], "SKIPPED");
}

fn write_config(dir: &Path, body: &str) -> String {
    let path = dir.join("sweep.json");
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn sweep_cardinality_order_and_warnings() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        r#"{
  "mu": {"start": 0, "stop": 1, "step": "1/2"},
  "lambda": [1, 2, 3],
  "delta": [0, 1],
  "corpus": [[], ["1/10"], {"label": "gap", "coeffs": [0, 0, "1/10"]}, [0.25]],
  "grid": {"samples_per_circle": 128, "radii": [0.5, 0.9]},
  "output": "csv"
}"#,
    );
    let out = faberkit(&["sweep", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let (header, rows) = csv_rows(&out.stdout);
    assert_eq!(rows.len(), 72);
    assert_eq!(&header[0], "mu");
    assert_eq!(header.iter().next_back(), Some("warning"));
    let col = |name: &str| header.iter().position(|h| h == name).unwrap();
    let keys: Vec<(String, String, String, String)> = rows
        .iter()
        .map(|r| {
            (
                r[col("mu")].to_string(),
                r[col("lambda")].to_string(),
                r[col("delta")].to_string(),
                r[col("function")].to_string(),
            )
        })
        .collect();
    assert_eq!(keys[0], ("0".into(), "1".into(), "0".into(), "z".into()));
    assert_eq!(keys[3].3, "z+(1/4)z^2");
    assert_eq!(keys[4].2, "1");
    assert_eq!(keys[71].0, "1");
    for r in &rows {
        let warned = !r[col("warning")].is_empty();
        assert_eq!(warned, &r[col("delta")] == "1", "{r:?}");
    }
    let gap = rows.iter().find(|r| &r[col("function")] == "gap").unwrap();
    assert_eq!((&gap[col("gap_n")], &gap[col("gap_coefficient")]), ("4", "1/10"));

    assert_eq!(faberkit(&["sweep", "--config", &cfg, "--strict"]).status.code(), Some(3));
}

#[test]
fn sweep_json_output_and_default_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let cfg =
        write_config(dir.path(), r#"{"mu": [1], "lambda": [1], "delta": [0], "grid": {"samples_per_circle": 64}}"#);
    let out = faberkit(&["sweep", "--config", &cfg]);
    let v = json(&out);
    assert_eq!(v["command"], "sweep");
    assert_eq!(v["corpus_size"], 12);
    assert_eq!(v["rows"].as_array().unwrap().len(), 12);
    assert_eq!(v["rows"][0]["a2_bound"], "1");
    let csv_out = faberkit(&["sweep", "--config", &cfg, "--format", "csv"]);
    assert_eq!(csv_rows(&csv_out.stdout).1.len(), 12);
}

#[test]
fn sweep_config_errors_name_the_field() {
    let dir = tempfile::tempdir().unwrap();
    for (body, needle) in [
        ("{\"mu\": [0], \"lambda\": [1],\n \"delta\": [0], \"mux\": 1}", "line 2"),
        (r#"{"mu": [0], "lambda": [1], "delta": [0], "grid": {"samples_per_circle": "x"}}"#, "grid.samples_per_circle"),
        (r#"{"mu": [0], "lambda": [0.5], "delta": [0]}"#, "lambda >= 1"),
        (r#"{"mu": {"start": 0, "stop": 1, "step": 0}, "lambda": [1], "delta": [0]}"#, "`mu`"),
        (r#"{"mu": [0], "lambda": [1], "delta": [0], "phi": "disk:3"}"#, "`phi`"),
        (r#"{"mu": [0], "lambda": [1], "delta": [0], "order": 3, "corpus": [[1, 2, 3]]}"#, "corpus[0]"),
        ("{\"mu\": [0]", "line 1"),
    ] {
        let cfg = write_config(dir.path(), body);
        let out = faberkit(&["sweep", "--config", &cfg]);
        assert_eq!(out.status.code(), Some(1), "{body}");
        assert!(stderr(&out).contains(needle), "{body}: {}", stderr(&out));
    }
    assert_eq!(faberkit(&["sweep", "--config", "/nonexistent/sweep.json"]).status.code(), Some(1));
}
