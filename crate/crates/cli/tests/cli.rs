use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dyckwalk"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = run(args);
    let v = serde_json::from_slice(&out.stdout).expect("stdout is one JSON object");
    (out.status.code().unwrap(), v)
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_str().expect("counts are strings").to_string())
        .collect()
}

#[test]
fn table_rows() {
    for (n, expected) in [
        ("1", vec!["1", "1", "1", "1", "1"]),
        ("2", vec!["1", "1", "2", "4", "8"]),
        ("0", vec!["1", "0", "0"]),
    ] {
        let kmax = (expected.len() - 1).to_string();
        let (code, v) = json(&["table", "--n", n, "--kmax", &kmax]);
        assert_eq!(code, 0);
        assert_eq!(v["command"], "table");
        assert_eq!(v["status"], "ok");
        assert_eq!(v["results"]["n"], n.parse::<u64>().unwrap());
        assert_eq!(strings(&v["results"]["counts"]), expected);
        assert!(v["elapsed_ms"].as_f64().unwrap() >= 0.0);
    }
}

#[test]
fn csv_and_json_tables_agree() {
    let (_, v) = json(&["table", "--n", "7", "--kmax", "45"]);
    let out = run(&["table", "--n", "7", "--kmax", "45", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,k,count"));
    let csv_counts: Vec<String> = lines
        .enumerate()
        .map(|(k, line)| {
            let cells: Vec<&str> = line.split(',').collect();
            assert_eq!(cells[0], "7");
            assert_eq!(cells[1], k.to_string());
            cells[2].to_string()
        })
        .collect();
    assert_eq!(csv_counts, strings(&v["results"]["counts"]));
}

#[test]
fn json_record_reserializes_identically() {
    let out = run(&["hpoly", "--m", "9"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let v: Value = serde_json::from_str(text.trim()).unwrap();
    let once = serde_json::to_string(&v).unwrap();
    let again: Value = serde_json::from_str(&once).unwrap();
    assert_eq!(again, v);
    assert_eq!(serde_json::to_string(&again).unwrap(), once);
}

#[test]
fn verify_grids() {
    for (n, k) in [("6", "10"), ("0", "0"), ("8", "12")] {
        let (code, v) = json(&["verify", "--n-max", n, "--k-max", k]);
        assert_eq!(code, 0, "{v}");
        assert_eq!(v["status"], "ok");
        assert_eq!(v["results"]["mismatches"].as_array().unwrap().len(), 0);
    }
    let (_, v) = json(&["verify", "--n-max", "8", "--k-max", "12"]);
    assert_eq!(v["results"]["cells_checked"], 9 * 13);
    assert!(v["elapsed_ms"].as_f64().unwrap() < 10_000.0);
}

#[test]
fn verify_past_bruteforce_limit() {
    let (code, v) = json(&["verify", "--n-max", "3", "--k-max", "20"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["bruteforce_cells"], 4 * 15);
}

#[test]
fn walk_with_exact_probability() {
    let (code, v) = json(&[
        "walk", "--m", "3", "--p", "1/3", "--trials", "1000000", "--seed", "42",
    ]);
    assert_eq!(code, 0);
    let r = &v["results"];
    assert_eq!(v["parameters"]["p_path"], "exact");
    assert_eq!(r["pi_exact"], "3/7");
    assert_eq!(r["l_exact"], "11/7");
    assert_eq!(r["fl_exact"], "99/49");
    assert_eq!(r["truncated"], 0);
    assert!(r["pi_z"].as_f64().unwrap().abs() < 5.0);
    assert!(r["l_z"].as_f64().unwrap().abs() < 5.0);
    assert_eq!(
        r["hits_right"].as_u64().unwrap() + r["hits_left"].as_u64().unwrap(),
        1_000_000
    );
}

#[test]
fn walk_with_decimal_probability() {
    let (code, v) = json(&[
        "walk", "--m", "2", "--p", "0.3", "--trials", "1000", "--seed", "1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["parameters"]["p_path"], "decimal");
    assert_eq!(v["results"]["l_hat"].as_f64(), Some(1.0));
    assert!(v["results"]["pi_exact"].is_null());
}

#[test]
fn walk_at_one_half_has_no_exact_values() {
    let (code, v) = json(&[
        "walk", "--m", "4", "--p", "1/2", "--trials", "1000", "--seed", "1",
    ]);
    assert_eq!(code, 0);
    let r = &v["results"];
    assert!(r["pi_exact"].is_null());
    assert!(r["l_exact"].is_null());
    assert!(r["pi_z"].is_null());
    assert!(r["note"].as_str().unwrap().contains("1/2"));
    assert!(r["pi_hat"].as_f64().unwrap() > 0.0);
}

#[test]
fn walk_csv_matches_json() {
    let args = [
        "walk", "--m", "5", "--p", "2/5", "--trials", "20000", "--seed", "9",
    ];
    let (_, v) = json(&args);
    let mut csv_args = args.to_vec();
    csv_args.extend(["--format", "csv"]);
    let text = String::from_utf8(run(&csv_args).stdout).unwrap();
    let r = v["results"].as_object().unwrap();
    for line in text.lines().skip(1) {
        let (field, value) = line.split_once(',').unwrap();
        let expected = match &r[field] {
            Value::Null => String::new(),
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        assert_eq!(value, expected, "field {field}");
    }
}

#[test]
fn hpoly_coefficients() {
    for (m, expected) in [
        ("5", vec!["1", "-3", "1"]),
        ("1", vec!["1"]),
        ("7", vec!["1", "-5", "6", "-1"]),
    ] {
        let (code, v) = json(&["hpoly", "--m", m]);
        assert_eq!(code, 0);
        assert_eq!(strings(&v["results"]["coeffs"]), expected);
    }
}

#[test]
fn domain_and_usage_errors_exit_2() {
    let (code, v) = json(&["hpoly", "--m", "0"]);
    assert_eq!(code, 2);
    assert_eq!(v["status"], "error");

    let (code, v) = json(&["walk", "--m", "1", "--p", "1/3", "--trials", "10"]);
    assert_eq!(code, 2);
    assert_eq!(v["status"], "error");

    for args in [
        &["table", "--n", "2"][..],
        &["table", "--n", "-1", "--kmax", "3"],
        &["walk", "--m", "3", "--p", "x", "--trials", "10"],
        &["bogus"],
        &["table", "--n", "1", "--kmax", "2", "--format", "xml"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}
