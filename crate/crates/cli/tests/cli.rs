use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn golden(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("golden").join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_schemelink")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    serde_json::from_str(&stdout(&a)).unwrap()
}

fn temp_file(name: &str, body: &str) -> String {
    let dir = std::env::temp_dir().join(format!("schemelink-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn analyze_reads_both_example_files() {
    let w = json(&["analyze", &golden("example36_W.json")]);
    assert_eq!(w["degree"], 9);
    assert_eq!(w["regularity_index"], 4);
    assert_eq!(w["complete_intersection"], serde_json::json!([3, 3]));
    let x = json(&["analyze", &golden("example36_X.json")]);
    assert_eq!(x["degree"], 5);
    assert_eq!(x["arithmetically_gorenstein"], false);
    let text = stdout(&["analyze", &golden("example36_W.json")]);
    assert!(text.contains("hf: 0:1 1:3 2:6 3:8 4:9\n"), "{text}");
}

#[test]
fn residual_describes_y_and_passes() {
    let w = golden("example36_W.json");
    let v = json(&["residual", "-w", &w, &golden("example36_X.json")]);
    assert_eq!(v["residual"]["degree"], 4);
    assert_eq!(v["alpha_y"], 2);
    assert_eq!(v["report"]["all_pass"], true);
    let text = stdout(&["residual", "-w", &w, &golden("example36_X.json")]);
    assert!(text.contains("linkage report: all pass"));
}

#[test]
fn self_link_gives_an_explicit_empty_residual() {
    let w = golden("example36_W_components.json");
    let text = stdout(&["residual", "-w", &w, &w]);
    assert!(text.contains("Y: empty scheme\ndeg: 0"), "{text}");
    let v = json(&["residual", "-w", &w, &w]);
    assert_eq!(v["residual"]["empty"], true);
}

#[test]
fn link_report_is_a_flat_record() {
    let v = json(&["link-report", "-w", &golden("example36_W.json"), &golden("example37_Xprime.json")]);
    assert_eq!(v["all_pass"], true);
    assert_eq!(v["geometric"], false);
    assert_eq!(v["shared_points"], serde_json::json!([3]));
}

#[test]
fn cbp_single_degree_prints_the_agreement_table() {
    let args = ["cbp", "--d", "1", "-w", &golden("example36_W.json"), &golden("example36_X.json")];
    let text = stdout(&args);
    assert!(text.starts_with("CBP(1): true\n"), "{text}");
    for m in ["canonical", "piece", "colon", "separators", "annihilator"] {
        assert!(text.contains(m), "{m} missing");
    }
    let v = json(&args);
    assert_eq!(v["verdict"], true);
    assert_eq!(v["verdicts"].as_array().unwrap().len(), 5);
}

#[test]
fn cbp_profile_and_single_method() {
    let v = json(&["cbp", &golden("p1_quartic.json")]);
    assert_eq!(v["max_d"], 2);
    assert_eq!(v["methods"], serde_json::json!(["canonical"]));
    let v = json(&["cbp", "--method", "separators", &golden("example37_Xprime.json")]);
    assert_eq!(v["max_d"], 1);
    let v = json(&["cbp", "-w", &golden("example36_W.json"), "--d", "1", "--method", "annihilator", &golden("example37_Xprime.json")]);
    assert_eq!(v["verdict"], Value::Null);
    assert_eq!(v["verdicts"][0]["verdict"], "inconclusive");
}

#[test]
fn separators_and_point_degrees() {
    let v = json(&["separators", "--point", "3", &golden("example37_Xprime.json")]);
    assert_eq!(v[0]["mu"], 2);
    let v = json(&["point-degrees", &golden("example36_X.json")]);
    assert_eq!(v["degrees"], serde_json::json!([2, 2, 2, 2]));
}

#[test]
fn dedekind_of_the_complete_intersection() {
    let v = json(&["dedekind", &golden("example37_Xprime.json")]);
    assert_eq!(v["hf_delta"], serde_json::json!([0, 0, 1, 3, 4]));
    assert_eq!(v["checks"]["shifted_equality"], true);
    let text = stdout(&["dedekind", &golden("example37_Xprime.json")]);
    assert!(text.contains("hf_delta: 0:0 1:0 2:1 3:3 4:4"));
}

#[test]
fn envelope_file_links_back() {
    let dir = std::env::temp_dir().join(format!("schemelink-env-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("w.json").to_string_lossy().into_owned();
    let x = golden("example36_X.json");
    let v = json(&["ci-envelope", "--seed", "11", "--out", &out, &x]);
    assert_eq!(v["degrees"], serde_json::json!([3, 3]));
    let r = json(&["link-report", "-w", &out, &x]);
    assert_eq!(r["all_pass"], true);
    assert_eq!(r["geometric"], true);
}

#[test]
fn selftest_passes() {
    let text = stdout(&["selftest"]);
    assert!(text.ends_with("selftest: all pass\n"), "{text}");
    assert!(!text.contains("FAIL"));
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    let x = golden("example36_X.json");
    for args in [
        vec!["dedekind", "--seed", "5", &x],
        vec!["ci-envelope", "--seed", "2", &x],
        vec!["cbp", "-w", &golden("example36_W.json"), &x],
    ] {
        let mut a = args.clone();
        a.extend(["--format", "json"]);
        assert_eq!(stdout(&a), stdout(&a));
    }
}

#[test]
fn json_verdicts_round_trip() {
    let text = stdout(&["cbp", "--d", "0", &golden("example36_X.json"), "--format", "json"]);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", text);
}

#[test]
fn field_override_switches_to_a_prime_field() {
    let v = json(&["analyze", "--field", "Fp:32003", &golden("example36_X.json")]);
    assert_eq!(v["field"], "Fp:32003");
    assert_eq!(v["degree"], 5);
    let v = json(&["analyze", &temp_file("fp.json", r#"{"field": {"Fp": 7}, "vars": 2, "components": [{"point": [1, 3]}]}"#)]);
    assert_eq!(v["field"], "Fp:7");
}

#[test]
fn validation_errors_exit_with_two() {
    let cases = [
        ("hyperplane.json", r#"{"vars": 3, "components": [{"point": [0, 1, 0]}]}"#, "support meets"),
        ("dup.json", r#"{"vars": 3, "components": [{"point": [1, 1, 0]}, {"point": [2, 2, 0]}]}"#, "repeats"),
        ("malformed.json", r#"{"vars": 3, "components": ["#, "malformed"),
        ("unsat.json", r#"{"vars": 3, "mode": "raw", "gens": ["X0*X1", "X0*X2", "X1^2", "X1*X2", "X2^2"]}"#, "saturated"),
        ("badpoly.json", r#"{"vars": 3, "mode": "raw", "gens": ["X1 + + X2"]}"#, "parse error at 5"),
    ];
    for (name, body, needle) in cases {
        let out = run(&["analyze", &temp_file(name, body)]);
        assert_eq!(out.status.code(), Some(2), "{name}");
        let err = String::from_utf8_lossy(&out.stderr).to_lowercase();
        assert!(err.contains(needle), "{name}: {err}");
    }
    let out = run(&["analyze", "--field", "Fp:32004", &golden("example36_X.json")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unmet_preconditions_exit_with_three() {
    let cases: [Vec<String>; 4] = [
        vec!["residual".into(), "-w".into(), golden("example36_X.json"), golden("example36_W.json")],
        vec![
            "residual".into(),
            "-w".into(),
            golden("example36_W.json"),
            temp_file("offside.json", r#"{"vars": 3, "components": [{"point": [1, 5, 5]}]}"#),
        ],
        vec!["separators".into(), golden("example36_W.json")],
        vec!["cbp".into(), "--d".into(), "0".into(), "--method".into(), "annihilator".into(), golden("example36_X.json")],
    ];
    for args in cases {
        let a: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = run(&a);
        assert_eq!(out.status.code(), Some(3), "{a:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn exhausted_envelope_search_exits_with_four() {
    // Three collinear points: every linear form through them is a multiple
    // of X2, so two of them never cut out a complete intersection.
    let x = temp_file(
        "collinear.json",
        r#"{"vars": 3, "components": [{"point": [1, 0, 0]}, {"point": [1, 1, 0]}, {"point": [1, 2, 0]}]}"#,
    );
    let out = run(&["ci-envelope", "--degrees", "1,1", &x]);
    assert_eq!(out.status.code(), Some(4), "{}", String::from_utf8_lossy(&out.stderr));
}
