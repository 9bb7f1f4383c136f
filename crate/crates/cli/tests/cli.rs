use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_loopbracket"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = run(&full);
    let v = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    (v, out.status.code().unwrap())
}

fn terms(v: &Value) -> Vec<(String, String)> {
    v["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| (t["class"].as_str().unwrap().to_string(), t["coeff"].as_str().unwrap().to_string()))
        .collect()
}

#[test]
fn torus_bracket() {
    let (v, code) = json(&["bracket", "1", "(1,0)", "(0,1)"]);
    assert_eq!(code, 0);
    assert_eq!(terms(&v), [("(1,1)".to_string(), "1/1".to_string())]);
    let (v, _) = json(&["bracket", "1", "a1 a1 b1", "b1"]);
    assert_eq!(terms(&v), [("(2,2)".to_string(), "2/1".to_string())]);
}

#[test]
fn genus_two_brackets() {
    let (v, code) = json(&["bracket", "2", "a1", "b1"]);
    assert_eq!(code, 0);
    assert_eq!(terms(&v), [("a1 b1".to_string(), "1/1".to_string())]);
    let (v, _) = json(&["bracket", "2", "a1", "a2"]);
    assert!(terms(&v).is_empty());
    let out = run(&["bracket", "2", "b1", "a1"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "[b1, a1] = -1·[a1 b1]");
}

#[test]
fn output_is_deterministic() {
    let args = ["--json", "bracket", "2", "a1 b2 A1", "b1 a2"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["--json", "verify", "--suite", "bv", "--genus", "1", "--samples", "10", "--seed", "3"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn input_errors_exit_two() {
    let (v, code) = json(&["bracket", "2", "a3", "a1"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "parse");
    assert_eq!(run(&["bracket", "0", "a1", "a1"]).status.code(), Some(2));
    assert_eq!(run(&["cup", "1", "{not json", "{}"]).status.code(), Some(2));
    assert_eq!(run(&["--sign-config", "++", "classes", "2", "1"]).status.code(), Some(2));
}

#[test]
fn unstable_search_exits_three() {
    let (v, code) = json(&["--depth", "1", "--step", "1", "bracket", "2", "a1 b2 A1 a2", "b1 B2 a1 a1 b2"]);
    assert_eq!(code, 3);
    assert_eq!(v["error"]["kind"], "non_stabilized");
}

#[test]
fn failing_suite_exits_one() {
    let (v, code) = json(&["--sign-config", "++++", "verify", "--suite", "bv", "--genus", "1", "--samples", "10"]);
    assert_eq!(code, 1);
    assert_eq!(v["passed"], false);
    let failing = v["results"].as_array().unwrap().iter().find(|r| r["passed"] == false).unwrap();
    assert!(failing["counterexample"].is_object());
}

#[test]
fn element_round_trip_through_operations() {
    let x = r#"{"genus":1,"h1":{"alpha":["1/1","0/1"]}}"#;
    let y = r#"{"genus":1,"h1":{"loops":{"genus":1,"terms":[{"coeff":"1/1","class":"(0,1)"}]}}}"#;
    let (cup, code) = json(&["cup", "1", x, y]);
    assert_eq!(code, 0);
    assert_eq!(terms(&cup["h2"]), [("(0,1)".to_string(), "-1/1".to_string())]);
    // the output of one command is valid input to the next
    let (d, code) = json(&["delta", "1", &cup.to_string()]);
    assert_eq!(code, 0);
    assert_eq!(terms(&d["h1"]["loops"]), [("(0,1)".to_string(), "-1/1".to_string())]);
    let (g, code) = json(&["gerstenhaber", "1", y, &d.to_string()]);
    assert_eq!(code, 0);
    assert!(terms(&g["h1"]["loops"]).is_empty());
}

#[test]
fn element_files() {
    let dir = std::env::temp_dir().join(format!("loopbracket-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("x.json");
    std::fs::write(&path, r#"{"genus":2,"h2":{"genus":2,"terms":[{"coeff":"2/3","class":"b1 a1"}]}}"#).unwrap();
    let (d, code) = json(&["delta", "2", path.to_str().unwrap()]);
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(code, 0);
    assert_eq!(terms(&d["h1"]["loops"]), [("a1 b1".to_string(), "2/3".to_string())]);
}

#[test]
fn classes_and_dimensions() {
    let (v, code) = json(&["classes", "2", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["count"], 41);
    assert_eq!(v["classes"][0], "");
    assert_eq!(v["dimensions"]["HH0"], 1);
    assert_eq!(v["dimensions"]["HH1"], 44);
    assert_eq!(v["dimensions"]["HH2"], 41);
}

#[test]
fn rep_check_passes() {
    for g in ["2", "3"] {
        let (v, code) = json(&["rep-check", g, "--max-length", "4"]);
        assert_eq!(code, 0);
        assert_eq!(v["passed"], true);
        assert!(v["relator_error"].as_f64().unwrap() < 1e-10);
    }
}

#[test]
fn svg_output() {
    let path = std::env::temp_dir().join(format!("loopbracket-{}.svg", std::process::id()));
    let out = run(&["bracket", "2", "a1 a1", "b1", "--svg", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let svg = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("<title>").count(), 2);
}
