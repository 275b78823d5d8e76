use std::process::{Command, Output};

use serde_json::Value;

fn qunit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qunit")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = qunit(&all);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn state_file(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn decompose_reports_block_sums() {
    let doc = json(&["decompose", "--N", "3", "--n", "2"]);
    assert_eq!(doc["command"], "decompose");
    assert_eq!(doc["payload"]["sum"], "4 + 2 + 2 + 0");
    assert_eq!(doc["payload"]["hilbert_dim"], 8);
    let doc = json(&["decompose", "--N", "4", "--n", "3"]);
    assert_eq!(doc["payload"]["total"], 81);
    assert_eq!(doc["payload"]["consistent"], true);
}

#[test]
fn classes_of_s4() {
    let doc = json(&["classes", "--N", "4"]);
    let sizes: Vec<u64> =
        doc["payload"]["classes"].as_array().unwrap().iter().map(|c| c["size"].as_u64().unwrap()).collect();
    assert_eq!(sizes, vec![6, 8, 3, 6, 1]);
    assert_eq!(doc["payload"]["group_order"], 24);
}

#[test]
fn mes_lists_four_bell_states() {
    let doc = json(&["mes", "--N", "2"]);
    assert_eq!(doc["payload"]["count"], 4);
    let first = &doc["payload"]["states"][0];
    assert_eq!(first["combination"], "plus");
    let terms = first["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    assert_eq!(terms[0]["basis"], "11");
    assert_eq!(terms[0]["re"].to_string(), "0.707106781187");
}

#[test]
fn coupled_basis_needs_qubits() {
    assert_eq!(qunit(&["basis", "--N", "2", "--n", "3", "--coupled"]).status.code(), Some(3));
    let doc = json(&["basis", "--N", "3", "--n", "2", "--coupled"]);
    assert_eq!(doc["payload"]["states"], 8);
    let doc = json(&["basis", "--N", "2", "--n", "3"]);
    assert_eq!(doc["payload"]["states"], 9);
}

#[test]
fn measure_ghz() {
    let dir = tempfile::tempdir().unwrap();
    let path = state_file(
        &dir,
        "ghz.json",
        r#"{"n": 2, "N": 3, "terms": [{"re": 1, "im": 0, "digits": [1,1,1]}, {"re": 1, "im": 0, "digits": [2,2,2]}]}"#,
    );
    let out = qunit(&["measure", "--state", &path, "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("renormalized"));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    let payload = &doc["payload"];
    for s in payload["per_particle_entropy"].as_array().unwrap() {
        assert_eq!(s.as_f64().unwrap(), 1.0);
    }
    assert_eq!(payload["concurrence"]["spin_flip_global"], 0.0);
    assert_eq!(payload["product_blocks"].as_array().unwrap().len(), 1);
    assert_eq!(payload["sectors"][0]["weight"], 1.0);
    assert!(!doc["warnings"].as_array().unwrap().is_empty());

    let all = json(&["measure", "--state", &path, "--bipartitions", "all"]);
    assert_eq!(all["payload"]["entropies"].as_array().unwrap().len(), 3);
}

#[test]
fn state_file_errors() {
    let dir = tempfile::tempdir().unwrap();
    let broken = state_file(&dir, "broken.json", "{\"n\": 2,");
    assert_eq!(qunit(&["measure", "--state", &broken]).status.code(), Some(2));
    let empty = state_file(&dir, "empty.json", r#"{"n": 2, "N": 2, "terms": []}"#);
    assert_eq!(qunit(&["measure", "--state", &empty]).status.code(), Some(3));
    let range = state_file(&dir, "range.json", r#"{"n": 2, "N": 2, "terms": [{"re": 1, "im": 0, "digits": [1, 3]}]}"#);
    assert_eq!(qunit(&["measure", "--state", &range]).status.code(), Some(3));
    assert_eq!(qunit(&["measure", "--state", "/nonexistent/state.json"]).status.code(), Some(3));
}

#[test]
fn usage_and_limits() {
    assert_eq!(qunit(&["decompose", "--N", "3"]).status.code(), Some(1));
    assert_eq!(qunit(&["mes", "--N", "2", "--format", "yaml"]).status.code(), Some(1));
    assert_eq!(qunit(&["mes", "--N", "11"]).status.code(), Some(3));
    assert_eq!(qunit(&["dicke-profile", "--N", "13"]).status.code(), Some(3));
    assert_eq!(qunit(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_exit_codes() {
    let out = qunit(&["verify", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["payload"]["structural_passed"], true);
    let statuses: Vec<&str> =
        doc["payload"]["claims"].as_array().unwrap().iter().map(|c| c["status"].as_str().unwrap()).collect();
    assert_eq!(statuses[0], "verified");
    assert_eq!(qunit(&["verify", "--strict"]).status.code(), Some(4));
}

#[test]
fn output_is_deterministic_and_formats_agree() {
    let a = qunit(&["mes", "--N", "3", "--format", "json"]).stdout;
    let b = qunit(&["mes", "--N", "3", "--format", "json"]).stdout;
    assert_eq!(a, b);

    let doc = json(&["dicke-profile", "--N", "4"]);
    let from_json: Vec<String> = doc["payload"]["points"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| qunit::cli::fmt_num(p["entropy"].as_f64().unwrap()))
        .collect();
    let csv = String::from_utf8(qunit(&["dicke-profile", "--N", "4", "--format", "csv"]).stdout).unwrap();
    let mut reader = csv::ReaderBuilder::new().flexible(true).from_reader(csv.as_bytes());
    let from_csv: Vec<String> = reader.records().map(|r| r.unwrap()[2].to_string()).collect();
    assert_eq!(from_json, from_csv);
    let text = String::from_utf8(qunit(&["dicke-profile", "--N", "4"]).stdout).unwrap();
    for value in &from_csv {
        assert!(text.contains(value.as_str()));
    }
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = qunit(&["decompose", "--N", "2", "--n", "2", "--format", "json", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(doc["payload"]["sum"], "3 + 1");
}

#[test]
fn envelope_round_trips() {
    let out = qunit(&["verify", "--format", "json"]).stdout;
    let env: qunit::cli::Envelope = serde_json::from_slice(&out).unwrap();
    let again = serde_json::to_vec_pretty(&env).unwrap();
    assert_eq!(String::from_utf8(again).unwrap().trim_end(), String::from_utf8(out).unwrap().trim_end());
}
