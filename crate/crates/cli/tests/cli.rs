use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn flatres(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flatres")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn request(genus: u32, zeros: &[u32], poles: &[u32], simple: u32, residues: &str) -> String {
    format!(
        r#"{{"format_version":1,"stratum":{{"genus":{genus},"zeros":{zeros:?},"poles":{poles:?},"simple_poles":{simple}}},"residues":{residues}}}"#
    )
}

fn witness_then_verify(dir: &Path, name: &str, req: &str, extra: &[&str]) -> Value {
    let path = dir.join(format!("{name}.json"));
    let path = path.to_str().unwrap();
    let mut args = vec!["witness", req, "-o", path];
    args.extend_from_slice(extra);
    let out = flatres(&args);
    assert_eq!(out.status.code(), Some(0), "{name}: {}", String::from_utf8_lossy(&out.stderr));
    let out = flatres(&["verify", path]);
    assert_eq!(out.status.code(), Some(0), "{name}: {}", String::from_utf8_lossy(&out.stdout));
    let doc = json(&out);
    assert_eq!(doc["status"], "verified");
    assert_eq!(doc["format_version"], 1);
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn excluded_ray_exits_one() {
    let out = flatres(&["decide", &request(0, &[2], &[], 4, "[1,1,-1,-1]")]);
    assert_eq!(out.status.code(), Some(1));
    let doc = json(&out);
    assert_eq!(doc["verdict"]["reason"], "excluded-primitive-ray");
    assert_eq!(doc["verdict"]["realizable"], false);
}

#[test]
fn realizable_exits_zero() {
    let out = flatres(&["decide", &request(0, &[5], &[], 7, "[3,1,1,1,-2,-2,-2]")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verdict"]["reason"], "collinear-sum-exceeds-max-zero");
}

#[test]
fn gaussians_round_trip_exactly() {
    let r = r#"[{"re":[1,2],"im":[0,1]},{"re":[0,1],"im":[1,3]},{"re":[-1,2],"im":[-1,3]}]"#;
    let out = flatres(&["decide", &request(0, &[1], &[], 3, r)]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["residues"][1]["im"], serde_json::json!([1, 3]));
    assert_eq!(doc["verdict"]["reason"], "non-collinear");
}

#[test]
fn table_rows() {
    let out = flatres(&["table", "--s-min", "2", "--s-max", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let counts: Vec<u64> = json(&out)["rows"].as_array().unwrap().iter().map(|r| r["count"].as_u64().unwrap()).collect();
    assert_eq!(counts, vec![0, 0, 1, 1, 4]);
}

#[test]
fn oracle_check_agrees() {
    for mode in ["universal", "existential"] {
        let out = flatres(&["oracle-check", "--max-s", "6", "--bound", "4", "--mode", mode]);
        assert_eq!(out.status.code(), Some(0));
        let doc = json(&out);
        assert_eq!(doc["agreement"], "100%");
        assert_eq!(doc["disagreements"], serde_json::json!([]));
    }
}

#[test]
fn witnesses_verify_in_a_separate_process() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("square", request(0, &[2], &[], 4, "[1,{\"re\":[0,1],\"im\":[1,1]},-1,{\"re\":[0,1],\"im\":[-1,1]}]")),
        ("graph", request(0, &[5], &[], 7, "[3,1,1,1,-2,-2,-2]")),
        ("stable", request(0, &[2, 2], &[], 6, "[2,1,1,-1,-1,-2]")),
        ("triangle", request(0, &[3, 3, 3], &[3, 2, 2, 2, 2], 0, "[0,0,0,0,0]")),
        ("hub", request(0, &[3, 1], &[3, 2], 1, "[2,-3,1]")),
        ("torus", request(1, &[4], &[], 4, "[1,1,-1,-1]")),
        ("genus-two", request(2, &[6], &[2, 2], 0, "[1,-1]")),
        ("holomorphic", request(3, &[2, 1, 1], &[], 0, "[]")),
    ];
    for (name, req) in &cases {
        witness_then_verify(dir.path(), name, req, &[]);
    }
    let doc = witness_then_verify(dir.path(), "rotation", &request(1, &[6], &[3, 3], 0, "[0,0]"), &["--rotation", "3"]);
    assert_eq!(doc["certificate"]["rotation"]["rotation"], 3);
}

#[test]
fn witness_refusal_exits_one() {
    let out = flatres(&["witness", &request(0, &[2], &[2, 2], 0, "[0,0]")]);
    assert_eq!(out.status.code(), Some(1));
    let doc = json(&out);
    assert_eq!(doc["realizable"], false);
    assert_eq!(doc["reason"], "zero-vector-excluded-by-large-zero");
    let out = flatres(&["witness", &request(1, &[6], &[3, 3], 0, "[0,0]"), "--rotation", "5"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn tampered_witness_is_a_violation() {
    let dir = tempfile::tempdir().unwrap();
    let mut doc = witness_then_verify(dir.path(), "base", &request(0, &[2], &[2, 2], 0, "[1,-1]"), &[]);
    doc["residues"] = serde_json::json!([-1, 1]);
    let path = dir.path().join("flipped.json");
    std::fs::write(&path, doc.to_string()).unwrap();
    let out = flatres(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["status"], "violation");

    let mut doc = witness_then_verify(dir.path(), "base2", &request(0, &[2], &[2, 2], 0, "[1,-1]"), &[]);
    doc["certificate"]["claimed"]["genus"] = serde_json::json!(1);
    std::fs::write(&path, doc.to_string()).unwrap();
    assert_eq!(flatres(&["verify", path.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn output_is_deterministic() {
    let req = request(0, &[2, 2], &[], 6, "[2,1,1,-1,-1,-2]");
    let a = flatres(&["witness", &req]);
    let b = flatres(&["witness", &req]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(flatres(&["table", "--s-max", "7"]).stdout, flatres(&["table", "--s-max", "7"]).stdout);
}

#[test]
fn svg_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("w.svg");
    let out = flatres(&["witness", &request(0, &[5], &[], 7, "[3,1,1,1,-2,-2,-2]"), "--svg", svg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg"));
    assert!(text.trim_end().ends_with("</svg>"));
}

#[test]
fn malformed_documents_exit_two() {
    let out = flatres(&["decide", r#"{"format_version":1,"stratum":{"genus":0,"zeros":"x"},"residues":[]}"#]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("stratum.zeros"));

    let out = flatres(&["decide", r#"{"stratum":{"genus":0,"zeros":[2],"simple_poles":4},"residues":[1,1,-1,-1]}"#]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("format_version"));

    let out = flatres(&["decide", &request(0, &[2], &[], 4, "[1,1,-1]")]);
    assert_eq!(out.status.code(), Some(2));

    let out = flatres(&["decide", &request(0, &[2], &[], 4, r#"[{"re":[1,0],"im":[0,1]},1,-1,-1]"#)]);
    assert_eq!(out.status.code(), Some(2));

    let out = flatres(&["decide", "/nonexistent/request.json"]);
    assert_eq!(out.status.code(), Some(2));

    assert_eq!(flatres(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn cylinder_questions() {
    let req = |genus: u32, zeros: &str, lambda: &str| {
        format!(r#"{{"format_version":1,"stratum":{{"genus":{genus},"zeros":{zeros}}},"circumferences":{lambda}}}"#)
    };
    let out = flatres(&["cylinders", &req(4, "[6]", "[1,1,1,1]")]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["status"], "not-realizable");

    let out = flatres(&["cylinders", &req(4, "[6]", r#"[1,{"re":[1,1],"im":[1,1]},2]"#)]);
    assert_eq!(out.status.code(), Some(0));

    let out = flatres(&["cylinders", &req(4, "[4,1,1]", "[1,1,1,1]")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["configuration"].is_object());

    let out = flatres(&["cylinders", &req(2, "[2]", "[1,1,1]")]);
    assert_eq!(out.status.code(), Some(2));
}
