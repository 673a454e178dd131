use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cobordkit"))
        .args(args)
        .env_remove("COBORDKIT_FORMAT")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn chern_standard_rows() {
    let o = run(&[
        "chern",
        "--n",
        "2",
        "--a",
        "5",
        "--structure",
        "standard",
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows[0]["partition"], serde_json::json!([2]));
    assert_eq!(rows[0]["ring"], 4);
    assert_eq!(rows[1]["partition"], serde_json::json!([1, 1]));
    assert_eq!(rows[1]["ring"], 8);
    assert_eq!(rows[1]["closed"], 8);
}

#[test]
fn chern_twisted_zero_and_table() {
    let o = run(&["chern", "--n", "3", "--a", "0", "--structure", "twisted"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("[1,1,1]"));
    for line in out.lines().skip(2) {
        let cells: Vec<&str> = line.split_whitespace().collect();
        assert_eq!(&cells[1..3], &["0", "0"], "{line}");
    }
}

#[test]
fn chern_single_partition_and_negative_a() {
    let o = run(&[
        "chern",
        "--n",
        "3",
        "--a",
        "-4",
        "--partition",
        "2,1",
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["rows"].as_array().unwrap().len(), 1);
    assert_eq!(v["rows"][0]["ring"], 24);
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(
        code(&run(&[
            "chern",
            "--n",
            "0",
            "--a",
            "1",
            "--structure",
            "standard"
        ])),
        2
    );
    assert_eq!(
        code(&run(&[
            "chern",
            "--n",
            "3",
            "--a",
            "1",
            "--partition",
            "2,2"
        ])),
        2
    );
    assert_eq!(
        code(&run(&[
            "verify",
            "triple",
            "--n",
            "3",
            "--a-range",
            "3..1",
            "--b",
            "0"
        ])),
        2
    );
    assert_eq!(code(&run(&["verify", "triple", "--n", "3", "--a", "1"])), 2);
    assert_eq!(
        code(&run(&["hexprism", "--n", "1", "--a", "0", "--b", "0"])),
        2
    );
    assert_eq!(code(&run(&["bogus"])), 2);
}

#[test]
fn verify_commands_pass() {
    assert_eq!(
        code(&run(&[
            "verify", "triple", "--n", "3", "--a", "2", "--b", "-1"
        ])),
        0
    );
    assert_eq!(
        code(&run(&[
            "verify",
            "independence",
            "--n",
            "4",
            "--a-range",
            "-3..3"
        ])),
        0
    );
    assert_eq!(
        code(&run(&[
            "verify",
            "twisted-null",
            "--n",
            "3",
            "--a-range",
            "-2..2"
        ])),
        0
    );
    assert_eq!(
        code(&run(&[
            "verify",
            "triple",
            "--n",
            "2",
            "--a-range",
            "-2..2",
            "--b-range",
            "-2..2"
        ])),
        0
    );
}

#[test]
fn verify_gluing_json_labels() {
    let o = run(&[
        "verify", "gluing", "--n", "2", "--a", "1", "--b", "0", "--format", "json",
    ]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let labels = &v["cases"][0]["triple"]["labels"];
    assert_eq!(labels[0], serde_json::json!({"kind": "Standard", "a": 1}));
    assert_eq!(labels[1], serde_json::json!({"kind": "Twisted", "a": -1}));
    assert_eq!(
        labels[2],
        serde_json::json!({"kind": "ConjStandard", "a": 0})
    );
}

#[test]
fn format_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_cobordkit"))
        .args(["chern", "--n", "2", "--a", "1"])
        .env("COBORDKIT_FORMAT", "json")
        .output()
        .unwrap();
    assert_eq!(json(&o)["n"], 2);
}

#[test]
fn hexprism_writes_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let o = run(&[
        "hexprism",
        "--n",
        "2",
        "--a",
        "1",
        "--b",
        "0",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("verdict: PASS"));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["params"], serde_json::json!({"n": 2, "a": 1, "b": 0}));
    assert_eq!(v["isotropy_valid"], true);
    let b = v["boundaries"].as_array().unwrap();
    assert_eq!(b.len(), 3);
    assert_eq!(
        b[0]["label"],
        serde_json::json!({"kind": "Standard", "a": 1})
    );
    assert_eq!(
        b[1]["label"],
        serde_json::json!({"kind": "Twisted", "a": -1})
    );
    assert_eq!(
        b[2]["label"],
        serde_json::json!({"kind": "Standard", "a": 0})
    );
    assert_eq!(b[2]["orientation_sign"], -1);
}

#[test]
fn hexprism_unwritable_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("cert.json");
    let o = run(&[
        "hexprism",
        "--n",
        "2",
        "--a",
        "0",
        "--b",
        "0",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 2);
}

const SQUARE: &str = r#"{"product": [{"simplex": 1}, {"simplex": 1}]}"#;

#[test]
fn charfun_square() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(
        dir.path(),
        "sq.json",
        &format!(
            r#"{{"polytope": {SQUARE}, "facet_names": ["b1","b2","f1","f2"],
               "assignment": {{"rank": 2, "vectors": {{"b1":[1,0],"b2":[-1,-1],"f1":[0,1],"f2":[0,-1]}}}}}}"#
        ),
    );
    assert_eq!(code(&run(&["charfun", "validate", "--input", &good])), 0);

    let bad = write(
        dir.path(),
        "bad.json",
        &format!(
            r#"{{"polytope": {SQUARE}, "facet_names": ["b1","b2","f1","f2"],
               "assignment": {{"rank": 2, "vectors": {{"b1":[1,0],"b2":[-1,-1],"f1":[0,2],"f2":[0,-1]}}}}}}"#
        ),
    );
    let o = run(&["charfun", "validate", "--input", &bad, "--format", "json"]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    assert_eq!(v["report"]["failure"]["value"].as_i64().unwrap().abs(), 2);

    let missing = write(
        dir.path(),
        "missing.json",
        &format!(
            r#"{{"polytope": {SQUARE}, "facet_names": ["b1","b2","f1","f2"],
               "assignment": {{"rank": 2, "vectors": {{"b1":[1,0]}}}}}}"#
        ),
    );
    assert_eq!(code(&run(&["charfun", "validate", "--input", &missing])), 2);
    assert_eq!(
        code(&run(&[
            "charfun",
            "validate",
            "--input",
            "/nonexistent.json"
        ])),
        2
    );
}

#[test]
fn charfun_isotropy() {
    let dir = tempfile::tempdir().unwrap();
    let body = |f1: &str, mode: &str| {
        format!(
            r#"{{"polytope": {{"hexagon_prism": 2}}, "marked": ["F2","F4","F6"], {mode}
               "assignment": {{"rank": 2, "vectors": {{"F1":{f1},"F3":[-1,-1],"F5":[-1,0],"F7":[0,1],"F8":[0,-1]}}}}}}"#
        )
    };
    let ok = write(dir.path(), "ok.json", &body("[1,0]", ""));
    assert_eq!(code(&run(&["charfun", "validate", "--input", &ok])), 0);
    let bad = write(dir.path(), "bad.json", &body("[2,0]", ""));
    let o = run(&["charfun", "validate", "--input", &bad, "--format", "json"]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    let vertex: Vec<String> =
        serde_json::from_value(v["isotropy"]["failure"]["vertex"].clone()).unwrap();
    assert!(vertex.contains(&"F1".to_string()) && vertex.contains(&"F2".to_string()));
    let weak = write(
        dir.path(),
        "weak.json",
        &body("[2,0]", r#""mode": "independence_only","#),
    );
    assert_eq!(code(&run(&["charfun", "validate", "--input", &weak])), 0);
}

#[test]
fn glequiv_found_and_not_found() {
    let dir = tempfile::tempdir().unwrap();
    let doc = |b2: &str, b1: &str| {
        format!(
            r#"{{"a": {{"rank": 2, "vectors": {{"base1":[1,0],"base2":[-1,-1],"fiber1":[0,1],"fiber2":[0,-1]}}}},
                "b": {{"rank": 2, "vectors": {{"base1":{b1},"base2":{b2},"fiber1":[0,1],"fiber2":[0,-1]}}}},
                "perm_blocks": [["fiber1","fiber2"]]}}"#
        )
    };
    let found = write(dir.path(), "found.json", &doc("[-1,0]", "[1,1]"));
    let o = run(&["glequiv", "--input", &found, "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["witness"]["u"], serde_json::json!([[1, 0], [1, -1]]));
    assert_eq!(v["witness"]["sigma"]["fiber1"], "fiber2");

    let none = write(dir.path(), "none.json", &doc("[-1,-2]", "[1,0]"));
    let o = run(&["glequiv", "--input", &none, "--format", "json"]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["found"], false);

    let malformed = write(dir.path(), "bad.json", "{\"a\": 1}");
    assert_eq!(code(&run(&["glequiv", "--input", &malformed])), 2);
}
