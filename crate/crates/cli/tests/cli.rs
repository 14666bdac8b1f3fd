use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::{json, Value};

fn run(job: &Value, args: &[&str]) -> (i32, Value) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_curvegap"))
        .args(args)
        .arg("--quiet")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(job.to_string().as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    (out.status.code().unwrap(), serde_json::from_str(&text).unwrap_or(Value::String(text)))
}

fn quintic(field: &str) -> Value {
    json!({
        "schema_version": 1,
        "command": "analyze-projection",
        "field": field,
        "params": {"d": 5, "center": {"forms": [
            [1, 0, 0, 0, 0, 0], [0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1]
        ]}}
    })
}

#[test]
fn quintic_cusp_report() {
    for field in ["rational", "Fp:10007"] {
        let (code, out) = run(&quintic(field), &[]);
        assert_eq!(code, 0, "{out}");
        let r = &out["result"];
        assert_eq!(r["delta_total"], 2);
        assert_eq!(r["clusters"][0]["type"], "2.1.a");
        assert_eq!(r["clusters"][0]["points"], json!(["(1:0)"]));
        assert_eq!(r["bound"]["pass"], true);
    }
}

#[test]
fn enumerate_types_lists_all() {
    let (code, out) = run(&json!({"schema_version": 1, "command": "enumerate-types", "params": {"n": 5}}), &[]);
    assert_eq!(code, 0);
    assert_eq!(out["result"]["count"], 21);
    let t = out["result"]["types"].as_array().unwrap();
    let triple = t.iter().find(|e| e["type"] == "2.3").unwrap();
    assert_eq!(triple["codim"], 7);
}

#[test]
fn classify_cusp_series() {
    let job = json!({"schema_version": 1, "command": "classify-series", "params": {"generators": ["t^2", "t^3"]}});
    let (code, out) = run(&job, &[]);
    assert_eq!(code, 0);
    assert_eq!(out["result"]["type"], "1.1");
    assert_eq!(out["result"]["delta"], 1);
    assert_eq!(out["result"]["semigroup"], json!([0, 2, 3]));
    let node = json!({"schema_version": 1, "command": "classify-series",
        "params": {"branches": 2, "generators": [["t", "0"], ["0", "t"]]}});
    assert_eq!(run(&node, &[]).1["result"]["type"], "1.2");
}

#[test]
fn reports_are_byte_stable() {
    let job = json!({"schema_version": 1, "command": "sample-stratum", "seed": 17,
        "params": {"d": 8, "n": 5, "types": ["2.2.a"]}});
    let a = run(&job, &[]);
    let b = run(&job, &[]);
    assert_eq!(a.0, 0);
    assert_eq!(a.1.to_string(), b.1.to_string());
    let c = &a.1["result"]["analysis"]["clusters"];
    assert_eq!(c[0]["type"], "2.2.a");
    assert_ne!(run(&job, &["--seed", "18"]).1.to_string(), a.1.to_string());
}

#[test]
fn sampled_center_feeds_analysis() {
    let job = json!({"schema_version": 1, "command": "sample-stratum", "seed": 2,
        "params": {"d": 5, "n": 3, "types": ["1.1"], "points": [["(1:0)"]], "verify": false}});
    let (code, out) = run(&job, &[]);
    assert_eq!(code, 0);
    let center = out["result"]["center"].clone();
    let analyze = json!({"schema_version": 1, "command": "analyze-projection", "params": {"d": 5, "center": center}});
    let (code, rep) = run(&analyze, &[]);
    assert_eq!(code, 0, "{rep}");
    let clusters = rep["result"]["clusters"].as_array().unwrap();
    assert!(clusters.iter().any(|c| c["points"] == json!(["(1:0)"]) && c["type"] == "1.1"));
}

#[test]
fn rationals_serialize_as_strings() {
    let job = json!({"schema_version": 1, "command": "analyze-projection", "field": "rational",
        "params": {"d": 5, "center": {"rows": [[0, 0, 0, 0, "1/2", 1], [0, 0, 0, 1, 0, 0]]}}});
    let (code, out) = run(&job, &[]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out["result"]["center"]["rows"][1], json!(["0", "0", "0", "0", "1", "2"]));
    assert_eq!(out["result"]["center"]["linear_system"][3][5], "-1/2");
    let (_, fp) = run(&quintic("Fp:10007"), &[]);
    assert!(fp["result"]["center"]["rows"][0][0].is_u64());
}

#[test]
fn validation_errors_exit_2() {
    let unknown = json!({"schema_version": 1, "command": "enumerate-types", "extra": true});
    assert_eq!(run(&unknown, &[]).0, 2);
    let bad_param = json!({"schema_version": 1, "command": "enumerate-types", "params": {"m": 3}});
    assert_eq!(run(&bad_param, &[]).0, 2);
    let version = json!({"schema_version": 2, "command": "enumerate-types"});
    assert_eq!(run(&version, &[]).0, 2);
    let (code, out) = run(&quintic("Fp:10"), &[]);
    assert_eq!(code, 2);
    assert_eq!(out["error"]["kind"], "validation");
}

#[test]
fn hypothesis_violation_exits_3() {
    // 2ℓ = d: three forms of degree 6 leave ℓ = 3
    let job = json!({"schema_version": 1, "command": "analyze-projection",
        "params": {"d": 6, "center": {"forms": [
            [1, 0, 0, 0, 0, 0, 0], [0, 0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 0, 1]
        ]}}});
    let (code, out) = run(&job, &[]);
    assert_eq!(code, 3);
    assert_eq!(out["error"]["kind"], "hypothesis");
    let infeasible = json!({"schema_version": 1, "command": "sample-stratum",
        "params": {"d": 8, "n": 5, "types": ["1.1", "1.1", "1.1", "1.2"]}});
    assert_eq!(run(&infeasible, &[]).0, 3);
}

#[test]
fn irrational_basepoints_exit_4() {
    // (x^2 + y^2) x^{4-j} y^j for j = 0..4
    let forms: Vec<Vec<i64>> = (0..5)
        .map(|j| {
            let mut v = vec![0; 7];
            v[j] = 1;
            v[j + 2] = 1;
            v
        })
        .collect();
    let job = json!({"schema_version": 1, "command": "analyze-projection", "field": "rational",
        "params": {"d": 6, "center": {"forms": forms}}});
    let (code, out) = run(&job, &[]);
    assert_eq!(code, 4, "{out}");
    assert_eq!(out["error"]["kind"], "indeterminate-over-field");
}

#[test]
fn truncation_cap_exits_5() {
    let job = json!({"schema_version": 1, "command": "classify-series", "params": {"generators": ["t^2"]}});
    let (code, out) = run(&job, &["--truncation-cap", "24"]);
    assert_eq!(code, 5, "{out}");
}

#[test]
fn batch_runs_every_job() {
    let dir = std::env::temp_dir().join(format!("curvegap-batch-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let batch = dir.join("jobs.json");
    let out = dir.join("out.json");
    let jobs = json!([
        quintic("rational"),
        {"schema_version": 1, "command": "enumerate-types"},
        {"schema_version": 1, "command": "fuzz-key-lemma", "params": {"count": 20}},
        {"schema_version": 1, "command": "nonsense"}
    ]);
    std::fs::write(&batch, jobs.to_string()).unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_curvegap"))
        .args(["--quiet", "--batch"])
        .arg(&batch)
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let v = v.as_array().unwrap();
    assert_eq!(v.len(), 4);
    assert_eq!(v[0]["result"]["delta_total"], 2);
    assert_eq!(v[1]["result"]["count"], 21);
    assert_eq!(v[2]["result"]["holds"], true);
    assert_eq!(v[3]["error"]["exit_code"], 2);
    std::fs::remove_dir_all(dir).unwrap();
}
