use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_singmac"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let (code, s) = run(args);
    assert_eq!(code, 0, "{args:?}");
    serde_json::from_str(&s).unwrap()
}

#[test]
fn qs_info_reports_intervals() {
    let v = json(&[
        "qs", "info", "--m", "30", "--n", "12", "--d", "1", "--K", "1", "--N", "14",
    ]);
    assert_eq!(v["tau"], serde_json::json!([11, 3]));
    assert_eq!(v["intervals"], serde_json::json!([[4, 14], [1, 3]]));
}

#[test]
fn tableaux_of_3_1() {
    let v = json(&["qs", "tableaux", "--shape", "3,1"]);
    assert_eq!(v.as_array().unwrap().len(), 3);
}

#[test]
fn verify_small_instance() {
    let v = json(&[
        "singular", "verify", "--m", "2", "--n", "4", "--d", "1", "--K", "1", "--N", "4",
    ]);
    assert_eq!(v["labels"].as_array().unwrap().len(), 3);
    let (code, text) = run(&[
        "--format", "text", "singular", "verify", "--m", "2", "--n", "4", "--d", "1", "--K", "1",
        "--N", "4",
    ]);
    assert_eq!(code, 0);
    assert!(!text.contains("FAIL"), "{text}");
}

#[test]
fn specialized_build_and_critical_search() {
    let v = json(&["mac", "build", "--alpha", "2,0,0,0", "--at", "2,4,1"]);
    assert_eq!(v["terms"].as_array().unwrap().len(), 10);
    let v = json(&[
        "critical",
        "search",
        "--alpha",
        "4,4,3,2,2,3,3,2,0,0,0,0,0,0,0",
        "--m",
        "1",
        "--n",
        "4",
        "--max-len",
        "18",
    ]);
    assert_eq!(v[0]["len"], 17);
}

#[test]
fn operators_and_params() {
    for op in ["Ti", "Ti-inv", "pi", "xi", "dunkl", "phi"] {
        json(&["mac", "act", "--op", op, "--i", "1", "--alpha", "1,0"]);
    }
    let v = json(&[
        "singular", "params", "--m", "30", "--tau2", "3", "--N", "14",
    ]);
    assert_eq!(v.as_array().unwrap().len(), 3);
}

#[test]
fn exit_codes() {
    assert_eq!(
        run(&["qs", "info", "--m", "1", "--n", "4", "--d", "1", "--K", "1", "--N", "9"]).0,
        2
    );
    assert_eq!(
        run(&[
            "critical",
            "search",
            "--alpha",
            "1,0",
            "--m",
            "1",
            "--n",
            "2",
            "--max-len",
            "99"
        ])
        .0,
        2
    );
}
