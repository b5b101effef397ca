use std::process::{Command, Output};

fn tubular(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tubular"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

#[test]
fn passing_check_exits_zero() {
    let out = tubular(&["verify", "lemma-7-1", "--p", "6,3,2", "--n-max", "100", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["status"], "pass");
    assert_eq!(doc["stats"]["checked"], 100);
}

#[test]
fn failing_check_exits_one_with_counterexample() {
    let out = tubular(&["verify", "effective", "--p", "6,3,2", "--gens", "c", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let doc = json(&out);
    assert_eq!(doc["status"], "fail");
    assert_eq!(doc["counterexample"]["index"], 1);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(tubular(&["verify", "no-such-check"]).status.code(), Some(2));
    assert_eq!(tubular(&["verify", "table-1", "--p", "2,3,7"]).status.code(), Some(2));
    assert_eq!(tubular(&["verify", "table-1", "--p", "2,x"]).status.code(), Some(2));
}

#[test]
fn reports_are_reproducible() {
    let args = ["verify", "group-ring", "--p", "6,3,2", "--trials", "30", "--seed", "7", "--json"];
    let strip = |out: Output| {
        let mut doc = json(&out);
        doc["elapsed_ms"] = 0.into();
        doc
    };
    assert_eq!(strip(tubular(&args)), strip(tubular(&args)));
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = std::env::temp_dir().join(format!("tubular-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.conf");
    std::fs::write(&path, "# bounds\np = 6,3,2\nn-max = 5\n").unwrap();
    let out = tubular(&["verify", "lemma-7-1", "--config", path.to_str().unwrap(), "--n-max", "7", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["stats"]["checked"], 7);
}

#[test]
fn algebra_dim_lists_exponents() {
    let out = tubular(&["algebra", "dim", "--p", "2,2,2,2", "--lambda", "5/3", "--degree", "c", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["dim"], 2);
    assert_eq!(doc["basis"].as_array().unwrap().len(), 2);
}

#[test]
fn fault_injection_fails_theorem_check() {
    let args = ["verify", "theorem-7-3", "--type", "632", "--n-max", "4", "--set", "inject_fault=true", "--json"];
    let out = tubular(&args);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["counterexample"]["witness"]["n"], 3);
}

#[test]
fn quick_suite_passes() {
    let out = tubular(&["suite", "--profile", "quick", "--json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(json(&out)["summary"]["failed"], 0);
}
