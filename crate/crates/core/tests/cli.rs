use std::process::{Command, Output};

use serde_json::Value;

fn haargap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_haargap"))
        .args(args)
        .env_remove("HAARGAP_SEED")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = haargap(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn haar_lp_sl3() {
    let v = json(&["haar-lp", "--n", "3", "--lattice", "generic", "--beta", "1/2", "--format", "json"]);
    assert_eq!(v["command"], "haar-lp");
    assert_eq!(v["results"]["min_haar_weight"], "1/4");
    assert!(v["version"].is_string());
    let v = json(&["haar-lp", "--n", "6", "--lattice", "inner", "--beta", "1/2"]);
    assert_eq!(v["results"]["min_haar_weight"], "1/6");
}

#[test]
fn bound_values() {
    let v = json(&["bound", "--n", "4", "--direction", "3,-1,-1,-1"]);
    let r = &v["results"];
    assert_eq!((&r["thm14"], &r["haar"], &r["optim"]), (&"6".into(), &"12".into(), &"6".into()));
}

#[test]
fn json_round_trips_through_inputs() {
    for args in [
        vec!["bound", "--n", "5", "--direction", "7/2,-1/2,0,-1,-2", "--k", "1/3"],
        vec!["spectrum", "--n", "4", "--direction", "2,1/3,-1/3,-2", "--k", "2"],
        vec!["haar-lp", "--n", "4", "--lattice", "generic", "--beta", "11/20"],
        vec!["haar-lp", "--n", "8", "--lattice", "inner", "--beta", "1/2", "--bound-mode", "thm14"],
        vec!["roots", "--n", "3", "--direction", "1,0,-1"],
        vec!["supports", "--n", "6", "--lattice", "inner"],
    ] {
        let first = json(&args);
        let inputs = first["inputs"].as_object().unwrap();
        let mut again = vec![first["command"].as_str().unwrap().to_string()];
        for (key, value) in inputs {
            let text = match value {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            again.push(format!("--{}", key.replace('_', "-")));
            again.push(text);
        }
        let again: Vec<&str> = again.iter().map(String::as_str).collect();
        assert_eq!(json(&again), first, "{args:?}");
    }
}

#[test]
fn exit_codes() {
    let off_trace = haargap(&["bound", "--n", "3", "--direction", "1,1,1"]);
    assert_eq!(off_trace.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&off_trace.stderr).contains('3'));
    assert_eq!(haargap(&["haar-lp", "--n", "3", "--lattice", "generic", "--beta", "1/0"]).status.code(), Some(2));
    assert_eq!(haargap(&["supports", "--n", "13", "--lattice", "inner"]).status.code(), Some(3));
    assert_eq!(haargap(&["supports", "--n", "8", "--lattice", "generic"]).status.code(), Some(3));
}

#[test]
fn report_table() {
    let out = haargap(&["report"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with('|'));
    // header, separator, two generic rows, ten inner rows
    assert_eq!(text.lines().filter(|l| l.starts_with('|')).count(), 14);
    assert!(text.contains("1/12"));
}

#[test]
fn validate_with_seed_override() {
    let out = Command::new(env!("CARGO_BIN_EXE_haargap"))
        .args(["validate"])
        .env("HAARGAP_SEED", "17")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"]["seed"], 17);
    assert_eq!(v["results"]["passed"], true);
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("haargap-cli-{}.json", std::process::id()));
    let out = haargap(&["--output", path.to_str().unwrap(), "bound", "--n", "3", "--direction", "2,-1,-1"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(v["results"]["thm14"], "3");
}
