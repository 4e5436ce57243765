use std::process::{Command, Output};

use serde_json::{json, Value};

fn conclab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conclab"))
        .args(args)
        .env_remove("CONCLAB_PRECISION")
        .output()
        .expect("binary runs")
}

fn ok_json(args: &[&str]) -> Value {
    let out = conclab(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn code(args: &[&str]) -> i32 {
    conclab(args).status.code().expect("exit code")
}

fn tmp(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("conclab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn rd_example() {
    let out = conclab(&["rd", "--poly", "t^2-t+1", "--d", "2"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "{\"d\":2,\"poly\":\"t^2 - t + 1\",\"r_d\":3}\n");
    assert_eq!(ok_json(&["rd", "--poly", "[1,-3,1]", "--d", "2"])["r_d"], json!(5));
}

#[test]
fn trefoil_period_from_file() {
    let jumps = conclab(&["jumps", "--knot", "trefoil"]);
    let path = tmp("trefoil.json", &String::from_utf8(jumps.stdout).unwrap());
    assert_eq!(ok_json(&["period", "--jumps", &path])["minimal_period"], json!("1"));
    let at = format!("@{path}");
    let scaled = ok_json(&["scale", "--jumps", &at, "--q", "3"]);
    assert_eq!(scaled["ambient_period"], json!("3"));
    let inline = scaled.to_string();
    assert_eq!(ok_json(&["period", "--jumps", &inline])["minimal_period"], json!("3"));
    let doubled = ok_json(&["sum", "--jumps", &path, &path]);
    assert_eq!(doubled["jumps"][0]["value"], json!(-4));
}

#[test]
fn pipelines() {
    let top = ok_json(&["obstruct-top", "--m", "1", "--J", "trefoil", "--D", "unit"]);
    assert_eq!(top["verdict"], json!("OBSTRUCTED"));
    assert_eq!(top["period_check"]["offending_prime"], json!(3));
    let top = ok_json(&["obstruct-top", "--m", "1", "--J", "unknot"]);
    assert_eq!(top["verdict"], json!("NOT_OBSTRUCTED"));
    let gen = ok_json(&["obstruct-top", "--m", "1", "--J", "trefoil", "--D", "t^2-3t+1"]);
    assert_eq!(gen["verdict"], json!("OBSTRUCTED"));
    assert_eq!(gen["excluded_primes"]["excluded"], json!([5]));
    assert_eq!(code(&["obstruct-top", "--m", "2", "--J", "trefoil", "--D", "t^2-3t+1"]), 2);

    let smooth = ok_json(&["obstruct-smooth", "--m", "1", "--J", "trefoil", "--dbar", "external-q3"]);
    assert_eq!(smooth["verdict"], json!("OBSTRUCTED"));
    assert_eq!(smooth["metabolizers"]["search"]["candidates"], json!([{"generators": [[3]], "order": 3}]));
    let doc = tmp(
        "pipeline.json",
        r#"{"m": 1, "J": {"matrix": [[-1, 1], [0, -1]]}, "D": ["1"]}"#,
    );
    let smooth = ok_json(&["obstruct-smooth", "--input", &doc]);
    assert_eq!(smooth["verdict"], json!("INCONCLUSIVE"));
    assert_eq!(smooth["metabolizers"]["missing"], json!([[3], [6]]));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["obstruct-smooth", "--m", "1", "--J", "trefoil"]), 0);
    assert_eq!(code(&["obstruct-smooth", "--m", "1", "--J", "trefoil", "--strict"]), 3);
    assert_eq!(code(&["rd", "--poly", "t^", "--d", "2"]), 2);
    assert_eq!(code(&["rd", "--poly", "t-1"]), 2);
    assert_eq!(code(&["signature", "--knot", "trefoil", "--t", "1/6"]), 2);
    assert_eq!(code(&["dlens", "--p", "4", "--q", "2"]), 2);
    assert_eq!(code(&["jumps", "--knot", "trefoil", "--precision", "32"]), 2);
    assert_eq!(code(&["bogus"]), 2);
    let out = Command::new(env!("CARGO_BIN_EXE_conclab"))
        .args(["jumps", "--knot", "trefoil"])
        .env("CONCLAB_PRECISION", "16")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn schema_errors_name_the_field() {
    let bad = r#"{"group":{"invariant_factors":[9]},"values":{"3":"two"}}"#;
    let out = conclab(&["dbar", "--table", bad]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("values.3"), "{err}");
    let out = conclab(&["obstruct-top", "--input", r#"{"m": 1, "J": "trefoil", "D": ["t^2+1"]}"#]);
    assert!(String::from_utf8(out.stderr).unwrap().contains("$.D[0]"));
}

#[test]
fn output_is_deterministic_and_round_trips() {
    let cases: &[&[&str]] = &[
        &["obstruct-top", "--m", "2", "--J", "trefoil"],
        &["obstruct-smooth", "--m", "1", "--J", "trefoil", "--dbar", "external-q3"],
        &["jumps", "--knot", "[[-2,1],[0,-1]]", "--c", "2"],
        &["dsurgery", "--n", "9", "--v", "1,0"],
        &["metabolizers", "--group", "3,9", "--q", "3"],
        &["primeset", "--D", "t^2-3t+1; T(2,5); 1"],
    ];
    for args in cases {
        let a = conclab(args).stdout;
        let b = conclab(args).stdout;
        assert_eq!(a, b, "{args:?}");
        let v: Value = serde_json::from_slice(&a).unwrap();
        let again = format!("{}\n", serde_json::to_string(&v).unwrap());
        assert_eq!(again.as_bytes(), &a[..], "{args:?}");
    }
    // emitted tables and jump functions load back
    let t = String::from_utf8(conclab(&["dsurgery", "--n", "9", "--poly", "T(2,3)"]).stdout).unwrap();
    let bar = ok_json(&["dbar", "--table", t.trim()]);
    assert_eq!(bar["values"]["3"], json!("0"));
    let j = String::from_utf8(conclab(&["jumps", "--knot", "[[-2,1],[0,-1]]"]).stdout).unwrap();
    assert_eq!(ok_json(&["period", "--jumps", j.trim()])["minimal_period"], json!("1"));
}

#[test]
fn lens_and_surgery() {
    let l = ok_json(&["dlens", "--p", "2", "--q", "1"]);
    assert_eq!(l["values"], json!({"0": "1/4", "1": "-1/4"}));
    let one = ok_json(&["dlens", "--p", "2", "--q", "1", "--i", "0", "--reversed"]);
    assert_eq!(one["d"], json!("-1/4"));
    assert_eq!(ok_json(&["vseq", "--poly", "T(3,4)"])["values"], json!([1, 1, 1, 0]));
    assert_eq!(code(&["vseq", "--poly", "(t-1+t^-1)^2"]), 2);
    assert_eq!(code(&["dsurgery", "--n", "3", "--v", "1,1,1"]), 2);
}

#[test]
fn batch_keeps_order() {
    let doc = json!([
        {"command": "obstruct-top", "m": 1, "J": "trefoil"},
        {"command": "obstruct-top", "m": 1, "J": "unknot"},
        {"command": "obstruct-smooth", "m": 1, "J": "trefoil", "dbar": "external-q3"},
        {"command": "obstruct-top", "m": 2, "J": "trefoil", "D": "t^2-3t+1"},
        {"command": "nope", "m": 1, "J": "trefoil"},
    ]);
    let path = tmp("batch.json", &doc.to_string());
    let out = ok_json(&["batch", "--input", &path]);
    let verdicts: Vec<Value> = out
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["result"]["verdict"].clone())
        .collect();
    assert_eq!(
        verdicts,
        vec![json!("OBSTRUCTED"), json!("NOT_OBSTRUCTED"), json!("OBSTRUCTED"), Value::Null, Value::Null]
    );
    assert!(out[3]["error"].as_str().unwrap().contains("P_2(D)"));
    assert_eq!(out[4]["index"], json!(4));
}

#[test]
fn human_format_and_output_file() {
    let out = conclab(&["obstruct-top", "--m", "1", "--J", "trefoil", "--format", "human"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("verdict: OBSTRUCTED\n"), "{text}");
    let path = tmp("out.json", "");
    assert_eq!(code(&["rd", "--poly", "t-1+t^-1", "--d", "3", "--output", &path]), 0);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["r_d"], json!(4));
}
