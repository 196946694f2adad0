use std::process::Command;

use serde_json::Value;

fn tcrcalc(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_tcrcalc")).args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let (code, out, err) = tcrcalc(&a);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn mu_on_z9() {
    let v = json(&["mu", "--ring", "Z/9"]);
    assert_eq!(v, serde_json::json!({"mu_iso": true}));
}

#[test]
fn tcr_of_integers() {
    let v = json(&["tcr", "phi", "--ring", "Z", "--prime", "2", "--window", "-2:9"]);
    assert_eq!(v["groups"]["0"], serde_json::json!([8]));
    assert_eq!(v["groups"]["1"], serde_json::json!([2]));
    assert_eq!(v["groups"]["2"], serde_json::json!([]));
    assert_eq!(v["groups"]["3"], serde_json::json!([2]));
    assert_eq!(v["window"], serde_json::json!([-2, 9]));
    assert_eq!(v["oracle_checked"], Value::Bool(true));
    assert_eq!(v["periodicity"]["period"], serde_json::json!(4));
}

#[test]
fn tcr_of_f4() {
    let v = json(&[
        "tcr",
        "phi",
        "--ring",
        "GF(2,x^2+x+1)",
        "--prime",
        "2",
        "--window",
        "-2:8",
    ]);
    for d in -1..=8 {
        assert_eq!(v["groups"][d.to_string()], serde_json::json!([2]));
    }
    assert_eq!(v["groups"]["-2"], serde_json::json!([]));
}

#[test]
fn json_output_is_deterministic() {
    let args = ["bar", "--group", "D4 with inv", "--format", "json"];
    let a = tcrcalc(&args);
    let b = tcrcalc(&args);
    assert_eq!(a, b);
    let args = [
        "trr",
        "tower",
        "--ring",
        "GF(2,x^2+x+1)",
        "--level",
        "3",
        "--window",
        "0:4",
        "--format",
        "json",
    ];
    assert_eq!(tcrcalc(&args), tcrcalc(&args));
}

#[test]
fn exit_codes() {
    assert_eq!(tcrcalc(&["tcr", "phi", "--ring", "Z/("]).0, 2);
    assert_eq!(tcrcalc(&["tcr", "phi", "--ring", "Z", "--window", "0:65"]).0, 2);
    assert_eq!(tcrcalc(&["tcr", "phi", "--ring", "Z", "--window", "5:1"]).0, 2);
    assert_eq!(tcrcalc(&["green", "ml", "--ring", "Z/2", "--depth", "13"]).0, 2);
    assert_eq!(tcrcalc(&["nonsense"]).0, 2);
    let (code, out, err) = tcrcalc(&["green", "pi0", "--ring", "Z/4[C2]", "--level", "1", "--format", "json"]);
    assert_eq!(code, 3);
    assert!(err.contains("μ"));
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["error"]["kind"], "refused");
    assert!(v["error"]["detail"].as_str().unwrap().contains("ker μ"));
    assert_eq!(tcrcalc(&["trr", "limit", "--ring", "Z/4"]).0, 3);
    assert_eq!(tcrcalc(&["--help"]).0, 0);
}

#[test]
fn enumeration_bound_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_tcrcalc"))
        .args(["witt", "--ring", "GF(3,x^2+1)", "--prime", "3", "--level", "3"])
        .env("TCRCALC_MAX_ENUM", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_tcrcalc"))
        .args(["witt", "--ring", "Z/2", "--prime", "2", "--level", "2"])
        .env("TCRCALC_MAX_ENUM", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn text_rendering() {
    let (code, out, _) = tcrcalc(&["tcr", "phi", "--ring", "Z", "--window", "0:1"]);
    assert_eq!(code, 0);
    assert!(out.contains("π_0 = ℤ/8"));
    assert!(out.contains("π_1 = ℤ/2"));
    let (_, out, _) = tcrcalc(&["bredon", "--mackey", "constant", "--weight", "2"]);
    assert!(out.contains("π_4 = ℤ\n"));
}

#[test]
fn fixture_filter_and_corrupt_file() {
    let (code, out, _) = tcrcalc(&["fixtures", "--fixture", "mu-z9"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), 1);
    assert_eq!(tcrcalc(&["fixtures", "--fixture", "no-such-fixture"]).0, 2);
    let dir = std::env::temp_dir().join(format!("tcrcalc-fixtures-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\"fixtures\": [{\"id\": 3}]").unwrap();
    assert_eq!(tcrcalc(&["fixtures", "--file", bad.to_str().unwrap()]).0, 2);
    let failing = dir.join("failing.json");
    std::fs::write(
        &failing,
        r#"{"fixtures": [{"id": "wrong", "args": ["mu", "--ring", "Z/2"], "expect": {"/mu_iso": false}}]}"#,
    )
    .unwrap();
    let (code, out, _) = tcrcalc(&["fixtures", "--file", failing.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL wrong"));
    std::fs::remove_dir_all(&dir).unwrap();
}
