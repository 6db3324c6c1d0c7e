//! End-to-end checks of the command-line tool.

use assert_cmd::Command;
use serde_json::Value;

fn cyclicity() -> Command {
    let mut c = Command::cargo_bin("cyclicity").unwrap();
    c.env_remove("CYCLICITY_BUDGET_SECS");
    c
}

fn json_report(args: &[&str]) -> (i32, Value) {
    let out = cyclicity().arg("--json").args(args).output().unwrap();
    let code = out.status.code().unwrap();
    (code, serde_json::from_slice(&out.stdout).expect("stdout is a JSON report"))
}

fn schema() -> Value {
    serde_json::from_str(include_str!("../../../docs/report-schema.json")).unwrap()
}

fn assert_schema(report: &Value) {
    let schema = schema();
    let obj = report.as_object().unwrap();
    let props = schema["properties"].as_object().unwrap();
    for key in schema["required"].as_array().unwrap() {
        assert!(obj.contains_key(key.as_str().unwrap()), "missing {key}");
    }
    for key in obj.keys() {
        assert!(props.contains_key(key), "unexpected key {key}");
    }
    let commands = props["command"]["enum"].as_array().unwrap();
    assert!(commands.contains(&report["command"]));
    assert!(props["status"]["enum"].as_array().unwrap().contains(&report["status"]));
    assert_eq!(report["schema"], props["schema"]["const"]);
    assert!(report["inputs"]["args"].is_array());
}

#[test]
fn certificate_report() {
    let (code, r) = json_report(&["certify", "--d", "7", "--point", "0,0,1,0,0,-2"]);
    assert_eq!(code, 0);
    assert_schema(&r);
    assert_eq!(r["result"]["verdict"], "cyclicity 5");
    assert_eq!(r["result"]["determinant"], "-35200");
    assert_eq!(r["status"], "ok");
}

#[test]
fn text_outputs() {
    let out = cyclicity().args(["upper", "--d", "4"]).assert().success();
    let text = String::from_utf8(out.get_output().stdout.clone()).unwrap();
    assert!(text.contains("m = 3") && text.contains("cyclicity <= 2"), "{text}");

    let out = cyclicity().args(["sturm", "--builtin", "p16"]).assert().success();
    assert!(String::from_utf8_lossy(&out.get_output().stdout).starts_with("8 distinct real roots"));

    let out = cyclicity().args(["constants", "--d", "6", "--kmax", "9"]).assert().success();
    assert!(String::from_utf8_lossy(&out.get_output().stdout).contains("242/17 * a2 * a3 * a6"));

    let out = cyclicity().args(["constants", "--d", "2"]).assert().success();
    let text = String::from_utf8_lossy(&out.get_output().stdout).to_string();
    assert!(text.contains("W3 = -2 * a2^2") && text.contains("W4 = a2^3") && !text.contains("W5"), "{text}");
}

#[test]
fn every_command_reports() {
    let cases: &[&[&str]] = &[
        &["constants", "--d", "4", "--relations"],
        &["reduce", "--d", "4", "--poly", "a2^4"],
        &["groebner", "--d", "3"],
        &["member", "--d", "4", "--poly", "a2^2 + a3", "--power", "2"],
        &["upper", "--d", "3"],
        &["lrad", "--d", "3"],
        &["certify", "--d", "3", "--point", "1,-1"],
        &["even-construct", "--n", "2"],
        &["odd-construct", "--m", "1"],
        &["involution", "--d", "5"],
        &["sturm", "--poly", "x^3 - 2*x"],
        &["resultant", "--p", "x^2 - a", "--q", "x^3 - b", "--vars", "x,a,b"],
        &["orbits", "--coeffs", "-7,0,10", "--grid", "1000"],
        &["staircase", "--d", "3", "--point", "1,-1", "--grid", "1000"],
        &["half-return", "--ell", "1", "--sigma", "1", "--c", "0", "--x0", "0.05,0.1"],
    ];
    for args in cases {
        let (code, r) = json_report(args);
        assert_eq!(code, 0, "{args:?}: {r}");
        assert_schema(&r);
        assert_eq!(r["command"], args[0]);
    }
}

#[test]
fn usage_errors_exit_one() {
    cyclicity().arg("bogus").assert().code(1);
    cyclicity().args(["certify", "--d", "3"]).assert().code(1);
    cyclicity().args(["certify", "--d", "3", "--point", "1,sqrt("]).assert().code(1);
    cyclicity().args(["certify", "--d", "5", "--point", "sqrt(2),sqrt(3),0,0"]).assert().code(1);
    // long runs are gated
    cyclicity().args(["upper", "--d", "6"]).assert().code(1);
    cyclicity().args(["constants", "--d", "8", "--order", "64"]).assert().code(1);
    cyclicity().args(["constants", "--d", "8"]).assert().code(0);
    cyclicity().arg("--help").assert().code(0);
}

#[test]
fn budget_overrun_is_inconclusive() {
    let (code, r) = json_report(&["--budget", "0.000001", "constants", "--d", "7", "--kmax", "13"]);
    assert_eq!(code, 2);
    assert_eq!(r["status"], "inconclusive");
    assert_schema(&r);
    // the environment variable works too
    let out = cyclicity()
        .env("CYCLICITY_BUDGET_SECS", "0.000001")
        .args(["lrad", "--d", "5"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn degenerate_certificate_is_inconclusive() {
    // a = 0 is f = -x: every constant vanishes and no order exists
    cyclicity().args(["certify", "--d", "3", "--point", "0,0"]).assert().code(2);
}

#[test]
fn verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    cyclicity()
        .args(["--output", path.to_str().unwrap(), "certify", "--d", "5"])
        .args(["--point", "1,-1,(9+sqrt(55))/2,-(23+3*sqrt(55))/2"])
        .assert()
        .success();
    cyclicity().arg("--verify").arg(&path).assert().code(0);

    let mut r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    r["result"]["determinant"] = Value::String("5280".into());
    std::fs::write(&path, serde_json::to_string(&r).unwrap()).unwrap();
    cyclicity().arg("--verify").arg(&path).assert().code(3);
}
