use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn kms(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kms")).args(args).env_remove("KMS_SEED").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn shipped_certificate() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/devsym_curl_certificate.json")
}

#[test]
fn l1_inequalities_hold_for_known_pairs() {
    for (a, b) in [("sym", "devsym(curl)"), ("dev", "div"), ("dev", "devsym(inc)")] {
        let out = kms(&["check", "--A", a, "--B", b, "--n", "3"]);
        assert!(out.status.success(), "{a} {b}");
        let v = json(&out);
        assert_eq!(v["l1_valid"], "valid", "{a} {b}");
        assert_eq!(v["lp_valid"], "valid", "{a} {b}");
        assert!(v["criterion"].as_str().unwrap().contains("reduced cancelling"));
        assert_eq!(v["bundles"].as_array().unwrap().len(), 3);
    }
}

#[test]
fn check_report_reverifies() {
    let out = kms(&["check", "--A", "sym", "--B", "skew(curl) + tr(curl)", "--T", "dev"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["l1_valid"], "invalid");
    assert_eq!(v["partially_cancelling"], "CertifiedNo");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    std::fs::write(&path, &out.stdout).unwrap();
    let verify = kms(&["verify", path.to_str().unwrap()]);
    assert!(verify.status.success(), "{}", String::from_utf8_lossy(&verify.stdout));
}

#[test]
fn parse_errors_exit_two_with_position() {
    let out = kms(&["check", "--A", "sym", "--B", "devsym(curl"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("position 11"));
    assert_eq!(kms(&["check", "--A", "nosuch", "--B", "curl"]).status.code(), Some(2));
}

#[test]
fn strict_mode_reports_exhausted_budgets() {
    let args = ["check", "--A", "sym", "--B", "skewtr(curl)", "--depth", "0", "--smax", "0", "--samples", "0"];
    let relaxed = kms(&args);
    assert!(relaxed.status.success());
    assert!(json(&relaxed)["bundles"].as_array().unwrap().iter().any(|b| b["verdict"]["status"] == "Unknown"));
    let strict = kms(&[&args[..], &["--strict"]].concat());
    assert_eq!(strict.status.code(), Some(3));
}

#[test]
fn shipped_certificate_verifies_and_tampering_is_caught() {
    let path = shipped_certificate();
    let out = kms(&["verify", path.to_str().unwrap()]);
    assert!(out.status.success());
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["verdict"]["evidence"][0]["s"], 1);
    v["verdict"]["evidence"][0]["w"][0] = Value::from("2/1");
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("tampered.json");
    std::fs::write(&bad, serde_json::to_string(&v).unwrap()).unwrap();
    let out = kms(&["verify", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAILED"));
}

#[test]
fn table_is_byte_stable_and_verifiable() {
    let first = kms(&["table", "--format", "json"]);
    let second = kms(&["table", "--format", "json", "--seed", "1"]);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    let v = json(&first);
    assert_eq!(v["cells"].as_array().unwrap().len(), 49);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.json");
    std::fs::write(&path, &first.stdout).unwrap();
    assert!(kms(&["verify", path.to_str().unwrap()]).status.success());
    let md = String::from_utf8(kms(&["table"]).stdout).unwrap();
    assert!(md.contains("| sym | ■ ✓ | ■ ✓ | ■ ✓ | ■ ✓ | L¹ ✗ / Lᵖ ✓ | ✗ | ✗ |"));
}

#[test]
fn seed_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_kms"))
        .args(["check", "--A", "sym", "--B", "curl"])
        .env("KMS_SEED", "9")
        .output()
        .unwrap();
    assert_eq!(json(&out)["budget"]["seed"], 9);
}

#[test]
fn operators_load_from_dumped_json() {
    let dump = kms(&["dump-operator", "devsym(curl)"]);
    assert!(dump.status.success());
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("op.json");
    std::fs::write(&path, &dump.stdout).unwrap();
    let from_file = kms(&["check", "--A", "sym", "--B", &format!("@{}", path.display())]);
    let inline = kms(&["check", "--A", "sym", "--B", "devsym(curl)"]);
    let (mut x, mut y) = (json(&from_file), json(&inline));
    x["b"] = Value::Null;
    y["b"] = Value::Null;
    assert_eq!(x, y);
}

#[test]
fn blowup_writes_csv_and_summary() {
    let out = kms(&["blowup", "--eps", "0.1,0.05", "--N", "24", "--L", "2.1"]);
    assert!(out.status.success());
    let csv = String::from_utf8(out.stdout).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("eps,R,N,lhs_norm,rhs_partmap_norm,rhs_B_norm,ratio"));
    assert_eq!(lines.count(), 2);
    let summary: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(summary["rows"], 2);
    let bad = kms(&["blowup", "--eps", "0.5"]);
    assert_eq!(bad.status.code(), Some(1));
}
