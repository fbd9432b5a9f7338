use std::process::{Command, Output};

fn nfext(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nfext")).args(args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = nfext(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

#[test]
fn ext_examples() {
    let v = json(&["ext", "--n", "2", "--s", "1", "--p", "1", "--q", "1"]);
    assert_eq!(v["dim"], 1);
    assert_eq!(v["basis"], serde_json::json!(["[x]"]));
    let v = json(&["ext", "--n", "1", "--s", "0", "--p", "2", "--q", "-2"]);
    assert_eq!(v["basis"], serde_json::json!(["u^2"]));
    let v = json(&["ext", "--n", "1", "--s", "1", "--p", "1", "--q", "-1"]);
    assert_eq!(v["dim"], 0);
    let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
    assert_eq!(keys.len(), 6);
}

#[test]
fn ext_rejects_unbounded_basis() {
    let out = nfext(&["ext", "--n", "inf", "--s", "1", "--p", "0", "--q", "0", "--invert-u"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("limit"));
}

#[test]
fn etar_examples() {
    assert_eq!(stdout(&["etar", "--theta", "2", "1"]), "θ/(a^2 u) ⊗ 1 + θ/u^2 ⊗ x\n");
    assert_eq!(stdout(&["etar", "u"]), "u + a^2 x\n");
    assert_eq!(stdout(&["etar", "a^3"]), "a^3\n");
    assert_eq!(nfext(&["etar", "u^-1"]).status.code(), Some(2));
    assert_eq!(nfext(&["etar", "[x]"]).status.code(), Some(2));
    assert_eq!(nfext(&["etar"]).status.code(), Some(2));
}

#[test]
fn verify_passes() {
    for args in [
        &["verify", "coboundary", "--r", "1", "--m", "1", "--n", "2"][..],
        &["verify", "einfty", "--n", "2", "--window", "6", "--smax", "3"],
        &["verify", "vanishing", "--p", "-3..3", "--budget", "-3..-1", "--smax", "3"],
        &["verify", "axioms", "--n", "1..2", "--letters", "3", "--window", "3"],
        &["verify", "localization", "--n", "1", "--s", "0..1", "--sample", "2"],
    ] {
        let out = stdout(args);
        let mut lines = out.lines().rev();
        let summary: serde_json::Value = serde_json::from_str(lines.next().unwrap()).unwrap();
        assert_eq!(summary["passed"], true, "{args:?}");
        assert_eq!(lines.next(), Some("PASS"));
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(nfext(&["verify", "coboundary", "--r", "3", "--m", "0", "--n", "2"]).status.code(), Some(2));
    assert_eq!(nfext(&["verify", "vanishing", "--p", "0", "--budget", "-1..2"]).status.code(), Some(2));
    assert_eq!(nfext(&["chart", "--format", "png"]).status.code(), Some(2));
    assert_eq!(nfext(&["chart", "--completed", "--conjectural-d2"]).status.code(), Some(2));
    assert_eq!(nfext(&["ext-table", "--n", "2", "--p", "3..1", "--q", "0"]).status.code(), Some(2));
    assert_eq!(nfext(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn unstable_limit_exits_one() {
    let out = nfext(&["limit-ext", "--s", "1", "--p", "2", "--q", "2", "--n-start", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["limit_dim"].is_null());
    let v = json(&["limit-ext", "--s", "0", "--p", "0", "--q", "-3"]);
    assert_eq!(v["limit_dim"], 1);
    assert_eq!(v["basis"], serde_json::json!(["a^3"]));
}

#[test]
fn chart_examples() {
    let v = json(&["chart", "--stems", "0..0", "--smax", "0", "--format", "json"]);
    assert_eq!(
        v["dots"],
        serde_json::json!([{"stem": 0, "filtration": 0, "sigma": 0, "label": "1"}])
    );
    let tsv = stdout(&["chart", "--stems", "0..2", "--smax", "2", "--format", "tsv"]);
    assert_eq!(tsv.lines().count(), 5);
    let svg = stdout(&["chart", "--stems", "0..7", "--smax", "8", "--conjectural-d2", "--format", "svg"]);
    assert!(svg.contains("stroke-dasharray"));
    assert!(svg.contains("<title>d2 u^4 y_0^2 y_1 → a u^4 y_0^5</title>"));
    let tsv = stdout(&["chart", "--stems", "0..7", "--smax", "8", "--conjectural-d2"]);
    assert!(tsv.contains("\n5\t3\t4\t5\t2\ttrue\n"));
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("chart.svg");
    let printed = stdout(&["chart", "--format", "svg"]);
    stdout(&["chart", "--format", "svg", "--output", path.to_str().unwrap()]);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), printed);
}

#[test]
fn xadic_stage() {
    let v = json(&["xadic", "--n", "2", "--t", "0", "--s", "0", "--p", "1", "--q", "-1"]);
    assert_eq!(v["differentials"][0]["target"], "a^2 y_0");
    let v = json(&["xadic", "--n", "2", "--t", "1", "--s", "0", "--p", "1", "--q", "-1"]);
    assert_eq!(v["basis"], serde_json::json!([]));
    assert_eq!(nfext(&["xadic", "--n", "2", "--t", "3", "--s", "0", "--p", "0", "--q", "0"]).status.code(), Some(2));
}
