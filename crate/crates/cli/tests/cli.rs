use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn taft(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_taft")).args(args).output().expect("binary runs")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn fixture_dir() -> (tempfile::TempDir, PathBuf) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fixtures");
    let o = taft(&["fixtures", "--dir", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    (dir, path)
}

fn fx(dir: &Path, name: &str) -> String {
    dir.join(format!("{name}.json")).to_str().unwrap().to_string()
}

#[test]
fn hopf_check_reports_all_axioms() {
    let o = taft(&["hopf-check", "--m", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    assert_eq!(v["passed"], true);
    assert_eq!(v["dim"], 16);
    assert!(o.stderr.is_empty());
}

#[test]
fn qbinom_vanishes_at_root_of_unity() {
    let o = taft(&["qbinom", "4", "2", "4", "3"]);
    assert!(o.status.success());
    let v = stdout_json(&o);
    assert!(v["value"]["coeffs"].as_array().unwrap().iter().all(|c| c == "0"));
}

#[test]
fn construct_then_simple_pipeline() {
    let (tmp, dir) = fixture_dir();
    let hma = tmp.path().join("hma.json");
    let o = taft(&["construct", "ss", "--in", &fx(&dir, "sweedler_p_gamma3"), "--out", hma.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let o = taft(&["verify", "--in", hma.to_str().unwrap()]);
    assert_eq!(stdout_json(&o)["passed"], true);
    let o = taft(&["simple", "--in", hma.to_str().unwrap()]);
    assert_eq!(stdout_json(&o)["verdict"], "CertifiedSimple");
}

#[test]
fn codim_of_two_dim_algebra() {
    let (_tmp, dir) = fixture_dir();
    let o = taft(&["codim", "--in", &fx(&dir, "sweedler2dim"), "--n", "1"]);
    assert!(o.status.success());
    let v = stdout_json(&o);
    assert_eq!((v["n"].as_u64(), v["c"].as_u64()), (Some(1), Some(3)));
}

#[test]
fn codim_csv_report() {
    let (_tmp, dir) = fixture_dir();
    let o = taft(&["codim", "--in", &fx(&dir, "m2_graded"), "--n", "3", "--report", "csv"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,rows,cols,c_n,bound_ok,wall_ms");
    let c: Vec<&str> = lines[1..].iter().map(|l| l.split(',').nth(3).unwrap()).collect();
    assert_eq!(c, ["2", "7", "28"]);
}

#[test]
fn budget_refusal_exits_2_with_size() {
    let (_tmp, dir) = fixture_dir();
    let o = taft(&["codim", "--in", &fx(&dir, "sweedler2dim"), "--n", "3", "--budget", "10"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    let diag: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(diag["error"], "budget_exceeded");
    assert_eq!(diag["detail"]["required"], "384");
}

#[test]
fn malformed_inputs_exit_2() {
    let tmp = tempfile::tempdir().unwrap();
    let bad = tmp.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let o = taft(&["verify", "--in", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let diag: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(diag["error"], "parse");

    // P^m not scalar for m = 2.
    let spec = r#"{"format":"taftlab/1","m":2,"k":2,"t":1,
        "P":[[{"m":2,"coeffs":["1"]},{"m":2,"coeffs":["1"]}],[{"m":2,"coeffs":["0"]},{"m":2,"coeffs":["0"]}]],
        "Q":[[{"m":2,"coeffs":["1"]},{"m":2,"coeffs":["0"]}],[{"m":2,"coeffs":["0"]},{"m":2,"coeffs":["1"]}]]}"#;
    std::fs::write(&bad, spec).unwrap();
    let o = taft(&["construct", "ss", "--in", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let diag: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(diag["error"], "invalid_spec");

    let o = taft(&["verify", "--in", tmp.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn iso_ss_verdicts() {
    let (_tmp, dir) = fixture_dir();
    let iso = |a: &str, b: &str| stdout_json(&taft(&["iso-ss", "--a", &fx(&dir, a), "--b", &fx(&dir, b)]))["isomorphic"].clone();
    assert_eq!(iso("m2m2_diag_1", "m2m2_diag_neg1"), true);
    assert_eq!(iso("m2m2_diag_1", "m2m2_diag_2"), false);
    assert_eq!(iso("m2m2_diag_1", "m2m2_nilpotent"), false);
}

#[test]
fn simple_reports_witness_for_reducible() {
    let (_tmp, dir) = fixture_dir();
    let v = stdout_json(&taft(&["simple", "--in", &fx(&dir, "ff_trivial")]));
    assert_eq!(v["verdict"], "NotSimple");
    assert!(!v["ideal"].as_array().unwrap().is_empty());
}

#[test]
fn nilext_construct_recover_and_radical() {
    let (tmp, dir) = fixture_dir();
    let hma = tmp.path().join("ext.json");
    let o = taft(&["construct", "nilext", "--in", &fx(&dir, "b_m2_elementary_m3"), "--m", "3", "--out", hma.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v = stdout_json(&taft(&["recover", "--in", hma.to_str().unwrap()]));
    assert_eq!(v["base"]["algebra"]["dim"], 4);
    assert_eq!(v["radical_dim"], 8);
    let v = stdout_json(&taft(&["radical", "--in", hma.to_str().unwrap()]));
    assert_eq!((v["dim"].as_u64(), v["radical_dim"].as_u64()), (Some(12), Some(8)));

    let o = taft(&["construct", "nilext", "--in", &fx(&dir, "b_m2_elementary_m3"), "--m", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn generic_iso_finds_map_between_isomorphic_specs() {
    let (_tmp, dir) = fixture_dir();
    let v = stdout_json(&taft(&["iso", "--a", &fx(&dir, "ff_alpha_1"), "--b", &fx(&dir, "ff_alpha_neg1")]));
    assert_eq!(v["result"], "isomorphic");
    let v = stdout_json(&taft(&["iso", "--a", &fx(&dir, "sweedler2dim"), "--b", &fx(&dir, "ff_alpha_1")]));
    assert_ne!(v["result"], "isomorphic");
}

#[test]
fn grading_of_two_dim_algebra() {
    let (tmp, dir) = fixture_dir();
    let hma: Value = serde_json::from_str(&std::fs::read_to_string(fx(&dir, "sweedler2dim")).unwrap()).unwrap();
    let mut alg = hma["algebra"].clone();
    alg["format"] = "taftlab/1".into();
    let alg_path = tmp.path().join("alg.json");
    let c_path = tmp.path().join("c.json");
    std::fs::write(&alg_path, alg.to_string()).unwrap();
    std::fs::write(&c_path, hma["c"].to_string()).unwrap();
    let o = taft(&["grading", "--in", alg_path.to_str().unwrap(), "--c", c_path.to_str().unwrap(), "--m", "2"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v = stdout_json(&o);
    let dims: Vec<u64> = v["components"].as_array().unwrap().iter().map(|c| c["dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, [1, 1]);
}

#[test]
fn shipped_fixtures_match_corpus() {
    let shipped = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    let o = taft(&["fixtures", "--dir", shipped.to_str().unwrap(), "--check"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}
