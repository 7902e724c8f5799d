use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use boxperfect::boxtdi::figure_four_certificate;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_boxperfect"))
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().expect("binary runs")
}

fn construct(dir: &Path, family: &str, params: &[&str]) -> PathBuf {
    let path = dir.join(format!("{family}{}.g", params.join("_")));
    let mut args = vec!["construct", family];
    args.extend_from_slice(params);
    args.extend_from_slice(&["--out", path.to_str().unwrap()]);
    assert!(run(dir, &args).status.success());
    path
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn analyze_s3_and_c4() {
    let dir = tempfile::tempdir().unwrap();
    let s3 = construct(dir.path(), "S_n", &["3"]);
    let o = run(dir.path(), &["--json", "analyze", s3.to_str().unwrap()]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdicts"]["claw_free"]["value"], true);
    assert_eq!(v["verdicts"]["perfect"]["value"], true);
    assert_eq!(v["verdicts"]["s3_free"]["value"], false);
    assert_eq!(v["verdicts"]["tu"]["method"], "exhaustive");
    let preds = v["predictions"].as_array().unwrap();
    assert!(preds.iter().any(|p| p["rule"].as_str().unwrap().contains("claw-free") && p["box_perfect"] == false));

    let c4 = construct(dir.path(), "Cn", &["4"]);
    let o = run(dir.path(), &["--json", "analyze", c4.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdicts"]["tu"]["value"], true);
    assert!(v["predictions"].as_array().unwrap().iter().all(|p| p["box_perfect"] == true));
}

#[test]
fn analyze_is_deterministic_without_timings() {
    let dir = tempfile::tempdir().unwrap();
    let g = construct(dir.path(), "Gamma", &[]);
    let a = run(dir.path(), &["--json", "analyze", g.to_str().unwrap()]);
    let b = run(dir.path(), &["--json", "analyze", g.to_str().unwrap()]);
    assert_eq!(a.stdout, b.stdout);
    assert!(!stdout(&a).contains("elapsed_ms"));
    let t = run(dir.path(), &["--json", "--timings", "analyze", g.to_str().unwrap()]);
    assert!(stdout(&t).contains("elapsed_ms"));
}

#[test]
fn malformed_file_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.g");
    std::fs::write(&p, "graph bad\nn 3\ne 0 7\n").unwrap();
    let o = run(dir.path(), &["analyze", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn certify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let s3p = construct(dir.path(), "barS3plus", &[]);
    let o = run(dir.path(), &["--json", "certify", s3p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["method"], "record");
    assert_eq!(v["certificate"]["value"], "5/4");

    let c6 = construct(dir.path(), "Cn", &["6"]);
    assert_eq!(run(dir.path(), &["certify", c6.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(run(dir.path(), &["certify", "missing.g"]).status.code(), Some(2));
}

#[test]
fn certify_supplied_vectors() {
    let dir = tempfile::tempdir().unwrap();
    let h = construct(dir.path(), "fig4H", &[]);
    let (_, cert) = figure_four_certificate();
    let cp = dir.path().join("cert.json");
    std::fs::write(&cp, serde_json::to_string(&cert).unwrap()).unwrap();
    let o = run(dir.path(), &["certify", h.to_str().unwrap(), "--certificate", cp.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("value: 7/4"));

    let mut bad = cert;
    bad.x[0] = boxperfect::Rational::new(1, 1);
    std::fs::write(&cp, serde_json::to_string(&bad).unwrap()).unwrap();
    let o = run(dir.path(), &["certify", h.to_str().unwrap(), "--certificate", cp.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("PrimalCliques: FAILED"));
}

#[test]
fn certify_from_record() {
    let dir = tempfile::tempdir().unwrap();
    let s3 = construct(dir.path(), "S_n", &["3"]);
    let rec = boxperfect::classes::find_s_record(
        &boxperfect::graph::build_named("S_n", &[3]).unwrap(),
        &boxperfect::Budget::default(),
    )
    .unwrap()
    .unwrap();
    let rp = dir.path().join("rec.json");
    std::fs::write(&rp, serde_json::to_string(&rec).unwrap()).unwrap();
    let o = run(
        dir.path(),
        &["--json", "certify", s3.to_str().unwrap(), "--mode", "from-record", "--record", rp.to_str().unwrap(), "--p", "5"],
    );
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["certificate"]["value"], "3/10");
    let o = run(dir.path(), &["certify", s3.to_str().unwrap(), "--mode", "falsify"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn enumerate_catalogs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("q3.jsonl");
    assert!(run(dir.path(), &["enumerate", "Q", "3", "--out", out.to_str().unwrap()]).status.success());
    let first = std::fs::read(&out).unwrap();
    assert_eq!(String::from_utf8_lossy(&first).lines().count(), 1);
    assert!(run(dir.path(), &["enumerate", "Q", "3", "--out", out.to_str().unwrap()]).status.success());
    assert_eq!(std::fs::read(&out).unwrap(), first);
    let o = run(dir.path(), &["enumerate", "Q", "2"]);
    assert!(o.status.success() && o.stdout.is_empty());
    let o = run(dir.path(), &["enumerate", "S", "7"]);
    assert_eq!(stdout(&o).lines().count(), 2);
}

#[test]
fn budget_file_is_applied() {
    let dir = tempfile::tempdir().unwrap();
    let bp = dir.path().join("b.toml");
    std::fs::write(&bp, "esp_max_cliques = 1\n").unwrap();
    let g = construct(dir.path(), "Cn", &["5"]);
    let o = run(dir.path(), &["--json", "--budget", bp.to_str().unwrap(), "analyze", g.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdicts"]["esp"]["method"], "budget-limited");
    assert!(v["verdicts"]["esp"]["value"].is_null());
    std::fs::write(&bp, "no_such_key = 1\n").unwrap();
    assert_eq!(run(dir.path(), &["--budget", bp.to_str().unwrap(), "analyze", g.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn single_suite_criterion() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["suite", "--criterion", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("PASS"));
}
