use assert_cmd::Command;
use predicates::prelude::*;
use serde_json::Value;

fn cmd() -> Command {
    Command::cargo_bin("skewjames").unwrap()
}

fn json_lines(out: &[u8]) -> Vec<Value> {
    String::from_utf8(out.to_vec())
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn formula(t: f64, tau: f64) -> f64 {
    let other = if tau >= 1.0 { tau.powf(t) } else { 1.0 };
    (((tau + 1.0).powf(t) + other) / 2.0).powf(1.0 / t)
}

#[test]
fn compute_hexagon_example() {
    let out = cmd()
        .args([
            "compute",
            "--space",
            "hexagon",
            "--constant",
            "skew-james",
            "--t",
            "1",
            "--tau",
            "2",
        ])
        .assert()
        .success()
        .get_output()
        .stdout
        .clone();
    let rec = &json_lines(&out)[0];
    assert_eq!(rec["value"].as_f64().unwrap(), 2.5);
    assert_eq!(rec["method"], "exact");
    assert_eq!(rec["constant"], "skew-james");
    assert_eq!(rec["space"], "hexagon");
}

#[test]
fn compute_hilbert_identity() {
    let out = cmd()
        .args([
            "compute",
            "--space",
            "pnorm:2",
            "--constant",
            "skew-james",
            "--t",
            "2",
            "--tau",
            "1",
        ])
        .assert()
        .success()
        .get_output()
        .stdout
        .clone();
    let v = json_lines(&out)[0]["value"].as_f64().unwrap();
    assert!((v - 2f64.sqrt()).abs() < 1e-6, "{v}");
}

#[test]
fn compute_zero_tau() {
    let out = cmd()
        .args([
            "compute",
            "--space",
            "hexagon",
            "--constant",
            "skew-james",
            "--t",
            "1",
            "--tau",
            "0",
        ])
        .assert()
        .success()
        .get_output()
        .stdout
        .clone();
    assert_eq!(json_lines(&out)[0]["value"].as_f64().unwrap(), 1.0);
}

#[test]
fn compute_accepts_negative_infinity() {
    let out = cmd()
        .args([
            "compute",
            "--space",
            "pnorm:2",
            "--constant",
            "skew-james",
            "--t",
            "-inf",
            "--tau",
            "1",
        ])
        .args(["--grid", "256"])
        .assert()
        .success()
        .get_output()
        .stdout
        .clone();
    let rec = &json_lines(&out)[0];
    assert_eq!(rec["t"], "-inf");
    assert!((rec["value"].as_f64().unwrap() - 2f64.sqrt()).abs() < 1e-6);
}

#[test]
fn sweep_hexagon_golden_csv() {
    // 12 significant digits of ((τ+1)² + max(τ,1)²)/2)^(1/2)
    let golden = "\
space,constant,t,tau,value,method
hexagon,skew-james,2,0,1,exact
hexagon,skew-james,2,0.5,1.2747548784,exact
hexagon,skew-james,2,1,1.58113883008,exact
hexagon,skew-james,2,1.5,2.06155281281,exact
hexagon,skew-james,2,2,2.5495097568,exact
";
    cmd()
        .args([
            "sweep",
            "--space",
            "hexagon",
            "--constant",
            "skew-james",
            "--t",
            "2",
            "--tau",
            "0:2:0.5",
        ])
        .assert()
        .success()
        .stdout(golden);
}

#[test]
fn sweep_hexagon_matches_formula() {
    let out = cmd()
        .args([
            "sweep",
            "--space",
            "hexagon",
            "--constant",
            "skew-james",
            "--t",
            "1",
            "--tau",
            "0:2:0.25",
        ])
        .args(["--format", "json"])
        .assert()
        .success()
        .get_output()
        .stdout
        .clone();
    let recs = json_lines(&out);
    assert_eq!(recs.len(), 9);
    for (k, rec) in recs.iter().enumerate() {
        let tau = 0.25 * k as f64;
        assert_eq!(rec["tau"].as_f64().unwrap(), tau);
        assert!((rec["value"].as_f64().unwrap() - formula(1.0, tau)).abs() < 1e-12);
    }
}

#[test]
fn sweep_over_mean_parameter_is_monotone() {
    let out = cmd()
        .args([
            "sweep",
            "--space",
            "pnorm:2",
            "--constant",
            "skew-james",
            "--t=-inf,0,1,2",
            "--tau",
            "1",
        ])
        .args(["--grid", "256", "--format", "json"])
        .assert()
        .success()
        .get_output()
        .stdout
        .clone();
    let values: Vec<f64> = json_lines(&out).iter().map(|r| r["value"].as_f64().unwrap()).collect();
    assert_eq!(values.len(), 4);
    assert!(values.windows(2).all(|w| w[1] >= w[0] - 1e-9), "{values:?}");
}

#[test]
fn sweep_rows_recompute_identically() {
    let out = cmd()
        .args([
            "sweep",
            "--space",
            "day_james_l2_l1",
            "--constant",
            "skew-james",
            "--t",
            "0.5,2",
        ])
        .args(["--tau", "0.3,0.9", "--grid", "128", "--format", "json"])
        .assert()
        .success()
        .get_output()
        .stdout
        .clone();
    let recs = json_lines(&out);
    assert_eq!(recs.len(), 4);
    for rec in [&recs[0], &recs[3]] {
        let t = rec["t"].as_f64().unwrap().to_string();
        let tau = rec["tau"].as_f64().unwrap().to_string();
        let again = cmd()
            .args(["compute", "--space", "day_james_l2_l1", "--constant", "skew-james"])
            .args(["--t", &t, "--tau", &tau, "--grid", "128"])
            .assert()
            .success()
            .get_output()
            .stdout
            .clone();
        assert_eq!(json_lines(&again)[0], *rec);
    }
}

#[test]
fn sweep_rejects_empty_range() {
    cmd()
        .args([
            "sweep",
            "--space",
            "hexagon",
            "--constant",
            "skew-james",
            "--t",
            "1",
            "--tau",
            "2:0:0.5",
        ])
        .assert()
        .code(2)
        .stderr(predicate::str::contains("empty range"));
}

#[test]
fn sweep_needs_a_range() {
    cmd()
        .args([
            "sweep",
            "--space",
            "hexagon",
            "--constant",
            "skew-james",
            "--t",
            "1",
            "--tau",
            "1",
        ])
        .assert()
        .code(2);
}

#[test]
fn usage_errors_exit_two() {
    cmd()
        .args(["compute", "--space", "hexagon", "--constant", "nope"])
        .assert()
        .code(2);
    cmd()
        .args([
            "compute",
            "--space",
            "hexagon",
            "--constant",
            "skew-james",
            "--tau",
            "1",
        ])
        .assert()
        .code(2)
        .stderr(predicate::str::contains("requires --t"));
    cmd()
        .args([
            "compute",
            "--space",
            "hexagon",
            "--constant",
            "skew-james",
            "--t",
            "0.5",
            "--tau",
            "1",
        ])
        .args(["--method", "exact"])
        .assert()
        .code(2);
    cmd()
        .args(["check", "--claim", "thm99", "--space", "hexagon"])
        .assert()
        .code(2);
}

#[test]
fn io_errors_exit_three() {
    cmd()
        .args([
            "compute",
            "--space",
            "file:/definitely/not/here.json",
            "--constant",
            "james",
        ])
        .assert()
        .code(3);
    cmd()
        .args([
            "compute",
            "--space",
            "hexagon",
            "--constant",
            "skew-james",
            "--t",
            "1",
            "--tau",
            "1",
        ])
        .args(["--out", "/definitely/not/here/out.json"])
        .assert()
        .code(3);
}

#[test]
fn norm_spec_file_and_out_path() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("hex.json");
    let s3 = 3f64.sqrt() / 2.0;
    std::fs::write(
        &spec,
        format!(r#"{{"kind": "polytopal", "vertices": [[1, 0], [0.5, {s3}], [-0.5, {s3}]]}}"#),
    )
    .unwrap();
    let out = dir.path().join("rows.csv");
    cmd()
        .args(["sweep", "--constant", "skew-james", "--t", "1", "--tau", "0,1,2"])
        .arg("--space")
        .arg(format!("file:{}", spec.display()))
        .arg("--out")
        .arg(&out)
        .assert()
        .success()
        .stdout("");
    let text = std::fs::read_to_string(&out).unwrap();
    let values: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').nth(4).unwrap()).collect();
    assert_eq!(values, ["1", "1.5", "2.5"]);
}

#[test]
fn output_is_deterministic() {
    let run = || {
        cmd()
            .args([
                "sweep",
                "--space",
                "pnorm:3",
                "--constant",
                "james-type",
                "--t",
                "0,1",
                "--tau",
                "0.5",
            ])
            .args(["--grid", "128", "--format", "json"])
            .assert()
            .success()
            .get_output()
            .stdout
            .clone()
    };
    assert_eq!(run(), run());
}

#[test]
fn check_g_bound_on_day_james() {
    let out = cmd()
        .args(["check", "--claim", "thm33", "--space", "day_james_l2_l1"])
        .assert()
        .success()
        .get_output()
        .stdout
        .clone();
    let certs = json_lines(&out);
    assert_eq!(certs.len(), 1);
    assert_eq!(certs[0]["verdict"], "pass");
    assert!((certs[0]["rhs"].as_f64().unwrap() - 1.4007).abs() < 5e-4);
}

#[test]
fn check_all_on_hexagon() {
    let out = cmd()
        .args(["check", "--claim", "all", "--space", "hexagon"])
        .assert()
        .success()
        .get_output()
        .stdout
        .clone();
    let certs = json_lines(&out);
    assert!(certs.len() > 100);
    assert!(certs.iter().all(|c| c["verdict"] == "pass"));
}

#[test]
fn check_non_square_bound_skips_square_space() {
    let out = cmd()
        .args([
            "check",
            "--claim",
            "thm32",
            "--space",
            "pnorm:inf",
            "--t",
            "1",
            "--tau",
            "1",
        ])
        .assert()
        .success()
        .stderr(predicate::str::contains("not uniformly non-square"))
        .get_output()
        .stdout
        .clone();
    let certs = json_lines(&out);
    assert_eq!(certs.len(), 1);
    assert_eq!(certs[0]["verdict"], "skipped");
}

#[test]
fn check_fails_with_impossible_tolerance_only_when_violated() {
    // a negative margin beyond the tolerance is the only path to exit 1,
    // so a tiny tolerance on exact equality cases still succeeds
    cmd()
        .args([
            "check", "--claim", "cor31", "--space", "hexagon", "--t", "1", "--tol", "0",
        ])
        .assert()
        .success();
}

#[test]
fn reproduce_examples() {
    for example in ["example-3.1", "example-3.2"] {
        let out = cmd()
            .args(["reproduce", example, "--format", "json"])
            .assert()
            .success()
            .get_output()
            .stdout
            .clone();
        let lines = json_lines(&out);
        assert_eq!(lines.len(), 36);
        assert!(lines.iter().all(|l| l["pass"] == true));
    }
}

#[test]
fn reproduce_day_james() {
    cmd()
        .args(["reproduce", "example-3.4"])
        .assert()
        .success()
        .stdout(predicate::str::contains("g_bound(sqrt(8/3))"))
        .stdout(predicate::str::contains("FAIL").not());
}
