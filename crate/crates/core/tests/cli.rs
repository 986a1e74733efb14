use std::process::{Command, Output};

fn qbern(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qbern")).args(args).output().expect("binary runs")
}

#[test]
fn zeta_prints_exact_rational() {
    let out = qbern(&["zeta", "--k", "2"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "1/90\n");
}

#[test]
fn quadratic_check_passes_at_two() {
    let out = qbern(&["verify", "--check", "quadratic", "--q", "2", "--count", "20", "--tol", "1e-10", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["rhs"], "1/21");
    assert_eq!(v["pass"], true);
    assert_eq!(v["parameters"]["tol"], "1/10000000000");
}

#[test]
fn usage_errors_exit_two_on_stderr() {
    for args in [&["zeros", "--q", "1"][..], &["verify", "--check", "quadratic"], &["bernoulli", "--q", "2", "--symbolic"], &[]] {
        let out = qbern(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn output_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("qbern-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("b.csv");
    let out = qbern(&["bernoulli", "--max-n", "4", "--q", "2", "--format", "csv", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let csv = std::fs::read_to_string(&path).unwrap();
    assert_eq!(csv.lines().nth(3), Some("2,3,14"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn polynomial_json_round_trips() {
    let out = qbern(&["polynomials", "--max-n", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let polys = v["polynomials"].as_array().unwrap();
    assert_eq!(polys.len(), 4);
    let b1: Vec<qbern::QRatFunc> = serde_json::from_value(polys[1]["coeffs_in_x"].clone()).unwrap();
    assert_eq!(b1[0], qbern::QRatFunc::from_rational(qbern::Rational::frac(-1, 2)));
}
