use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_pascal-rays");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn terms_match_golden_file() {
    let o = run(&["terms", "--n", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let golden = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/terms_n10.txt")).unwrap();
    assert_eq!(stdout(&o), golden);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["terms", "--bogus"],
        vec!["frobnicate"],
        vec!["roots", "--n", "2"],
        vec!["attractor", "--grid", "8"],
        vec!["attractor", "--window", "1,0,0,1"],
        vec!["roots", "--format", "svg"],
        vec!["terms", "--r", "2", "--q", "-2"],
        vec!["solve", "--y0", "0"],
        vec!["solve", "--x", "1+"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn verify_passes() {
    let o = run(&["verify", "--n", "30"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("all checks passed"));
    assert!(!s.contains("FAIL"));
}

#[test]
fn verify_json_lists_checks() {
    let o = run(&["verify", "--n", "20", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v.as_array().unwrap();
    assert!(rows.len() >= 8);
    assert!(rows.iter().all(|r| r["passed"] == true));
}

#[test]
fn solve_reports_the_chain() {
    let o = run(&["solve", "--cubic", "-1,2,-1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let beta = &v["trace"]["beta"];
    assert!(beta[0].as_f64().unwrap().abs() < 1e-15);
    assert!((beta[1].as_f64().unwrap() + 11.0 * 5f64.sqrt() / 25.0).abs() < 1e-14);
    // The family cubic at x = 1 is the same polynomial.
    let o2 = run(&["solve", "--x", "1"]);
    let w: serde_json::Value = serde_json::from_slice(&o2.stdout).unwrap();
    assert_eq!(v["roots"], w["roots"]);
}

#[test]
fn roots_csv() {
    let o = run(&["roots", "--n", "7"]);
    let s = stdout(&o);
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(lines[0], "n,re,im,residual");
    // T_7(x,1) = 2x^2(3x^3 + 5): two zeros at the origin and three more.
    assert_eq!(lines.len(), 6);
    assert_eq!(lines[1], "7,0.0,0.0,0.0");
    for l in &lines[3..] {
        let f: Vec<f64> = l.split(',').skip(1).map(|v| v.parse().unwrap()).collect();
        let z = pascal_rays::Complex64::new(f[0], f[1]);
        assert!((z * z * z + 5.0 / 3.0).norm() < 1e-12);
    }
}

#[test]
fn attractor_csv_and_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(&cfg, "# coarse run\ngrid = 32\nwindow = -1,1,-1,1\ntol = 1e-6\n").unwrap();
    let out = dir.path().join("curve.csv");
    let o = run(&["attractor", "--config", cfg.to_str().unwrap(), "--tol", "1e-10", "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let s = std::fs::read_to_string(&out).unwrap();
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("re,im,residual,branch"));
    let mut count = 0;
    for l in lines {
        let f: Vec<f64> = l.split(',').map(|v| v.parse().unwrap()).collect();
        assert!(f[0].abs() <= 1.0 && f[1].abs() <= 1.0);
        assert!(f[2] <= 1e-10, "flag tol should override the file");
        count += 1;
    }
    assert!(count > 20);
}

#[test]
fn bad_config_file_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.conf");
    std::fs::write(&cfg, "colour = blue\n").unwrap();
    assert_eq!(run(&["terms", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["terms", "--config", "/nonexistent/file"]).status.code(), Some(2));
}

#[test]
fn plot_is_self_contained_svg() {
    let o = run(&["plot", "--n", "200", "--window", "-2,2,-2,2"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("<svg") && s.trim_end().ends_with("</svg>"));
    assert!(s.contains(r#"viewBox="0 0 1000 1000""#));
    assert_eq!(s.matches("<circle").count(), 198);
    assert_eq!(s.matches(r#"r="2""#).count(), 198);
    assert_eq!(s.matches("<polyline").count(), 3);
}

#[test]
fn report_json_has_a_row_per_n() {
    let o = run(&["report", "--n-list", "10,20", "--grid", "64"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.iter().map(|r| r["n"].as_u64().unwrap()).collect::<Vec<_>>(), vec![10, 20]);
    for r in rows {
        assert!(r["eps_out"].as_f64().unwrap() >= 0.0 && r["eps_in"].as_f64().unwrap() >= 0.0);
    }
    assert!(v["note"].as_str().unwrap().contains("T_n(x, y0)"));
}

#[test]
fn same_config_same_bytes() {
    for args in [vec!["attractor", "--grid", "48"], vec!["roots", "--n", "90"], vec!["plot", "--n", "60", "--grid", "40"]] {
        assert_eq!(run(&args).stdout, run(&args).stdout, "{args:?}");
    }
}
