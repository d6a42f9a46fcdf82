use std::process::{Command, Output};

fn besselheat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_besselheat"))
        .args(args)
        .env_remove("BESSELHEAT_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(stdout(o).trim()).unwrap()
}

#[test]
fn eval_exact_half() {
    let o = besselheat(&["eval", "--mu", "0.5", "--a", "1", "--t", "1", "--x", "2", "--y", "3", "--method", "exact-half"]);
    assert!(o.status.success());
    let v = json(&o)["value"].as_f64().unwrap();
    let expect = ((-0.5f64).exp() - (-4.5f64).exp()) / (6.0 * (2.0 * std::f64::consts::PI).sqrt());
    assert!((v / expect - 1.0).abs() < 1e-15);
    let keys: Vec<String> = json(&o).as_object().unwrap().keys().cloned().collect();
    for k in ["mu", "a", "t", "x", "y", "method", "value", "lower", "upper", "regime", "error_scale"] {
        assert!(keys.iter().any(|x| x == k), "{k}");
    }
}

#[test]
fn eval_in_excluded_box_reports_status() {
    let o = besselheat(&["eval", "--mu", "1", "--a", "1", "--t", "10", "--x", "1.5", "--y", "1.7", "--method", "asymptotic"]);
    assert!(o.status.success());
    let r = json(&o);
    assert_eq!(r["status"], "NonAsymptotic");
    assert!(r["value"].is_null());
}

#[test]
fn invalid_requests_exit_with_one_line() {
    for args in [
        vec!["eval", "--mu", "1", "--a", "1", "--t", "1", "--x", "2", "--y", "3", "--method", "exact-half"],
        vec!["eval", "--mu", "1", "--a", "1", "--t", "1", "--x", "2"],
        vec!["table", "--mu", "0", "--a", "1", "--t", "1:2:0", "--x", "2", "--y", "3"],
        vec!["mc", "--mu", "-1.5", "--a", "1", "--t", "1", "--x0", "2", "--paths", "10"],
        vec!["eval", "--mu", "1", "--a", "1", "--t", "1", "--x", "2", "--y", "3", "--rel-tol", "-1"],
    ] {
        let o = besselheat(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        let err = String::from_utf8(o.stderr).unwrap();
        assert_eq!(err.trim_end().lines().count(), 1, "{err}");
        let e: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
        assert_eq!(e["error"], "spec");
    }
}

#[test]
fn table_header_rows_and_determinism() {
    let args = ["table", "--mu", "0,1", "--a", "1", "--t", "0.1:10:3:log", "--x", "1.5,3", "--y", "20", "--method", "asymptotic"];
    let first = besselheat(&args);
    let second = besselheat(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    let text = stdout(&first);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "mu,a,t,x,y,method,value,lower,upper,regime,error_scale,status");
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 12);
    assert!(rows.iter().all(|r| r.split(',').count() == 12));
    assert!(rows[0].starts_with("0,1,0.1,1.5,20,asymptotic,"));
}

#[test]
fn table_surfaces_failures_per_row() {
    let o = besselheat(&["table", "--mu", "0.5", "--a", "1", "--t", "10", "--x", "1.2,5", "--y", "1.5,50", "--method", "asymptotic"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.ends_with(",NonAsymptotic")));
    assert!(text.lines().any(|l| l.ends_with(",ok")));
}

#[test]
fn table_json_output_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("grid.json");
    let o = besselheat(&[
        "table", "--mu", "1", "--a", "1", "--t", "0.2", "--x", "2", "--y", "2,3", "--method", "bracket",
        "--format", "json", "--out", path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let rows: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert!(rows[0]["lower"].as_f64().unwrap() <= rows[0]["upper"].as_f64().unwrap());
}

#[test]
fn validate_quadrature_report() {
    let o = besselheat(&["validate", "--suite", "quadrature"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let line = text.lines().find(|l| l.contains("mu12 grid")).unwrap();
    let fields: Vec<&str> = line.split(',').collect();
    assert!(fields[2].parse::<f64>().unwrap() <= 1e-8);
    assert_eq!(fields[4], "pass");
}

#[test]
fn validate_failure_exits_two() {
    let o = besselheat(&["validate", "--suite", "quadrature", "--rel-tol", "1e-2", "--max-depth", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains(",fail"));
}

#[test]
fn mc_rows_and_seed_sources() {
    let base = ["mc", "--mu", "0.5", "--a", "1", "--t", "0.5", "--x0", "2", "--paths", "3000", "--step", "0.01"];
    let flag = besselheat(&[&base[..], &["--seed", "5"]].concat());
    assert!(flag.status.success());
    let text = stdout(&flag);
    assert_eq!(text.lines().next().unwrap(), "mu,a,t,x0,bin_lo,bin_hi,value,std_err");
    assert_eq!(text.lines().count(), 65);

    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(&cfg, "# defaults\nseed = 5\n").unwrap();
    let file = besselheat(&[&base[..], &["--config", cfg.to_str().unwrap()]].concat());
    assert_eq!(file.stdout, flag.stdout);

    let env = Command::new(env!("CARGO_BIN_EXE_besselheat"))
        .args(base)
        .env("BESSELHEAT_SEED", "5")
        .output()
        .unwrap();
    assert_eq!(env.stdout, flag.stdout);

    let other = besselheat(&[&base[..], &["--seed", "6"]].concat());
    assert_ne!(other.stdout, flag.stdout);
}

#[test]
fn bad_config_file_is_a_spec_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.conf");
    std::fs::write(&cfg, "colour = blue\n").unwrap();
    let o = besselheat(&["validate", "--suite", "identities", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}
