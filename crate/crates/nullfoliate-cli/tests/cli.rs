use std::process::Command;

use nullfoliate_cli::{emit_report, parse_report, run_suite, Backend, RunConfig, Suite, SCHEMA};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_nullfoliate"))
}

#[test]
fn binary_writes_a_parseable_report() {
    let dir = std::env::temp_dir().join(format!("nullfoliate-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("report.json");
    let status = bin()
        .args(["--m", "1", "--suite", "purity", "--cases", "20", "--seed", "5", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let r = parse_report(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(r.schema, SCHEMA);
    assert_eq!((r.passed, r.failed), (20, 0));
    assert_eq!(r.config.seed, 5);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn invalid_config_exits_with_error() {
    let o = bin().args(["--m", "4", "--suite", "purity"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = bin().args(["--suite", "charts", "--backend", "float"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = bin().args(["--suite", "twistors"]).output().unwrap();
    assert!(!o.status.success());
}

#[test]
fn report_round_trips_through_a_file() {
    let cfg = RunConfig { m: 2, suite: Suite::Incidence, cases: 4, seed: 9, ..Default::default() };
    let r = run_suite(&cfg).unwrap();
    let path = std::env::temp_dir().join(format!("nullfoliate-roundtrip-{}.json", std::process::id()));
    emit_report(&r, &path).unwrap();
    assert_eq!(parse_report(&std::fs::read_to_string(&path).unwrap()).unwrap(), r);
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn failures_carry_exact_inputs() {
    // no float residual meets this tolerance
    let cfg = RunConfig { m: 1, backend: Backend::Float, tolerance: 1e-300, suite: Suite::Kerr, cases: 2, seed: 1 };
    let r = run_suite(&cfg).unwrap();
    assert_eq!(r.passed + r.failed, 2);
    assert!(r.failed > 0);
    for f in &r.failures {
        assert!(f.case_id.starts_with("kerr/m1/"));
        assert!(f.inputs.iter().any(|s| s.contains("·sqrt2")));
    }
}

#[test]
fn m1_purity_example() {
    let cfg = RunConfig { m: 1, suite: Suite::Purity, cases: 500, ..Default::default() };
    let r = run_suite(&cfg).unwrap();
    assert_eq!((r.passed, r.failed), (500, 0));
}
