//! `nullfoliate` command-line driver.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use nullfoliate_cli::{emit_report, report_json, run_suite, Backend, RunConfig, Suite};

/// Runs a verification suite and writes a JSON report.
#[derive(Parser, Debug)]
#[command(name = "nullfoliate", version)]
struct Args {
    /// Half-dimension of the base: V₀ has dimension 2m+1 (odd) or 2m (even).
    #[arg(long, default_value_t = 2)]
    m: usize,
    #[arg(long, value_enum, default_value_t = Backend::Exact)]
    backend: Backend,
    /// Float-backend tolerance; ignored by exact arithmetic.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of random cases (the clifford suite enumerates all generator pairs instead).
    #[arg(long, default_value_t = 100)]
    cases: usize,
    #[arg(long, value_enum, default_value_t = Suite::All)]
    suite: Suite,
    /// Report path; the report is printed to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let cfg =
        RunConfig { m: args.m, backend: args.backend, tolerance: args.tol, seed: args.seed, cases: args.cases, suite: args.suite };
    let report = match run_suite(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let written = match &args.out {
        Some(path) => emit_report(&report, path),
        None => report_json(&report).map(|s| print!("{s}")),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    eprintln!("{}: {} passed, {} failed ({} ms)", report.suite, report.passed, report.failed, report.wall_time_ms);
    if report.success() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
