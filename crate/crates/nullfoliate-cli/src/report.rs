//! Report type and its JSON serialization.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::config::{RunConfig, Suite};
use crate::error::Result;

pub const SCHEMA: &str = "nullfoliate-report/1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub case_id: String,
    /// Inputs with exact scalars in canonical `(p/q + r/s·i) + (t/u + v/w·i)·sqrt2` form.
    pub inputs: Vec<String>,
    pub expected: String,
    pub got: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub suite: Suite,
    pub config: RunConfig,
    pub passed: usize,
    pub failed: usize,
    pub failures: Vec<Failure>,
    pub wall_time_ms: u64,
}

impl Report {
    pub fn new(config: &RunConfig) -> Self {
        Report {
            schema: SCHEMA.to_string(),
            suite: config.suite,
            config: config.clone(),
            passed: 0,
            failed: 0,
            failures: Vec::new(),
            wall_time_ms: 0,
        }
    }

    pub fn cases_run(&self) -> usize {
        self.passed + self.failed
    }

    pub fn success(&self) -> bool {
        self.failed == 0
    }

    pub fn merge(&mut self, other: Report) {
        self.passed += other.passed;
        self.failed += other.failed;
        self.failures.extend(other.failures);
        self.failures.sort_by(|a, b| a.case_id.cmp(&b.case_id));
    }
}

pub fn report_json(r: &Report) -> Result<String> {
    let mut s = serde_json::to_string_pretty(r)?;
    s.push('\n');
    Ok(s)
}

pub fn parse_report(s: &str) -> Result<Report> {
    Ok(serde_json::from_str(s)?)
}

pub fn emit_report(r: &Report, path: &Path) -> Result<()> {
    std::fs::write(path, report_json(r)?)?;
    Ok(())
}
