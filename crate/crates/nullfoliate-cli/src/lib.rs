//! Verification suites over the `nullfoliate` library and their JSON reports.
//!
//! A [`RunConfig`] selects a suite, a dimension and a backend; [`run_suite`]
//! draws reproducible random cases from a ChaCha8 stream seeded by the
//! config and returns a [`Report`], which [`emit_report`] writes as JSON.

mod config;
mod error;
mod report;
mod runner;
mod suites;

pub use config::{Backend, RunConfig, Suite};
pub use error::{CliError, Result};
pub use report::{emit_report, parse_report, report_json, Failure, Report, SCHEMA};
pub use suites::{random_pure_tractor, run_suite};
