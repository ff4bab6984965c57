//! Run configuration and its validation.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Float,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Clifford,
    Purity,
    Incidence,
    Tractor,
    Charts,
    Foliation,
    Robinson,
    Kerr,
    All,
}

impl Suite {
    pub const SINGLE: [Suite; 8] = [
        Suite::Clifford,
        Suite::Purity,
        Suite::Incidence,
        Suite::Tractor,
        Suite::Charts,
        Suite::Foliation,
        Suite::Robinson,
        Suite::Kerr,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Clifford => "clifford",
            Suite::Purity => "purity",
            Suite::Incidence => "incidence",
            Suite::Tractor => "tractor",
            Suite::Charts => "charts",
            Suite::Foliation => "foliation",
            Suite::Robinson => "robinson",
            Suite::Kerr => "kerr",
            Suite::All => "all",
        }
    }

    /// Suites whose checks are polynomial identities run on the exact backend only.
    pub fn supports_float(self) -> bool {
        matches!(self, Suite::Clifford | Suite::Purity | Suite::Incidence | Suite::Kerr | Suite::All)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        Suite::SINGLE
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| CliError::UnknownSuite(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub m: usize,
    pub backend: Backend,
    pub tolerance: f64,
    pub seed: u64,
    pub cases: usize,
    pub suite: Suite,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { m: 2, backend: Backend::Exact, tolerance: 1e-9, seed: 0, cases: 100, suite: Suite::All }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if !(1..=3).contains(&self.m) {
            return Err(CliError::InvalidConfig(format!("m must be in 1..=3, got {}", self.m)));
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(CliError::InvalidConfig(format!("tolerance must be positive, got {}", self.tolerance)));
        }
        if self.cases == 0 {
            return Err(CliError::InvalidConfig("cases must be at least 1".into()));
        }
        if self.backend == Backend::Float && !self.suite.supports_float() {
            return Err(CliError::InvalidConfig(format!("suite {} requires the exact backend", self.suite)));
        }
        Ok(())
    }

    /// Tolerance handed to the library; the exact backend ignores it.
    pub fn tol(&self) -> f64 {
        self.tolerance
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(RunConfig::default().validate().is_ok());
        for bad in [
            RunConfig { m: 0, ..Default::default() },
            RunConfig { m: 4, ..Default::default() },
            RunConfig { tolerance: 0.0, ..Default::default() },
            RunConfig { tolerance: f64::NAN, ..Default::default() },
            RunConfig { cases: 0, ..Default::default() },
            RunConfig { backend: Backend::Float, suite: Suite::Charts, ..Default::default() },
        ] {
            assert!(matches!(bad.validate(), Err(CliError::InvalidConfig(_))), "{bad:?}");
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::SINGLE.into_iter().chain([Suite::All]) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!(matches!("twistor".parse::<Suite>(), Err(CliError::UnknownSuite(_))));
    }
}
