//! Suite dispatch.

mod algebra;
mod foliation;
mod geometry;

use std::time::Instant;

use nullfoliate::scalar::{CFloat, ExactScalar};

use crate::config::{Backend, RunConfig, Suite};
use crate::error::Result;
use crate::report::Report;

pub use foliation::random_pure_tractor;

fn run_single(cfg: &RunConfig, suite: Suite) -> Result<Report> {
    let cfg = RunConfig { suite, ..cfg.clone() };
    let float = cfg.backend == Backend::Float;
    let r = match suite {
        Suite::Clifford if float => algebra::clifford::<CFloat>(&cfg)?,
        Suite::Clifford => algebra::clifford::<ExactScalar>(&cfg)?,
        Suite::Purity if float => algebra::purity::<CFloat>(&cfg)?,
        Suite::Purity => algebra::purity::<ExactScalar>(&cfg)?,
        Suite::Incidence if float => algebra::incidence::<CFloat>(&cfg)?,
        Suite::Incidence => algebra::incidence::<ExactScalar>(&cfg)?,
        Suite::Tractor => geometry::tractor(&cfg)?,
        Suite::Charts => geometry::charts(&cfg)?,
        Suite::Foliation => foliation::foliation(&cfg)?,
        Suite::Robinson => foliation::robinson(&cfg)?,
        Suite::Kerr if float => foliation::kerr_float(&cfg)?,
        Suite::Kerr => foliation::kerr_exact(&cfg)?,
        Suite::All => unreachable!("expanded by run_suite"),
    };
    Ok(r)
}

/// Validates `cfg` and runs the selected suite; `all` runs every suite the
/// backend supports and merges their reports.
pub fn run_suite(cfg: &RunConfig) -> Result<Report> {
    cfg.validate()?;
    let start = Instant::now();
    let mut report = match cfg.suite {
        Suite::All => {
            let mut r = Report::new(cfg);
            for s in Suite::SINGLE {
                if cfg.backend == Backend::Exact || s.supports_float() {
                    r.merge(run_single(cfg, s)?);
                }
            }
            r
        }
        s => run_single(cfg, s)?,
    };
    report.wall_time_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}
