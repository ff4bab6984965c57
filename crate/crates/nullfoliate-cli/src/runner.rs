//! Case bookkeeping and the parallel, order-independent case loop.

use std::fmt::Display;
use std::time::Instant;

use nullfoliate::scalar::ExactScalar;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::{RunConfig, Suite};
use crate::report::{Failure, Report};

/// Inputs and failed expectations collected while running one case.
#[derive(Default)]
pub(crate) struct Case {
    inputs: Vec<String>,
    expected: Vec<String>,
    got: Vec<String>,
}

impl Case {
    pub fn input(&mut self, name: &str, values: &[ExactScalar]) {
        self.inputs.push(format!("{name} = {}", render(values)));
    }

    pub fn note(&mut self, name: &str, value: impl Display) {
        self.inputs.push(format!("{name} = {value}"));
    }

    pub fn check(&mut self, label: &str, ok: bool, expected: impl Display, got: impl Display) {
        if !ok {
            self.expected.push(format!("{label}: {expected}"));
            self.got.push(format!("{label}: {got}"));
        }
    }

    pub fn check_eq<V: PartialEq + Display>(&mut self, label: &str, expected: V, got: V) {
        let ok = expected == got;
        self.check(label, ok, expected, got);
    }

    pub fn passed(&self) -> bool {
        self.expected.is_empty()
    }
}

pub(crate) fn render(values: &[ExactScalar]) -> String {
    let parts: Vec<String> = values.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

/// Stream id of case `i` within `suite`: every case owns an independent
/// ChaCha8 stream, so results do not depend on the number of workers.
fn stream(suite: Suite, i: usize) -> u64 {
    ((suite as u64) << 40) | i as u64
}

pub(crate) fn case_rng(seed: u64, suite: Suite, i: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream(suite, i));
    rng
}

/// Runs `count` cases across worker threads and assembles the report.
pub(crate) fn run_cases<F>(cfg: &RunConfig, suite: Suite, count: usize, f: F) -> Report
where
    F: Fn(usize, &mut ChaCha8Rng, &mut Case) -> nullfoliate::Result<()> + Sync,
{
    let start = Instant::now();
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(count.max(1));
    let run_one = |i: usize| {
        let mut case = Case::default();
        let mut rng = case_rng(cfg.seed, suite, i);
        if let Err(e) = f(i, &mut rng, &mut case) {
            case.check("error", false, "no error", e);
        }
        case
    };
    let mut results: Vec<(usize, Case)> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let run_one = &run_one;
                s.spawn(move || (w..count).step_by(workers).map(|i| (i, run_one(i))).collect::<Vec<_>>())
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    });
    results.sort_by_key(|(i, _)| *i);

    let mut report = Report::new(&RunConfig { suite, ..cfg.clone() });
    for (i, case) in results {
        if case.passed() {
            report.passed += 1;
        } else {
            report.failed += 1;
            report.failures.push(Failure {
                case_id: format!("{suite}/m{}/{i:05}", cfg.m),
                inputs: case.inputs,
                expected: case.expected.join("; "),
                got: case.got.join("; "),
            });
        }
    }
    report.failures.sort_by(|a, b| a.case_id.cmp(&b.case_id));
    report.wall_time_ms = start.elapsed().as_millis() as u64;
    report
}
