//! Acceptance criteria 1–14, one pass/fail line each.
//!
//! Lines are written straight to stdout so they appear even when the test
//! harness captures output.

use std::io::Write;
use std::time::{Duration, Instant};

use nullfoliate::charts::ChartContext;
use nullfoliate::clifford::{expected_symmetric, gamma_k, CliffordModel, Parity, SpinorSymmetry};
use nullfoliate::foliation::{check_cogeodetic, robinson_section};
use nullfoliate::incidence::{intersection_dim, intersection_dim_oracle, TwistorPoint};
use nullfoliate::purespinor::{vacuum, FockFrame};
use nullfoliate::scalar::ExactScalar;
use nullfoliate_cli::{random_pure_tractor, report_json, run_suite, Backend, Report, RunConfig, Suite};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type E = ExactScalar;

const SEED: u64 = 20240611;
/// Float-backend tolerance for Kerr quadruples.
const KERR_FLOAT_TOL: f64 = 1e-8;
/// Exact suites ignore the tolerance; it only has to be valid.
const EXACT_TOL: f64 = 1e-9;
const CLIFFORD_BUDGET: Duration = Duration::from_secs(10);

const PURITY_RANDOM: usize = 1000;
const PURITY_CONSTRUCTED: usize = 250;
const M1_RANDOM: usize = 500;
const INCIDENCE_PAIRS: usize = 500;
const CHART_POINTS: usize = 200;
const CKS_CASES_PER_PARITY: usize = 50;
const ROBINSON_CASES: usize = 20;
const KERR_EXACT_CASES: usize = 4;
const KERR_FLOAT_CASES: usize = 5;
const EVEN_KERR_CASES: usize = 20;

struct Outcome {
    pass: bool,
    detail: String,
}

fn cfg(m: usize, suite: Suite, cases: usize) -> RunConfig {
    RunConfig { m, backend: Backend::Exact, tolerance: EXACT_TOL, seed: SEED, cases, suite }
}

fn run(c: &RunConfig) -> Report {
    run_suite(c).unwrap_or_else(|e| panic!("{} m={}: {e}", c.suite, c.m))
}

fn summary(r: &Report) -> String {
    let first = r.failures.first().map(|f| format!(" first failure {} [{}]", f.case_id, f.got)).unwrap_or_default();
    format!("{} m={}: {}/{}{}", r.suite, r.config.m, r.passed, r.cases_run(), first)
}

fn suites_pass(reports: &[Report]) -> Outcome {
    Outcome {
        pass: reports.iter().all(|r| r.failed == 0 && r.passed > 0),
        detail: reports.iter().map(summary).collect::<Vec<_>>().join("; "),
    }
}

fn pair_count(n: usize) -> usize {
    n * (n + 1) / 2
}

fn c1_clifford() -> Outcome {
    let start = Instant::now();
    let reports: Vec<Report> = (1..=3).map(|m| run(&cfg(m, Suite::Clifford, 1))).collect();
    let elapsed = start.elapsed();
    let counts_ok = reports.iter().zip(1..=3usize).all(|(r, m)| {
        r.passed == pair_count(2 * m + 1) + pair_count(2 * m) + pair_count(2 * m + 3) + pair_count(2 * m + 2)
    });
    let mut o = suites_pass(&reports);
    o.pass &= counts_ok && pair_count(9) == 45 && elapsed < CLIFFORD_BUDGET;
    o.detail = format!("{} ({} ms)", o.detail, elapsed.as_millis());
    o
}

fn c2_symmetry() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for m in 1..=3 {
        let t = CliffordModel::<E>::build_tractor_model(m, Parity::Odd).unwrap();
        for k in 0..=2 * m + 3 {
            let want = if expected_symmetric(m + 1, k) { SpinorSymmetry::Symmetric } else { SpinorSymmetry::Antisymmetric };
            checked += 1;
            if gamma_k(&t, k).unwrap().symmetry(0.0) != want {
                bad.push((m, k));
            }
        }
    }
    Outcome { pass: bad.is_empty(), detail: format!("{checked} (m, k) classes, exceptions {bad:?}") }
}

fn c3_purity() -> Outcome {
    // every fifth case is a Fock-constructed pure spinor
    let cases = PURITY_RANDOM + PURITY_CONSTRUCTED;
    assert_eq!(cases / 5, PURITY_CONSTRUCTED);
    suites_pass(&(1..=3).map(|m| run(&cfg(m, Suite::Purity, cases))).collect::<Vec<_>>())
}

fn c4_m1_all_pure() -> Outcome {
    // the m = 1 purity cases also require every spinor to be pure
    let cases = M1_RANDOM * 5 / 4;
    assert!(cases - cases / 5 >= M1_RANDOM);
    suites_pass(&[run(&cfg(1, Suite::Purity, cases))])
}

fn c5_intersection() -> Outcome {
    let mut o = suites_pass(&(1..=3).map(|m| run(&cfg(m, Suite::Incidence, INCIDENCE_PAIRS))).collect::<Vec<_>>());
    // extremes: a full-support point misses Ξ, and a point meets itself in an m-plane
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for m in 1..=3 {
        let t = CliffordModel::<E>::build_tractor_model(m, Parity::Odd).unwrap();
        let frame = FockFrame::new(&t, &vacuum(&t), 0.0).unwrap();
        let xi = TwistorPoint::new(&t, vacuum(&t), 0.0).unwrap();
        let mut empty = false;
        for _ in 0..20 {
            let z = TwistorPoint::new(&t, frame.reconstruct(&frame.random_supported_components(&mut rng, m + 1, 2)), 0.0).unwrap();
            let d = intersection_dim(&t, &xi, &z, 0.0).unwrap();
            empty |= d == -1 && intersection_dim_oracle(&t, &xi, &z, 0.0).unwrap() == -1;
        }
        let full = intersection_dim(&t, &xi, &xi, 0.0).unwrap() == m as i64;
        o.pass &= empty && full;
        o.detail.push_str(&format!("; m={m} extremes empty={empty} full={full}"));
    }
    o.detail.push_str("; T_Ξ pairs at m=3 run inside every incidence case");
    o
}

fn charts_reports() -> Vec<Report> {
    (1..=3).map(|m| run(&cfg(m, Suite::Charts, CHART_POINTS))).collect()
}

fn c7_c8_tractor() -> Vec<Report> {
    // cases alternate odd and even frames
    (1..=3).map(|m| run(&cfg(m, Suite::Tractor, 2 * CKS_CASES_PER_PARITY))).collect()
}

fn c9_robinson() -> Outcome {
    let mut reports = Vec::new();
    for m in 1..=3 {
        reports.push(run(&cfg(m, Suite::Foliation, ROBINSON_CASES)));
        reports.push(run(&cfg(m, Suite::Robinson, ROBINSON_CASES)));
    }
    let mut o = suites_pass(&reports);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for m in 1..=3 {
        let ctx = ChartContext::<E>::new(m, Parity::Odd).unwrap();
        let failures = (0..ROBINSON_CASES)
            .filter(|_| {
                let xi = random_pure_tractor(&mut rng, &ctx).unwrap();
                !check_cogeodetic(&robinson_section(&ctx, &xi, 0.0).unwrap())
            })
            .count();
        o.pass &= failures > 0;
        o.detail.push_str(&format!("; m={m} co-geodetic failures {failures}/{ROBINSON_CASES}"));
    }
    o
}

fn c10_kerr() -> Outcome {
    let mut reports = vec![run(&cfg(2, Suite::Kerr, KERR_EXACT_CASES))];
    for m in 1..=3 {
        let c = RunConfig { backend: Backend::Float, tolerance: KERR_FLOAT_TOL, ..cfg(m, Suite::Kerr, KERR_FLOAT_CASES) };
        reports.push(run(&c));
    }
    let mut o = suites_pass(&reports);
    o.detail.push_str("; float quadruples generic at m=1, μ°=ρ°=0 at m≥2");
    o
}

fn c13_even_kerr() -> Outcome {
    // the foliation suite checks the even Kerr condition for m ≥ 2
    suites_pass(&(2..=3).map(|m| run(&cfg(m, Suite::Foliation, EVEN_KERR_CASES))).collect::<Vec<_>>())
}

fn strip_time(r: &Report) -> String {
    let mut r = r.clone();
    r.wall_time_ms = 0;
    report_json(&r).unwrap()
}

fn c14_determinism() -> Outcome {
    let configs = [
        cfg(1, Suite::All, 3),
        cfg(2, Suite::Purity, 40),
        RunConfig { backend: Backend::Float, tolerance: KERR_FLOAT_TOL, ..cfg(2, Suite::Kerr, 3) },
    ];
    let mut same = 0;
    for c in &configs {
        if strip_time(&run(c)) == strip_time(&run(c)) {
            same += 1;
        }
    }
    Outcome { pass: same == configs.len(), detail: format!("{same}/{} configs byte-identical modulo wall_time_ms", configs.len()) }
}

#[test]
fn acceptance() {
    let mut out = std::io::stdout().lock();
    let mut failed = Vec::new();
    let mut report = |n: usize, name: &str, o: Outcome| {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        writeln!(out, "criterion {n:>2} {tag} {name}: {}", o.detail).unwrap();
        if !o.pass {
            failed.push(n);
        }
    };
    report(1, "Clifford identity", c1_clifford());
    report(2, "Γ^(k) symmetry classes", c2_symmetry());
    report(3, "purity three-way equivalence", c3_purity());
    report(4, "m=1 spinors all pure", c4_m1_all_pure());
    report(5, "intersection theorem", c5_intersection());
    let charts = charts_reports();
    report(6, "eigenspinor lemma", suites_pass(&charts));
    let tractor = c7_c8_tractor();
    report(7, "conformal Killing spinors", suites_pass(&tractor));
    report(8, "conformal Killing–Yano forms", suites_pass(&tractor));
    report(9, "Robinson foliation", c9_robinson());
    report(10, "Kerr foliation", c10_kerr());
    report(11, "chart layer", suites_pass(&charts));
    let curves: Vec<Report> = (1..=3).map(|m| run(&cfg(m, Suite::Incidence, 100))).collect();
    report(12, "distinguished curves", suites_pass(&curves));
    report(13, "even-dimensional Kerr", c13_even_kerr());
    report(14, "determinism", c14_determinism());
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
