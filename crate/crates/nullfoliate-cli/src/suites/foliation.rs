//! Foliation, Robinson and Kerr suites.

use nullfoliate::charts::ChartContext;
use nullfoliate::clifford::{combinations, Parity};
use nullfoliate::foliation::{
    check_all, check_even_kerr, curated_kerr_quadruple, kerr_section, robinson_section,
    verify_robinson_twistor_variety, KerrReport,
};
use nullfoliate::purespinor::{random_small, random_vector, vacuum, AntiTensor, FockFrame};
use nullfoliate::scalar::{CFloat, ExactScalar, Scalar};
use nullfoliate::tractor::CkyQuadruple;
use nullfoliate::Error;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::config::{RunConfig, Suite};
use crate::report::Report;
use crate::runner::{run_cases, Case};

type E = ExactScalar;

pub(crate) const ROBINSON_SAMPLES: usize = 20;
pub(crate) const KERR_EXACT_SAMPLES: usize = 20;
pub(crate) const KERR_FLOAT_SAMPLES: usize = 5;

/// A random pure tractor spinor with non-zero `ξ°` vacuum component: Fock
/// expansion around `(0, o)` for odd models and around `(o, 0)` for even ones.
pub fn random_pure_tractor(rng: &mut ChaCha8Rng, ctx: &ChartContext<E>) -> nullfoliate::Result<Vec<E>> {
    let tr = ctx.tractor();
    let base = if ctx.parity() == Parity::Odd {
        vacuum(tr)
    } else {
        let d = ctx.v0().spinor_dim();
        let mut z = vacuum(ctx.v0());
        z.extend(vec![E::zero(); d]);
        z
    };
    Ok(FockFrame::new(tr, &base, 0.0)?.random_pure_spinor(rng, 3))
}

/// Robinson sections: geodetic and co-integrable (odd), and the even-dimensional
/// Kerr condition for `m ≥ 2`.
pub(crate) fn foliation(cfg: &RunConfig) -> nullfoliate::Result<Report> {
    let m = cfg.m;
    let odd = ChartContext::<E>::new(m, Parity::Odd)?;
    let even = if m >= 2 { Some(ChartContext::<E>::new(m, Parity::Even)?) } else { None };
    let tol = cfg.tol();
    Ok(run_cases(cfg, Suite::Foliation, cfg.cases, |_, rng, case| {
        let xi = random_pure_tractor(rng, &odd)?;
        case.input("xi", &xi);
        let sec = robinson_section(&odd, &xi, tol)?;
        let c = check_all(&sec);
        case.check("geodetic", c.geodetic, "holds", format!("{:?}", sec.geodetic_residuals()));
        case.check("co-integrable", c.cointegrable, "holds", format!("{:?}", sec.cointegrable_residuals()));
        case.check_eq("null frame", true, sec.frame_is_null(odd.v0().gram()));
        let x = random_vector(rng, sec.nvars(), 3, true);
        let t = random_vector(rng, m, 3, true);
        if !sec.denominator().eval(&x).is_zero() {
            case.input("leaf point", &x);
            case.input("leaf direction", &t);
            let ok = matches!(sec.leaf_is_affine(&x, &t, tol), Ok(true) | Err(Error::Degenerate(_)));
            case.check_eq("leaf affine", true, ok);
        }
        if let Some(even) = &even {
            let xe = random_pure_tractor(rng, even)?;
            case.input("xi even", &xe);
            let sec = robinson_section(even, &xe, tol)?;
            case.check_eq("even kerr", true, check_even_kerr(&sec)?);
        }
        Ok(())
    }))
}

/// Twistor-variety checks for Robinson sections at fixed sample counts.
pub(crate) fn robinson(cfg: &RunConfig) -> nullfoliate::Result<Report> {
    let m = cfg.m;
    let ctx = ChartContext::<E>::new(m, Parity::Odd)?;
    let n = ctx.v0().ambient_dim();
    Ok(run_cases(cfg, Suite::Robinson, cfg.cases, |_, rng, case| {
        let xi = random_pure_tractor(rng, &ctx)?;
        case.input("xi", &xi);
        let samples: Vec<Vec<E>> = (0..ROBINSON_SAMPLES).map(|_| random_vector(rng, n, 3, true)).collect();
        let second: Vec<(E, Vec<E>)> =
            (0..ROBINSON_SAMPLES).map(|_| (random_small(rng, 3, true), random_vector(rng, m, 3, true))).collect();
        for (k, (x, (s, y))) in samples.iter().zip(&second).enumerate() {
            case.input(&format!("sample {k}"), x);
            case.input(&format!("second {k}"), &[vec![s.clone()], y.clone()].concat());
        }
        let r = verify_robinson_twistor_variety(&ctx, &xi, &samples, &second, cfg.tol())?;
        case.check("twistor variety", r.passes(), "passes", format!("{r:?}"));
        Ok(())
    }))
}

fn first_branch<T: Scalar>(
    ctx: &ChartContext<T>,
    q: &CkyQuadruple<T>,
    pts: &[Vec<T>],
    tol: f64,
) -> nullfoliate::Result<KerrReport<T>> {
    let mut last = Error::Degenerate("no branch".into());
    for branch in 0..1usize << ctx.m() {
        match kerr_section(ctx, q, branch, pts, tol) {
            Ok(r) => return Ok(r),
            Err(e @ Error::Degenerate(_)) => last = e,
            Err(e) => return Err(e),
        }
    }
    Err(last)
}

fn record_quadruple(case: &mut Case, q: &CkyQuadruple<E>) {
    case.note("sigma", q.sigma.render());
    case.note("mu", q.mu.render());
    case.input("phi", &q.phi);
    case.note("rho", q.rho.render());
}

/// Exact backend: the curated `m = 2` example with varying `φ°` scale, or a
/// constant block `σ° = Σ λ_A δ^A∧δ_A` otherwise. Float backend: random
/// quadruples (with `μ° = ρ° = 0` for `m ≥ 2`).
pub(crate) fn kerr_exact(cfg: &RunConfig) -> nullfoliate::Result<Report> {
    let m = cfg.m;
    let n = 2 * m + 1;
    let ctx = ChartContext::<E>::new(m, Parity::Odd)?;
    Ok(run_cases(cfg, Suite::Kerr, cfg.cases, |i, rng, case| {
        let curated = m == 2;
        let q = if curated {
            curated_kerr_quadruple(ctx.frame(), &E::from_i64((i % 4 + 1) as i64))?
        } else {
            let k = rng.random_range(1..=3);
            let mut sigma = AntiTensor::zero(n, 2);
            for a in 0..m {
                sigma.set(&[a, m + a], E::from_i64(k * 3i64.pow(a as u32)));
            }
            CkyQuadruple { sigma, mu: AntiTensor::zero(n, 3), phi: vec![E::zero(); n], rho: AntiTensor::zero(n, 2) }
        };
        record_quadruple(case, &q);
        let pts: Vec<Vec<E>> = (0..KERR_EXACT_SAMPLES)
            .map(|_| {
                let mut x = random_vector(rng, n, 3, true);
                if curated {
                    x[2] = E::zero();
                    x[3] = E::zero();
                }
                x
            })
            .collect();
        for (k, x) in pts.iter().enumerate() {
            case.input(&format!("x {k}"), x);
        }
        let r = if curated { kerr_section(&ctx, &q, 0, &pts, cfg.tol())? } else { first_branch(&ctx, &q, &pts, cfg.tol())? };
        case.check("graph and Σ equations", r.passes(0.0), "exact", format!("max residual {:e}", r.max_residual()));
        if curated {
            let varies = r.samples.windows(2).any(|w| w[0].pi != w[1].pi);
            case.check_eq("non-constant section", true, varies);
        }
        Ok(())
    }))
}

pub(crate) fn kerr_float(cfg: &RunConfig) -> nullfoliate::Result<Report> {
    let m = cfg.m;
    let n = 2 * m + 1;
    let ctx = ChartContext::<CFloat>::new(m, Parity::Odd)?;
    let lift_form = |t: &AntiTensor<E>| {
        let mut out = AntiTensor::zero(n, t.degree());
        for idx in combinations(n, t.degree()) {
            out.set(&idx, CFloat::from_exact(&t.get(&idx)));
        }
        out
    };
    Ok(run_cases(cfg, Suite::Kerr, cfg.cases, |_, rng, case| {
        let mut qe = CkyQuadruple::random(rng, n, 3);
        if m >= 2 {
            qe.mu = AntiTensor::zero(n, 3);
            qe.rho = AntiTensor::zero(n, 2);
        }
        record_quadruple(case, &qe);
        let q = CkyQuadruple {
            sigma: lift_form(&qe.sigma),
            mu: lift_form(&qe.mu),
            phi: qe.phi.iter().map(CFloat::from_exact).collect(),
            rho: lift_form(&qe.rho),
        };
        let mut pts = Vec::with_capacity(KERR_FLOAT_SAMPLES);
        for k in 0..KERR_FLOAT_SAMPLES {
            let x: Vec<E> = (0..n)
                .map(|_| E::from_ints((rng.random_range(-8..=8), 8), (rng.random_range(-8..=8), 8), (0, 1), (0, 1)))
                .collect();
            case.input(&format!("x {k}"), &x);
            pts.push(x.iter().map(CFloat::from_exact).collect::<Vec<_>>());
        }
        let r = first_branch(&ctx, &q, &pts, cfg.tol())?;
        let tol = cfg.tol();
        case.check("graph and Σ equations", r.passes(tol), format!("<= {tol:e}"), format!("{:e}", r.max_residual()));
        Ok(())
    }))
}
