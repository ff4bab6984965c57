//! Tractor and chart suites (exact backend).

use nullfoliate::charts::{
    apply_field, chart_from_spinor, expected_alpha_pullback, f_frames, incidence_residual, mu_jacobian, mu_poly,
    mu_project, omega_bar_pt_poly, pairing, pi_spinor_exp, pi_spinor_from_chart, pt_frames, pt_from_twistor,
    pullback, spin_endo_eigen, tau_poly, tau_project, twistor_lift, y_flow, ChartContext, ChartLayout, ChartPointF,
};
use nullfoliate::clifford::{CliffordModel, Parity};
use nullfoliate::purespinor::{is_pure_rank, random_small, random_vector};
use nullfoliate::scalar::{CFloat, ExactScalar, Scalar};
use nullfoliate::tractor::{
    cks_fd_residual, cks_field, cky_field, cky_residual, pvec_eval, pvec_is_zero, pvec_sub, sigma_is_parallel,
    sigma_tractor, verify_cks, CksData, CkyQuadruple, ConformalFrame, Poly,
};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::config::{RunConfig, Suite};
use crate::report::Report;
use crate::runner::{run_cases, Case};

type E = ExactScalar;

pub(crate) const FD_POINTS: usize = 10;
pub(crate) const FD_STEP: f64 = 1e-3;
pub(crate) const FD_TOL: f64 = 1e-8;
pub(crate) const EIGEN_TOL: f64 = 1e-9;

fn parity_of(i: usize) -> Parity {
    if i % 2 == 0 {
        Parity::Odd
    } else {
        Parity::Even
    }
}

/// Random rational in `[-1, 1]` with denominator 16.
fn small_rational(rng: &mut ChaCha8Rng) -> E {
    E::rational(rng.random_range(-16..=16), 16)
}

/// Conformal Killing spinors and Killing–Yano forms from random constant data,
/// alternating odd and even frames.
pub(crate) fn tractor(cfg: &RunConfig) -> nullfoliate::Result<Report> {
    let frames = [ConformalFrame::<E>::new(cfg.m, Parity::Odd)?, ConformalFrame::<E>::new(cfg.m, Parity::Even)?];
    Ok(run_cases(cfg, Suite::Tractor, cfg.cases, |i, rng, case| {
        let f = &frames[i % 2];
        case.note("parity", format!("{:?}", parity_of(i)));
        let data = CksData { xi0: random_vector(rng, f.d(), 3, true), zeta0: random_vector(rng, f.d(), 3, true) };
        case.input("xi0", &data.xi0);
        case.input("zeta0", &data.zeta0);
        let cks = cks_field(f, &data)?;
        case.check_eq("cks equation", true, verify_cks(f, &cks));
        for k in 0..FD_POINTS {
            let x: Vec<E> = (0..f.n()).map(|_| small_rational(rng).add_ref(&small_rational(rng).mul_ref(&E::imag_unit()))).collect();
            case.input(&format!("fd point {k}"), &x);
            let xf: Vec<CFloat> = x.iter().map(CFloat::from_exact).collect();
            let res = cks_fd_residual(f, &cks, &xf, FD_STEP);
            case.check("cks finite differences", res < FD_TOL, format!("< {FD_TOL:e}"), format!("{res:e}"));
        }

        let q = CkyQuadruple::random(rng, f.n(), 3);
        case.note("sigma", q.sigma.render());
        case.note("mu", q.mu.render());
        case.input("phi", &q.phi);
        case.note("rho", q.rho.render());
        let field = cky_field(f, &q)?;
        let residual = cky_residual(f, &field);
        case.check("cky system", residual.is_none(), "satisfied", residual.unwrap_or_default());
        case.check_eq("Σ parallel", true, sigma_is_parallel(f, &sigma_tractor(f, &field)));
        Ok(())
    }))
}

/// A vector with `V·V = target`, or a generic one when `target` is `None`:
/// `V = w + t e_m` where `e_m` is the null partner of `e_0`.
fn vector_with_norm(rng: &mut ChaCha8Rng, v0: &CliffordModel<E>, target: Option<&E>) -> Vec<E> {
    let m = v0.m();
    let n = v0.ambient_dim();
    let mut w = random_vector(rng, n, 3, true);
    let Some(target) = target else { return w };
    w[m] = E::zero();
    if w[0].is_zero() {
        w[0] = E::one();
    }
    let mut em = vec![E::zero(); n];
    em[m] = E::one();
    let g = v0.inner(&w, &em).mul_ref(&E::from_i64(2));
    let t = target.sub_ref(&v0.inner(&w, &w)).div_ref(&g).expect("e_0 pairs with e_m");
    w[m] = t;
    w
}

fn check_eigen_lemma(case: &mut Case, v0: &CliffordModel<E>, v: &[E], square: bool, tol: f64) -> nullfoliate::Result<()> {
    let m = v0.m();
    let rep = spin_endo_eigen(v0, v, tol)?;
    let nn = v0.inner(v, v);
    let mults: Vec<usize> = rep.branches.iter().map(|b| b.algebraic).collect();
    if nn.is_zero() {
        case.check_eq("null multiplicities", format!("{:?}", vec![1usize << m]), format!("{mults:?}"));
        let zero = rep.branches.iter().all(|b| b.value.0.norm() <= EIGEN_TOL);
        case.check("null eigenvalue", zero, "0", format!("{:?}", rep.values()));
    } else {
        let half = 1usize << (m - 1);
        case.check_eq("non-null multiplicities", format!("{:?}", vec![half, half]), format!("{mults:?}"));
        let root = nn.to_c64().sqrt() * Complex64::i();
        let vals = rep.values();
        let scale = root.norm().max(1.0);
        let near = |z: &Complex64, w: Complex64| (z - w).norm() <= EIGEN_TOL * scale;
        let ok = vals.len() == 2
            && ((near(&vals[0], root) && near(&vals[1], -root)) || (near(&vals[0], -root) && near(&vals[1], root)));
        case.check("non-null eigenvalues", ok, format!("±{root}"), format!("{vals:?}"));
    }
    if square {
        case.check_eq("exact eigenvalues", true, rep.all_exact());
    }
    Ok(())
}

fn structural_checks(case: &mut Case, l: &ChartLayout) {
    let label = format!("{:?}", l.parity());
    let f = f_frames::<E>(l);
    let pt = pt_frames::<E>(l);
    case.check_eq(&format!("{label} F frames dual"), true, f.duality_holds());
    case.check_eq(&format!("{label} PT frames dual"), true, pt.duality_holds());
    for a in 0..l.m() {
        let alpha = pt.coframe_form(&format!("alpha^{}", a + 1)).expect("alpha^A");
        let ok = pvec_is_zero(&pvec_sub(&pullback(l, alpha), &expected_alpha_pullback(l, a)));
        case.check_eq(&format!("{label} μ*(α^{}) identity", a + 1), true, ok);
    }
    for t in l.pairs() {
        let name = format!("alpha^{}{}", t[0] + 1, t[1] + 1);
        let ok = pvec_is_zero(&pvec_sub(&pullback(l, pt.coframe_form(&name).expect("alpha^AB")), f.coframe_form(&name).expect("alpha^AB")));
        case.check_eq(&format!("{label} μ*({name})"), true, ok);
    }
    let mu = mu_poly::<E>(l);
    let nu = omega_bar_pt_poly::<E>(l);
    for a in 0..l.m() {
        let z = f.frame_field(&format!("Z^{}", a + 1)).expect("Z^A");
        let ok = mu.iter().chain(&nu).all(|c| apply_field(z, c).is_zero());
        case.check_eq(&format!("{label} Z^{} annihilates μ, ω̲", a + 1), true, ok);
    }
    if l.odd() {
        let u = f.frame_field("U").expect("U");
        case.check_eq("U annihilates ω̲", true, nu.iter().all(|c| apply_field(u, c).is_zero()));
        let y = pt.frame_field("Y").expect("Y");
        let pushed: Vec<Poly<E>> = mu.iter().map(|c| apply_field(u, c)).collect();
        let y_on_f: Vec<Poly<E>> = y.iter().map(|c| c.compose(l.f_nvars(), &mu)).collect();
        case.check_eq("μ_*U = Y", true, pvec_is_zero(&pvec_sub(&pushed, &y_on_f)));
        case.check_eq("Y annihilates τ", true, tau_poly::<E>(l).iter().all(|c| apply_field(y, c).is_zero()));
        let th0 = f.coframe_form("theta^0").expect("theta^0");
        let ok = (0..l.m()).all(|a| pairing(th0, f.frame_field(&format!("Z^{}", a + 1)).expect("Z^A")).is_zero())
            && pairing(th0, u) == Poly::constant(l.f_nvars(), E::one());
        case.check_eq("θ^0 pairings", true, ok);
    }
}

/// Chart points: incidence lift, pullback of `α^A`, Y-flow invariance, chart
/// spinors and the eigenvalue lemma; case 0 also checks the polynomial frame
/// identities for both parities.
pub(crate) fn charts(cfg: &RunConfig) -> nullfoliate::Result<Report> {
    let m = cfg.m;
    let ctxs = [ChartContext::<E>::new(m, Parity::Odd)?, ChartContext::<E>::new(m, Parity::Even)?];
    let v0 = CliffordModel::<E>::build_v0_model(m)?;
    let tol = cfg.tol();
    Ok(run_cases(cfg, Suite::Charts, cfg.cases, |i, rng, case| {
        if i == 0 {
            for ctx in &ctxs {
                structural_checks(case, &ctx.layout());
            }
        }
        let ctx = &ctxs[i % 2];
        let parity = ctx.parity();
        let l = ctx.layout();
        let p = ChartPointF::random(rng, m, parity, 3);
        let coords = l.f_coords(&p);
        case.note("parity", format!("{parity:?}"));
        case.input("chart point", &coords);

        let res = incidence_residual(ctx, &p)?;
        case.check_eq("incidence", true, res.iter().all(E::is_zero));
        let q = mu_project(ctx, &p)?;
        let z: Vec<E> = twistor_lift(ctx, &q)?.iter().map(|x| x.mul_ref(&E::from_i64(3))).collect();
        case.check_eq("twistor roundtrip", true, pt_from_twistor(ctx, &z, tol)? == q);

        let pt = pt_frames::<E>(&l);
        let jac = mu_jacobian(&l, &coords);
        let image = l.pt_coords(&q);
        for a in 0..m {
            let form = pvec_eval(pt.coframe_form(&format!("alpha^{}", a + 1)).expect("alpha^A"), &image);
            let ok = jac.vec_mul(&form) == pvec_eval(&expected_alpha_pullback(&l, a), &coords);
            case.check_eq(&format!("μ*(α^{}) at point", a + 1), true, ok);
        }

        if parity == Parity::Odd {
            let t = random_small(rng, 5, true);
            case.input("t", &[t.clone()]);
            case.check_eq("Y-flow invariance", true, tau_project(ctx, &y_flow(&q, &t))? == tau_project(ctx, &q)?);
        }

        let zpi = pi_spinor_from_chart(ctx, &p.pi)?;
        case.check_eq("chart spinor pure", true, is_pure_rank(ctx.v0(), &zpi, tol)?);
        case.check_eq("exponential form", true, pi_spinor_exp(ctx, &p.pi)? == zpi);
        let c = E::gaussian(rng.random_range(1..=4), rng.random_range(-4..=4));
        let scaled: Vec<E> = zpi.iter().map(|x| x.mul_ref(&c)).collect();
        case.check_eq("chart roundtrip", true, chart_from_spinor(ctx, &scaled, tol)? == p.pi);

        let family = i % 3;
        let target = match family {
            0 => Some(E::zero()),
            1 => {
                let s = E::gaussian(rng.random_range(1..=4), rng.random_range(-3..=3));
                Some(s.mul_ref(&s))
            }
            _ => None,
        };
        let v = vector_with_norm(rng, &v0, target.as_ref());
        case.input("V", &v);
        check_eigen_lemma(case, &v0, &v, family == 1, tol)
    }))
}
