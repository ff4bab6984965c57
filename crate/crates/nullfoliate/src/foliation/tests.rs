use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::charts::ChartContext;
use crate::purespinor::{random_small, random_vector, vacuum, FockFrame};
use crate::scalar::{CFloat, ExactScalar, DEFAULT_TOL};
use crate::tractor::CkyQuadruple;

type E = ExactScalar;

fn random_pure_tractor(rng: &mut ChaCha8Rng, ctx: &ChartContext<E>) -> Vec<E> {
    let tr = ctx.tractor();
    let base = if ctx.parity() == Parity::Odd {
        vacuum(tr)
    } else {
        // G_Y (0, o) ∝ (o, 0)
        let d = ctx.v0().spinor_dim();
        let mut z = vacuum(ctx.v0());
        z.extend(vec![E::zero(); d]);
        z
    };
    FockFrame::new(tr, &base, DEFAULT_TOL).unwrap().random_pure_spinor(rng, 3)
}

#[test]
fn constant_sections_pass_everything() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for m in 1..=3 {
        for parity in [Parity::Odd, Parity::Even] {
            let pi = PiCoords::random(&mut rng, m, parity, 3);
            let n = NullSection::constant(m, parity, &pi).unwrap();
            let c = check_all(&n);
            assert!(c.geodetic && c.cointegrable && c.cogeodetic);
            let ctx = ChartContext::<E>::new(m, parity).unwrap();
            assert!(n.frame_is_null(ctx.v0().gram()));
        }
    }
}

#[test]
fn zero_section_frame_is_the_coordinate_frame() {
    let n = NullSection::constant(2, Parity::Odd, &PiCoords::<E>::zero(2, Parity::Odd)).unwrap();
    let f = n.frame();
    for (a, z) in f.z_up.iter().enumerate() {
        for (i, c) in z.iter().enumerate() {
            let want = if i == 2 + a { E::one() } else { E::zero() };
            assert_eq!(n.eval(c, &vec![E::zero(); 5]).unwrap(), want);
        }
    }
    let u = f.u.unwrap();
    assert_eq!(n.eval(&u[4], &vec![E::zero(); 5]).unwrap(), E::one());
}

#[test]
fn linear_section_is_not_geodetic() {
    // ξ^A = c z_A
    let m = 2;
    let nv = 5;
    let xi_a = (0..m).map(|a| Poly::var(nv, m + a).scale(&E::gaussian(2, 1))).collect();
    let sec = NullSection::new(m, Parity::Odd, Poly::constant(nv, E::one()), xi_a, PolyForm::zero(m, 2, nv)).unwrap();
    assert!(!check_geodetic(&sec));
    assert!(!check_cointegrable(&sec));
    assert!(!check_cogeodetic(&sec));
}

#[test]
fn robinson_sections_are_geodetic_and_cointegrable() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for m in 1..=3 {
        let ctx = ChartContext::<E>::new(m, Parity::Odd).unwrap();
        let mut cogeodetic_failures = 0;
        for _ in 0..4 {
            let xi = random_pure_tractor(&mut rng, &ctx);
            let sec = robinson_section(&ctx, &xi, DEFAULT_TOL).unwrap();
            let c = check_all(&sec);
            assert!(c.geodetic, "m={m}: {:?}", sec.geodetic_residuals());
            assert!(c.cointegrable, "m={m}: {:?}", sec.cointegrable_residuals());
            assert!(c.chain_holds());
            assert!(sec.frame_is_null(ctx.v0().gram()));
            cogeodetic_failures += usize::from(!c.cogeodetic);
            let x = random_vector(&mut rng, sec.nvars(), 3, true);
            let t = random_vector(&mut rng, m, 3, true);
            if !sec.denominator().eval(&x).is_zero() {
                let y_ok = sec.leaf_is_affine(&x, &t, DEFAULT_TOL);
                assert!(matches!(y_ok, Ok(true) | Err(Error::Degenerate(_))), "m={m}");
            }
        }
        assert!(cogeodetic_failures > 0, "m={m}");
    }
}

#[test]
fn robinson_twistor_variety() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for m in 1..=3 {
        let ctx = ChartContext::<E>::new(m, Parity::Odd).unwrap();
        for _ in 0..2 {
            let xi = random_pure_tractor(&mut rng, &ctx);
            let n = ctx.v0().ambient_dim();
            let samples: Vec<Vec<E>> = (0..4).map(|_| random_vector(&mut rng, n, 3, true)).collect();
            let second: Vec<(E, Vec<E>)> = (0..4).map(|_| (random_small(&mut rng, 3, true), random_vector(&mut rng, m, 3, true))).collect();
            let r = verify_robinson_twistor_variety(&ctx, &xi, &samples, &second, DEFAULT_TOL).unwrap();
            assert!(r.passes(), "m={m}: {r:?}");
        }
    }
}

#[test]
fn robinson_rejects_impure_and_degenerate_input() {
    let ctx = ChartContext::<E>::new(3, Parity::Odd).unwrap();
    let d = ctx.tractor().spinor_dim();
    let mut bad = vacuum(ctx.tractor());
    bad[d - 1] = E::one();
    bad[0] = E::one();
    assert!(matches!(robinson_section(&ctx, &bad, DEFAULT_TOL), Err(Error::NotPure)));
    // Ξ = (0, δ-type) has ξ(x) with no o component
    let ctx1 = ChartContext::<E>::new(1, Parity::Odd).unwrap();
    let mut z = vec![E::zero(); 4];
    z[1] = E::one();
    assert!(matches!(robinson_section(&ctx1, &z, DEFAULT_TOL), Err(Error::Degenerate(_)) | Err(Error::NotPure)));
}

#[test]
fn constant_robinson_section() {
    // ζ° = 0, ξ° = o
    let ctx = ChartContext::<E>::new(2, Parity::Odd).unwrap();
    let d = ctx.v0().spinor_dim();
    let mut xi = vacuum(ctx.v0());
    xi.extend(vec![E::zero(); d]);
    let sec = robinson_section(&ctx, &xi, DEFAULT_TOL).unwrap();
    assert_eq!(sec.value_at(&vec![E::from(1); 5]).unwrap(), PiCoords::zero(2, Parity::Odd));
}

#[test]
fn even_robinson_sections_satisfy_even_kerr() {
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    for m in 2..=3 {
        let ctx = ChartContext::<E>::new(m, Parity::Even).unwrap();
        for _ in 0..3 {
            let xi = random_pure_tractor(&mut rng, &ctx);
            let sec = robinson_section(&ctx, &xi, DEFAULT_TOL).unwrap();
            assert!(check_even_kerr(&sec).unwrap(), "m={m}: {:?}", sec.geodetic_residuals());
        }
        let nv = 2 * m;
        let mut bump = PolyForm::zero(m, 2, nv);
        bump = bump.add(&PolyForm::from_fn(m, 2, nv, |t| if t == [0, 1] { Poly::var(nv, 0) } else { Poly::zero(nv) }));
        let sec = NullSection::new(m, Parity::Even, Poly::constant(nv, E::one()), Vec::new(), bump).unwrap();
        assert!(!check_even_kerr(&sec).unwrap());
        assert!(check_even_kerr(&NullSection::constant(m, Parity::Odd, &PiCoords::<E>::zero(m, Parity::Odd)).unwrap()).is_err());
    }
}

#[test]
fn constant_cky_gives_constant_section() {
    let ctx = ChartContext::<E>::new(2, Parity::Odd).unwrap();
    let n = 5;
    let mut sigma = AntiTensor::zero(n, 2);
    sigma.set(&[0, 2], E::one());
    sigma.set(&[1, 3], E::from(3));
    let q = CkyQuadruple { sigma, mu: AntiTensor::zero(n, 3), phi: vec![E::zero(); n], rho: AntiTensor::zero(n, 2) };
    let mut rng = ChaCha8Rng::seed_from_u64(35);
    let pts: Vec<Vec<E>> = (0..3).map(|_| random_vector(&mut rng, n, 3, true)).collect();
    let mut found = false;
    for branch in 0..4 {
        if let Ok(r) = kerr_section(&ctx, &q, branch, &pts, DEFAULT_TOL) {
            assert!(r.passes(0.0), "{branch}: {:?}", r.samples);
            assert!(r.samples.windows(2).all(|w| w[0].pi == w[1].pi));
            found = true;
        }
    }
    assert!(found);
}

#[test]
fn curated_kerr_example_is_exact() {
    let ctx = ChartContext::<E>::new(2, Parity::Odd).unwrap();
    let q = curated_kerr_quadruple(ctx.frame(), &E::from(2)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(36);
    let pts: Vec<Vec<E>> = (0..4)
        .map(|_| {
            let mut x = random_vector(&mut rng, 5, 3, true);
            x[2] = E::zero();
            x[3] = E::zero();
            x
        })
        .collect();
    let r = kerr_section(&ctx, &q, 0, &pts, DEFAULT_TOL).unwrap();
    assert!(r.passes(0.0), "{:?}", r.samples);
    assert!(r.samples.windows(2).any(|w| w[0].pi != w[1].pi));
    // the remaining eigenspinors have no vacuum component
    for branch in 1..4 {
        assert!(matches!(kerr_section(&ctx, &q, branch, &pts, DEFAULT_TOL), Err(Error::Degenerate(_))));
    }
}

#[test]
fn generic_float_kerr() {
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    for m in 1..=3 {
        let ctx = ChartContext::<CFloat>::new(m, Parity::Odd).unwrap();
        let n = 2 * m + 1;
        let qe = CkyQuadruple::random(&mut rng, n, 3);
        let f = |t: &AntiTensor<E>| AntiTensor::from_map(n, t.degree(), t.components().iter().map(|(k, v)| (k.clone(), CFloat::from_exact(v))).collect());
        let mut q = CkyQuadruple { sigma: f(&qe.sigma), mu: f(&qe.mu), phi: qe.phi.iter().map(CFloat::from_exact).collect(), rho: f(&qe.rho) };
        if m >= 2 {
            q.mu = AntiTensor::zero(n, 3);
            q.rho = AntiTensor::zero(n, 2);
        }
        let pts: Vec<Vec<CFloat>> = (0..5).map(|_| (0..n).map(|_| CFloat::new(rand::Rng::random_range(&mut rng, -1.0..1.0), rand::Rng::random_range(&mut rng, -1.0..1.0))).collect()).collect();
        let r = kerr_section(&ctx, &q, 0, &pts, 1e-8).unwrap();
        assert!(r.passes(1e-8), "m={m}: {}", r.max_residual());
    }
}

#[test]
fn graph_conditions_reject_non_eigenspinors() {
    let mut rng = ChaCha8Rng::seed_from_u64(38);
    for m in 1..=3 {
        let ctx = ChartContext::<E>::new(m, Parity::Odd).unwrap();
        let n = 2 * m + 1;
        let q = CkyQuadruple::random(&mut rng, n, 3);
        let pi = crate::charts::pi_spinor_from_chart(&ctx, &PiCoords::random(&mut rng, m, Parity::Odd, 3)).unwrap();
        let (s, _) = sigma_graph_residuals(ctx.v0(), &q.sigma, &q.mu, &pi).unwrap();
        assert!(s > 0.0, "m={m}");
    }
}

#[test]
fn generic_mu_violates_the_mu_condition() {
    let mut rng = ChaCha8Rng::seed_from_u64(39);
    for m in 2..=3 {
        let ctx = ChartContext::<CFloat>::new(m, Parity::Odd).unwrap();
        let n = 2 * m + 1;
        let qe = CkyQuadruple::random(&mut rng, n, 3);
        let f = |t: &AntiTensor<E>| AntiTensor::from_map(n, t.degree(), t.components().iter().map(|(k, v)| (k.clone(), CFloat::from_exact(v))).collect());
        let q = CkyQuadruple { sigma: f(&qe.sigma), mu: f(&qe.mu), phi: qe.phi.iter().map(CFloat::from_exact).collect(), rho: f(&qe.rho) };
        let pts = vec![vec![CFloat::new(0.3, -0.2); n]];
        let r = kerr_section(&ctx, &q, 0, &pts, 1e-8).unwrap();
        assert!(r.samples[0].sigma_residual < 1e-8);
        assert!(r.samples[0].mu_residual > 1e-6, "m={m}");
    }
}
