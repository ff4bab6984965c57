use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::purespinor::{random_vector, vacuum};
use crate::scalar::DEFAULT_TOL;

type E = ExactScalar;

fn frames() -> Vec<ConformalFrame<E>> {
    let mut out = Vec::new();
    for m in 1..=3 {
        out.push(ConformalFrame::new(m, Parity::Odd).unwrap());
        out.push(ConformalFrame::new(m, Parity::Even).unwrap());
    }
    out
}

#[test]
fn embedded_points_are_null() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for f in frames() {
        for _ in 0..5 {
            let x = random_vector(&mut rng, f.n(), 4, true);
            let p = f.embed_point(&x).unwrap();
            assert!(f.tractor().inner(&p, &p).is_zero());
            assert_eq!(f.tractor().inner(&p, &f.y0()), E::one());
        }
        assert!(f.embed_point(&[E::one()]).is_err());
    }
}

#[test]
fn frame_fields_satisfy_structure_equations() {
    for f in frames() {
        let ff = f.frame_fields();
        assert!(ff.derivatives_hold(&f));
        assert!(ff.inner_products_hold(&f));
    }
}

#[test]
fn injectors_are_dual_and_integrate_the_connection() {
    for f in frames() {
        let inj = f.injector_fields();
        assert!(inj.derivatives_hold(&f));
        assert!(inj.duality_holds());
    }
}

#[test]
fn bundle_formula_reproduces_the_generators() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for f in frames() {
        let mut points = vec![vec![E::zero(); f.n()]];
        points.push(random_vector(&mut rng, f.n(), 3, true));
        for x in points {
            let gens = f.bundle_generators(&x).unwrap();
            for (b, g) in gens.iter().enumerate() {
                assert_eq!(g, f.tractor().generator(b), "generator {b}");
            }
        }
    }
}

#[test]
fn generator_blocks_at_origin() {
    let f = ConformalFrame::<E>::new(2, Parity::Odd).unwrap();
    let d = f.d();
    let mut z = vec![E::zero(); 2 * d];
    z[1] = E::from(3);
    let gx = f.tractor().act(X_IDX, &z);
    assert_eq!(gx[d + 1], E::from(3).mul_ref(&E::sqrt2()));
    assert!(gx[..d].iter().all(E::is_zero));
}

#[test]
fn cks_fields_are_killing_and_assemble_to_parallel_spinors() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for f in frames() {
        for _ in 0..5 {
            let data = CksData { xi0: random_vector(&mut rng, f.d(), 3, true), zeta0: random_vector(&mut rng, f.d(), 3, true) };
            let cks = cks_field(&f, &data).unwrap();
            assert!(verify_cks(&f, &cks));
            let big = cks_tractor_spinor(&f, &cks);
            assert_eq!(big, pvec_const(f.n(), &data.tractor_spinor()));
            assert!(cks.xi.iter().all(|p| p.degree().is_none_or(|k| k <= 1)));
        }
    }
}

#[test]
fn perturbed_cks_is_rejected() {
    let f = ConformalFrame::<E>::new(2, Parity::Odd).unwrap();
    let data = CksData { xi0: vacuum(f.v0()), zeta0: vacuum(f.v0()) };
    let mut cks = cks_field(&f, &data).unwrap();
    cks.xi[0] = cks.xi[0].add(&Poly::var(f.n(), 0));
    assert!(!verify_cks(&f, &cks));
}

#[test]
fn cks_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let f = ConformalFrame::<E>::new(3, Parity::Odd).unwrap();
    let data = CksData { xi0: random_vector(&mut rng, f.d(), 3, true), zeta0: random_vector(&mut rng, f.d(), 3, true) };
    let cks = cks_field(&f, &data).unwrap();
    let x: Vec<CFloat> = (0..f.n()).map(|a| CFloat::new(0.3 * a as f64 - 0.5, 0.1)).collect();
    assert!(cks_fd_residual(&f, &cks, &x, 1e-3) < 1e-8);
}

#[test]
fn pure_tractor_spinor_gives_pointwise_pure_cks() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for m in 1..=3 {
        let f = ConformalFrame::<E>::new(m, Parity::Odd).unwrap();
        let xi = vacuum(f.tractor());
        let frame = crate::purespinor::FockFrame::new(f.tractor(), &xi, DEFAULT_TOL).unwrap();
        let z = frame.random_pure_spinor(&mut rng, 3);
        let cks = cks_field(&f, &CksData::from_tractor_spinor(&z)).unwrap();
        for _ in 0..10 {
            let x = random_vector(&mut rng, f.n(), 3, true);
            assert_ne!(cks_pure_at(&f, &cks, &x, DEFAULT_TOL).unwrap(), Some(false));
        }
    }
}

#[test]
fn cky_fields_solve_the_prolonged_system() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for f in frames() {
        let q = CkyQuadruple::random(&mut rng, f.n(), 3);
        let field = cky_field(&f, &q).unwrap();
        assert_eq!(cky_residual(&f, &field), None);
        assert!(field.sigma.degree().unwrap() <= 2);
    }
}

#[test]
fn cky_tractor_form_is_parallel() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for f in frames().into_iter().take(4) {
        let q = CkyQuadruple::random(&mut rng, f.n(), 3);
        let field = cky_field(&f, &q).unwrap();
        let s = sigma_tractor(&f, &field);
        assert!(sigma_is_parallel(&f, &s));
        assert!(!s.is_zero());
    }
}

#[test]
fn perturbed_cky_is_rejected() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let f = ConformalFrame::<E>::new(2, Parity::Odd).unwrap();
    let q = CkyQuadruple::random(&mut rng, f.n(), 3);
    let mut field = cky_field(&f, &q).unwrap();
    let n = f.n();
    let bump = Poly::var(n, 0).mul(&Poly::var(n, 1));
    field.sigma = field.sigma.add(&PolyForm::from_fn(n, 2, n, |t| if t == [0, 1] { bump.clone() } else { Poly::zero(n) }));
    assert!(cky_residual(&f, &field).unwrap().starts_with("sigma"));
    assert!(!sigma_is_parallel(&f, &sigma_tractor(&f, &field)));
}

#[test]
fn malformed_cky_data_is_rejected() {
    let f = ConformalFrame::<E>::new(1, Parity::Odd).unwrap();
    let n = f.n();
    let q = CkyQuadruple { sigma: AntiTensor::zero(n, 3), mu: AntiTensor::zero(n, 3), phi: vec![E::zero(); n], rho: AntiTensor::zero(n, 2) };
    assert!(cky_field(&f, &q).is_err());
}
