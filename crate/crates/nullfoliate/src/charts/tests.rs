use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::frames::{f_frames, pt_frames};
use super::*;
use crate::purespinor::{is_pure_rank, kernel_plane, random_vector};
use crate::scalar::{CFloat, DEFAULT_TOL};
use crate::tractor::{pvec_eval, pvec_is_zero, pvec_sub, Poly};

type E = ExactScalar;

fn contexts() -> Vec<ChartContext<E>> {
    let mut out = Vec::new();
    for m in 1..=3 {
        out.push(ChartContext::new(m, Parity::Odd).unwrap());
        out.push(ChartContext::new(m, Parity::Even).unwrap());
    }
    out
}

#[test]
fn zero_chart_point_is_the_vacuum() {
    for ctx in contexts() {
        let pi = PiCoords::zero(ctx.m(), ctx.parity());
        assert_eq!(pi_spinor_from_chart(&ctx, &pi).unwrap(), vacuum(ctx.v0()));
    }
}

#[test]
fn chart_spinors_are_pure_and_match_the_exponential_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for ctx in contexts() {
        for _ in 0..5 {
            let pi = PiCoords::random(&mut rng, ctx.m(), ctx.parity(), 3);
            let z = pi_spinor_from_chart(&ctx, &pi).unwrap();
            assert!(is_pure_rank(ctx.v0(), &z, DEFAULT_TOL).unwrap());
            assert_eq!(kernel_plane(ctx.v0(), &z, DEFAULT_TOL).unwrap().dim(), ctx.m());
            assert_eq!(pi_spinor_exp(&ctx, &pi).unwrap(), z);
            let scaled: Vec<E> = z.iter().map(|x| x.mul_ref(&E::gaussian(2, -1))).collect();
            assert_eq!(chart_from_spinor(&ctx, &scaled, DEFAULT_TOL).unwrap(), pi);
        }
    }
}

#[test]
fn chart_rejects_off_chart_and_impure_spinors() {
    let ctx = ChartContext::<E>::new(3, Parity::Odd).unwrap();
    let d = ctx.v0().spinor_dim();
    let mut z = vec![E::zero(); d];
    z[d - 1] = E::one();
    assert!(matches!(chart_from_spinor(&ctx, &z, DEFAULT_TOL), Err(Error::Degenerate(_))));
    let mut bad = vacuum(ctx.v0());
    bad[d - 1] = E::one();
    assert!(!is_pure_rank(ctx.v0(), &bad, DEFAULT_TOL).unwrap());
    assert!(matches!(chart_from_spinor(&ctx, &bad, DEFAULT_TOL), Err(Error::QuadricViolation)));
}

#[test]
fn incidence_holds_exactly_on_lifts() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for ctx in contexts() {
        for _ in 0..10 {
            let p = ChartPointF::random(&mut rng, ctx.m(), ctx.parity(), 3);
            assert!(incidence_residual(&ctx, &p).unwrap().iter().all(E::is_zero));
            let q = mu_project(&ctx, &p).unwrap();
            let z = twistor_lift(&ctx, &q).unwrap();
            let back = pt_from_twistor(&ctx, &z.iter().map(|x| x.mul_ref(&E::from(3))).collect::<Vec<_>>(), DEFAULT_TOL).unwrap();
            assert_eq!(back, q);
        }
    }
}

#[test]
fn incidence_at_zero_pi_is_the_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let ctx = ChartContext::<E>::new(2, Parity::Odd).unwrap();
    let mut p = ChartPointF::random(&mut rng, 2, Parity::Odd, 3);
    p.pi = PiCoords::zero(2, Parity::Odd);
    let q = mu_project(&ctx, &p).unwrap();
    assert_eq!(q.omega_a, p.z_up);
    assert_eq!(q.omega_0, p.u);
}

#[test]
fn wrong_incidence_is_detected() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let ctx = ChartContext::<E>::new(2, Parity::Odd).unwrap();
    let p = ChartPointF::random(&mut rng, 2, Parity::Odd, 3);
    let mut q = mu_project(&ctx, &p).unwrap();
    q.omega_a[0] = q.omega_a[0].add_ref(&E::one());
    let x = ctx.frame().embed_point(&p.x(Parity::Odd)).unwrap();
    let z = twistor_lift(&ctx, &q).unwrap();
    assert!(!ctx.tractor().act_vector(&x, &z).iter().all(E::is_zero));
}

#[test]
fn mini_twistor_projection_is_constant_along_y() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for m in 1..=3 {
        let ctx = ChartContext::<E>::new(m, Parity::Odd).unwrap();
        let p = ChartPointF::random(&mut rng, m, Parity::Odd, 3);
        let q = mu_project(&ctx, &p).unwrap();
        let base = tau_project(&ctx, &q).unwrap();
        for t in [E::from(1), E::gaussian(-2, 5), E::rational(7, 3)] {
            assert_eq!(tau_project(&ctx, &y_flow(&q, &t)).unwrap(), base);
        }
        let l = ctx.layout();
        let w = omega_bar_pt_poly::<E>(&l);
        let coords = l.f_coords(&p);
        assert_eq!(pvec_eval(&w, &coords), base.omega_bar);
        // z^A + (π^{AB} − ½π^Aπ^B) z_B + π^A u
        for a in 0..m {
            let mut want = p.z_up[a].add_ref(&p.pi.a(a).mul_ref(&p.u));
            for b in 0..m {
                let s = p.pi.ab(a, b).sub_ref(&p.pi.a(a).mul_ref(&p.pi.a(b)).mul_ref(&E::rational(1, 2)));
                want = want.add_ref(&s.mul_ref(&p.z_dn[b]));
            }
            assert_eq!(base.omega_bar[a], want);
        }
    }
}

#[test]
fn frames_are_dual() {
    for ctx in contexts() {
        let l = ctx.layout();
        assert!(f_frames::<E>(&l).duality_holds(), "F m={} {:?}", l.m(), l.parity());
        assert!(pt_frames::<E>(&l).duality_holds(), "PT m={} {:?}", l.m(), l.parity());
    }
}

#[test]
fn pullback_identity_holds() {
    for ctx in contexts() {
        let l = ctx.layout();
        let pt = pt_frames::<E>(&l);
        for a in 0..l.m() {
            let alpha = pt.coframe_form(&format!("alpha^{}", a + 1)).unwrap();
            let got = pullback(&l, alpha);
            assert!(pvec_is_zero(&pvec_sub(&got, &expected_alpha_pullback(&l, a))), "m={} a={a}", l.m());
        }
        for t in l.pairs() {
            let alpha = pt.coframe_form(&format!("alpha^{}{}", t[0] + 1, t[1] + 1)).unwrap();
            let f = f_frames::<E>(&l);
            assert!(pvec_is_zero(&pvec_sub(&pullback(&l, alpha), f.coframe_form(&format!("alpha^{}{}", t[0] + 1, t[1] + 1)).unwrap())));
        }
    }
}

#[test]
fn pullback_identity_pointwise() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for ctx in contexts() {
        let l = ctx.layout();
        let pt = pt_frames::<E>(&l);
        for _ in 0..5 {
            let p = ChartPointF::random(&mut rng, l.m(), l.parity(), 3);
            let coords = l.f_coords(&p);
            let jac = mu_jacobian(&l, &coords);
            let image = l.pt_coords(&mu_project(&ctx, &p).unwrap());
            for a in 0..l.m() {
                let form = pvec_eval(pt.coframe_form(&format!("alpha^{}", a + 1)).unwrap(), &image);
                assert_eq!(jac.vec_mul(&form), pvec_eval(&expected_alpha_pullback(&l, a), &coords));
            }
        }
    }
}

#[test]
fn incidence_fibres_and_y_are_annihilated() {
    for ctx in contexts() {
        let l = ctx.layout();
        let f = f_frames::<E>(&l);
        let mu = mu_poly::<E>(&l);
        let nu = omega_bar_pt_poly::<E>(&l);
        for a in 0..l.m() {
            let z = f.frame_field(&format!("Z^{}", a + 1)).unwrap();
            assert!(mu.iter().all(|c| apply_field(z, c).is_zero()));
            assert!(nu.iter().all(|c| apply_field(z, c).is_zero()));
        }
        if l.odd() {
            let u = f.frame_field("U").unwrap();
            assert!(nu.iter().all(|c| apply_field(u, c).is_zero()));
            // μ_* U = Y
            let y = pt_frames::<E>(&l).frame_field("Y").unwrap().clone();
            let pushed: Vec<Poly<E>> = mu.iter().map(|c| apply_field(u, c)).collect();
            let y_on_f: Vec<Poly<E>> = y.iter().map(|c| c.compose(l.f_nvars(), &mu)).collect();
            assert!(pvec_is_zero(&pvec_sub(&pushed, &y_on_f)));
            let tau = tau_poly::<E>(&l);
            assert!(tau.iter().all(|c| apply_field(&y, c).is_zero()));
        }
        let theta0_ok = !l.odd() || {
            let th0 = f.coframe_form("theta^0").unwrap();
            (0..l.m()).all(|a| pairing(th0, f.frame_field(&format!("Z^{}", a + 1)).unwrap()).is_zero())
                && pairing(th0, f.frame_field("U").unwrap()) == Poly::constant(l.f_nvars(), E::one())
        };
        assert!(theta0_ok);
    }
}

#[test]
fn spin_endo_squares_to_minus_norm() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for ctx in contexts() {
        let v = random_vector(&mut rng, ctx.v0().ambient_dim(), 3, true);
        assert!(SpinEndo::new(ctx.v0(), &v).unwrap().square_holds(ctx.v0(), 0.0));
    }
}

#[test]
fn spin_endo_eigenvalues() {
    for m in 1..=3 {
        let v0 = CliffordModel::<E>::build_v0_model(m).unwrap();
        let n = v0.ambient_dim();
        let d = v0.spinor_dim();
        let mut u = vec![E::zero(); n];
        u[2 * m] = E::one();
        let r = spin_endo_eigen(&v0, &u, DEFAULT_TOL).unwrap();
        assert!(r.all_exact());
        let vals: Vec<String> = r.branches.iter().map(|b| b.rendered.clone()).collect();
        assert_eq!(r.branches.len(), 2, "{vals:?}");
        assert!(r.branches.iter().all(|b| b.algebraic == d / 2 && b.geometric == d / 2));
        assert!((r.branches[0].value.0 - num_complex::Complex64::new(0.0, -1.0)).norm() < 1e-12);
        let mut delta = vec![E::zero(); n];
        delta[0] = E::one();
        let r = spin_endo_eigen(&v0, &delta, DEFAULT_TOL).unwrap();
        assert_eq!(r.branches.len(), 1);
        assert_eq!((r.branches[0].algebraic, r.branches[0].geometric), (d, d / 2));
        assert!(r.branches[0].value.0.norm() == 0.0);
    }
}

#[test]
fn non_square_norm_falls_back_to_float() {
    let v0 = CliffordModel::<E>::build_v0_model(2).unwrap();
    let mut v = vec![E::zero(); 5];
    v[4] = E::sqrt2().add_ref(&E::one());
    v[0] = E::one();
    v[2] = E::one();
    let r = spin_endo_eigen(&v0, &v, DEFAULT_TOL).unwrap();
    assert!(!r.all_exact());
    assert_eq!(r.branches.iter().map(|b| b.algebraic).collect::<Vec<_>>(), vec![2, 2]);
    let q = v0.inner(&v, &v).to_c64();
    let want = (-q).sqrt();
    assert!(r.values().iter().any(|z| (z - want).norm() < 1e-9));
}

#[test]
fn float_eigenvalues_for_norm_four() {
    let v0 = CliffordModel::<E>::build_v0_model(3).unwrap().to_float();
    let mut v = vec![CFloat::new(0.0, 0.0); 7];
    v[0] = CFloat::new(0.7, 0.2);
    v[4] = CFloat::new(-1.1, 0.5);
    // u component chosen so that V·V = 4
    let rest = v0.inner(&v, &v).0;
    v[6] = CFloat((num_complex::Complex64::new(4.0, 0.0) - rest).sqrt());
    assert!((v0.inner(&v, &v).0 - 4.0).norm() < 1e-12);
    let r = spin_endo_eigen(&v0, &v, DEFAULT_TOL).unwrap();
    let vals = r.values();
    assert!((vals[0] - num_complex::Complex64::new(0.0, -2.0)).norm() < 1e-9);
    assert!((vals[1] - num_complex::Complex64::new(0.0, 2.0)).norm() < 1e-9);
    let g = float_eigenvalues(&SpinEndo::new(&v0, &v).unwrap().matrix);
    assert!(g.iter().all(|(_, k)| *k == 4));
}

#[test]
fn normal_section_zero_sets() {
    let v1 = CliffordModel::<E>::build_v0_model(1).unwrap();
    let mut delta = vec![E::zero(); 3];
    delta[0] = E::one();
    let z = normal_section_zeros(&v1, &delta, DEFAULT_TOL).unwrap();
    assert!(z.null);
    assert_eq!(z.branches.len(), 1);
    assert_eq!((z.branches[0].eigenspace_dim, z.branches[0].pure_locus_dim), (0, Some(0)));
    assert_eq!(z.branches[0].multiplicity, 2);

    let v2 = CliffordModel::<E>::build_v0_model(2).unwrap();
    let mut delta = vec![E::zero(); 5];
    delta[0] = E::one();
    let z = normal_section_zeros(&v2, &delta, DEFAULT_TOL).unwrap();
    assert_eq!(z.branches[0].pure_locus_dim, Some(1));
    assert_eq!(z.branches[0].multiplicity, 4);
    assert!(z.branches[0].samples_pure);

    for m in 1..=3 {
        let v0 = CliffordModel::<E>::build_v0_model(m).unwrap();
        let mut u = vec![E::zero(); 2 * m + 1];
        u[2 * m] = E::from(2);
        let z = normal_section_zeros(&v0, &u, DEFAULT_TOL).unwrap();
        assert_eq!(z.branches.len(), 2);
        for b in &z.branches {
            assert_eq!(b.pure_locus_dim, Some((m * (m - 1) / 2) as isize));
            assert_eq!(b.multiplicity, 1 << (m - 1));
        }
    }
}

#[test]
fn m1_mini_twistor_section() {
    let v0 = CliffordModel::<E>::build_v0_model(1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    for _ in 0..20 {
        let v = random_vector(&mut rng, 3, 3, true);
        let r = mt_section_m1(&v0, &v, DEFAULT_TOL).unwrap();
        let null = v0.inner(&v, &v).is_zero();
        assert_eq!(r.discriminant.is_zero(), null);
        assert_eq!(r.roots, if null { 1 } else { 2 });
        assert!(r.roots_are_eigenspinors);
    }
    let mut u = vec![E::zero(); 3];
    u[2] = E::one();
    assert_eq!(mt_section_m1(&v0, &u, DEFAULT_TOL).unwrap().roots, 2);
}

fn block_sigma(m: usize, lambdas: &[i64]) -> AntiTensor<E> {
    // σ = Σ λ_A δ^A ∧ δ_A, lower indices: σ_{A, m+A} pairs z^A with z_A
    let n = 2 * m + 1;
    let mut s = AntiTensor::zero(n, 2);
    for (a, l) in lambdas.iter().enumerate() {
        s.set(&[a, m + a], E::from(*l));
    }
    s
}

#[test]
fn cky_eigenspinors_exact_for_block_form() {
    let v0 = CliffordModel::<E>::build_v0_model(2).unwrap();
    let br = cky_eigenspinors(&v0, &block_sigma(2, &[1, 3]), DEFAULT_TOL).unwrap();
    assert_eq!(br.len(), 4);
    for b in &br {
        assert!(b.eigen.exact);
        assert_eq!((b.eigen.algebraic, b.eigen.geometric), (1, 1));
        assert_eq!(b.pure, Some(true));
    }
    let zero = cky_eigenspinors(&v0, &AntiTensor::zero(5, 2), DEFAULT_TOL).unwrap();
    assert_eq!(zero.len(), 1);
    assert_eq!(zero[0].eigen.algebraic, 4);
}

#[test]
fn generic_cky_eigenspinors_are_pure() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    for m in 1..=3 {
        let v0 = CliffordModel::<E>::build_v0_model(m).unwrap().to_float();
        let n = 2 * m + 1;
        let mut s = AntiTensor::zero(n, 2);
        for t in combinations(n, 2) {
            s.set(&t, CFloat::from_exact(&random_small(&mut rng, 5, true)));
        }
        let br = cky_eigenspinors(&v0, &s, 1e-8).unwrap();
        assert_eq!(br.len(), 1 << m);
        assert!(br.iter().all(|b| b.pure == Some(true)), "m={m}");
    }
}

#[test]
fn layout_roundtrips() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for ctx in contexts() {
        let l = ctx.layout();
        let p = ChartPointF::random(&mut rng, l.m(), l.parity(), 3);
        assert_eq!(l.f_point(&l.f_coords(&p)), p);
        let q = mu_project(&ctx, &p).unwrap();
        assert_eq!(l.pt_point(&l.pt_coords(&q)), q);
        assert_eq!(pvec_eval(&mu_poly::<E>(&l), &l.f_coords(&p)), l.pt_coords(&q));
    }
}
