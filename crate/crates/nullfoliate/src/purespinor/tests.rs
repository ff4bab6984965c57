use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::clifford::CliffordModel;
use crate::scalar::ExactScalar;

type E = ExactScalar;

fn all_models(m: usize) -> Vec<CliffordModel<E>> {
    vec![
        CliffordModel::build_v0_model(m).unwrap(),
        CliffordModel::build_v0_even_model(m).unwrap(),
        CliffordModel::build_tractor_model(m, Parity::Odd).unwrap(),
        CliffordModel::build_tractor_model(m, Parity::Even).unwrap(),
    ]
}

#[test]
fn vacuum_is_pure_in_every_model() {
    for m in 1..=3 {
        for model in all_models(m) {
            let o = vacuum(&model);
            assert!(is_pure_rank(&model, &o, 0.0).unwrap());
            assert!(is_pure_quadratic(&model, &o, 0.0).unwrap());
            assert!(is_pure_succinct(&model, &o, 0.0).unwrap());
            let k = kernel_plane(&model, &o, 0.0).unwrap();
            assert!(is_totally_null(&model, &k, 0.0));
        }
    }
}

#[test]
fn zero_spinor_is_rejected() {
    let model = CliffordModel::<E>::build_tractor_model(2, Parity::Odd).unwrap();
    let z = vec![E::zero(); model.spinor_dim()];
    assert_eq!(is_pure_rank(&model, &z, 0.0), Err(Error::ZeroSpinor));
    assert_eq!(is_pure_quadratic(&model, &z, 0.0), Err(Error::ZeroSpinor));
    assert_eq!(is_pure_succinct(&model, &z, 0.0), Err(Error::ZeroSpinor));
}

#[test]
fn constraint_degrees() {
    let t = |m| CliffordModel::<E>::build_tractor_model(m, Parity::Odd).unwrap();
    assert_eq!(purity_constraint_degrees(&t(1)), Vec::<usize>::new());
    assert_eq!(purity_constraint_degrees(&t(2)), vec![0]);
    assert_eq!(purity_constraint_degrees(&t(3)), vec![0, 1]);
    let e = CliffordModel::<E>::build_tractor_model(3, Parity::Even).unwrap();
    assert_eq!(purity_constraint_degrees(&e), vec![0]);
}

#[test]
fn fock_factors() {
    assert_eq!(fock_factor::<E>(0), E::one());
    assert_eq!(fock_factor::<E>(1), E::gaussian(0, 1) * E::rational(1, 2));
    assert_eq!(fock_factor::<E>(2), E::rational(-1, 2));
    assert_eq!(fock_factor::<E>(3), E::gaussian(0, 1) * E::rational(-3, 4));
    assert_eq!(fock_factor::<E>(4), E::rational(3, 4));
}

#[test]
fn random_pure_spinors_pass_all_tests() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for m in 1..=3 {
        for parity in [Parity::Odd, Parity::Even] {
            let model = CliffordModel::<E>::build_tractor_model(m, parity).unwrap();
            let frame = FockFrame::new(&model, &vacuum(&model), 0.0).unwrap();
            assert_eq!(frame.rank(), model.max_null_dim());
            for _ in 0..5 {
                let c = frame.random_pure_components(&mut rng, 2);
                let z = frame.reconstruct(&c);
                assert_eq!(frame.decompose(&z), c);
                assert!(is_pure_rank(&model, &z, 0.0).unwrap(), "m={m} {parity:?}");
                assert!(is_pure_quadratic(&model, &z, 0.0).unwrap());
                assert!(is_pure_succinct(&model, &z, 0.0).unwrap());
                assert_eq!(frame.fock_purity(&model, &c, 0.0), Ok(true));
            }
        }
    }
}

#[test]
fn purity_tests_agree_on_random_spinors() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for m in 1..=3 {
        let model = CliffordModel::<E>::build_tractor_model(m, Parity::Odd).unwrap();
        let frame = FockFrame::new(&model, &vacuum(&model), 0.0).unwrap();
        for trial in 0..12 {
            let z = if trial % 2 == 0 {
                random_vector(&mut rng, model.spinor_dim(), 2, true)
            } else {
                let mut z = frame.random_pure_spinor(&mut rng, 2);
                let i = trial % model.spinor_dim();
                z[i] = z[i].add_ref(&E::one());
                z
            };
            if is_zero_vec(&z, 0.0) {
                continue;
            }
            let rank = is_pure_rank(&model, &z, 0.0).unwrap();
            assert_eq!(is_pure_quadratic(&model, &z, 0.0).unwrap(), rank, "m={m} trial={trial}");
            assert_eq!(is_pure_succinct(&model, &z, 0.0).unwrap(), rank);
            let c = frame.decompose(&z);
            assert_eq!(frame.fock_purity(&model, &c, 0.0).unwrap(), rank);
            let v0 = CliffordModel::<E>::build_v0_model(m).unwrap();
            assert_eq!(split_purity(&v0, &OmegaPiSplit::from_tractor(&z), 0.0).unwrap(), rank);
        }
    }
}

#[test]
fn every_spinor_is_pure_in_dimension_five() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let model = CliffordModel::<E>::build_tractor_model(1, Parity::Odd).unwrap();
    for _ in 0..10 {
        let z = random_vector(&mut rng, 4, 3, true);
        if !is_zero_vec(&z, 0.0) {
            assert!(is_pure_rank(&model, &z, 0.0).unwrap());
        }
    }
}

#[test]
fn split_round_trip() {
    let model = CliffordModel::<E>::build_tractor_model(2, Parity::Odd).unwrap();
    let z: Vec<E> = (0..model.spinor_dim() as i64).map(E::from).collect();
    assert_eq!(OmegaPiSplit::from_tractor(&z).assemble(), z);
}

#[test]
fn float_purity_matches_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let model = CliffordModel::<E>::build_tractor_model(3, Parity::Odd).unwrap();
    let fm = model.to_float();
    let frame = FockFrame::new(&model, &vacuum(&model), 0.0).unwrap();
    let z = frame.random_pure_spinor(&mut rng, 2);
    let zf: Vec<_> = z.iter().map(crate::scalar::CFloat::from_exact).collect();
    assert!(is_pure_rank(&fm, &zf, 1e-9).unwrap());
    assert!(is_pure_quadratic(&fm, &zf, 1e-9).unwrap());
    assert!(is_pure_succinct(&fm, &zf, 1e-9).unwrap());
}
