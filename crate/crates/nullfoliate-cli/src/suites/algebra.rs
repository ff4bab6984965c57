//! Clifford, purity and incidence suites, generic over the scalar backend.

use nullfoliate::clifford::{CliffordModel, Parity};
use nullfoliate::incidence::{
    check_prop_geometric_t, contact_form_eval, distinguished_curve, distinguished_tangent, intersection_dim,
    intersection_dim_oracle, TwistorPoint,
};
use nullfoliate::purespinor::{
    is_pure_quadratic, is_pure_rank, is_pure_succinct, random_small, random_vector, vacuum, AntiTensor,
    FockComponents, FockFrame,
};
use nullfoliate::scalar::{ExactScalar, Scalar};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::config::{RunConfig, Suite};
use crate::report::Report;
use crate::runner::run_cases;

type E = ExactScalar;

pub(crate) fn lift<T: Scalar>(v: &[E]) -> Vec<T> {
    v.iter().map(T::from_exact).collect()
}

/// Generator pairs `A ≤ B` of the odd and even `V₀` and tractor models; the
/// number of cases is fixed by `m`.
pub(crate) fn clifford<T: Scalar>(cfg: &RunConfig) -> nullfoliate::Result<Report> {
    let m = cfg.m;
    let models: Vec<(&str, CliffordModel<T>)> = vec![
        ("v0-odd", CliffordModel::build_v0_model(m)?),
        ("v0-even", CliffordModel::build_v0_even_model(m)?),
        ("tractor-odd", CliffordModel::build_tractor_model(m, Parity::Odd)?),
        ("tractor-even", CliffordModel::build_tractor_model(m, Parity::Even)?),
    ];
    let mut pairs = Vec::new();
    for (k, (_, model)) in models.iter().enumerate() {
        let n = model.ambient_dim();
        for a in 0..n {
            for b in a..n {
                pairs.push((k, a, b));
            }
        }
    }
    Ok(run_cases(cfg, Suite::Clifford, pairs.len(), |i, _, case| {
        let (k, a, b) = pairs[i];
        let (name, model) = &models[k];
        case.note("model", name);
        case.note("pair", format!("({a}, {b})"));
        let ok = model.clifford_pair_holds(a, b, cfg.tol());
        case.check("clifford", ok, "Γ_AΓ_B + Γ_BΓ_A = −2h_AB·Id", "violated");
        Ok(())
    }))
}

fn random_spinor(rng: &mut ChaCha8Rng, d: usize) -> Vec<E> {
    let mut z = random_vector(rng, d, 3, true);
    if rng.random_bool(0.5) {
        let keep = rng.random_range(1..=d);
        for (j, x) in z.iter_mut().enumerate() {
            if j >= keep {
                *x = E::zero();
            }
        }
    }
    if z.iter().all(E::is_zero) {
        z[0] = E::one();
    }
    z
}

/// Tractor-level spinors: every fifth case is built by the Fock recursion and
/// must be pure, the rest are random and the three criteria must agree.
pub(crate) fn purity<T: Scalar>(cfg: &RunConfig) -> nullfoliate::Result<Report> {
    let m = cfg.m;
    let exact = CliffordModel::<E>::build_tractor_model(m, Parity::Odd)?;
    let model = CliffordModel::<T>::build_tractor_model(m, Parity::Odd)?;
    let frame = FockFrame::new(&exact, &vacuum(&exact), 0.0)?;
    let d = exact.spinor_dim();
    Ok(run_cases(cfg, Suite::Purity, cfg.cases, |i, rng, case| {
        let constructed = i % 5 == 4;
        let z = if constructed {
            let c = frame.random_pure_components(rng, 3);
            case.check("recursion", c.recursion_holds(0.0) == Some(true), "holds", "fails");
            frame.reconstruct(&c)
        } else {
            random_spinor(rng, d)
        };
        case.input("z", &z);
        let zt = lift::<T>(&z);
        let tol = cfg.tol();
        let r = is_pure_rank(&model, &zt, tol)?;
        let q = is_pure_quadratic(&model, &zt, tol)?;
        let s = is_pure_succinct(&model, &zt, tol)?;
        case.check("agreement", r == q && q == s, "rank = quadratic = succinct", format!("rank={r} quadratic={q} succinct={s}"));
        if constructed || m == 1 {
            case.check_eq("pure", true, r);
        }
        Ok(())
    }))
}

/// Random `T_Ξ` components from a shared pool of vectors, so that coincident
/// planes occur often.
fn t_form(rng: &mut ChaCha8Rng, pool: &[Vec<E>], r: usize) -> FockComponents<E> {
    let comb = |rng: &mut ChaCha8Rng| -> AntiTensor<E> {
        let mut v = vec![E::zero(); r];
        for p in pool {
            let c = random_small(rng, 1, false);
            for (x, y) in v.iter_mut().zip(p) {
                *x = x.add_ref(&c.mul_ref(y));
            }
        }
        AntiTensor::vector(&v)
    };
    let mut c = FockComponents::unit(r);
    let z1 = if rng.random_bool(0.8) { comb(rng) } else { AntiTensor::zero(r, 1) };
    let z2 = match rng.random_range(0..3) {
        0 => AntiTensor::zero(r, 2),
        1 if !z1.is_zero(0.0) => z1.wedge(&comb(rng)),
        _ => comb(rng).wedge(&comb(rng)),
    };
    let z2 = if z1.wedge(&z2).is_zero(0.0) { z2 } else { z1.wedge(&comb(rng)) };
    c.set(1, z1);
    c.set(2, z2);
    c
}

/// Intersection dimensions against the kernel oracle, distinguished curves
/// and, at `m = 3`, the `T_Ξ` pair criteria (always evaluated exactly).
pub(crate) fn incidence<T: Scalar>(cfg: &RunConfig) -> nullfoliate::Result<Report> {
    let m = cfg.m;
    let r = m + 1;
    let exact = CliffordModel::<E>::build_tractor_model(m, Parity::Odd)?;
    let model = CliffordModel::<T>::build_tractor_model(m, Parity::Odd)?;
    let frame = FockFrame::new(&exact, &vacuum(&exact), 0.0)?;
    let n = exact.ambient_dim();
    Ok(run_cases(cfg, Suite::Incidence, cfg.cases, |i, rng, case| {
        let tol = cfg.tol();
        let point = |z: &[E]| TwistorPoint::new(&model, lift(z), tol);
        let support = i % (r + 1);
        let z = frame.reconstruct(&frame.random_supported_components(rng, support, 2));
        let same = i % 8 == 0;
        let w = if same {
            z.clone()
        } else {
            let k = rng.random_range(0..=r);
            frame.reconstruct(&frame.random_supported_components(rng, k, 2))
        };
        case.input("z", &z);
        case.input("w", &w);
        let (xi, zp, wp) = (point(&vacuum(&exact))?, point(&z)?, point(&w)?);

        let dxz = intersection_dim(&model, &xi, &zp, tol)?;
        case.check_eq("dim(Ξ,Z) oracle", intersection_dim_oracle(&model, &xi, &zp, tol)?, dxz);
        let floor = r as i64 - support as i64 - 1;
        case.check("dim(Ξ,Z) bound", dxz >= floor, format!(">= {floor}"), dxz);
        let dzw = intersection_dim(&model, &zp, &wp, tol)?;
        case.check_eq("dim(Z,W) oracle", intersection_dim_oracle(&model, &zp, &wp, tol)?, dzw);
        case.check_eq("dim symmetric", dzw, intersection_dim(&model, &wp, &zp, tol)?);
        if same {
            case.check_eq("dim(Z,Z)", m as i64, dzw);
        }

        let a = random_vector(rng, n, 2, true);
        let (s, t) = (random_small(rng, 4, true), random_small(rng, 4, true));
        case.input("a", &a);
        case.input("s,t", &[s.clone(), t.clone()]);
        let at = lift::<T>(&a);
        let zs = distinguished_curve(&model, &zp, &at, &T::from_exact(&s))?;
        let zt = distinguished_curve(&model, &zp, &at, &T::from_exact(&t))?;
        case.check_eq("curve pure", true, is_pure_rank(&model, zs.spinor(), tol)?);
        let dc = intersection_dim(&model, &zs, &zt, tol)?;
        case.check("curve dim", dc >= m as i64 - 1, format!(">= {}", m as i64 - 1), dc);
        let tangent = distinguished_tangent(&model, &zp, &at);
        case.check_eq("contact", true, contact_form_eval(&model, &zs, &tangent)?.is_zero(tol));

        if m == 3 {
            let pool: Vec<Vec<E>> = (0..3).map(|_| random_vector(rng, r, 1, false)).collect();
            let zc = t_form(rng, &pool, r);
            let wc = t_form(rng, &pool, r);
            case.note("t_xi z", zc.render());
            case.note("t_xi w", wc.render());
            let rep = check_prop_geometric_t(&exact, &frame, &zc, &wc, 0.0)?;
            case.check("t_xi criteria", rep.nested_passes(), "all three equivalences", format!("{rep:?}"));
        }
        Ok(())
    }))
}
