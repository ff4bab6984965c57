//! Intersections of γ-planes, the projective tangent space `T_Ξ` and canonical
//! distribution `D_Ξ` at a twistor, contact forms and distinguished curves.
//!
//! All functions work over a tractor [`CliffordModel`] of odd parity, where a
//! twistor is a pure spinor and its γ-plane is the projectivized kernel of
//! `v ↦ v·Z`. Dimensions of γ-plane intersections are projective, so an
//! empty intersection has dimension −1.

use crate::clifford::{CliffordModel, TupleVectors};
use crate::error::{Error, Result};
use crate::purespinor::{
    is_pure_rank, kernel_plane, outer, vector_contraction, AntiTensor, FockComponents, FockFrame,
};
use crate::scalar::{add_vec, is_zero_vec, scale_vec, DMatrix, Scalar};

/// A pure spinor standing for a point of twistor space.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistorPoint<T> {
    z: Vec<T>,
}

impl<T: Scalar> TwistorPoint<T> {
    pub fn new(model: &CliffordModel<T>, z: Vec<T>, tol: f64) -> Result<Self> {
        if !is_pure_rank(model, &z, tol)? {
            return Err(Error::NotPure);
        }
        Ok(TwistorPoint { z })
    }

    pub fn spinor(&self) -> &[T] {
        &self.z
    }

    pub fn into_spinor(self) -> Vec<T> {
        self.z
    }
}

fn check_len<T: Scalar>(model: &CliffordModel<T>, z: &[T]) -> Result<()> {
    if z.len() != model.spinor_dim() {
        return Err(Error::DimensionMismatch { expected: model.spinor_dim(), got: z.len() });
    }
    Ok(())
}

/// Smallest `ℓ ≤ kmax` with `Γ^(ℓ)(Z, W) ≠ 0`, if any.
fn first_nonvanishing<T: Scalar>(model: &CliffordModel<T>, z: &[T], w: &[T], kmax: usize, tol: f64) -> Option<usize> {
    let tv = TupleVectors::new(model, z, kmax);
    let cw = model.gamma0().mul_vec(w);
    (0..=tv.kmax()).find(|&l| !tv.vanishes_with(l, &cw, tol))
}

/// `Γ^(k)(Z, W) = 0` for every `k < bound`.
fn vanish_below<T: Scalar>(model: &CliffordModel<T>, z: &[T], w: &[T], bound: usize, tol: f64) -> bool {
    if bound == 0 {
        return true;
    }
    first_nonvanishing(model, z, w, bound - 1, tol).is_none()
}

/// Projective dimension of `Ž ∩ W̌`: the largest `k` with `Γ^(ℓ)(Z, W) = 0`
/// for all `ℓ ≤ k`, confirmed by `Γ^(k+1)(Z, W) ≠ 0`.
pub fn intersection_dim<T: Scalar>(
    model: &CliffordModel<T>,
    z: &TwistorPoint<T>,
    w: &TwistorPoint<T>,
    tol: f64,
) -> Result<i64> {
    check_len(model, &z.z)?;
    check_len(model, &w.z)?;
    let r = model.max_null_dim();
    match first_nonvanishing(model, &z.z, &w.z, r, tol) {
        Some(l) => Ok(l as i64 - 1),
        None => Err(Error::Degenerate("Γ^(r)(Z, W) vanishes for pure spinors".into())),
    }
}

/// Reference value: linear dimension of the intersection of kernel planes, minus one.
pub fn intersection_dim_oracle<T: Scalar>(
    model: &CliffordModel<T>,
    z: &TwistorPoint<T>,
    w: &TwistorPoint<T>,
    tol: f64,
) -> Result<i64> {
    let kz = kernel_plane(model, &z.z, tol)?;
    let kw = kernel_plane(model, &w.z, tol)?;
    Ok(kz.intersect(&kw, tol)?.dim() as i64 - 1)
}

/// `Z ∈ T_Ξ`: `Γ^(k)(Z, Ξ) = 0` for all `k < m − 1`.
pub fn in_projective_tangent<T: Scalar>(
    model: &CliffordModel<T>,
    z: &TwistorPoint<T>,
    xi: &TwistorPoint<T>,
    tol: f64,
) -> Result<bool> {
    check_len(model, &z.z)?;
    check_len(model, &xi.z)?;
    Ok(vanish_below(model, &z.z, &xi.z, model.m().saturating_sub(1), tol))
}

/// `X^{Aα} Y_A^β + 2 Y^α X^β − X^α Y^β`.
fn contact_matrix<T: Scalar>(model: &CliffordModel<T>, x: &[T], y: &[T]) -> DMatrix<T> {
    vector_contraction(model, x, y)
        .add(&outer(y, x).scale(&T::from_i64(2)))
        .and_then(|c| c.sub(&outer(x, y)))
        .expect("square matrices of equal size")
}

/// The bilinear residual `Z^{Aα} Ξ_A^β + 2 Z^β Ξ^α − Z^α Ξ^β` cutting out `D_Ξ`.
pub fn distribution_residual<T: Scalar>(model: &CliffordModel<T>, z: &[T], xi: &[T]) -> DMatrix<T> {
    contact_matrix(model, z, xi)
}

/// `Z ∈ D_Ξ` via the bilinear residual, cross-checked against
/// `Γ^(k)(Z, Ξ) = 0` for all `k < m`; disagreement is reported as an error.
pub fn in_canonical_distribution<T: Scalar>(
    model: &CliffordModel<T>,
    z: &TwistorPoint<T>,
    xi: &TwistorPoint<T>,
    tol: f64,
) -> Result<bool> {
    check_len(model, &z.z)?;
    check_len(model, &xi.z)?;
    let succinct = distribution_residual(model, &z.z, &xi.z).is_zero(tol);
    let bilinear = vanish_below(model, &z.z, &xi.z, model.m(), tol);
    if succinct != bilinear {
        return Err(Error::Degenerate("distribution tests disagree".into()));
    }
    Ok(succinct)
}

/// Value of the contact 1-forms `α^{αβ}` on a displacement `V` at `Z`.
///
/// Since `α(Z) = 0` for pure `Z`, the value only depends on `V` modulo `Z`.
#[derive(Clone, Debug, PartialEq)]
pub struct ContactFormValue<T> {
    pub alpha: DMatrix<T>,
}

impl<T: Scalar> ContactFormValue<T> {
    pub fn is_zero(&self, tol: f64) -> bool {
        self.alpha.is_zero(tol)
    }
}

/// `α^{αβ}(V) = Z^{Aα} V_A^β + 2 Z^β V^α − Z^α V^β`.
pub fn contact_form_eval<T: Scalar>(model: &CliffordModel<T>, z: &TwistorPoint<T>, v: &[T]) -> Result<ContactFormValue<T>> {
    check_len(model, v)?;
    Ok(ContactFormValue { alpha: contact_matrix(model, &z.z, v) })
}

/// `Z(s) = Ξ + (i/2) s A·Ξ`, a point of the distinguished curve through `Ξ`
/// in the direction `A`.
pub fn distinguished_curve<T: Scalar>(
    model: &CliffordModel<T>,
    xi: &TwistorPoint<T>,
    a: &[T],
    s: &T,
) -> Result<TwistorPoint<T>> {
    if a.len() != model.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: model.ambient_dim(), got: a.len() });
    }
    let c = T::i().mul_ref(s).mul_ref(&T::from_ratio(1, 2));
    let z = add_vec(&xi.z, &scale_vec(&c, &model.act_vector(a, &xi.z)));
    if is_zero_vec(&z, 0.0) {
        return Err(Error::ZeroSpinor);
    }
    Ok(TwistorPoint { z })
}

/// Tangent `(i/2) A·Ξ` of the distinguished curve; independent of `s`.
pub fn distinguished_tangent<T: Scalar>(model: &CliffordModel<T>, xi: &TwistorPoint<T>, a: &[T]) -> Vec<T> {
    let c = T::i().mul_ref(&T::from_ratio(1, 2));
    scale_vec(&c, &model.act_vector(a, &xi.z))
}

/// One equivalence `condition ⟺ dim ≥ threshold`, evaluated on a pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Equivalence {
    pub threshold: i64,
    pub condition: bool,
    pub dim_holds: bool,
}

impl Equivalence {
    pub fn passes(&self) -> bool {
        self.condition == self.dim_holds
    }
}

/// Outcome of the three intersection criteria for a pair in `T_Ξ`.
///
/// `literal` uses the left-hand sides as written:
/// `Z₂∧W₂ = 0` (dim ≥ m−3), `Z₁∧W₂ + W₁∧Z₂ = 0` (dim ≥ m−2) and
/// `W₂ − Z₂ − W₁∧Z₁ = 0` (dim ≥ m−1).
/// `nested` uses `Φ₂∧Φ₂ = 0`, `Φ₁∧Φ₂ = Φ₂∧Φ₂ = 0` and `Φ₂ = 0`, with
/// `Φ₁ = W₁ − Z₁` and `Φ₂ = W₂ − Z₂ − Z₁∧W₁`, the components of `W`
/// relative to `Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometricTReport {
    pub dim: i64,
    pub literal: [Equivalence; 3],
    pub nested: [Equivalence; 3],
}

impl GeometricTReport {
    pub fn nested_passes(&self) -> bool {
        self.nested.iter().all(Equivalence::passes)
    }

    pub fn literal_passes(&self) -> bool {
        self.literal.iter().all(Equivalence::passes)
    }
}

/// Components divided by `Z_(0)`, after checking the `T_Ξ` form:
/// `Z_(−k) = 0` for `k ≥ 3`, `Z_(−1)∧Z_(−2) = 0` and `Z_(−2)∧Z_(−2) = 0`.
fn normalized_t_form<T: Scalar>(c: &FockComponents<T>, tol: f64) -> Result<FockComponents<T>> {
    let z0 = c.z0();
    let inv = z0.inv().map_err(|_| Error::Degenerate("Z(0) = 0".into()))?;
    let r = c.rank();
    let mut comps = Vec::with_capacity(r + 1);
    for j in 0..=r {
        comps.push(c.z(j).scale(&inv));
    }
    let n = FockComponents::new(comps)?;
    let bad_top = (3..=r).any(|j| !n.z(j).is_zero(tol));
    let bad_quadric = r >= 3 && (!n.z(1).wedge(n.z(2)).is_zero(tol) || !n.z(2).wedge(n.z(2)).is_zero(tol));
    if bad_top || bad_quadric {
        return Err(Error::Malformed("components are not of T_Ξ form".into()));
    }
    Ok(n)
}

/// Checks the intersection criteria for two points of `T_Ξ` given by their
/// Fock components relative to `frame.xi()`, against [`intersection_dim_oracle`].
pub fn check_prop_geometric_t<T: Scalar>(
    model: &CliffordModel<T>,
    frame: &FockFrame<T>,
    zc: &FockComponents<T>,
    wc: &FockComponents<T>,
    tol: f64,
) -> Result<GeometricTReport> {
    let z = normalized_t_form(zc, tol)?;
    let w = normalized_t_form(wc, tol)?;
    let zp = TwistorPoint::new(model, frame.reconstruct(&z), tol)?;
    let wp = TwistorPoint::new(model, frame.reconstruct(&w), tol)?;
    let dim = intersection_dim_oracle(model, &zp, &wp, tol)?;
    let m = model.m() as i64;
    let (z1, z2, w1, w2) = (z.z(1), z.z(2), w.z(1), w.z(2));
    let eq = |threshold: i64, condition: bool| Equivalence { threshold, condition, dim_holds: dim >= threshold };

    let zw22 = z2.wedge(w2).is_zero(tol);
    let cross = z1.wedge(w2).add(&w1.wedge(z2)).is_zero(tol);
    let literal = [
        eq(m - 3, zw22),
        eq(m - 2, cross),
        eq(m - 1, w2.sub(z2).sub(&w1.wedge(z1)).is_zero(tol)),
    ];

    let phi1 = w1.sub(z1);
    let phi2 = w2.sub(z2).sub(&z1.wedge(w1));
    let p22 = phi2.wedge(&phi2).is_zero(tol);
    let nested = [
        eq(m - 3, p22),
        eq(m - 2, p22 && phi1.wedge(&phi2).is_zero(tol)),
        eq(m - 1, phi2.is_zero(tol)),
    ];
    Ok(GeometricTReport { dim, literal, nested })
}

/// The point `Ξ + (i/2) v·Ξ` of `D_Ξ` for `v` in the complement of the
/// kernel of `Ξ`, given by components in `frame`.
pub fn d_xi_point<T: Scalar>(frame: &FockFrame<T>, v: &AntiTensor<T>) -> Vec<T> {
    let mut w = FockComponents::unit(frame.rank());
    w.set(1, v.clone());
    frame.reconstruct(&w)
}

/// Constructive direction of the `m − 3` criterion: when
/// `dim(Ξ̌ ∩ Ž) ≥ m − 3`, the point `W = Ξ + (i/2) Z_(−1)·Ξ` is pure and lies
/// in `D_Ξ ∩ T_Z`. Returns `None` when the hypothesis fails.
pub fn check_m_minus_3_witness<T: Scalar>(
    model: &CliffordModel<T>,
    frame: &FockFrame<T>,
    zc: &FockComponents<T>,
    tol: f64,
) -> Result<Option<bool>> {
    let xi = TwistorPoint::new(model, frame.xi().to_vec(), tol)?;
    let z = TwistorPoint::new(model, frame.reconstruct(zc), tol)?;
    if intersection_dim(model, &xi, &z, tol)? < model.m() as i64 - 3 {
        return Ok(None);
    }
    let inv = zc.z0().inv().map_err(|_| Error::Degenerate("Z(0) = 0".into()))?;
    let w = d_xi_point(frame, &zc.z(1).scale(&inv));
    if !is_pure_rank(model, &w, tol)? {
        return Ok(Some(false));
    }
    let w = TwistorPoint { z: w };
    Ok(Some(in_canonical_distribution(model, &w, &xi, tol)? && in_projective_tangent(model, &w, &z, tol)?))
}

/// `Φ` with `Z_(−2) = Z_(−1) ∧ Φ`, for normalized components with `Z_(−1) ≠ 0`.
fn factor_two_form<T: Scalar>(z1: &AntiTensor<T>, z2: &AntiTensor<T>, tol: f64) -> Option<AntiTensor<T>> {
    let r = z1.dim();
    let i = (0..r).find(|&i| !z1.get(&[i]).near_zero(tol))?;
    let inv = z1.get(&[i]).inv().ok()?;
    let two = T::from_i64(2);
    let phi: Vec<T> = (0..r).map(|j| two.mul_ref(&z2.get(&[i, j])).mul_ref(&inv)).collect();
    let phi = AntiTensor::vector(&phi);
    z1.wedge(&phi).approx_eq(z2, tol).then_some(phi)
}

/// Constructive direction of the `m − 2` criterion: for `Z ∈ T_Ξ` with
/// `Z_(−1) ≠ 0`, write `Z_(−2) = Z_(−1) ∧ Φ`; then `W = Ξ − (i/2) Φ·Ξ` lies in
/// `D_Z ∩ D_Ξ`. Returns `None` outside that generic case.
pub fn check_m_minus_2_witness<T: Scalar>(
    model: &CliffordModel<T>,
    frame: &FockFrame<T>,
    zc: &FockComponents<T>,
    tol: f64,
) -> Result<Option<bool>> {
    let xi = TwistorPoint::new(model, frame.xi().to_vec(), tol)?;
    let z = TwistorPoint::new(model, frame.reconstruct(zc), tol)?;
    if !in_projective_tangent(model, &z, &xi, tol)? {
        return Ok(None);
    }
    let inv = zc.z0().inv().map_err(|_| Error::Degenerate("Z(0) = 0".into()))?;
    let (z1, z2) = (zc.z(1).scale(&inv), zc.z(2).scale(&inv));
    let Some(phi) = factor_two_form(&z1, &z2, tol) else {
        return Ok(None);
    };
    let w = TwistorPoint::new(model, d_xi_point(frame, &phi.scale(&T::from_i64(-1))), tol)?;
    Ok(Some(in_canonical_distribution(model, &w, &xi, tol)? && in_canonical_distribution(model, &w, &z, tol)?))
}
