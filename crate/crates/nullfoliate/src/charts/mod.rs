//! Affine charts around the vacuum `o` on the correspondence space `F`, on
//! twistor space `PT` and on mini-twistor space `MT`, where the `o`
//! component `π^0` of `π` is nonzero and normalized to 1.
//!
//! Coordinates are `(z^A, z_A, u; π^A, π^{AB})` on `F`, `(ω^0, ω^A, π^A, π^{AB})`
//! on `PT` and `(ω̲^A, π^A, π^{AB})` on `MT`. For even models `u`, `ω^0` and
//! `π^A` are absent. The polynomial layer lays the coordinates out as flat
//! variable lists, see [`ChartLayout`].
//!
//! Vector fields and 1-forms are component vectors over the coordinate
//! (co)basis of the independent variables `π^{AB}`, `A < B`. The vector
//! `X_AB = ∂/∂π^{AB}` pairs with `dπ^{CD}` as `δ^{[C}_A δ^{D]}_B`, so it is half
//! the coordinate derivative, and sums over `B` run over both orderings.

mod eigen;
mod frames;
#[cfg(test)]
mod tests;

pub use eigen::{
    cky_eigenspinors, clifford_two_form, float_eigenvalues, mt_section_m1, normal_section_zeros, spin_endo_eigen,
    CkyBranch, EigenBranch, EigenReport, MtSectionReport, SpinEndo, ZeroBranch, ZeroSetReport, CLUSTER_GAP,
};
pub use frames::{
    apply_field, expected_alpha_pullback, f_alpha2, f_frames, mu_jacobian, mu_poly, omega_bar_pt_poly, pairing,
    pt_frames, pullback, tau_poly, ChartFrames,
};

use rand::Rng;

use crate::clifford::{combinations, CliffordModel, Parity};
use crate::error::{Error, Result};
use crate::purespinor::{random_small, vacuum, AntiTensor, FockComponents, FockFrame};
use crate::scalar::{is_zero_vec, scale_vec, DMatrix, ExactScalar, Scalar, DEFAULT_TOL};
use crate::tractor::ConformalFrame;

/// The chart `π^0 ≠ 0` together with the models it lives on.
#[derive(Clone, Debug)]
pub struct ChartContext<T> {
    frame: ConformalFrame<T>,
    fock: FockFrame<T>,
}

impl<T: Scalar> ChartContext<T> {
    /// Fock frame of the vacuum with kernel `δ^A` and dual complement `δ_A`.
    pub fn new(m: usize, parity: Parity) -> Result<Self> {
        let frame = ConformalFrame::new(m, parity)?;
        let v0 = frame.v0();
        let n = v0.ambient_dim();
        let unit = |i: usize| {
            let mut e = vec![T::zero(); n];
            e[i] = T::one();
            e
        };
        let kernel = (0..m).map(|a| unit(m + a)).collect();
        let dual = (0..m).map(unit).collect();
        let fock = FockFrame::with_dual(v0, &vacuum(v0), kernel, dual, DEFAULT_TOL)?;
        Ok(ChartContext { frame, fock })
    }

    pub fn m(&self) -> usize {
        self.v0().m()
    }

    pub fn parity(&self) -> Parity {
        self.v0().parity()
    }

    pub fn frame(&self) -> &ConformalFrame<T> {
        &self.frame
    }

    pub fn v0(&self) -> &CliffordModel<T> {
        self.frame.v0()
    }

    pub fn tractor(&self) -> &CliffordModel<T> {
        self.frame.tractor()
    }

    pub fn fock(&self) -> &FockFrame<T> {
        &self.fock
    }

    pub fn layout(&self) -> ChartLayout {
        ChartLayout::new(self.m(), self.parity())
    }

    fn odd(&self) -> bool {
        self.parity() == Parity::Odd
    }

    fn check_pi(&self, pi: &PiCoords<T>) -> Result<()> {
        let m = self.m();
        let want = if self.odd() { m } else { 0 };
        if pi.pi_a.len() != want {
            return Err(Error::DimensionMismatch { expected: want, got: pi.pi_a.len() });
        }
        if pi.pi_ab.dim() != m || pi.pi_ab.degree() != 2 {
            return Err(Error::Malformed(format!("π^AB must be a 2-form on {m} indices")));
        }
        Ok(())
    }

    fn check_f(&self, p: &ChartPointF<T>) -> Result<()> {
        let m = self.m();
        for v in [&p.z_up, &p.z_dn] {
            if v.len() != m {
                return Err(Error::DimensionMismatch { expected: m, got: v.len() });
            }
        }
        if !self.odd() && !p.u.is_zero() {
            return Err(Error::Malformed("even charts have no u coordinate".into()));
        }
        self.check_pi(&p.pi)
    }

    fn check_pt(&self, q: &ChartPointPT<T>) -> Result<()> {
        if q.omega_a.len() != self.m() {
            return Err(Error::DimensionMismatch { expected: self.m(), got: q.omega_a.len() });
        }
        if !self.odd() && !q.omega_0.is_zero() {
            return Err(Error::Malformed("even charts have no ω^0 coordinate".into()));
        }
        self.check_pi(&q.pi)
    }
}

/// Fibre coordinates `(π^A, π^{AB})`; `pi_a` is empty for even models.
#[derive(Clone, Debug, PartialEq)]
pub struct PiCoords<T> {
    pub pi_a: Vec<T>,
    pub pi_ab: AntiTensor<T>,
}

impl<T: Scalar> PiCoords<T> {
    pub fn zero(m: usize, parity: Parity) -> Self {
        let la = if parity == Parity::Odd { m } else { 0 };
        PiCoords { pi_a: vec![T::zero(); la], pi_ab: AntiTensor::zero(m, 2) }
    }

    /// `π^{AB}` with antisymmetric index handling.
    pub fn ab(&self, a: usize, b: usize) -> T {
        self.pi_ab.get(&[a, b])
    }

    /// `π^A`, zero for even models.
    pub fn a(&self, a: usize) -> T {
        self.pi_a.get(a).cloned().unwrap_or_else(T::zero)
    }
}

impl PiCoords<ExactScalar> {
    pub fn random<R: Rng + ?Sized>(rng: &mut R, m: usize, parity: Parity, range: i64) -> Self {
        let mut p = Self::zero(m, parity);
        for x in p.pi_a.iter_mut() {
            *x = random_small(rng, range, true);
        }
        for t in combinations(m, 2) {
            p.pi_ab.set(&t, random_small(rng, range, true));
        }
        p
    }
}

/// A point `(z^A, z_A, u; π)` of the chart on `F`; `u = 0` for even models.
#[derive(Clone, Debug, PartialEq)]
pub struct ChartPointF<T> {
    pub z_up: Vec<T>,
    pub z_dn: Vec<T>,
    pub u: T,
    pub pi: PiCoords<T>,
}

impl<T: Scalar> ChartPointF<T> {
    /// Coordinates `x^a` in the Witt basis order `(z^A, z_A, u)`.
    pub fn x(&self, parity: Parity) -> Vec<T> {
        let mut x = self.z_up.clone();
        x.extend(self.z_dn.iter().cloned());
        if parity == Parity::Odd {
            x.push(self.u.clone());
        }
        x
    }

    pub fn from_x(m: usize, x: &[T], pi: PiCoords<T>) -> Self {
        ChartPointF {
            z_up: x[..m].to_vec(),
            z_dn: x[m..2 * m].to_vec(),
            u: x.get(2 * m).cloned().unwrap_or_else(T::zero),
            pi,
        }
    }
}

impl ChartPointF<ExactScalar> {
    pub fn random<R: Rng + ?Sized>(rng: &mut R, m: usize, parity: Parity, range: i64) -> Self {
        let mut draw = |k: usize| (0..k).map(|_| random_small(rng, range, true)).collect::<Vec<_>>();
        let z_up = draw(m);
        let z_dn = draw(m);
        let u = if parity == Parity::Odd { draw(1).remove(0) } else { ExactScalar::zero() };
        ChartPointF { z_up, z_dn, u, pi: PiCoords::random(rng, m, parity, range) }
    }
}

/// A point `(ω^0, ω^A; π)` of the chart on `PT`; `ω^0 = 0` for even models.
#[derive(Clone, Debug, PartialEq)]
pub struct ChartPointPT<T> {
    pub omega_0: T,
    pub omega_a: Vec<T>,
    pub pi: PiCoords<T>,
}

/// A point `(ω̲^A; π)` of the chart on `MT`.
#[derive(Clone, Debug, PartialEq)]
pub struct MiniTwistorPoint<T> {
    pub omega_bar: Vec<T>,
    pub pi: PiCoords<T>,
}

fn fock_components<T: Scalar>(ctx: &ChartContext<T>, pi: &PiCoords<T>) -> Result<FockComponents<T>> {
    ctx.check_pi(pi)?;
    let mut c = FockComponents::unit(ctx.m());
    if ctx.odd() {
        c.set(1, AntiTensor::vector(&pi.pi_a));
    }
    if ctx.m() >= 2 {
        c.set(2, pi.pi_ab.clone());
    }
    c.complete_by_recursion()?;
    Ok(c)
}

/// `π = o + (i/2) π^A δ_A − ¼ π^{AB} δ_AB + …`, the higher components
/// completed by the purity recursion.
pub fn pi_spinor_from_chart<T: Scalar>(ctx: &ChartContext<T>, pi: &PiCoords<T>) -> Result<Vec<T>> {
    Ok(ctx.fock.reconstruct(&fock_components(ctx, pi)?))
}

/// The bivector `π^{ab} = π^{AB} δ_A^a δ_B^b + 2 π^A δ_A^{[a} u^{b]}` as a
/// full antisymmetric matrix over the `V₀` basis.
fn pi_bivector<T: Scalar>(ctx: &ChartContext<T>, pi: &PiCoords<T>) -> DMatrix<T> {
    let m = ctx.m();
    let n = ctx.v0().ambient_dim();
    DMatrix::from_fn(n, n, |a, b| match (a < m, b < m) {
        (true, true) => pi.ab(a, b),
        (true, false) if b == 2 * m => pi.a(a),
        (false, true) if a == 2 * m => pi.a(b).neg_ref(),
        _ => T::zero(),
    })
}

/// `exp(−¼ π^{ab} γ_ab) o`; `γ_ab` acts as `G_b G_a` in the left-action
/// representation. The exponent is nilpotent, so the series terminates.
pub fn pi_spinor_exp<T: Scalar>(ctx: &ChartContext<T>, pi: &PiCoords<T>) -> Result<Vec<T>> {
    ctx.check_pi(pi)?;
    let v0 = ctx.v0();
    let n = v0.ambient_dim();
    let d = v0.spinor_dim();
    let bv = pi_bivector(ctx, pi);
    let mut l = DMatrix::zeros(d, d);
    for a in 0..n {
        for b in 0..n {
            if bv[(a, b)].is_zero() {
                continue;
            }
            let gg = v0.generator(b).mul(v0.generator(a))?;
            l = l.add(&gg.scale(&bv[(a, b)].mul_ref(&T::from_ratio(-1, 4))))?;
        }
    }
    let o = vacuum(v0);
    let mut term = o.clone();
    let mut sum = o;
    for k in 1..=d {
        term = scale_vec(&T::from_ratio(1, k as i64), &l.mul_vec(&term));
        if is_zero_vec(&term, 0.0) {
            break;
        }
        sum = sum.iter().zip(&term).map(|(s, t)| s.add_ref(t)).collect();
    }
    Ok(sum)
}

/// Chart coordinates of a spinor with nonzero `o` component, after
/// normalizing that component to 1. Spinors that are not pure violate the
/// chart quadric relations.
pub fn chart_from_spinor<T: Scalar>(ctx: &ChartContext<T>, z: &[T], tol: f64) -> Result<PiCoords<T>> {
    if z.len() != ctx.v0().spinor_dim() {
        return Err(Error::DimensionMismatch { expected: ctx.v0().spinor_dim(), got: z.len() });
    }
    let c = ctx.fock.decompose(z);
    let z0 = c.z0();
    if z0.near_zero(tol) {
        return Err(Error::Degenerate("π^0 = 0".into()));
    }
    let inv = z0.inv()?;
    let pi_a = if ctx.odd() { (0..ctx.m()).map(|a| c.z(1).get(&[a]).mul_ref(&inv)).collect() } else { Vec::new() };
    let pi_ab = if ctx.m() >= 2 { c.z(2).scale(&inv) } else { AntiTensor::zero(ctx.m(), 2) };
    let pi = PiCoords { pi_a, pi_ab };
    let rebuilt = pi_spinor_from_chart(ctx, &pi)?;
    let normalized = scale_vec(&inv, z);
    if !rebuilt.iter().zip(&normalized).all(|(a, b)| a.approx_eq(b, tol)) {
        return Err(Error::QuadricViolation);
    }
    Ok(pi)
}

/// The incidence relation in chart form:
/// `ω^A = z^A + π^{AB} z_B + ½ π^A u`, `ω^0 = u − π^B z_B`.
pub fn mu_project<T: Scalar>(ctx: &ChartContext<T>, p: &ChartPointF<T>) -> Result<ChartPointPT<T>> {
    ctx.check_f(p)?;
    let m = ctx.m();
    let half = T::from_ratio(1, 2);
    let mut omega_0 = p.u.clone();
    for b in 0..m {
        omega_0 = omega_0.sub_ref(&p.pi.a(b).mul_ref(&p.z_dn[b]));
    }
    let omega_a = (0..m)
        .map(|a| {
            let mut w = p.z_up[a].add_ref(&half.mul_ref(&p.pi.a(a)).mul_ref(&p.u));
            for b in 0..m {
                w = w.add_ref(&p.pi.ab(a, b).mul_ref(&p.z_dn[b]));
            }
            w
        })
        .collect();
    Ok(ChartPointPT { omega_0, omega_a, pi: p.pi.clone() })
}

/// `ω = (1/√2) ω^a γ_a π` with `ω^a = (ω^A − ½ ω^0 π^A) δ_A + ω^0 u`.
pub fn omega_spinor<T: Scalar>(ctx: &ChartContext<T>, q: &ChartPointPT<T>) -> Result<Vec<T>> {
    ctx.check_pt(q)?;
    let m = ctx.m();
    let n = ctx.v0().ambient_dim();
    let half = T::from_ratio(1, 2);
    let mut w = vec![T::zero(); n];
    for a in 0..m {
        w[a] = q.omega_a[a].sub_ref(&half.mul_ref(&q.omega_0).mul_ref(&q.pi.a(a)));
    }
    if ctx.odd() {
        w[2 * m] = q.omega_0.clone();
    }
    let pi = pi_spinor_from_chart(ctx, &q.pi)?;
    Ok(scale_vec(&T::sqrt2().inv()?, &ctx.v0().act_vector(&w, &pi)))
}

/// The tractor spinor `(ω, π)` of a chart point of `PT`.
pub fn twistor_lift<T: Scalar>(ctx: &ChartContext<T>, q: &ChartPointPT<T>) -> Result<Vec<T>> {
    let mut z = omega_spinor(ctx, q)?;
    z.extend(pi_spinor_from_chart(ctx, &q.pi)?);
    Ok(z)
}

/// `X^𝒜 Γ_𝒜 Z` for `X` the embedded base point and `Z` the lift of its
/// chart image; zero exactly when the chart incidence is right.
pub fn incidence_residual<T: Scalar>(ctx: &ChartContext<T>, p: &ChartPointF<T>) -> Result<Vec<T>> {
    let x = ctx.frame.embed_point(&p.x(ctx.parity()))?;
    let z = twistor_lift(ctx, &mu_project(ctx, p)?)?;
    Ok(ctx.tractor().act_vector(&x, &z))
}

/// Chart coordinates of a tractor spinor `(ω, π)` with `π^0 ≠ 0`, read off
/// from `ω = (1/√2)(i ω^0 o + ω^A δ_A + …)`.
pub fn pt_from_twistor<T: Scalar>(ctx: &ChartContext<T>, z: &[T], tol: f64) -> Result<ChartPointPT<T>> {
    let d = ctx.v0().spinor_dim();
    if z.len() != 2 * d {
        return Err(Error::DimensionMismatch { expected: 2 * d, got: z.len() });
    }
    let (w, p) = z.split_at(d);
    let pi = chart_from_spinor(ctx, p, tol)?;
    let inv = ctx.fock.decompose(p).z0().inv()?;
    let wc = ctx.fock.decompose(&scale_vec(&inv, w));
    let r2 = T::sqrt2();
    let omega_0 = if ctx.odd() { T::i().mul_ref(&r2).mul_ref(&wc.z0()).neg_ref() } else { T::zero() };
    let c1 = T::i().mul_ref(&r2).mul_ref(&T::from_ratio(1, 2));
    let omega_a = (0..ctx.m()).map(|a| c1.mul_ref(&wc.z(1).get(&[a]))).collect();
    let q = ChartPointPT { omega_0, omega_a, pi };
    let lifted = twistor_lift(ctx, &q)?;
    let normalized = scale_vec(&inv, z);
    if !lifted.iter().zip(&normalized).all(|(a, b)| a.approx_eq(b, tol)) {
        return Err(Error::Degenerate("tractor spinor is not a pure twistor in chart form".into()));
    }
    Ok(q)
}

/// `ω̲^A = ω^A + ½ π^A ω^0`.
pub fn tau_project<T: Scalar>(ctx: &ChartContext<T>, q: &ChartPointPT<T>) -> Result<MiniTwistorPoint<T>> {
    ctx.check_pt(q)?;
    let half = T::from_ratio(1, 2);
    let omega_bar = (0..ctx.m()).map(|a| q.omega_a[a].add_ref(&half.mul_ref(&q.pi.a(a)).mul_ref(&q.omega_0))).collect();
    Ok(MiniTwistorPoint { omega_bar, pi: q.pi.clone() })
}

/// The flow of `Y`: `(ω^0, ω^A) ↦ (ω^0 + t, ω^A − ½ π^A t)`.
pub fn y_flow<T: Scalar>(q: &ChartPointPT<T>, t: &T) -> ChartPointPT<T> {
    let half = T::from_ratio(1, 2);
    let omega_a = q.omega_a.iter().enumerate().map(|(a, w)| w.sub_ref(&half.mul_ref(&q.pi.a(a)).mul_ref(t))).collect();
    ChartPointPT { omega_0: q.omega_0.add_ref(t), omega_a, pi: q.pi.clone() }
}

/// Flat variable layout of the chart polynomials.
///
/// `F`: `[z^A, z_A, u, π^A, π^{AB}]`; `PT`: `[ω^0, ω^A, π^A, π^{AB}]`, with
/// `u`, `ω^0`, `π^A` dropped for even models and `π^{AB}` over `A < B` in
/// lexicographic order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChartLayout {
    m: usize,
    parity: Parity,
}

impl ChartLayout {
    pub fn new(m: usize, parity: Parity) -> Self {
        ChartLayout { m, parity }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn odd(&self) -> bool {
        self.parity == Parity::Odd
    }

    pub fn pairs(&self) -> Vec<Vec<usize>> {
        combinations(self.m, 2)
    }

    fn pair_pos(&self, a: usize, b: usize) -> usize {
        self.pairs().iter().position(|t| t[0] == a && t[1] == b).expect("increasing pair")
    }

    fn n_odd(&self) -> usize {
        if self.odd() { self.m } else { 0 }
    }

    /// Number of base coordinates `x^a`.
    pub fn base_dim(&self) -> usize {
        2 * self.m + usize::from(self.odd())
    }

    pub fn f_nvars(&self) -> usize {
        self.base_dim() + self.n_odd() + self.pairs().len()
    }

    pub fn f_z_up(&self, a: usize) -> usize {
        a
    }

    pub fn f_z_dn(&self, a: usize) -> usize {
        self.m + a
    }

    pub fn f_u(&self) -> Option<usize> {
        self.odd().then_some(2 * self.m)
    }

    pub fn f_pi(&self, a: usize) -> Option<usize> {
        self.odd().then(|| self.base_dim() + a)
    }

    /// Variable of `π^{AB}` for `A < B`.
    pub fn f_pi2(&self, a: usize, b: usize) -> usize {
        self.base_dim() + self.n_odd() + self.pair_pos(a, b)
    }

    pub fn pt_nvars(&self) -> usize {
        usize::from(self.odd()) + self.m + self.n_odd() + self.pairs().len()
    }

    pub fn pt_omega0(&self) -> Option<usize> {
        self.odd().then_some(0)
    }

    pub fn pt_omega(&self, a: usize) -> usize {
        usize::from(self.odd()) + a
    }

    pub fn pt_pi(&self, a: usize) -> Option<usize> {
        self.odd().then(|| 1 + self.m + a)
    }

    pub fn pt_pi2(&self, a: usize, b: usize) -> usize {
        usize::from(self.odd()) + self.m + self.n_odd() + self.pair_pos(a, b)
    }

    fn pi_values<T: Scalar>(&self, pi: &PiCoords<T>) -> Vec<T> {
        let mut v = pi.pi_a.clone();
        v.extend(self.pairs().iter().map(|t| pi.pi_ab.get(t)));
        v
    }

    fn pi_from_values<T: Scalar>(&self, v: &[T]) -> PiCoords<T> {
        let k = self.n_odd();
        let mut pi_ab = AntiTensor::zero(self.m, 2);
        for (t, x) in self.pairs().iter().zip(&v[k..]) {
            pi_ab.set(t, x.clone());
        }
        PiCoords { pi_a: v[..k].to_vec(), pi_ab }
    }

    pub fn f_coords<T: Scalar>(&self, p: &ChartPointF<T>) -> Vec<T> {
        let mut v = p.x(self.parity);
        v.extend(self.pi_values(&p.pi));
        v
    }

    pub fn f_point<T: Scalar>(&self, v: &[T]) -> ChartPointF<T> {
        let b = self.base_dim();
        ChartPointF::from_x(self.m, &v[..b], self.pi_from_values(&v[b..]))
    }

    pub fn pt_coords<T: Scalar>(&self, q: &ChartPointPT<T>) -> Vec<T> {
        let mut v = Vec::new();
        if self.odd() {
            v.push(q.omega_0.clone());
        }
        v.extend(q.omega_a.iter().cloned());
        v.extend(self.pi_values(&q.pi));
        v
    }

    pub fn pt_point<T: Scalar>(&self, v: &[T]) -> ChartPointPT<T> {
        let o = usize::from(self.odd());
        let omega_0 = if self.odd() { v[0].clone() } else { T::zero() };
        ChartPointPT { omega_0, omega_a: v[o..o + self.m].to_vec(), pi: self.pi_from_values(&v[o + self.m..]) }
    }
}
