//! Almost null structures on flat space as rational sections
//! `x ↦ (ξ^A(x), ξ^{AB}(x))` of the correspondence space over the chart
//! `π^0 ≠ 0`, with the geodetic, co-integrable and co-geodetic conditions
//! checked as polynomial identities after clearing the denominator, and the
//! Robinson-type sections of pure conformal Killing spinors.
//!
//! Base coordinates are `x^a` in the Witt order `(z^A, z_A, u)`; `∂^A`, `∂_A`
//! and `∂` are the derivatives along `z_A`, `z^A` and `u`.

mod kerr;
#[cfg(test)]
mod tests;

pub use kerr::{curated_kerr_quadruple, kerr_section, sigma_graph_residuals, KerrReport, KerrSample};

use crate::charts::{twistor_lift, ChartContext, ChartPointF, ChartPointPT, PiCoords};
use crate::clifford::{combinations, Parity};
use crate::error::{Error, Result};
use crate::incidence::{in_canonical_distribution, intersection_dim, TwistorPoint};
use crate::purespinor::{is_pure_rank, outer, vector_contraction, AntiTensor, FockComponents};
use crate::scalar::{proportional, scale_vec, DMatrix, Scalar, Subspace};
use crate::tractor::{cks_field, CksData, Poly, PolyForm, PolyVec};

/// `num / D^pow` over a fixed denominator `D`.
#[derive(Clone, Debug, PartialEq)]
pub struct DRat<T> {
    pub num: Poly<T>,
    pub pow: u32,
}

/// A section `ξ^A = N^A / D`, `ξ^{AB} = N^{AB} / D` over the base coordinates.
/// Even sections carry no `ξ^A`.
#[derive(Clone, Debug)]
pub struct NullSection<T> {
    m: usize,
    parity: Parity,
    den: Poly<T>,
    xi_a: PolyVec<T>,
    xi_ab: PolyForm<T>,
}

/// The frame `Z^A`, `U` of `N` and `N^⊥ / N`, as rational components over the
/// base coordinate derivatives.
#[derive(Clone, Debug)]
pub struct FrameFields<T> {
    pub z_up: Vec<Vec<DRat<T>>>,
    pub u: Option<Vec<DRat<T>>>,
}

impl<T: Scalar> NullSection<T> {
    pub fn new(m: usize, parity: Parity, den: Poly<T>, xi_a: PolyVec<T>, xi_ab: PolyForm<T>) -> Result<Self> {
        let n = base_dim(m, parity);
        let want_a = if parity == Parity::Odd { m } else { 0 };
        if xi_a.len() != want_a {
            return Err(Error::DimensionMismatch { expected: want_a, got: xi_a.len() });
        }
        if den.nvars() != n || xi_a.iter().any(|p| p.nvars() != n) || xi_ab.dim() != m || xi_ab.degree_k() != 2 {
            return Err(Error::Malformed("section components over the wrong variables".into()));
        }
        if den.is_zero() {
            return Err(Error::Degenerate("ξ^0 vanishes identically".into()));
        }
        Ok(NullSection { m, parity, den, xi_a, xi_ab })
    }

    /// The constant section with value `π`.
    pub fn constant(m: usize, parity: Parity, pi: &PiCoords<T>) -> Result<Self> {
        let n = base_dim(m, parity);
        let c = |v: T| Poly::constant(n, v);
        let xi_a = pi.pi_a.iter().cloned().map(c).collect();
        let xi_ab = PolyForm::from_fn(m, 2, n, |t| c(pi.pi_ab.get(t)));
        NullSection::new(m, parity, c(T::one()), xi_a, xi_ab)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn nvars(&self) -> usize {
        self.den.nvars()
    }

    pub fn denominator(&self) -> &Poly<T> {
        &self.den
    }

    fn odd(&self) -> bool {
        self.parity == Parity::Odd
    }

    fn u_idx(&self) -> usize {
        2 * self.m
    }

    pub fn xi_a(&self, a: usize) -> DRat<T> {
        match self.xi_a.get(a) {
            Some(p) => DRat { num: p.clone(), pow: 1 },
            None => self.zero(),
        }
    }

    pub fn xi_ab(&self, a: usize, b: usize) -> DRat<T> {
        DRat { num: self.xi_ab.get(&[a, b]), pow: 1 }
    }

    // DRat arithmetic over the fixed denominator

    pub fn zero(&self) -> DRat<T> {
        DRat { num: Poly::zero(self.nvars()), pow: 0 }
    }

    pub fn constant_rat(&self, c: T) -> DRat<T> {
        DRat { num: Poly::constant(self.nvars(), c), pow: 0 }
    }

    fn den_pow(&self, k: u32) -> Poly<T> {
        (0..k).fold(Poly::constant(self.nvars(), T::one()), |acc, _| acc.mul(&self.den))
    }

    fn lift(&self, a: &DRat<T>, pow: u32) -> Poly<T> {
        a.num.mul(&self.den_pow(pow - a.pow))
    }

    pub fn add(&self, a: &DRat<T>, b: &DRat<T>) -> DRat<T> {
        if a.num.is_zero() {
            return b.clone();
        }
        if b.num.is_zero() {
            return a.clone();
        }
        let pow = a.pow.max(b.pow);
        DRat { num: self.lift(a, pow).add(&self.lift(b, pow)), pow }
    }

    pub fn sub(&self, a: &DRat<T>, b: &DRat<T>) -> DRat<T> {
        self.add(a, &DRat { num: b.num.neg(), pow: b.pow })
    }

    pub fn mul(&self, a: &DRat<T>, b: &DRat<T>) -> DRat<T> {
        if a.num.is_zero() || b.num.is_zero() {
            return self.zero();
        }
        DRat { num: a.num.mul(&b.num), pow: a.pow + b.pow }
    }

    pub fn scale(&self, c: &T, a: &DRat<T>) -> DRat<T> {
        DRat { num: a.num.scale(c), pow: a.pow }
    }

    /// `∂_i (N / D^k) = (D ∂_i N − k N ∂_i D) / D^{k+1}`.
    pub fn deriv(&self, a: &DRat<T>, i: usize) -> DRat<T> {
        if a.pow == 0 {
            return DRat { num: a.num.deriv(i), pow: 0 };
        }
        let num = self.den.mul(&a.num.deriv(i)).sub(&a.num.mul(&self.den.deriv(i)).scale(&T::from_i64(a.pow as i64)));
        DRat { num, pow: a.pow + 1 }
    }

    /// Value at `x`; fails where the denominator vanishes.
    pub fn eval(&self, a: &DRat<T>, x: &[T]) -> Result<T> {
        let d = self.den.eval(x);
        if a.pow > 0 && d.is_zero() {
            return Err(Error::Degenerate("sample on the singular set ξ^0 = 0".into()));
        }
        let mut v = a.num.eval(x);
        for _ in 0..a.pow {
            v = v.div_ref(&d)?;
        }
        Ok(v)
    }

    /// `V(f) = Σ_i V^i ∂_i f`.
    pub fn apply(&self, field: &[DRat<T>], f: &DRat<T>) -> DRat<T> {
        field.iter().enumerate().fold(self.zero(), |acc, (i, c)| {
            if c.num.is_zero() {
                acc
            } else {
                self.add(&acc, &self.mul(c, &self.deriv(f, i)))
            }
        })
    }

    /// `ξ^{AD} − ½ ξ^A ξ^D`.
    fn s(&self, a: usize, d: usize) -> DRat<T> {
        let half = T::from_ratio(1, 2);
        self.sub(&self.xi_ab(a, d), &self.scale(&half, &self.mul(&self.xi_a(a), &self.xi_a(d))))
    }

    /// `Z^A = ∂^A + (ξ^{AD} − ½ ξ^A ξ^D) ∂_D + ξ^A ∂` and `U = ∂ − ξ^D ∂_D`.
    pub fn frame(&self) -> FrameFields<T> {
        let n = self.nvars();
        let m = self.m;
        let z_up = (0..m)
            .map(|a| {
                let mut v = vec![self.zero(); n];
                v[m + a] = self.constant_rat(T::one());
                for (d, vd) in v.iter_mut().enumerate().take(m) {
                    *vd = self.s(a, d);
                }
                if self.odd() {
                    v[self.u_idx()] = self.xi_a(a);
                }
                v
            })
            .collect();
        let u = self.odd().then(|| {
            let mut v = vec![self.zero(); n];
            v[self.u_idx()] = self.constant_rat(T::one());
            for (d, vd) in v.iter_mut().enumerate().take(m) {
                *vd = DRat { num: self.xi_a[d].neg(), pow: 1 };
            }
            v
        });
        FrameFields { z_up, u }
    }

    /// `Σ h_ij V^i W^j`.
    pub fn metric(&self, gram: &DMatrix<T>, v: &[DRat<T>], w: &[DRat<T>]) -> DRat<T> {
        let mut acc = self.zero();
        for (i, vi) in v.iter().enumerate() {
            for (j, wj) in w.iter().enumerate() {
                if !gram[(i, j)].is_zero() {
                    acc = self.add(&acc, &self.scale(&gram[(i, j)], &self.mul(vi, wj)));
                }
            }
        }
        acc
    }

    /// `g(Z^A, Z^B) = 0`, `g(Z^A, U) = 0` and `g(U, U) = h(u, u)` identically.
    pub fn frame_is_null(&self, gram: &DMatrix<T>) -> bool {
        let f = self.frame();
        let zz = f.z_up.iter().all(|a| f.z_up.iter().all(|b| self.metric(gram, a, b).num.is_zero()));
        let zu = f.u.as_ref().is_none_or(|u| {
            let huu = self.constant_rat(gram[(self.u_idx(), self.u_idx())].clone());
            f.z_up.iter().all(|a| self.metric(gram, a, u).num.is_zero()) && self.sub(&self.metric(gram, u, u), &huu).num.is_zero()
        });
        zz && zu
    }

    /// Names of the nonvanishing components of `Z^A ξ^{BC}` and `Z^A ξ^B`.
    pub fn geodetic_residuals(&self) -> Vec<String> {
        let f = self.frame();
        let mut bad = Vec::new();
        for (a, za) in f.z_up.iter().enumerate() {
            for t in combinations(self.m, 2) {
                if !self.apply(za, &self.xi_ab(t[0], t[1])).num.is_zero() {
                    bad.push(format!("Z^{} xi^{}{}", a + 1, t[0] + 1, t[1] + 1));
                }
            }
            for b in 0..self.xi_a.len() {
                if !self.apply(za, &self.xi_a(b)).num.is_zero() {
                    bad.push(format!("Z^{} xi^{}", a + 1, b + 1));
                }
            }
        }
        bad
    }

    /// `U ξ^{BC} + ½((U ξ^B) ξ^C − (U ξ^C) ξ^B)` components that do not vanish.
    pub fn cointegrable_residuals(&self) -> Vec<String> {
        let Some(u) = self.frame().u else { return Vec::new() };
        let half = T::from_ratio(1, 2);
        let ua: Vec<DRat<T>> = (0..self.m).map(|b| self.apply(&u, &self.xi_a(b))).collect();
        combinations(self.m, 2)
            .into_iter()
            .filter_map(|t| {
                let (b, c) = (t[0], t[1]);
                let corr = self.sub(&self.mul(&ua[b], &self.xi_a(c)), &self.mul(&ua[c], &self.xi_a(b)));
                let r = self.add(&self.apply(&u, &self.xi_ab(b, c)), &self.scale(&half, &corr));
                (!r.num.is_zero()).then(|| format!("U xi^{}{}", b + 1, c + 1))
            })
            .collect()
    }

    /// `U ξ^{AB}` and `U ξ^A` components that do not vanish.
    pub fn cogeodetic_residuals(&self) -> Vec<String> {
        let Some(u) = self.frame().u else { return Vec::new() };
        let mut bad = Vec::new();
        for t in combinations(self.m, 2) {
            if !self.apply(&u, &self.xi_ab(t[0], t[1])).num.is_zero() {
                bad.push(format!("U xi^{}{}", t[0] + 1, t[1] + 1));
            }
        }
        for a in 0..self.m {
            if !self.apply(&u, &self.xi_a(a)).num.is_zero() {
                bad.push(format!("U xi^{}", a + 1));
            }
        }
        bad
    }

    /// Value `π(x)` of the section.
    pub fn value_at(&self, x: &[T]) -> Result<PiCoords<T>> {
        let pi_a = (0..self.xi_a.len()).map(|a| self.eval(&self.xi_a(a), x)).collect::<Result<_>>()?;
        let mut pi_ab = AntiTensor::zero(self.m, 2);
        for t in combinations(self.m, 2) {
            pi_ab.set(&t, self.eval(&self.xi_ab(t[0], t[1]), x)?);
        }
        Ok(PiCoords { pi_a, pi_ab })
    }

    /// Leaf test at `x`: moving along `y = x + Σ t_A Z^A(x)` leaves the section
    /// and the span of `Z^A` unchanged.
    pub fn leaf_is_affine(&self, x: &[T], t: &[T], tol: f64) -> Result<bool> {
        let f = self.frame();
        let z_at = |p: &[T]| -> Result<Vec<Vec<T>>> {
            f.z_up.iter().map(|z| z.iter().map(|c| self.eval(c, p)).collect()).collect()
        };
        let zx = z_at(x)?;
        let mut y = x.to_vec();
        for (ta, za) in t.iter().zip(&zx) {
            for (yi, zi) in y.iter_mut().zip(za) {
                *yi = yi.add_ref(&ta.mul_ref(zi));
            }
        }
        let same_value = self.value_at(x)? == self.value_at(&y)? || {
            let (a, b) = (self.value_at(x)?, self.value_at(&y)?);
            a.pi_a.iter().zip(&b.pi_a).all(|(p, q)| p.approx_eq(q, tol)) && a.pi_ab.approx_eq(&b.pi_ab, tol)
        };
        let sx = Subspace::span(self.nvars(), &zx, tol)?;
        let sy = Subspace::span(self.nvars(), &z_at(&y)?, tol)?;
        let same_span = sx.dim() == sy.dim() && sx.intersect(&sy, tol)?.dim() == sx.dim();
        Ok(same_value && same_span)
    }
}

pub fn base_dim(m: usize, parity: Parity) -> usize {
    2 * m + usize::from(parity == Parity::Odd)
}

/// Verdict of the three systems on a section.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoliationChecks {
    pub geodetic: bool,
    pub cointegrable: bool,
    pub cogeodetic: bool,
}

impl FoliationChecks {
    /// Co-geodetic implies co-integrable implies geodetic.
    pub fn chain_holds(&self) -> bool {
        (!self.cogeodetic || self.cointegrable) && (!self.cointegrable || self.geodetic)
    }
}

pub fn check_geodetic<T: Scalar>(n: &NullSection<T>) -> bool {
    n.geodetic_residuals().is_empty()
}

pub fn check_cointegrable<T: Scalar>(n: &NullSection<T>) -> bool {
    check_geodetic(n) && n.cointegrable_residuals().is_empty()
}

pub fn check_cogeodetic<T: Scalar>(n: &NullSection<T>) -> bool {
    check_geodetic(n) && n.cogeodetic_residuals().is_empty()
}

pub fn check_all<T: Scalar>(n: &NullSection<T>) -> FoliationChecks {
    let geodetic = check_geodetic(n);
    FoliationChecks {
        geodetic,
        cointegrable: geodetic && n.cointegrable_residuals().is_empty(),
        cogeodetic: geodetic && n.cogeodetic_residuals().is_empty(),
    }
}

/// Even sections: `(∂^A + ξ^{AD} ∂_D) ξ^{BC} = 0` identically.
pub fn check_even_kerr<T: Scalar>(n: &NullSection<T>) -> Result<bool> {
    if n.parity() != Parity::Even {
        return Err(Error::Malformed("even-dimensional check on an odd section".into()));
    }
    Ok(check_geodetic(n))
}

/// Fock components of a polynomial spinor against the chart vacuum, read
/// off linearly from the components of the basis spinors.
fn poly_fock<T: Scalar>(ctx: &ChartContext<T>, v: &[Poly<T>]) -> (Poly<T>, PolyVec<T>, PolyForm<T>) {
    let m = ctx.m();
    let nv = v.first().map_or(0, Poly::nvars);
    let d = v.len();
    let comps: Vec<FockComponents<T>> = (0..d)
        .map(|k| {
            let mut e = vec![T::zero(); d];
            e[k] = T::one();
            ctx.fock().decompose(&e)
        })
        .collect();
    let combine = |f: &dyn Fn(&FockComponents<T>) -> T| {
        v.iter().zip(&comps).fold(Poly::zero(nv), |acc, (p, c)| {
            let x = f(c);
            if x.is_zero() { acc } else { acc.add(&p.scale(&x)) }
        })
    };
    let z0 = combine(&|c| c.z0());
    let z1 = (0..m).map(|a| combine(&|c| c.z(1).get(&[a]))).collect();
    let z2 = PolyForm::from_fn(m, 2, nv, |t| if m >= 2 { combine(&|c| c.z(2).get(t)) } else { Poly::zero(nv) });
    (z0, z1, z2)
}

/// The section `π(x) ∝ ξ(x) = ξ° − (1/√2) x·γ ζ°` of the conformal Killing
/// spinor of a pure tractor spinor `Ξ = (ξ°, ζ°)`.
pub fn robinson_section<T: Scalar>(ctx: &ChartContext<T>, xi: &[T], tol: f64) -> Result<NullSection<T>> {
    let tr = ctx.tractor();
    if xi.len() != tr.spinor_dim() {
        return Err(Error::DimensionMismatch { expected: tr.spinor_dim(), got: xi.len() });
    }
    if !is_pure_rank(tr, xi, tol)? {
        return Err(Error::NotPure);
    }
    let cks = cks_field(ctx.frame(), &CksData::from_tractor_spinor(xi))?;
    let (den, z1, z2) = poly_fock(ctx, &cks.xi);
    let xi_a = if ctx.parity() == Parity::Odd { z1 } else { Vec::new() };
    NullSection::new(ctx.m(), ctx.parity(), den, xi_a, z2)
}

/// Chart components of `Ξ = (ξ°, ζ°)`: `ξ° = ξ°^0 o + (i/2) ξ°^A δ_A − ¼ ξ°^{AB} δ_AB + …`
/// and `ζ° = (1/√2)(i ζ°^0 o + ζ°^A δ_A + …)`.
#[derive(Clone, Debug)]
pub struct XiChart<T> {
    pub xi0: T,
    pub xi_a: Vec<T>,
    pub xi_ab: AntiTensor<T>,
    pub zeta0: T,
    pub zeta_a: Vec<T>,
}

pub fn xi_chart<T: Scalar>(ctx: &ChartContext<T>, xi: &[T]) -> Result<XiChart<T>> {
    let data = CksData::from_tractor_spinor(xi);
    let m = ctx.m();
    let cx = ctx.fock().decompose(&data.xi0);
    let cz = ctx.fock().decompose(&data.zeta0);
    let r2 = T::sqrt2();
    let half = T::from_ratio(1, 2);
    let xi_ab = if m >= 2 { cx.z(2).clone() } else { AntiTensor::zero(m, 2) };
    Ok(XiChart {
        xi0: cx.z0(),
        xi_a: (0..m).map(|a| cx.z(1).get(&[a])).collect(),
        xi_ab,
        zeta0: T::i().mul_ref(&r2).mul_ref(&cz.z0()).neg_ref(),
        zeta_a: (0..m).map(|a| T::i().mul_ref(&r2).mul_ref(&half).mul_ref(&cz.z(1).get(&[a]))).collect(),
    })
}

/// Per-sample verdicts of [`verify_robinson_twistor_variety`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RobinsonReport {
    pub samples: usize,
    pub skipped_singular: usize,
    pub bilinear: bool,
    pub distribution: bool,
    pub chart_equations: bool,
    pub proportional: bool,
    pub same_leaf: bool,
}

impl RobinsonReport {
    pub fn passes(&self) -> bool {
        self.samples > 0 && self.bilinear && self.distribution && self.chart_equations && self.proportional && self.same_leaf
    }
}

/// The four bilinear equations of `D_Ξ` in `(ω, π)` against `(ξ°, ζ°)`.
pub fn robinson_bilinear<T: Scalar>(ctx: &ChartContext<T>, z: &[T], xi: &[T]) -> [DMatrix<T>; 4] {
    let v0 = ctx.v0();
    let d = v0.spinor_dim();
    let (w, p) = z.split_at(d);
    let (x0, z0) = xi.split_at(d);
    let two = T::from_i64(2);
    let contact = |a: &[T], b: &[T]| {
        vector_contraction(v0, a, b).add(&outer(b, a).scale(&two)).and_then(|c| c.sub(&outer(a, b))).expect("square")
    };
    let mixed = |a: &[T], b: &[T], c: &[T], e: &[T]| {
        // a^{aA} b_a^B + a^A b^B + 2(c^A e^B − e^A c^B)
        vector_contraction(v0, a, b)
            .add(&outer(a, b))
            .and_then(|r| r.add(&outer(c, e).sub(&outer(e, c)).expect("square").scale(&two)))
            .expect("square")
    };
    [contact(w, x0), contact(p, z0), mixed(w, z0, p, x0), mixed(p, x0, w, z0)]
}

/// Checks at sample base points that the lifted twistors `(ω, π(x))` lie on
/// `D_Ξ`: the four bilinear equations, membership in the canonical
/// distribution, the chart equations, proportionality of `π(x)` and `ξ(x)`, and
/// that a second twistor on the line through `Ξ` and `Z` defines a plane
/// meeting `Ž` in an `(m−1)`-plane on which the section again takes that value.
pub fn verify_robinson_twistor_variety<T: Scalar>(
    ctx: &ChartContext<T>,
    xi: &[T],
    samples: &[Vec<T>],
    second: &[(T, Vec<T>)],
    tol: f64,
) -> Result<RobinsonReport> {
    let section = robinson_section(ctx, xi, tol)?;
    let cks = cks_field(ctx.frame(), &CksData::from_tractor_spinor(xi))?;
    let xc = xi_chart(ctx, xi)?;
    let tr = ctx.tractor();
    let xi_pt = TwistorPoint::new(tr, xi.to_vec(), tol)?;
    let m = ctx.m();
    let mut r = RobinsonReport { bilinear: true, distribution: true, chart_equations: true, proportional: true, same_leaf: true, ..Default::default() };
    for (k, x) in samples.iter().enumerate() {
        if section.denominator().eval(x).near_zero(tol) {
            r.skipped_singular += 1;
            continue;
        }
        r.samples += 1;
        let pi = section.value_at(x)?;
        let p = ChartPointF::from_x(m, x, pi.clone());
        let q = crate::charts::mu_project(ctx, &p)?;
        let z = twistor_lift(ctx, &q)?;
        r.bilinear &= robinson_bilinear(ctx, &z, xi).iter().all(|b| b.is_zero(tol));
        let z_pt = TwistorPoint::new(tr, z.clone(), tol)?;
        r.distribution &= in_canonical_distribution(tr, &z_pt, &xi_pt, tol)?;
        r.chart_equations &= chart_equations_hold(&xc, &q, tol);
        let xi_x: Vec<T> = cks.xi.iter().map(|c| c.eval(x)).collect();
        let d = ctx.v0().spinor_dim();
        r.proportional &= proportional(&z[d..], &xi_x, tol);
        if let Some((s, zb)) = second.get(k) {
            r.same_leaf &= same_leaf(ctx, &section, &z, xi, s, zb, tol)?;
        }
    }
    Ok(r)
}

fn chart_equations_hold<T: Scalar>(xc: &XiChart<T>, q: &ChartPointPT<T>, tol: f64) -> bool {
    let m = q.omega_a.len();
    let first = (0..xc.xi_a.len()).all(|a| {
        xc.xi0
            .mul_ref(&q.pi.a(a))
            .sub_ref(&xc.xi_a[a])
            .add_ref(&xc.zeta0.mul_ref(&q.omega_a[a]))
            .sub_ref(&q.omega_0.mul_ref(&xc.zeta_a[a]))
            .near_zero(tol)
    });
    let second = combinations(m, 2).iter().all(|t| {
        let (a, b) = (t[0], t[1]);
        let za = xc.zeta_a.get(a).cloned().unwrap_or_else(T::zero);
        let zb = xc.zeta_a.get(b).cloned().unwrap_or_else(T::zero);
        xc.xi0
            .mul_ref(&q.pi.ab(a, b))
            .sub_ref(&xc.xi_ab.get(&[a, b]))
            .add_ref(&q.omega_a[a].mul_ref(&zb))
            .sub_ref(&q.omega_a[b].mul_ref(&za))
            .near_zero(tol)
    });
    first && second
}

/// `W = Z + sΞ`; a base point `y` on `W̌` with free coordinates `z_B` is
/// solved from the chart incidence, then `π(y) = π_W` and `dim(Ž ∩ W̌) ≥ m − 1`.
fn same_leaf<T: Scalar>(
    ctx: &ChartContext<T>,
    section: &NullSection<T>,
    z: &[T],
    xi: &[T],
    s: &T,
    z_dn: &[T],
    tol: f64,
) -> Result<bool> {
    let tr = ctx.tractor();
    let w: Vec<T> = z.iter().zip(xi).map(|(a, b)| a.add_ref(&s.mul_ref(b))).collect();
    let Ok(qw) = crate::charts::pt_from_twistor(ctx, &w, tol) else {
        return Ok(true);
    };
    let m = ctx.m();
    let half = T::from_ratio(1, 2);
    let mut u = qw.omega_0.clone();
    for b in 0..m {
        u = u.add_ref(&qw.pi.a(b).mul_ref(&z_dn[b]));
    }
    if ctx.parity() == Parity::Even {
        u = T::zero();
    }
    let z_up: Vec<T> = (0..m)
        .map(|a| {
            let mut v = qw.omega_a[a].sub_ref(&half.mul_ref(&qw.pi.a(a)).mul_ref(&u));
            for b in 0..m {
                v = v.sub_ref(&qw.pi.ab(a, b).mul_ref(&z_dn[b]));
            }
            v
        })
        .collect();
    let y = ChartPointF { z_up, z_dn: z_dn.to_vec(), u, pi: qw.pi.clone() };
    let xy = y.x(ctx.parity());
    if section.denominator().eval(&xy).near_zero(tol) {
        return Ok(true);
    }
    let on_plane = pt_close(&crate::charts::mu_project(ctx, &y)?, &qw, tol);
    let value = section.value_at(&xy)?;
    let same_value = value.pi_a.iter().zip(&qw.pi.pi_a).all(|(a, b)| a.approx_eq(b, tol)) && value.pi_ab.approx_eq(&qw.pi.pi_ab, tol);
    let dim = intersection_dim(tr, &TwistorPoint::new(tr, z.to_vec(), tol)?, &TwistorPoint::new(tr, w, tol)?, tol)?;
    Ok(on_plane && same_value && dim >= m as i64 - 1)
}

fn pt_close<T: Scalar>(a: &ChartPointPT<T>, b: &ChartPointPT<T>, tol: f64) -> bool {
    a.omega_0.approx_eq(&b.omega_0, tol)
        && a.omega_a.iter().zip(&b.omega_a).all(|(x, y)| x.approx_eq(y, tol))
        && a.pi.pi_a.iter().zip(&b.pi.pi_a).all(|(x, y)| x.approx_eq(y, tol))
        && a.pi.pi_ab.approx_eq(&b.pi.pi_ab, tol)
}

/// Spinor scaled so that its largest component has modulus one.
pub fn normalize_max<T: Scalar>(z: &[T]) -> Result<Vec<T>> {
    let (k, _) = z
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.magnitude().partial_cmp(&b.1.magnitude()).unwrap_or(std::cmp::Ordering::Equal))
        .ok_or(Error::ZeroSpinor)?;
    Ok(scale_vec(&z[k].inv()?, z))
}
