//! Flat tractor calculus on the model space `V₀`: the embedding of points as
//! null tractors, the moving frame `(X, Y, Z_a)`, the spinor injectors
//! `I, O`, and the prolongations of conformal Killing spinors and conformal
//! Killing–Yano 2-forms together with their parallel tractor counterparts.
//!
//! Fields are polynomials in the coordinates `x^a` of `V₀`, indexed in the
//! Witt basis order of [`CliffordModel::build_v0_model`].

mod poly;

use rand::Rng;

pub use poly::{
    mat_pvec, pvec_add, pvec_const, pvec_deriv, pvec_dot, pvec_eval, pvec_is_zero, pvec_scale, pvec_sub, pvec_times,
    pvec_zero, Poly, PolyForm, PolyMatrix, PolyVec,
};

use crate::clifford::{combinations, CliffordModel, Parity, X_IDX, Y_IDX, Z_OFFSET};
use crate::error::{Error, Result};
use crate::purespinor::{is_pure_rank, random_small, AntiTensor};
use crate::scalar::{CFloat, DMatrix, ExactScalar, Scalar};

/// The flat model `V₀` together with its tractor extension.
#[derive(Clone, Debug)]
pub struct ConformalFrame<T> {
    v0: CliffordModel<T>,
    tractor: CliffordModel<T>,
}

impl<T: Scalar> ConformalFrame<T> {
    pub fn new(m: usize, parity: Parity) -> Result<Self> {
        let v0 = match parity {
            Parity::Odd => CliffordModel::build_v0_model(m)?,
            Parity::Even => CliffordModel::build_v0_even_model(m)?,
        };
        let tractor = CliffordModel::build_tractor_model(m, parity)?;
        Ok(ConformalFrame { v0, tractor })
    }

    pub fn v0(&self) -> &CliffordModel<T> {
        &self.v0
    }

    pub fn tractor(&self) -> &CliffordModel<T> {
        &self.tractor
    }

    /// Dimension of `V₀`, which is also the number of coordinates.
    pub fn n(&self) -> usize {
        self.v0.ambient_dim()
    }

    pub fn tractor_dim(&self) -> usize {
        self.tractor.ambient_dim()
    }

    /// Flat spinor dimension.
    pub fn d(&self) -> usize {
        self.v0.spinor_dim()
    }

    fn basis(&self, i: usize) -> Vec<T> {
        let mut v = vec![T::zero(); self.tractor_dim()];
        v[i] = T::one();
        v
    }

    pub fn x0(&self) -> Vec<T> {
        self.basis(X_IDX)
    }

    pub fn y0(&self) -> Vec<T> {
        self.basis(Y_IDX)
    }

    pub fn z0(&self, a: usize) -> Vec<T> {
        self.basis(Z_OFFSET + a)
    }

    fn coords(&self) -> Vec<Poly<T>> {
        (0..self.n()).map(|a| Poly::var(self.n(), a)).collect()
    }

    /// `x_a = g_ab x^b` as linear polynomials.
    pub fn lowered_coords(&self) -> Vec<Poly<T>> {
        (0..self.n()).map(|a| Poly::linear(self.v0.gram().row(a))).collect()
    }

    /// `g(x, x)` as a quadratic polynomial.
    pub fn norm_poly(&self) -> Poly<T> {
        pvec_dot(&self.coords(), &self.lowered_coords())
    }

    /// The null tractor `X(x) = X° + x^a Z°_a − ½ g(x,x) Y°`.
    pub fn embed_point(&self, x: &[T]) -> Result<Vec<T>> {
        if x.len() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), got: x.len() });
        }
        let mut v = self.x0();
        v[Y_IDX] = self.v0.inner(x, x).mul_ref(&T::from_ratio(-1, 2));
        for (a, c) in x.iter().enumerate() {
            v[Z_OFFSET + a] = c.clone();
        }
        Ok(v)
    }

    /// The frame `X(x)`, `Y(x) = Y°`, `Z_a(x) = Z°_a − g_ab x^b Y°`.
    pub fn frame_fields(&self) -> FrameFields<T> {
        let n = self.n();
        let nt = self.tractor_dim();
        let mut x = pvec_const(n, &self.x0());
        x[Y_IDX] = self.norm_poly().scale(&T::from_ratio(-1, 2));
        for (a, p) in self.coords().into_iter().enumerate() {
            x[Z_OFFSET + a] = p;
        }
        let lowered = self.lowered_coords();
        let z = (0..n)
            .map(|a| {
                let mut v = pvec_const(n, &self.z0(a));
                v[Y_IDX] = lowered[a].neg();
                v
            })
            .collect();
        FrameFields { x, y: pvec_const(n, &self.y0()), z, nt }
    }

    /// Tractor inner product of polynomial tractors.
    pub fn tractor_inner(&self, p: &[Poly<T>], q: &[Poly<T>]) -> Poly<T> {
        pvec_dot(p, &self.tractor_lower(q))
    }

    /// `h_AB V^B` for a polynomial tractor.
    pub fn tractor_lower(&self, p: &[Poly<T>]) -> PolyVec<T> {
        mat_pvec(self.tractor.gram(), p)
    }

    /// Spinor injectors and projectors as polynomial matrices.
    pub fn injector_fields(&self) -> InjectorFields<T> {
        let (n, d) = (self.n(), self.d());
        let s = T::sqrt2().inv().expect("nonzero");
        let xg = self.x_gamma().scale(&s);
        let one = |r: usize, c: usize| if r == c { Poly::constant(n, T::one()) } else { Poly::zero(n) };
        let i_up = PolyMatrix::from_fn(2 * d, d, |r, c| if r < d { one(r, c) } else { Poly::zero(n) });
        let o_up = PolyMatrix::from_fn(2 * d, d, |r, c| if r < d { xg.get(r, c).clone() } else { one(r - d, c) });
        let i_dn = PolyMatrix::from_fn(d, 2 * d, |r, c| if c < d { Poly::zero(n) } else { one(r, c - d) });
        let o_dn = PolyMatrix::from_fn(d, 2 * d, |r, c| if c < d { one(r, c) } else { xg.get(r, c - d).neg() });
        InjectorFields { i_up, o_up, i_dn, o_dn }
    }

    /// `x^a γ_a` as a polynomial matrix.
    pub fn x_gamma(&self) -> PolyMatrix<T> {
        let n = self.n();
        let d = self.d();
        let mut acc = PolyMatrix::from_fn(d, d, |_, _| Poly::zero(n));
        for a in 0..n {
            acc = acc.add(&PolyMatrix::times_const(&Poly::var(n, a), self.v0.generator(a)));
        }
        acc
    }

    /// Tractor Clifford generators reassembled at `x` from the frame and the
    /// injectors: `Γ_A = Z_A^a (I γ_a O_α − O γ_a I_α) + √2 Y_A O O_α − √2 X_A I I_α`.
    pub fn bundle_generators(&self, x: &[T]) -> Result<Vec<DMatrix<T>>> {
        if x.len() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), got: x.len() });
        }
        let f = self.frame_fields();
        let inj = self.injector_fields();
        let (i_up, o_up, i_dn, o_dn) = (inj.i_up.eval(x), inj.o_up.eval(x), inj.i_dn.eval(x), inj.o_dn.eval(x));
        let xv = pvec_eval(&self.tractor_lower(&f.x), x);
        let yv = pvec_eval(&self.tractor_lower(&f.y), x);
        let zv: Vec<Vec<T>> = f.z.iter().map(|z| pvec_eval(&self.tractor_lower(z), x)).collect();
        let s2 = T::sqrt2();
        let oo = o_up.mul(&o_dn)?.scale(&s2);
        let ii = i_up.mul(&i_dn)?.scale(&s2);
        let zterms: Vec<DMatrix<T>> = (0..self.n())
            .map(|a| {
                let g = self.v0.generator(a);
                let p = i_up.mul(g)?.mul(&o_dn)?;
                let q = o_up.mul(g)?.mul(&i_dn)?;
                p.sub(&q)
            })
            .collect::<Result<_>>()?;
        let ginv = self.v0.gram_inv();
        (0..self.tractor_dim())
            .map(|b| {
                let mut g = oo.scale(&yv[b]).sub(&ii.scale(&xv[b]))?;
                for (a, term) in zterms.iter().enumerate() {
                    let phi = (0..self.n()).fold(T::zero(), |acc, c| acc.add_ref(&ginv[(a, c)].mul_ref(&zv[c][b])));
                    if !phi.is_zero() {
                        g = g.add(&term.scale(&phi))?;
                    }
                }
                Ok(g)
            })
            .collect()
    }
}

/// The moving frame as polynomial tractors.
#[derive(Clone, Debug)]
pub struct FrameFields<T> {
    pub x: PolyVec<T>,
    pub y: PolyVec<T>,
    /// `z[a]` is `Z_a`.
    pub z: Vec<PolyVec<T>>,
    nt: usize,
}

impl<T: Scalar> FrameFields<T> {
    /// `∂_a X = Z_a`, `∂_a Z_b = −g_ab Y`, `∂_a Y = 0`.
    pub fn derivatives_hold(&self, frame: &ConformalFrame<T>) -> bool {
        let n = frame.n();
        let g = frame.v0().gram();
        (0..n).all(|a| {
            pvec_deriv(&self.x, a) == self.z[a]
                && pvec_is_zero(&pvec_deriv(&self.y, a))
                && (0..n).all(|b| {
                    let expected = pvec_scale(&g[(a, b)].neg_ref(), &self.y);
                    pvec_sub(&pvec_deriv(&self.z[b], a), &expected).iter().all(Poly::is_zero)
                })
        })
    }

    /// `h(X,X) = h(Y,Y) = h(X,Z_a) = h(Y,Z_a) = 0`, `h(X,Y) = 1`,
    /// `h(Z_a,Z_b) = g_ab`, identically in `x`.
    pub fn inner_products_hold(&self, frame: &ConformalFrame<T>) -> bool {
        let n = frame.n();
        let h = |p: &[Poly<T>], q: &[Poly<T>]| frame.tractor_inner(p, q);
        let c = |v: T| Poly::constant(n, v);
        if !h(&self.x, &self.x).is_zero() || !h(&self.y, &self.y).is_zero() || h(&self.x, &self.y) != c(T::one()) {
            return false;
        }
        (0..n).all(|a| {
            h(&self.x, &self.z[a]).is_zero()
                && h(&self.y, &self.z[a]).is_zero()
                && (0..n).all(|b| h(&self.z[a], &self.z[b]) == c(frame.v0().gram()[(a, b)].clone()))
        }) && self.x.len() == self.nt
    }
}

/// `I`, `O` (flat spinor into tractor spinor) and the projectors `O_α`, `I_α`
/// dual to `I` and `O` respectively.
#[derive(Clone, Debug)]
pub struct InjectorFields<T> {
    pub i_up: PolyMatrix<T>,
    pub o_up: PolyMatrix<T>,
    pub i_dn: PolyMatrix<T>,
    pub o_dn: PolyMatrix<T>,
}

impl<T: Scalar> InjectorFields<T> {
    /// `∂_a O = (1/√2) I γ_a`, `∂_a O_α = −(1/√2) γ_a I_α`, `I` and `I_α` constant.
    pub fn derivatives_hold(&self, frame: &ConformalFrame<T>) -> bool {
        let n = frame.n();
        let s = T::sqrt2().inv().expect("nonzero");
        let zero = |m: &PolyMatrix<T>| m.is_zero();
        (0..n).all(|a| {
            let g = PolyMatrix::from_const(n, frame.v0().generator(a));
            zero(&self.i_up.deriv(a))
                && zero(&self.i_dn.deriv(a))
                && zero(&self.o_up.deriv(a).sub(&self.i_up.mul(&g).scale(&s)))
                && zero(&self.o_dn.deriv(a).add(&g.mul(&self.i_dn).scale(&s)))
        })
    }

    /// `O_α I = I_α O = 1`, `O_α O = I_α I = 0` and `I O_α + O I_α = 1`.
    pub fn duality_holds(&self) -> bool {
        let d = self.i_up.cols();
        let n = self.i_up.get(0, 0).nvars();
        let id = |k: usize| PolyMatrix::from_fn(k, k, |r, c| if r == c { Poly::constant(n, T::one()) } else { Poly::zero(n) });
        self.o_dn.mul(&self.i_up) == id(d)
            && self.i_dn.mul(&self.o_up) == id(d)
            && self.o_dn.mul(&self.o_up).is_zero()
            && self.i_dn.mul(&self.i_up).is_zero()
            && self.i_up.mul(&self.o_dn).add(&self.o_up.mul(&self.i_dn)) == id(2 * d)
    }
}

/// The constant data `(ξ°, ζ°)` of a conformal Killing spinor, i.e. the
/// parallel tractor spinor `I°ξ° + O°ζ°`.
#[derive(Clone, Debug, PartialEq)]
pub struct CksData<T> {
    pub xi0: Vec<T>,
    pub zeta0: Vec<T>,
}

impl<T: Scalar> CksData<T> {
    pub fn from_tractor_spinor(z: &[T]) -> Self {
        let d = z.len() / 2;
        CksData { xi0: z[..d].to_vec(), zeta0: z[d..].to_vec() }
    }

    pub fn tractor_spinor(&self) -> Vec<T> {
        let mut z = self.xi0.clone();
        z.extend(self.zeta0.iter().cloned());
        z
    }
}

/// `ξ(x) = ξ° − (1/√2) x^a γ_a ζ°` and `ζ(x) = ζ°`.
#[derive(Clone, Debug, PartialEq)]
pub struct CksField<T> {
    pub xi: PolyVec<T>,
    pub zeta: PolyVec<T>,
}

pub fn cks_field<T: Scalar>(frame: &ConformalFrame<T>, data: &CksData<T>) -> Result<CksField<T>> {
    let (n, d) = (frame.n(), frame.d());
    for v in [&data.xi0, &data.zeta0] {
        if v.len() != d {
            return Err(Error::DimensionMismatch { expected: d, got: v.len() });
        }
    }
    let s = T::sqrt2().inv()?.neg_ref();
    let zeta = pvec_const(n, &data.zeta0);
    let xi = pvec_add(&pvec_const(n, &data.xi0), &pvec_scale(&s, &frame.x_gamma().apply(&zeta)));
    Ok(CksField { xi, zeta })
}

/// `∂_a ξ + (1/√2) γ_a ζ = 0` and `∂_a ζ = 0` identically.
pub fn verify_cks<T: Scalar>(frame: &ConformalFrame<T>, f: &CksField<T>) -> bool {
    let s = T::sqrt2().inv().expect("nonzero");
    (0..frame.n()).all(|a| {
        let g = frame.v0().generator(a);
        let r = pvec_add(&pvec_deriv(&f.xi, a), &pvec_scale(&s, &mat_pvec(g, &f.zeta)));
        pvec_is_zero(&r) && pvec_is_zero(&pvec_deriv(&f.zeta, a))
    })
}

/// `Ξ(x) = I ξ(x) + O(x) ζ(x)`; constant for a conformal Killing spinor.
pub fn cks_tractor_spinor<T: Scalar>(frame: &ConformalFrame<T>, f: &CksField<T>) -> PolyVec<T> {
    let inj = frame.injector_fields();
    pvec_add(&inj.i_up.apply(&f.xi), &inj.o_up.apply(&f.zeta))
}

/// Largest deviation of a central finite difference of `ξ` at `x` from
/// `−(1/√2) γ_a ζ(x)`, in floating point.
pub fn cks_fd_residual(frame: &ConformalFrame<ExactScalar>, f: &CksField<ExactScalar>, x: &[CFloat], h: f64) -> f64 {
    let xi: Vec<Poly<CFloat>> = f.xi.iter().map(Poly::to_float).collect();
    let zeta: Vec<Poly<CFloat>> = f.zeta.iter().map(Poly::to_float).collect();
    let fv0 = frame.v0().to_float();
    let z = pvec_eval(&zeta, x);
    let s = CFloat::new(-std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mut worst = 0.0f64;
    for a in 0..frame.n() {
        let mut xp = x.to_vec();
        let mut xm = x.to_vec();
        xp[a] = xp[a] + CFloat::new(h, 0.0);
        xm[a] = xm[a] - CFloat::new(h, 0.0);
        let (p, m) = (pvec_eval(&xi, &xp), pvec_eval(&xi, &xm));
        let expected = fv0.act(a, &z);
        let inv2h = CFloat::new(1.0 / (2.0 * h), 0.0);
        for ((pp, mm), e) in p.iter().zip(&m).zip(&expected) {
            let fd = (*pp - *mm) * inv2h;
            worst = worst.max((fd - s * *e).magnitude());
        }
    }
    worst
}

/// Purity of `ξ(x)` at a point; `None` where `ξ(x) = 0`.
pub fn cks_pure_at<T: Scalar>(frame: &ConformalFrame<T>, f: &CksField<T>, x: &[T], tol: f64) -> Result<Option<bool>> {
    let v = pvec_eval(&f.xi, x);
    if v.iter().all(|c| c.near_zero(tol)) {
        return Ok(None);
    }
    is_pure_rank(frame.v0(), &v, tol).map(Some)
}

/// Constant data `(σ°, μ°, φ°, ρ°)` of a conformal Killing–Yano 2-form, all
/// with lower `V₀` indices.
#[derive(Clone, Debug, PartialEq)]
pub struct CkyQuadruple<T> {
    pub sigma: AntiTensor<T>,
    pub mu: AntiTensor<T>,
    pub phi: Vec<T>,
    pub rho: AntiTensor<T>,
}

impl CkyQuadruple<ExactScalar> {
    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: usize, range: i64) -> Self {
        let form = |rng: &mut R, k: usize| {
            let mut t = AntiTensor::zero(n, k);
            for idx in combinations(n, k) {
                t.set(&idx, random_small(rng, range, true));
            }
            t
        };
        let sigma = form(rng, 2);
        let mu = form(rng, 3);
        let rho = form(rng, 2);
        let phi = (0..n).map(|_| random_small(rng, range, true)).collect();
        CkyQuadruple { sigma, mu, phi, rho }
    }
}

/// The integrated fields of a conformal Killing–Yano 2-form:
/// `σ = σ° + 2x_[aφ°_b] + μ°_abc x^c − 2x_[aρ°_b]c x^c − ½ g(x,x) ρ°_ab`,
/// `μ = μ° − 3x_[aρ°_bc]`, `φ_a = φ°_a − ρ°_ab x^b`, `ρ = ρ°`.
#[derive(Clone, Debug, PartialEq)]
pub struct CkyField<T> {
    pub sigma: PolyForm<T>,
    pub mu: PolyForm<T>,
    pub phi: PolyVec<T>,
    pub rho: PolyForm<T>,
}

pub fn cky_field<T: Scalar>(frame: &ConformalFrame<T>, q: &CkyQuadruple<T>) -> Result<CkyField<T>> {
    let n = frame.n();
    for (t, k) in [(&q.sigma, 2), (&q.mu, 3), (&q.rho, 2)] {
        if t.dim() != n || t.degree() != k {
            return Err(Error::Malformed(format!("expected a {k}-form on {n} indices")));
        }
    }
    if q.phi.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: q.phi.len() });
    }
    let x: Vec<Poly<T>> = (0..n).map(|a| Poly::var(n, a)).collect();
    let xl = frame.lowered_coords();
    let x2 = frame.norm_poly();
    let c = |v: T| Poly::constant(n, v);
    // r_b = ρ°_bd x^d
    let r: Vec<Poly<T>> = (0..n).map(|b| Poly::linear(&(0..n).map(|d| q.rho.get(&[b, d])).collect::<Vec<_>>())).collect();
    let phi: PolyVec<T> = (0..n).map(|b| c(q.phi[b].clone()).sub(&r[b])).collect();
    let rho = PolyForm::from_fn(n, 2, n, |t| c(q.rho.get(t)));
    let mu = PolyForm::from_fn(n, 3, n, |t| {
        let (b, cc, d) = (t[0], t[1], t[2]);
        let cyc = xl[b]
            .scale(&q.rho.get(&[cc, d]))
            .add(&xl[cc].scale(&q.rho.get(&[d, b])))
            .add(&xl[d].scale(&q.rho.get(&[b, cc])));
        c(q.mu.get(t)).sub(&cyc)
    });
    let half = T::from_ratio(1, 2);
    let sigma = PolyForm::from_fn(n, 2, n, |t| {
        let (b, cc) = (t[0], t[1]);
        let mut p = c(q.sigma.get(t));
        p = p.add(&xl[b].scale(&q.phi[cc])).sub(&xl[cc].scale(&q.phi[b]));
        for (d, xd) in x.iter().enumerate() {
            p = p.add(&xd.scale(&q.mu.get(&[b, cc, d])));
        }
        p = p.sub(&xl[b].mul(&r[cc])).add(&xl[cc].mul(&r[b]));
        p.sub(&x2.scale(&half.mul_ref(&q.rho.get(t))))
    });
    Ok(CkyField { sigma, mu, phi, rho })
}

/// Residuals of the prolonged system
/// `∂_aσ_bc − μ_abc − 2g_a[bφ_c]`, `∂_aμ_bcd + 3g_a[bρ_cd]`, `∂_aφ_b − ρ_ab`, `∂_aρ_bc`;
/// returns the first nonzero one, labelled.
pub fn cky_residual<T: Scalar>(frame: &ConformalFrame<T>, f: &CkyField<T>) -> Option<String> {
    let n = frame.n();
    let g = frame.v0().gram();
    for a in 0..n {
        let ds = f.sigma.deriv(a);
        for t in combinations(n, 2) {
            let (b, c) = (t[0], t[1]);
            let r = ds
                .get(&t)
                .sub(&f.mu.get(&[a, b, c]))
                .sub(&f.phi[c].scale(&g[(a, b)]))
                .add(&f.phi[b].scale(&g[(a, c)]));
            if !r.is_zero() {
                return Some(format!("sigma a={a} bc={t:?}: {r}"));
            }
        }
        let dm = f.mu.deriv(a);
        for t in combinations(n, 3) {
            let (b, c, d) = (t[0], t[1], t[2]);
            let r = dm
                .get(&t)
                .add(&f.rho.get(&[c, d]).scale(&g[(a, b)]))
                .add(&f.rho.get(&[d, b]).scale(&g[(a, c)]))
                .add(&f.rho.get(&[b, c]).scale(&g[(a, d)]));
            if !r.is_zero() {
                return Some(format!("mu a={a} bcd={t:?}: {r}"));
            }
        }
        for b in 0..n {
            let r = f.phi[b].deriv(a).sub(&f.rho.get(&[a, b]));
            if !r.is_zero() {
                return Some(format!("phi a={a} b={b}: {r}"));
            }
        }
        if !f.rho.deriv(a).is_zero() {
            return Some(format!("rho a={a}"));
        }
    }
    None
}

pub fn verify_cky<T: Scalar>(frame: &ConformalFrame<T>, f: &CkyField<T>) -> bool {
    cky_residual(frame, f).is_none()
}

fn det3<T: Scalar>(p: [&Poly<T>; 3], q: [&Poly<T>; 3], r: [&Poly<T>; 3]) -> Poly<T> {
    let minor = |a: &Poly<T>, b: &Poly<T>, c: &Poly<T>, d: &Poly<T>| {
        let ad = if a.is_zero() || d.is_zero() { Poly::zero(a.nvars()) } else { a.mul(d) };
        let bc = if b.is_zero() || c.is_zero() { Poly::zero(a.nvars()) } else { b.mul(c) };
        ad.sub(&bc)
    };
    let mut acc = Poly::zero(p[0].nvars());
    for (i, sign) in [(0usize, 1i64), (1, -1), (2, 1)] {
        if p[i].is_zero() {
            continue;
        }
        let (j, k) = match i {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let m = minor(q[j], q[k], r[j], r[k]);
        if !m.is_zero() {
            acc = acc.add(&p[i].mul(&m).scale(&T::from_i64(sign)));
        }
    }
    acc
}

/// The tractor 3-form
/// `Σ_ABC = 3Y_[A Z_B^b Z_C]^c σ_bc + Z_A^a Z_B^b Z_C^c μ_abc + 6X_[A Y_B Z_C]^c φ_c + 3X_[A Z_B^b Z_C]^c ρ_bc`,
/// with all tractor indices lowered.
pub fn sigma_tractor<T: Scalar>(frame: &ConformalFrame<T>, f: &CkyField<T>) -> PolyForm<T> {
    let n = frame.n();
    let nt = frame.tractor_dim();
    let ff = frame.frame_fields();
    let xl = frame.tractor_lower(&ff.x);
    let yl = frame.tractor_lower(&ff.y);
    let zlow: Vec<PolyVec<T>> = ff.z.iter().map(|z| frame.tractor_lower(z)).collect();
    // Z^b with the V₀ index raised
    let ginv = frame.v0().gram_inv();
    let zup: Vec<PolyVec<T>> = (0..n)
        .map(|b| {
            (0..nt)
                .map(|i| {
                    (0..n).fold(Poly::zero(n), |acc, c| {
                        let g = &ginv[(b, c)];
                        if g.is_zero() {
                            acc
                        } else {
                            acc.add(&zlow[c][i].scale(g))
                        }
                    })
                })
                .collect()
        })
        .collect();
    let pairs = combinations(n, 2);
    let triples = combinations(n, 3);
    PolyForm::from_fn(nt, 3, n, |t| {
        let (a, b, c) = (t[0], t[1], t[2]);
        fn pick<T>(v: &[Poly<T>], a: usize, b: usize, c: usize) -> [&Poly<T>; 3] {
            [&v[a], &v[b], &v[c]]
        }
        let at = |v| pick(v, a, b, c);
        // alt(p,q,r) = det/6; the prefactors 3·2, 6, 6 and 3·2 absorb the 1/6
        let mut acc = Poly::zero(n);
        for bc in &pairs {
            acc = acc.add(&det3(at(&yl), at(&zup[bc[0]]), at(&zup[bc[1]])).mul(&f.sigma.get(bc)));
        }
        for abc in &triples {
            acc = acc.add(&det3(at(&zup[abc[0]]), at(&zup[abc[1]]), at(&zup[abc[2]])).mul(&f.mu.get(abc)));
        }
        for (cc, z) in zup.iter().enumerate() {
            acc = acc.add(&det3(at(&xl), at(&yl), at(z)).mul(&f.phi[cc]));
        }
        for bc in &pairs {
            acc = acc.add(&det3(at(&xl), at(&zup[bc[0]]), at(&zup[bc[1]])).mul(&f.rho.get(bc)));
        }
        acc
    })
}

/// `∂_a Σ = 0` for every coordinate.
pub fn sigma_is_parallel<T: Scalar>(frame: &ConformalFrame<T>, s: &PolyForm<T>) -> bool {
    (0..frame.n()).all(|a| s.deriv(a).is_zero())
}

#[cfg(test)]
mod tests;
