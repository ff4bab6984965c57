//! Coordinate polynomials of the projections, adapted frames and coframes on
//! `F` and `PT`, and pullback of forms along `μ`.

use crate::scalar::{DMatrix, Scalar};
use crate::tractor::{Poly, PolyMatrix, PolyVec};

use super::ChartLayout;

fn var<T: Scalar>(n: usize, i: usize) -> Poly<T> {
    Poly::var(n, i)
}

fn cst<T: Scalar>(n: usize, c: T) -> Poly<T> {
    Poly::constant(n, c)
}

/// `π^{AB}` as a polynomial in the variables of `F` (`pt = false`) or `PT`.
fn pi2<T: Scalar>(l: &ChartLayout, pt: bool, a: usize, b: usize) -> Poly<T> {
    let n = if pt { l.pt_nvars() } else { l.f_nvars() };
    let idx = |a, b| if pt { l.pt_pi2(a, b) } else { l.f_pi2(a, b) };
    match a.cmp(&b) {
        std::cmp::Ordering::Less => var(n, idx(a, b)),
        std::cmp::Ordering::Greater => var(n, idx(b, a)).neg(),
        std::cmp::Ordering::Equal => Poly::zero(n),
    }
}

/// `π^A`, zero for even layouts.
fn pi1<T: Scalar>(l: &ChartLayout, pt: bool, a: usize) -> Poly<T> {
    let n = if pt { l.pt_nvars() } else { l.f_nvars() };
    let i = if pt { l.pt_pi(a) } else { l.f_pi(a) };
    i.map_or_else(|| Poly::zero(n), |i| var(n, i))
}

fn f_u<T: Scalar>(l: &ChartLayout) -> Poly<T> {
    l.f_u().map_or_else(|| Poly::zero(l.f_nvars()), |i| var(l.f_nvars(), i))
}

/// The `PT` coordinates as polynomials on `F`, in `PT` variable order.
pub fn mu_poly<T: Scalar>(l: &ChartLayout) -> PolyVec<T> {
    let n = l.f_nvars();
    let m = l.m();
    let half = T::from_ratio(1, 2);
    let mut out = Vec::with_capacity(l.pt_nvars());
    if l.odd() {
        let mut w0 = f_u(l);
        for b in 0..m {
            w0 = w0.sub(&pi1(l, false, b).mul(&var(n, l.f_z_dn(b))));
        }
        out.push(w0);
    }
    for a in 0..m {
        let mut w = var(n, l.f_z_up(a)).add(&pi1(l, false, a).mul(&f_u(l)).scale(&half));
        for b in 0..m {
            w = w.add(&pi2(l, false, a, b).mul(&var(n, l.f_z_dn(b))));
        }
        out.push(w);
    }
    for a in 0..m {
        if let Some(i) = l.f_pi(a) {
            out.push(var(n, i));
        }
    }
    for t in l.pairs() {
        out.push(var(n, l.f_pi2(t[0], t[1])));
    }
    out
}

/// The `MT` coordinates `[ω̲^A, π^A, π^{AB}]` as polynomials on `PT`.
pub fn tau_poly<T: Scalar>(l: &ChartLayout) -> PolyVec<T> {
    let n = l.pt_nvars();
    let half = T::from_ratio(1, 2);
    let w0 = l.pt_omega0().map_or_else(|| Poly::zero(n), |i| var(n, i));
    let mut out: PolyVec<T> =
        (0..l.m()).map(|a| var(n, l.pt_omega(a)).add(&pi1(l, true, a).mul(&w0).scale(&half))).collect();
    let first_pi = usize::from(l.odd()) + l.m();
    out.extend((first_pi..n).map(|i| var(n, i)));
    out
}

/// `ω̲^A` as polynomials on `F`: `z^A + (π^{AB} − ½ π^A π^B) z_B + π^A u`.
pub fn omega_bar_pt_poly<T: Scalar>(l: &ChartLayout) -> PolyVec<T> {
    let mu = mu_poly::<T>(l);
    tau_poly::<T>(l).iter().take(l.m()).map(|p| p.compose(l.f_nvars(), &mu)).collect()
}

/// `V(p) = Σ_i V^i ∂_i p`.
pub fn apply_field<T: Scalar>(field: &[Poly<T>], p: &Poly<T>) -> Poly<T> {
    field.iter().enumerate().fold(Poly::zero(p.nvars()), |acc, (i, c)| {
        if c.is_zero() { acc } else { acc.add(&c.mul(&p.deriv(i))) }
    })
}

/// `⟨α, V⟩` for component vectors over the coordinate (co)basis.
pub fn pairing<T: Scalar>(form: &[Poly<T>], field: &[Poly<T>]) -> Poly<T> {
    let n = form.first().map_or(0, Poly::nvars);
    form.iter().zip(field).fold(Poly::zero(n), |acc, (a, b)| acc.add(&a.mul(b)))
}

/// `μ*α` for a 1-form `α` on `PT`, as a 1-form on `F`.
pub fn pullback<T: Scalar>(l: &ChartLayout, form: &[Poly<T>]) -> PolyVec<T> {
    let n = l.f_nvars();
    let mu = mu_poly::<T>(l);
    let composed: Vec<Poly<T>> = form.iter().map(|c| c.compose(n, &mu)).collect();
    (0..n)
        .map(|i| {
            composed.iter().zip(&mu).fold(Poly::zero(n), |acc, (c, mj)| {
                let d = mj.deriv(i);
                if c.is_zero() || d.is_zero() { acc } else { acc.add(&c.mul(&d)) }
            })
        })
        .collect()
}

/// A frame and its dual coframe, labelled with 1-based chart indices, in
/// matching order.
#[derive(Clone, Debug)]
pub struct ChartFrames<T> {
    pub nvars: usize,
    pub frame: Vec<(String, PolyVec<T>)>,
    pub coframe: Vec<(String, PolyVec<T>)>,
    /// Frame entries of type `X_AB`, which pair to ½ with their dual.
    pub half: Vec<bool>,
}

impl<T: Scalar> ChartFrames<T> {
    /// Matrix of pairings `⟨coframe_i, frame_j⟩`.
    pub fn pairing_matrix(&self) -> PolyMatrix<T> {
        PolyMatrix::from_fn(self.coframe.len(), self.frame.len(), |i, j| pairing(&self.coframe[i].1, &self.frame[j].1))
    }

    /// The pairing matrix the frames must have: identity, with ½ on `X_AB`.
    pub fn expected_pairing(&self) -> DMatrix<T> {
        let k = self.frame.len();
        DMatrix::from_fn(k, k, |i, j| match (i == j, self.half[j]) {
            (true, true) => T::from_ratio(1, 2),
            (true, false) => T::one(),
            _ => T::zero(),
        })
    }

    pub fn duality_holds(&self) -> bool {
        let got = self.pairing_matrix();
        let want = PolyMatrix::from_const(self.nvars, &self.expected_pairing());
        self.frame.len() == self.nvars && self.coframe.len() == self.nvars && got.sub(&want).is_zero()
    }

    pub fn frame_field(&self, label: &str) -> Option<&PolyVec<T>> {
        self.frame.iter().find(|(l, _)| l == label).map(|(_, v)| v)
    }

    pub fn coframe_form(&self, label: &str) -> Option<&PolyVec<T>> {
        self.coframe.iter().find(|(l, _)| l == label).map(|(_, v)| v)
    }
}

fn unit<T: Scalar>(n: usize, i: usize) -> PolyVec<T> {
    (0..n).map(|j| if i == j { cst(n, T::one()) } else { Poly::zero(n) }).collect()
}

fn add_at<T: Scalar>(v: &mut PolyVec<T>, i: usize, p: &Poly<T>) {
    v[i] = v[i].add(p);
}

/// Adds `c X_AB` (any `A ≠ B`) to a vector field.
fn add_x<T: Scalar>(l: &ChartLayout, pt: bool, v: &mut PolyVec<T>, a: usize, b: usize, c: &Poly<T>) {
    let (lo, hi, s) = if a < b { (a, b, 1) } else { (b, a, -1) };
    let i = if pt { l.pt_pi2(lo, hi) } else { l.f_pi2(lo, hi) };
    add_at(v, i, &c.scale(&T::from_ratio(s, 2)));
}

/// `α^{AB} = dπ^{AB} − ½(π^A dπ^B − π^B dπ^A)` for `A < B`.
fn alpha2<T: Scalar>(l: &ChartLayout, pt: bool, a: usize, b: usize) -> PolyVec<T> {
    let n = if pt { l.pt_nvars() } else { l.f_nvars() };
    let mut f = unit(n, if pt { l.pt_pi2(a, b) } else { l.f_pi2(a, b) });
    if l.odd() {
        let half = T::from_ratio(1, 2);
        let (ia, ib) = if pt { (l.pt_pi(a), l.pt_pi(b)) } else { (l.f_pi(a), l.f_pi(b)) };
        add_at(&mut f, ib.expect("odd"), &pi1(l, pt, a).scale(&half).neg());
        add_at(&mut f, ia.expect("odd"), &pi1(l, pt, b).scale(&half));
    }
    f
}

/// `X_AB` for `A < B`.
fn x_ab<T: Scalar>(l: &ChartLayout, pt: bool, a: usize, b: usize) -> PolyVec<T> {
    let n = if pt { l.pt_nvars() } else { l.f_nvars() };
    let mut v = vec![Poly::zero(n); n];
    add_x(l, pt, &mut v, a, b, &cst(n, T::one()));
    v
}

/// `∂_{π^A} − π^B X_AB`, plus `½ ω^0 ∂_{ω^A}` on `PT`.
fn w_a<T: Scalar>(l: &ChartLayout, pt: bool, a: usize) -> PolyVec<T> {
    let n = if pt { l.pt_nvars() } else { l.f_nvars() };
    let mut v = unit(n, if pt { l.pt_pi(a) } else { l.f_pi(a) }.expect("odd"));
    for b in 0..l.m() {
        if b != a {
            add_x(l, pt, &mut v, a, b, &pi1(l, pt, b).neg());
        }
    }
    if pt {
        let w0 = var(n, l.pt_omega0().expect("odd"));
        add_at(&mut v, l.pt_omega(a), &w0.scale(&T::from_ratio(1, 2)));
    }
    v
}

/// Frame `[Z^A, W_A, U, X_AB, ∂_A]` and coframe `[dz_A, dπ^A, θ^0, α^{AB}, θ^A]`
/// on `F`; even layouts drop `W_A, U` and `dπ^A, θ^0`.
pub fn f_frames<T: Scalar>(l: &ChartLayout) -> ChartFrames<T> {
    let n = l.f_nvars();
    let m = l.m();
    let half = T::from_ratio(1, 2);
    // (π^{AD} − ½ π^A π^D)
    let s = |a: usize, d: usize| pi2::<T>(l, false, a, d).sub(&pi1(l, false, a).mul(&pi1(l, false, d)).scale(&half));
    let (mut frame, mut coframe, mut halfs) = (Vec::new(), Vec::new(), Vec::new());
    for a in 0..m {
        let mut z = unit(n, l.f_z_dn(a));
        for d in 0..m {
            add_at(&mut z, l.f_z_up(d), &s(a, d));
        }
        if let Some(u) = l.f_u() {
            add_at(&mut z, u, &pi1(l, false, a));
        }
        frame.push((format!("Z^{}", a + 1), z));
        coframe.push((format!("dz_{}", a + 1), unit(n, l.f_z_dn(a))));
        halfs.push(false);
    }
    if l.odd() {
        for a in 0..m {
            frame.push((format!("W_{}", a + 1), w_a(l, false, a)));
            coframe.push((format!("dpi^{}", a + 1), unit(n, l.f_pi(a).expect("odd"))));
            halfs.push(false);
        }
        let u = l.f_u().expect("odd");
        let mut uf = unit(n, u);
        let mut th0 = unit(n, u);
        for d in 0..m {
            add_at(&mut uf, l.f_z_up(d), &pi1(l, false, d).neg());
            add_at(&mut th0, l.f_z_dn(d), &pi1(l, false, d).neg());
        }
        frame.push(("U".into(), uf));
        coframe.push(("theta^0".into(), th0));
        halfs.push(false);
    }
    for t in l.pairs() {
        frame.push((format!("X_{}{}", t[0] + 1, t[1] + 1), x_ab(l, false, t[0], t[1])));
        coframe.push((format!("alpha^{}{}", t[0] + 1, t[1] + 1), alpha2(l, false, t[0], t[1])));
        halfs.push(true);
    }
    for a in 0..m {
        let mut th = unit(n, l.f_z_up(a));
        for d in 0..m {
            add_at(&mut th, l.f_z_dn(d), &s(a, d));
        }
        if let Some(u) = l.f_u() {
            add_at(&mut th, u, &pi1(l, false, a));
        }
        frame.push((format!("d_{}", a + 1), unit(n, l.f_z_up(a))));
        coframe.push((format!("theta^{}", a + 1), th));
        halfs.push(false);
    }
    ChartFrames { nvars: n, frame, coframe, half: halfs }
}

/// Frame `[Y, Y_A, X_A, X_AB]` and coframe `[dω^0, dπ^A, α^A, α^{AB}]` on `PT`;
/// even layouts drop `Y, Y_A` and `dω^0, dπ^A`.
pub fn pt_frames<T: Scalar>(l: &ChartLayout) -> ChartFrames<T> {
    let n = l.pt_nvars();
    let m = l.m();
    let half = T::from_ratio(1, 2);
    let (mut frame, mut coframe, mut halfs) = (Vec::new(), Vec::new(), Vec::new());
    if l.odd() {
        let w0 = l.pt_omega0().expect("odd");
        let mut y = unit(n, w0);
        for c in 0..m {
            add_at(&mut y, l.pt_omega(c), &pi1(l, true, c).scale(&half).neg());
        }
        frame.push(("Y".into(), y));
        coframe.push(("domega^0".into(), unit(n, w0)));
        halfs.push(false);
        for a in 0..m {
            frame.push((format!("Y_{}", a + 1), w_a(l, true, a)));
            coframe.push((format!("dpi^{}", a + 1), unit(n, l.pt_pi(a).expect("odd"))));
            halfs.push(false);
        }
    }
    for a in 0..m {
        let mut al = unit(n, l.pt_omega(a));
        if l.odd() {
            let w0 = l.pt_omega0().expect("odd");
            add_at(&mut al, w0, &pi1(l, true, a).scale(&half));
            add_at(&mut al, l.pt_pi(a).expect("odd"), &var(n, w0).scale(&half).neg());
        }
        frame.push((format!("X_{}", a + 1), unit(n, l.pt_omega(a))));
        coframe.push((format!("alpha^{}", a + 1), al));
        halfs.push(false);
    }
    for t in l.pairs() {
        frame.push((format!("X_{}{}", t[0] + 1, t[1] + 1), x_ab(l, true, t[0], t[1])));
        coframe.push((format!("alpha^{}{}", t[0] + 1, t[1] + 1), alpha2(l, true, t[0], t[1])));
        halfs.push(true);
    }
    ChartFrames { nvars: n, frame, coframe, half: halfs }
}

/// `α^{AB}` on `F` for any `A, B`, antisymmetric.
pub fn f_alpha2<T: Scalar>(l: &ChartLayout, a: usize, b: usize) -> PolyVec<T> {
    match a.cmp(&b) {
        std::cmp::Ordering::Less => alpha2(l, false, a, b),
        std::cmp::Ordering::Greater => alpha2::<T>(l, false, b, a).iter().map(Poly::neg).collect(),
        std::cmp::Ordering::Equal => vec![Poly::zero(l.f_nvars()); l.f_nvars()],
    }
}

/// `θ^A + Σ_B α^{AB} z_B`, the expected pullback of `α^A`.
pub fn expected_alpha_pullback<T: Scalar>(l: &ChartLayout, a: usize) -> PolyVec<T> {
    let fr = f_frames::<T>(l);
    let n = l.f_nvars();
    let mut out = fr.coframe_form(&format!("theta^{}", a + 1)).expect("theta").clone();
    for b in 0..l.m() {
        let zb = var::<T>(n, l.f_z_dn(b));
        for (o, c) in out.iter_mut().zip(f_alpha2::<T>(l, a, b)) {
            *o = o.add(&c.mul(&zb));
        }
    }
    out
}

/// Jacobian `∂μ^j/∂x^i` evaluated at an `F` point (rows `j`, columns `i`).
pub fn mu_jacobian<T: Scalar>(l: &ChartLayout, p: &[T]) -> DMatrix<T> {
    let mu = mu_poly::<T>(l);
    DMatrix::from_fn(mu.len(), l.f_nvars(), |j, i| mu[j].deriv(i).eval(p))
}
