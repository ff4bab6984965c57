//! Fock decomposition of spinors relative to a fixed pure spinor Ξ.
//!
//! With `K` the null kernel plane of Ξ and `c₁…c_r` an isotropic basis of a
//! complement dual to a basis `k₁…k_r` of `K`, the spinors
//! `e_S = Γ_{c_{s_j}} ⋯ Γ_{c_{s₁}} Ξ` form a basis. A spinor is written as
//!
//! `Z = Σ_j f_j Σ_{S, |S|=j} Z_(−j)^S e_S`,
//!
//! with `f_{2k} = (−¼)^k (2k)!/k!` and `f_{2k+1} = (i/2)(−¼)^k (2k+1)!/k!`, which
//! is the expansion `Σ (−¼)^k/k! Z_(−2k)·Ξ + (i/2) Σ (−¼)^k/k! Z_(−2k−1)·Ξ`
//! with Einstein summation over all index orderings.

use rand::Rng;

use crate::clifford::{subset_indices, CliffordModel, FockBasis, Parity};
use crate::error::{Error, Result};
use crate::scalar::{DMatrix, ExactScalar, Scalar};

use super::exterior::{random_small, random_vector, AntiTensor};
use super::{is_pure_rank, kernel_plane};

/// Components `Z_(0), Z_(−1), …, Z_(−r)`; `comps[j]` is a `j`-form.
#[derive(Clone, Debug, PartialEq)]
pub struct FockComponents<T> {
    comps: Vec<AntiTensor<T>>,
}

impl<T: Scalar> FockComponents<T> {
    pub fn new(comps: Vec<AntiTensor<T>>) -> Result<Self> {
        for (j, c) in comps.iter().enumerate() {
            if c.degree() != j {
                return Err(Error::Malformed(format!("component {j} has degree {}", c.degree())));
            }
        }
        Ok(FockComponents { comps })
    }

    /// All components zero except `Z_(0) = 1`.
    pub fn unit(r: usize) -> Self {
        let mut comps = vec![AntiTensor::scalar(r, T::one())];
        for j in 1..=r {
            comps.push(AntiTensor::zero(r, j));
        }
        FockComponents { comps }
    }

    pub fn rank(&self) -> usize {
        self.comps.len() - 1
    }

    pub fn z0(&self) -> T {
        self.comps[0].get(&[])
    }

    /// `Z_(−j)`.
    pub fn z(&self, j: usize) -> &AntiTensor<T> {
        &self.comps[j]
    }

    pub fn set(&mut self, j: usize, t: AntiTensor<T>) {
        self.comps[j] = t;
    }

    /// Highest `j` with `Z_(−j) ≠ 0`.
    pub fn top_degree(&self, tol: f64) -> Option<usize> {
        (0..self.comps.len()).rev().find(|&j| !self.comps[j].is_zero(tol))
    }

    /// Completes `Z_(−3), …` from `Z_(0), Z_(−1), Z_(−2)` via
    /// `Z_(0) Z_(−2k−1) = Z_(−1) ∧ Z_(−2k)` and `Z_(0) Z_(−2k) = Z_(−2) ∧ Z_(−2k+2)`.
    pub fn complete_by_recursion(&mut self) -> Result<()> {
        let inv = self.z0().inv()?;
        for j in 3..self.comps.len() {
            let rhs = recursion_rhs(&self.comps, j);
            self.comps[j] = rhs.scale(&inv);
        }
        Ok(())
    }

    /// The purity relations on components; `None` when `Z_(0) = 0`, where
    /// the relations are necessary but not sufficient.
    pub fn recursion_holds(&self, tol: f64) -> Option<bool> {
        let z0 = self.z0();
        if z0.near_zero(tol) {
            return None;
        }
        Some((3..self.comps.len()).all(|j| self.comps[j].scale(&z0).approx_eq(&recursion_rhs(&self.comps, j), tol)))
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> = self.comps.iter().enumerate().map(|(j, c)| format!("Z(-{j})={}", c.render())).collect();
        parts.join("; ")
    }
}

fn recursion_rhs<T: Scalar>(comps: &[AntiTensor<T>], j: usize) -> AntiTensor<T> {
    if j % 2 == 1 {
        comps[1].wedge(&comps[j - 1])
    } else {
        comps[2].wedge(&comps[j - 2])
    }
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// Normalization `f_j` of the degree-`j` part of the expansion.
pub fn fock_factor<T: Scalar>(j: usize) -> T {
    let k = j / 2;
    let sign = if k % 2 == 0 { 1 } else { -1 };
    let num = sign * factorial(j);
    let den = 4i64.pow(k as u32) * factorial(k);
    let base = T::from_ratio(num, den);
    if j % 2 == 0 {
        base
    } else {
        base.mul_ref(&T::i()).mul_ref(&T::from_ratio(1, 2))
    }
}

/// Data needed to decompose spinors relative to a pure spinor Ξ.
#[derive(Clone, Debug)]
pub struct FockFrame<T> {
    xi: Vec<T>,
    parity: Parity,
    kernel: Vec<Vec<T>>,
    dual: Vec<Vec<T>>,
    basis: FockBasis,
    cols: Vec<Vec<T>>,
    solver: DMatrix<T>,
}

impl<T: Scalar> FockFrame<T> {
    /// Frame with an isotropic dual complement computed from the kernel plane.
    pub fn new(model: &CliffordModel<T>, xi: &[T], tol: f64) -> Result<Self> {
        if !is_pure_rank(model, xi, tol)? {
            return Err(Error::NotPure);
        }
        let kernel = kernel_plane(model, xi, tol)?.vectors();
        let r = kernel.len();
        let n = model.ambient_dim();
        let pairing = DMatrix::from_rows(&kernel.iter().map(|k| model.lower(k)).collect::<Vec<_>>(), n)?;
        let mut dual = Vec::new();
        for i in 0..r {
            let mut e = vec![T::zero(); r];
            e[i] = T::one();
            dual.push(pairing.solve(&e, tol).ok_or_else(|| Error::Degenerate("kernel pairing".into()))?);
        }
        let half = T::from_ratio(1, 2);
        let iso: Vec<Vec<T>> = (0..r)
            .map(|i| {
                let mut c = dual[i].clone();
                for j in 0..r {
                    let h = model.inner(&dual[i], &dual[j]).mul_ref(&half);
                    for (x, y) in c.iter_mut().zip(&kernel[j]) {
                        *x = x.sub_ref(&h.mul_ref(y));
                    }
                }
                c
            })
            .collect();
        Self::with_dual(model, xi, kernel, iso, tol)
    }

    /// Frame with a caller-supplied kernel basis and dual isotropic complement.
    pub fn with_dual(model: &CliffordModel<T>, xi: &[T], kernel: Vec<Vec<T>>, dual: Vec<Vec<T>>, tol: f64) -> Result<Self> {
        let r = kernel.len();
        for i in 0..r {
            for j in 0..r {
                let expected = if i == j { T::one() } else { T::zero() };
                if !model.inner(&dual[i], &kernel[j]).approx_eq(&expected, tol)
                    || !model.inner(&dual[i], &dual[j]).near_zero(tol)
                {
                    return Err(Error::Degenerate("complement is not an isotropic dual".into()));
                }
            }
        }
        let basis = FockBasis::new(r);
        let cols: Vec<Vec<T>> = (0..basis.len())
            .map(|i| {
                let mut v = xi.to_vec();
                for s in subset_indices(basis.mask(i)) {
                    v = model.act_vector(&dual[s], &v);
                }
                v
            })
            .collect();
        let e = DMatrix::from_cols(&cols, model.spinor_dim())?;
        let solver = e.inverse(tol).map_err(|_| Error::Degenerate("Fock basis does not span".into()))?;
        Ok(FockFrame { xi: xi.to_vec(), parity: model.parity(), kernel, dual, basis, cols, solver })
    }

    pub fn xi(&self) -> &[T] {
        &self.xi
    }

    pub fn kernel(&self) -> &[Vec<T>] {
        &self.kernel
    }

    pub fn dual(&self) -> &[Vec<T>] {
        &self.dual
    }

    pub fn rank(&self) -> usize {
        self.kernel.len()
    }

    /// The basis spinor `e_S` for the increasing tuple `S`.
    pub fn basis_spinor(&self, s: &[usize]) -> &[T] {
        let mask = s.iter().fold(0u32, |m, &i| m | (1 << i));
        &self.cols[self.basis.index_of(mask)]
    }

    pub fn decompose(&self, z: &[T]) -> FockComponents<T> {
        let coef = self.solver.mul_vec(z);
        let r = self.rank();
        let mut comps: Vec<AntiTensor<T>> = (0..=r).map(|j| AntiTensor::zero(r, j)).collect();
        for (i, c) in coef.iter().enumerate() {
            let s = subset_indices(self.basis.mask(i));
            let j = s.len();
            let v = c.div_ref(&fock_factor::<T>(j)).expect("nonzero factor");
            comps[j].set(&s, v);
        }
        FockComponents { comps }
    }

    pub fn reconstruct(&self, c: &FockComponents<T>) -> Vec<T> {
        let mut z = vec![T::zero(); self.xi.len()];
        for i in 0..self.basis.len() {
            let s = subset_indices(self.basis.mask(i));
            let coef = fock_factor::<T>(s.len()).mul_ref(&c.z(s.len()).get(&s));
            if coef.is_zero() {
                continue;
            }
            for (x, y) in z.iter_mut().zip(&self.cols[i]) {
                *x = x.add_ref(&coef.mul_ref(y));
            }
        }
        z
    }

    /// Purity from components; when `Z_(0) = 0` the rank test decides.
    pub fn fock_purity(&self, model: &CliffordModel<T>, c: &FockComponents<T>, tol: f64) -> Result<bool> {
        match c.recursion_holds(tol) {
            Some(b) => Ok(b),
            None => is_pure_rank(model, &self.reconstruct(c), tol),
        }
    }
}

impl FockFrame<ExactScalar> {
    /// Random components with `Z_(0) = 1`, random `Z_(−1)` (zero for even
    /// models, whose pure spinors are chiral), decomposable `Z_(−2)`,
    /// completed by the purity recursion.
    pub fn random_pure_components<R: Rng + ?Sized>(&self, rng: &mut R, range: i64) -> FockComponents<ExactScalar> {
        let r = self.rank();
        let mut c = FockComponents::unit(r);
        if self.parity == Parity::Odd {
            c.set(1, AntiTensor::vector(&random_vector(rng, r, range, false)));
        }
        let a = AntiTensor::vector(&random_vector(rng, r, range, false));
        let b = AntiTensor::vector(&random_vector(rng, r, range, false));
        c.set(2, a.wedge(&b).scale(&random_small(rng, range, false)));
        c.complete_by_recursion().expect("unit Z(0)");
        c
    }

    pub fn random_pure_spinor<R: Rng + ?Sized>(&self, rng: &mut R, range: i64) -> Vec<ExactScalar> {
        self.reconstruct(&self.random_pure_components(rng, range))
    }

    /// Random components with `Z_(0) = 1` and `Z_(−1)`, `Z_(−2)` (a general
    /// 2-form) supported on the first `support` indices, completed by the
    /// recursion. The γ-planes of `Ξ` and the result then meet in linear
    /// dimension at least `r − support`, with equality generically.
    pub fn random_supported_components<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        support: usize,
        range: i64,
    ) -> FockComponents<ExactScalar> {
        let r = self.rank();
        let support = support.min(r);
        let mut c = FockComponents::unit(r);
        if self.parity == Parity::Odd {
            let mut v = vec![ExactScalar::zero(); r];
            for x in v.iter_mut().take(support) {
                *x = random_small(rng, range, false);
            }
            c.set(1, AntiTensor::vector(&v));
        }
        let mut z2 = AntiTensor::zero(r, 2);
        for i in 0..support {
            for j in i + 1..support {
                z2.set(&[i, j], random_small(rng, range, false));
            }
        }
        c.set(2, z2);
        c.complete_by_recursion().expect("unit Z(0)");
        c
    }
}
