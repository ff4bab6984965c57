//! Pure spinors: three purity tests, kernel planes, Fock decomposition and the
//! `(ω, π)` split of tractor spinors.
//!
//! Spinors are coordinate vectors in the Fock basis of a given
//! [`CliffordModel`]; the model is passed alongside.

mod exterior;
mod fock;

use crate::clifford::{CliffordModel, Parity, TupleVectors};
use crate::error::{Error, Result};
use crate::scalar::{is_zero_vec, DMatrix, Scalar, Subspace};

pub use exterior::{random_small, random_vector, AntiTensor};
pub use fock::{fock_factor, FockComponents, FockFrame};

fn check_nonzero<T: Scalar>(model: &CliffordModel<T>, z: &[T], tol: f64) -> Result<()> {
    if z.len() != model.spinor_dim() {
        return Err(Error::DimensionMismatch { expected: model.spinor_dim(), got: z.len() });
    }
    if is_zero_vec(z, tol) {
        return Err(Error::ZeroSpinor);
    }
    Ok(())
}

/// Matrix of `v ↦ v^A Γ_A Z`; column `A` is `Γ_A Z`.
pub fn annihilator_map<T: Scalar>(model: &CliffordModel<T>, z: &[T]) -> Result<DMatrix<T>> {
    check_nonzero(model, z, 0.0)?;
    let cols: Vec<Vec<T>> = (0..model.ambient_dim()).map(|a| model.act(a, z)).collect();
    DMatrix::from_cols(&cols, model.spinor_dim())
}

/// The subspace of vectors annihilating `Z` under Clifford multiplication.
pub fn kernel_plane<T: Scalar>(model: &CliffordModel<T>, z: &[T], tol: f64) -> Result<Subspace<T>> {
    Ok(annihilator_map(model, z)?.kernel_basis(tol))
}

/// Purity as maximal kernel dimension `⌊N/2⌋`.
pub fn is_pure_rank<T: Scalar>(model: &CliffordModel<T>, z: &[T], tol: f64) -> Result<bool> {
    check_nonzero(model, z, tol)?;
    Ok(kernel_plane(model, z, tol)?.dim() == model.max_null_dim())
}

/// Degrees `k` at which `Γ^(k)(Z, Z)` must vanish for a pure `Z`.
///
/// Odd dimension `2r+1`: `k < r` with `k ≡ r, r+1 (mod 4)`.
/// Even dimension `2r`: `k < r` with `k ≡ r (mod 4)`.
pub fn purity_constraint_degrees<T: Scalar>(model: &CliffordModel<T>) -> Vec<usize> {
    let r = model.max_null_dim();
    (0..r)
        .filter(|&k| {
            let d = (k + 4 - r % 4) % 4;
            match model.parity() {
                Parity::Odd => d == 0 || d == 1,
                Parity::Even => d == 0,
            }
        })
        .collect()
}

/// Purity via the quadratic conditions `Γ^(k)(Z, Z) = 0` for the constraint
/// degrees together with `Γ^(r)(Z, Z) ≠ 0`.
pub fn is_pure_quadratic<T: Scalar>(model: &CliffordModel<T>, z: &[T], tol: f64) -> Result<bool> {
    check_nonzero(model, z, tol)?;
    let r = model.max_null_dim();
    let tv = TupleVectors::new(model, z, r);
    let cz = model.gamma0().mul_vec(z);
    if !purity_constraint_degrees(model).iter().all(|&k| tv.vanishes_with(k, &cz, tol)) {
        return Ok(false);
    }
    Ok(!tv.vanishes_with(r, &cz, tol))
}

/// `Σ h^{AB} (Γ_A X)(Γ_B Y)ᵀ`, the contraction `X^{Aα} Y_A^β`.
pub fn vector_contraction<T: Scalar>(model: &CliffordModel<T>, x: &[T], y: &[T]) -> DMatrix<T> {
    let d = model.spinor_dim();
    let n = model.ambient_dim();
    let gx: Vec<Vec<T>> = (0..n).map(|a| model.act(a, x)).collect();
    let gy: Vec<Vec<T>> = (0..n).map(|a| model.act(a, y)).collect();
    let mut out: DMatrix<T> = DMatrix::zeros(d, d);
    for a in 0..n {
        for b in 0..n {
            let h = &model.gram_inv()[(a, b)];
            if h.is_zero() {
                continue;
            }
            for i in 0..d {
                if gx[a][i].is_zero() {
                    continue;
                }
                let hi = h.mul_ref(&gx[a][i]);
                for j in 0..d {
                    if !gy[b][j].is_zero() {
                        out[(i, j)] = out[(i, j)].add_ref(&hi.mul_ref(&gy[b][j]));
                    }
                }
            }
        }
    }
    out
}

/// Outer product `X Yᵀ`.
pub fn outer<T: Scalar>(x: &[T], y: &[T]) -> DMatrix<T> {
    DMatrix::from_fn(x.len(), y.len(), |i, j| x[i].mul_ref(&y[j]))
}

/// The residual `Z^{Aα} Z_A^β + Z^α Z^β` (odd) or `Z^{Aα} Z_A^β` (even).
pub fn succinct_residual<T: Scalar>(model: &CliffordModel<T>, z: &[T]) -> DMatrix<T> {
    let c = vector_contraction(model, z, z);
    match model.parity() {
        Parity::Odd => c.add(&outer(z, z)).expect("same shape"),
        Parity::Even => c,
    }
}

pub fn is_pure_succinct<T: Scalar>(model: &CliffordModel<T>, z: &[T], tol: f64) -> Result<bool> {
    check_nonzero(model, z, tol)?;
    Ok(succinct_residual(model, z).is_zero(tol))
}

/// True iff `h(v, w) = 0` for all basis pairs of `s`.
pub fn is_totally_null<T: Scalar>(model: &CliffordModel<T>, s: &Subspace<T>, tol: f64) -> bool {
    let vs = s.vectors();
    vs.iter().all(|v| vs.iter().all(|w| model.inner(v, w).near_zero(tol)))
}

/// The distinguished pure spinor: `o` for flat models, `(ω, π) = (0, o)` for
/// tractor models.
pub fn vacuum<T: Scalar>(model: &CliffordModel<T>) -> Vec<T> {
    let mut z = vec![T::zero(); model.spinor_dim()];
    let idx = match model.basis_tag() {
        crate::clifford::BasisTag::Tractor => model.spinor_dim() / 2,
        _ => 0,
    };
    z[idx] = T::one();
    z
}

/// A tractor spinor `Z = I ω + O π` split into its two flat-spinor halves.
#[derive(Clone, Debug, PartialEq)]
pub struct OmegaPiSplit<T> {
    pub omega: Vec<T>,
    pub pi: Vec<T>,
}

impl<T: Scalar> OmegaPiSplit<T> {
    pub fn from_tractor(z: &[T]) -> Self {
        let d = z.len() / 2;
        OmegaPiSplit { omega: z[..d].to_vec(), pi: z[d..].to_vec() }
    }

    pub fn assemble(&self) -> Vec<T> {
        let mut z = self.omega.clone();
        z.extend(self.pi.iter().cloned());
        z
    }
}

/// The three bilinear purity conditions on `(ω, π)` over the flat model:
/// `π^{aA}π_a^B + π^Aπ^B = 0`, `ω^{aA}ω_a^B + ω^Aω^B = 0` and
/// `π^{aA}ω_a^B − π^Aω^B + 2ω^Aπ^B = 0`.
pub fn split_residuals<T: Scalar>(v0: &CliffordModel<T>, s: &OmegaPiSplit<T>) -> [DMatrix<T>; 3] {
    let (w, p) = (&s.omega, &s.pi);
    let pp = vector_contraction(v0, p, p).add(&outer(p, p)).expect("shape");
    let ww = vector_contraction(v0, w, w).add(&outer(w, w)).expect("shape");
    let pw = vector_contraction(v0, p, w)
        .sub(&outer(p, w))
        .and_then(|m| m.add(&outer(w, p).scale(&T::from_i64(2))))
        .expect("shape");
    [pp, ww, pw]
}

pub fn split_purity<T: Scalar>(v0: &CliffordModel<T>, s: &OmegaPiSplit<T>, tol: f64) -> Result<bool> {
    if is_zero_vec(&s.omega, tol) && is_zero_vec(&s.pi, tol) {
        return Err(Error::ZeroSpinor);
    }
    Ok(split_residuals(v0, s).iter().all(|m| m.is_zero(tol)))
}

#[cfg(test)]
mod tests;
