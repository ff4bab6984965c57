//! Sections of pure eigenspinors of a conformal Killing–Yano 2-form,
//! verified at sample points against the graph conditions and the
//! submanifold equation of the parallel tractor 3-form.

use std::collections::BTreeMap;

use crate::charts::{chart_from_spinor, cky_eigenspinors, ChartContext, PiCoords};
use crate::clifford::{combinations, form_values, sort_with_sign, CliffordModel};
use crate::error::{Error, Result};
use crate::purespinor::AntiTensor;
use crate::scalar::{scale_vec, CFloat, DMatrix, Scalar};
use crate::tractor::{cky_field, sigma_tractor, CkyQuadruple, ConformalFrame};

use super::normalize_max;

/// One sample of a Kerr section.
#[derive(Clone, Debug)]
pub struct KerrSample<T> {
    pub x: Vec<T>,
    pub eigenvalue: CFloat,
    pub pi: PiCoords<T>,
    pub sigma_residual: f64,
    pub mu_residual: f64,
    pub submanifold_residual: f64,
}

#[derive(Clone, Debug)]
pub struct KerrReport<T> {
    pub branch: usize,
    pub samples: Vec<KerrSample<T>>,
}

impl<T> KerrReport<T> {
    pub fn max_residual(&self) -> f64 {
        self.samples.iter().map(|s| s.sigma_residual.max(s.mu_residual).max(s.submanifold_residual)).fold(0.0, f64::max)
    }

    pub fn passes(&self, tol: f64) -> bool {
        !self.samples.is_empty() && self.max_residual() <= tol
    }

    pub fn graph_passes(&self, tol: f64) -> bool {
        self.samples.iter().all(|s| s.sigma_residual <= tol && s.mu_residual <= tol)
    }
}

/// `t^{a…}` from `t_{a…}` with the inverse Gram matrix.
fn raise<T: Scalar>(t: &AntiTensor<T>, ginv: &DMatrix<T>) -> AntiTensor<T> {
    let n = t.dim();
    let k = t.degree();
    let mut out = AntiTensor::zero(n, k);
    let nz: Vec<Vec<(usize, T)>> =
        (0..n).map(|a| (0..n).filter(|&c| !ginv[(a, c)].is_zero()).map(|c| (c, ginv[(a, c)].clone())).collect()).collect();
    for tuple in combinations(n, k) {
        let mut acc = T::zero();
        let mut stack: Vec<(Vec<usize>, T)> = vec![(Vec::new(), T::one())];
        for &a in &tuple {
            stack = stack
                .into_iter()
                .flat_map(|(idx, c)| {
                    nz[a].iter().map(move |(cc, g)| {
                        let mut i = idx.clone();
                        i.push(*cc);
                        (i, c.mul_ref(g))
                    })
                })
                .collect();
        }
        for (idx, c) in stack {
            let v = t.get(&idx);
            if !v.is_zero() {
                acc = acc.add_ref(&c.mul_ref(&v));
            }
        }
        if !acc.is_zero() {
            out.set(&tuple, acc);
        }
    }
    out
}

/// `t^{s} F_{s r}` over sorted `s`, for every sorted remainder `r`.
fn contract<T: Scalar>(t: &AntiTensor<T>, f: &BTreeMap<Vec<usize>, T>, n: usize, k: usize) -> BTreeMap<Vec<usize>, T> {
    let j = t.degree();
    let mut out = BTreeMap::new();
    for r in combinations(n, k - j) {
        let mut acc = T::zero();
        for (s, c) in t.components() {
            if c.is_zero() || s.iter().any(|i| r.contains(i)) {
                continue;
            }
            let mut idx = s.clone();
            idx.extend(&r);
            if let Some((sign, sorted)) = sort_with_sign(&idx) {
                if let Some(v) = f.get(&sorted) {
                    acc = acc.add_ref(&c.mul_ref(v).mul_ref(&T::from_i64(sign)));
                }
            }
        }
        out.insert(r, acc);
    }
    out
}

fn max_mag<T: Scalar>(m: &BTreeMap<Vec<usize>, T>) -> f64 {
    m.values().map(Scalar::magnitude).fold(0.0, f64::max)
}

/// `σ^{ab} Γ^(m+1)_{ab…}(π, π)` and `μ^{abc} Γ^(m+1)_{abc…}(π, π)` as maximal
/// component moduli; the second is vacuous for `m = 1`.
pub fn sigma_graph_residuals<T: Scalar>(
    v0: &CliffordModel<T>,
    sigma: &AntiTensor<T>,
    mu: &AntiTensor<T>,
    pi: &[T],
) -> Result<(f64, f64)> {
    let m = v0.m();
    let n = v0.ambient_dim();
    let k = m + 1;
    let f = form_values(v0, k, pi, pi)?;
    let s = max_mag(&contract(&raise(sigma, v0.gram_inv()), &f, n, k));
    let u = if k >= 3 { max_mag(&contract(&raise(mu, v0.gram_inv()), &f, n, k)) } else { 0.0 };
    Ok((s, u))
}

fn eval_form<T: Scalar>(n: usize, k: usize, vals: BTreeMap<Vec<usize>, T>) -> AntiTensor<T> {
    AntiTensor::from_map(n, k, vals.into_iter().filter(|(_, v)| !v.is_zero()).collect())
}

/// Samples the section of eigenspinors of `σ_ab(x) γ^{ab}` on the branch with
/// index `branch` (eigenvalues sorted by `(re, im)`), and checks the graph
/// conditions and `Σ^{ABC} Γ^(m+2)_{ABC…}(Z, Z) = 0` on the lifted twistor.
pub fn kerr_section<T: Scalar>(
    ctx: &ChartContext<T>,
    q: &CkyQuadruple<T>,
    branch: usize,
    points: &[Vec<T>],
    tol: f64,
) -> Result<KerrReport<T>> {
    let frame: &ConformalFrame<T> = ctx.frame();
    let v0 = frame.v0();
    let tr = frame.tractor();
    let n = frame.n();
    let m = ctx.m();
    let field = cky_field(frame, q)?;
    let big = sigma_tractor(frame, &field);
    let origin = vec![T::zero(); n];
    let sigma_t = raise(&eval_form(frame.tractor_dim(), 3, big.eval(&origin)), tr.gram_inv());
    let mut samples = Vec::new();
    for x in points {
        let sx = eval_form(n, 2, field.sigma.eval(x));
        let mx = eval_form(n, 3, field.mu.eval(x));
        let branches = cky_eigenspinors(v0, &sx, tol)?;
        if branches.len() != v0.spinor_dim() || branches.iter().any(|b| b.eigen.algebraic != 1) {
            return Err(Error::EigenCollision(format!("{} distinct eigenvalues at a sample", branches.len())));
        }
        let b = branches
            .get(branch)
            .ok_or(Error::OutOfRange { what: "eigenvalue branch", value: branch as i64 })?;
        let v = b.eigen.vectors.first().ok_or_else(|| Error::Degenerate("eigenvalue has no exact eigenvector".into()))?;
        let pi = normalize_max(v)?;
        let coords = chart_from_spinor(ctx, &pi, tol)?;
        let (sigma_residual, mu_residual) = sigma_graph_residuals(v0, &sx, &mx, &pi)?;
        let omega = scale_vec(&T::sqrt2().inv()?, &v0.act_vector(x, &pi));
        let mut z = omega;
        z.extend(pi.iter().cloned());
        let f = form_values(tr, m + 2, &z, &z)?;
        let submanifold_residual = max_mag(&contract(&sigma_t, &f, tr.ambient_dim(), m + 2));
        samples.push(KerrSample { x: x.clone(), eigenvalue: b.eigen.value, pi: coords, sigma_residual, mu_residual, submanifold_residual });
    }
    Ok(KerrReport { branch, samples })
}

/// `σ° = δ^1∧δ_1 + 3 δ^2∧δ_2`, `φ° = c u♭`, `μ° = ρ° = 0` on the `m = 2` model.
/// On points with `z_A = 0` the perturbation `x♭∧φ°` keeps the spectrum of `σ°`.
pub fn curated_kerr_quadruple<T: Scalar>(frame: &ConformalFrame<T>, c: &T) -> Result<CkyQuadruple<T>> {
    let m = frame.v0().m();
    if m != 2 {
        return Err(Error::OutOfRange { what: "m for the curated example", value: m as i64 });
    }
    let n = frame.n();
    let mut sigma = AntiTensor::zero(n, 2);
    sigma.set(&[0, m], T::one());
    sigma.set(&[1, m + 1], T::from_i64(3));
    let phi = frame.v0().lower(&(0..n).map(|a| if a == 2 * m { c.clone() } else { T::zero() }).collect::<Vec<_>>());
    Ok(CkyQuadruple { sigma, mu: AntiTensor::zero(n, 3), phi, rho: AntiTensor::zero(n, 2) })
}
