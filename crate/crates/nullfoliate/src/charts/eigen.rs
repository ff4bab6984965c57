//! Eigenspinors of `V^a γ_a` and of `σ_ab γ^{ab}`, and the zero sets of
//! normal-bundle sections they describe.

use nalgebra::DMatrix as NMatrix;
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::clifford::{combinations, CliffordModel};
use crate::error::{Error, Result};
use crate::purespinor::{is_pure_rank, AntiTensor};
use crate::scalar::{CFloat, DMatrix, Scalar, Subspace};

/// Cluster gap for float eigenvalues.
pub const CLUSTER_GAP: f64 = 1e-6;

/// `V^a γ_a` on the spinor space.
#[derive(Clone, Debug)]
pub struct SpinEndo<T> {
    pub v: Vec<T>,
    pub matrix: DMatrix<T>,
}

impl<T: Scalar> SpinEndo<T> {
    pub fn new(model: &CliffordModel<T>, v: &[T]) -> Result<Self> {
        if v.len() != model.ambient_dim() {
            return Err(Error::DimensionMismatch { expected: model.ambient_dim(), got: v.len() });
        }
        Ok(SpinEndo { v: v.to_vec(), matrix: model.vector_matrix(v) })
    }

    /// `(V^a γ_a)² = −(V·V) Id`.
    pub fn square_holds(&self, model: &CliffordModel<T>, tol: f64) -> bool {
        let d = self.matrix.rows();
        let sq = self.matrix.mul(&self.matrix).expect("square");
        let want = DMatrix::identity(d).scale(&model.inner(&self.v, &self.v).neg_ref());
        sq.approx_eq(&want, tol)
    }
}

/// One eigenvalue with its multiplicities. `vectors` is an eigenspace basis
/// over the input field; it is empty for float branches of exact input.
#[derive(Clone, Debug)]
pub struct EigenBranch<T> {
    pub value: CFloat,
    pub rendered: String,
    pub algebraic: usize,
    pub geometric: usize,
    pub exact: bool,
    pub vectors: Vec<Vec<T>>,
}

/// Branches sorted lexicographically by `(re, im)`.
#[derive(Clone, Debug)]
pub struct EigenReport<T> {
    pub branches: Vec<EigenBranch<T>>,
}

impl<T> EigenReport<T> {
    pub fn values(&self) -> Vec<Complex64> {
        self.branches.iter().map(|b| b.value.0).collect()
    }

    pub fn all_exact(&self) -> bool {
        self.branches.iter().all(|b| b.exact)
    }
}

fn shifted<T: Scalar>(m: &DMatrix<T>, lambda: &T) -> DMatrix<T> {
    DMatrix::from_fn(m.rows(), m.cols(), |r, c| if r == c { m[(r, c)].sub_ref(lambda) } else { m[(r, c)].clone() })
}

fn exact_branch<T: Scalar>(m: &DMatrix<T>, lambda: T, algebraic: usize, tol: f64) -> EigenBranch<T> {
    let vectors = shifted(m, &lambda).kernel_vectors(tol);
    EigenBranch {
        value: CFloat(lambda.to_c64()),
        rendered: lambda.to_string(),
        algebraic,
        geometric: vectors.len(),
        exact: T::EXACT,
        vectors,
    }
}

fn sort_branches<T>(branches: &mut [EigenBranch<T>]) {
    branches.sort_by(|a, b| {
        let (x, y) = (a.value.0, b.value.0);
        x.re.partial_cmp(&y.re).unwrap_or(std::cmp::Ordering::Equal).then(x.im.partial_cmp(&y.im).unwrap_or(std::cmp::Ordering::Equal))
    });
}

/// Float eigenvalues of a matrix (complex Schur form), clustered with
/// [`CLUSTER_GAP`]; each cluster is `(mean, size)`.
pub fn float_eigenvalues<T: Scalar>(m: &DMatrix<T>) -> Vec<(Complex64, usize)> {
    let n = m.rows();
    let nm = NMatrix::from_fn(n, n, |r, c| m[(r, c)].to_c64());
    let (_, t) = nm.schur().unpack();
    let mut vals: Vec<Complex64> = (0..n).map(|i| t[(i, i)]).collect();
    vals.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap_or(std::cmp::Ordering::Equal));
    let mut clusters: Vec<Vec<Complex64>> = Vec::new();
    for v in vals {
        match clusters.iter_mut().find(|c| c.iter().any(|w| (w - v).norm() < CLUSTER_GAP)) {
            Some(c) => c.push(v),
            None => clusters.push(vec![v]),
        }
    }
    clusters
        .into_iter()
        .map(|c| {
            let k = c.len();
            (c.iter().sum::<Complex64>() / k as f64, k)
        })
        .collect()
}

fn float_branch<T: Scalar>(m: &DMatrix<T>, value: Complex64, algebraic: usize) -> EigenBranch<T> {
    let mf = m.map(|x| CFloat(x.to_c64()));
    let geometric = shifted(&mf, &CFloat(value)).kernel_vectors(CLUSTER_GAP).len();
    let vectors = T::from_c64(value).map_or_else(Vec::new, |l| shifted(m, &l).kernel_vectors(CLUSTER_GAP));
    EigenBranch { value: CFloat(value), rendered: format!("{:.9}{:+.9}i", value.re, value.im), algebraic, geometric, exact: false, vectors }
}

/// Eigenvalues of `V^a γ_a`: `0` (nilpotent) for null `V`, `±i√(V·V)` otherwise.
/// Exact when `−V·V` has a square root in the field, float otherwise.
pub fn spin_endo_eigen<T: Scalar>(model: &CliffordModel<T>, v: &[T], tol: f64) -> Result<EigenReport<T>> {
    let e = SpinEndo::new(model, v)?;
    let d = model.spinor_dim();
    let q = model.inner(v, v);
    let mut branches = if q.near_zero(tol) {
        vec![exact_branch(&e.matrix, T::zero(), d, tol)]
    } else {
        match q.neg_ref().sqrt() {
            Ok(l) => vec![exact_branch(&e.matrix, l.clone(), d / 2, tol), exact_branch(&e.matrix, l.neg_ref(), d / 2, tol)],
            Err(_) => float_eigenvalues(&e.matrix).into_iter().map(|(z, k)| float_branch(&e.matrix, z, k)).collect(),
        }
    };
    sort_branches(&mut branches);
    Ok(EigenReport { branches })
}

/// Zero set of the normal section `V̂` on one eigenvalue branch.
#[derive(Clone, Debug)]
pub struct ZeroBranch {
    pub value: CFloat,
    /// Algebraic multiplicity, the multiplicity of the zero on `MT`.
    pub multiplicity: usize,
    /// Projective dimension of the eigenspace.
    pub eigenspace_dim: isize,
    /// Projective dimension of the pure locus in the eigenspace, from the
    /// tangent of the `Stab(V)` orbit at a pure eigenspinor.
    pub pure_locus_dim: Option<isize>,
    /// Whether every sampled element of the eigenspace is pure.
    pub samples_pure: bool,
}

#[derive(Clone, Debug)]
pub struct ZeroSetReport {
    pub null: bool,
    pub branches: Vec<ZeroBranch>,
}

/// Bivectors `b^{ab} G_a G_b` with `b^{ab} V_b = 0`.
fn stabilizer_generators<T: Scalar>(model: &CliffordModel<T>, v: &[T], tol: f64) -> Vec<DMatrix<T>> {
    let n = model.ambient_dim();
    let pairs = combinations(n, 2);
    let vl = model.lower(v);
    // column (a,b): e_a v_b − e_b v_a
    let cond = DMatrix::from_fn(n, pairs.len(), |r, c| {
        let (a, b) = (pairs[c][0], pairs[c][1]);
        if r == a {
            vl[b].clone()
        } else if r == b {
            vl[a].neg_ref()
        } else {
            T::zero()
        }
    });
    cond.kernel_vectors(tol)
        .into_iter()
        .map(|k| {
            let d = model.spinor_dim();
            let mut out = DMatrix::zeros(d, d);
            for (c, t) in pairs.iter().enumerate() {
                if k[c].is_zero() {
                    continue;
                }
                let ab = model.generator(t[0]).mul(model.generator(t[1])).expect("square");
                let ba = model.generator(t[1]).mul(model.generator(t[0])).expect("square");
                out = out.add(&ab.sub(&ba).expect("square").scale(&k[c])).expect("square");
            }
            out
        })
        .collect()
}

fn random_combination<T: Scalar, R: Rng>(rng: &mut R, basis: &[Vec<T>]) -> Vec<T> {
    let d = basis[0].len();
    let mut out = vec![T::zero(); d];
    for b in basis {
        let c = T::from_i64(rng.random_range(-3..=3)).add_ref(&T::i().mul_ref(&T::from_i64(rng.random_range(-3..=3))));
        for (o, x) in out.iter_mut().zip(b) {
            *o = o.add_ref(&c.mul_ref(x));
        }
    }
    out
}

/// Zeros of the normal section `V̂` over a point: pure eigenspinors of
/// `V^a γ_a`, per eigenvalue branch. Float branches of exact input carry no
/// basis and report only multiplicities.
pub fn normal_section_zeros<T: Scalar>(model: &CliffordModel<T>, v: &[T], tol: f64) -> Result<ZeroSetReport> {
    let report = spin_endo_eigen(model, v, tol)?;
    let null = model.inner(v, v).near_zero(tol);
    let stab = stabilizer_generators(model, v, tol);
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut branches = Vec::new();
    for b in &report.branches {
        let mut samples_pure = !b.vectors.is_empty();
        let mut pure_sample = None;
        for _ in 0..8 {
            if b.vectors.is_empty() {
                break;
            }
            let s = random_combination(&mut rng, &b.vectors);
            if is_pure_rank(model, &s, tol)? {
                pure_sample.get_or_insert(s);
            } else {
                samples_pure = false;
            }
        }
        let pure_locus_dim = match &pure_sample {
            Some(p) => {
                let mut vecs: Vec<Vec<T>> = stab.iter().map(|g| g.mul_vec(p)).collect();
                vecs.push(p.clone());
                Some(Subspace::span(model.spinor_dim(), &vecs, tol)?.dim() as isize - 1)
            }
            None => None,
        };
        branches.push(ZeroBranch {
            value: b.value,
            multiplicity: b.algebraic,
            eigenspace_dim: b.geometric as isize - 1,
            pure_locus_dim,
            samples_pure,
        });
    }
    Ok(ZeroSetReport { null, branches })
}

/// The `m = 1` mini-twistor normal section as the binary quadratic
/// `a π₀² + b π₀π₁ + c π₁²` of `Γ^(0)(π, V·γ π)`.
#[derive(Clone, Debug)]
pub struct MtSectionReport<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub discriminant: T,
    /// Number of distinct projective roots.
    pub roots: usize,
    /// Whether each root is an eigenspinor of `V^a γ_a`.
    pub roots_are_eigenspinors: bool,
}

pub fn mt_section_m1<T: Scalar>(model: &CliffordModel<T>, v: &[T], tol: f64) -> Result<MtSectionReport<T>> {
    if model.spinor_dim() != 2 {
        return Err(Error::OutOfRange { what: "spinor dimension for the m = 1 section", value: model.spinor_dim() as i64 });
    }
    let e = SpinEndo::new(model, v)?;
    let cm = model.gamma0().mul(&e.matrix)?;
    let s = |r: usize, c: usize| cm[(r, c)].add_ref(&cm[(c, r)]).mul_ref(&T::from_ratio(1, 2));
    let (a, b, c) = (s(0, 0), s(0, 1).mul_ref(&T::from_i64(2)), s(1, 1));
    let discriminant = b.mul_ref(&b).sub_ref(&T::from_i64(4).mul_ref(&a).mul_ref(&c));
    let (af, bf, cf, df) = (a.to_c64(), b.to_c64(), c.to_c64(), discriminant.to_c64());
    let roots: Vec<[Complex64; 2]> = if af.norm() > tol {
        let r = df.sqrt();
        let mut out = vec![[(-bf + r) / (2.0 * af), Complex64::new(1.0, 0.0)]];
        if !discriminant.near_zero(tol) {
            out.push([(-bf - r) / (2.0 * af), Complex64::new(1.0, 0.0)]);
        }
        out
    } else if bf.norm() > tol {
        vec![[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)], [-cf / bf, Complex64::new(1.0, 0.0)]]
    } else if cf.norm() > tol {
        vec![[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]]
    } else {
        Vec::new()
    };
    let mf = e.matrix.map(|x| CFloat(x.to_c64()));
    let roots_are_eigenspinors = roots.iter().all(|p| {
        let pv = vec![CFloat(p[0]), CFloat(p[1])];
        let w = mf.mul_vec(&pv);
        (w[0].0 * p[1] - w[1].0 * p[0]).norm() < 1e-8
    });
    Ok(MtSectionReport { a, b, c, discriminant, roots: roots.len(), roots_are_eigenspinors })
}

/// `σ_ab γ^{ab}` as `σ^{ab} G_a G_b` with indices raised by the inverse Gram
/// matrix, for a 2-form with lower indices.
pub fn clifford_two_form<T: Scalar>(model: &CliffordModel<T>, sigma: &AntiTensor<T>) -> Result<DMatrix<T>> {
    let n = model.ambient_dim();
    if sigma.dim() != n || sigma.degree() != 2 {
        return Err(Error::Malformed(format!("σ must be a 2-form on {n} indices")));
    }
    let hi = model.gram_inv();
    let d = model.spinor_dim();
    let mut out = DMatrix::zeros(d, d);
    for a in 0..n {
        for b in 0..n {
            let mut s = T::zero();
            for c in 0..n {
                if hi[(a, c)].is_zero() {
                    continue;
                }
                for e in 0..n {
                    if !hi[(b, e)].is_zero() {
                        s = s.add_ref(&hi[(a, c)].mul_ref(&hi[(b, e)]).mul_ref(&sigma.get(&[c, e])));
                    }
                }
            }
            if !s.is_zero() {
                out = out.add(&model.generator(a).mul(model.generator(b))?.scale(&s))?;
            }
        }
    }
    Ok(out)
}

/// Best rational approximation with denominator at most `max_den`, if it is
/// within `tol` of `x`.
fn snap_rational(x: f64, max_den: i64, tol: f64) -> Option<(i64, i64)> {
    let (mut h0, mut h1, mut k0, mut k1) = (0i64, 1i64, 1i64, 0i64);
    let mut r = x;
    for _ in 0..40 {
        let a = r.floor();
        if a.abs() > 1e12 {
            return None;
        }
        let a = a as i64;
        let (h2, k2) = (a.checked_mul(h1)?.checked_add(h0)?, a.checked_mul(k1)?.checked_add(k0)?);
        if k2 > max_den {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        if (x - h1 as f64 / k1 as f64).abs() < tol {
            return Some((h1, k1));
        }
        let frac = r - a as f64;
        if frac.abs() < 1e-15 {
            break;
        }
        r = 1.0 / frac;
    }
    ((x - h1 as f64 / k1 as f64).abs() < tol && k1 != 0).then_some((h1, k1))
}

/// Exact candidate for a float eigenvalue with Gaussian-rational value.
fn snap<T: Scalar>(z: Complex64) -> Option<T> {
    let (rn, rd) = snap_rational(z.re, 1000, 1e-7)?;
    let (in_, id) = snap_rational(z.im, 1000, 1e-7)?;
    Some(T::from_ratio(rn, rd).add_ref(&T::i().mul_ref(&T::from_ratio(in_, id))))
}

/// A branch of `σ_ab γ^{ab}` with the purity of its eigenspinor when the
/// eigenspace is a line.
#[derive(Clone, Debug)]
pub struct CkyBranch<T> {
    pub eigen: EigenBranch<T>,
    pub pure: Option<bool>,
}

/// Eigen-decomposition of `σ_ab γ^{ab}`. Float eigenvalues are snapped to
/// Gaussian rationals and confirmed by an exact kernel of the right
/// dimension; unconfirmed branches stay float.
pub fn cky_eigenspinors<T: Scalar>(model: &CliffordModel<T>, sigma: &AntiTensor<T>, tol: f64) -> Result<Vec<CkyBranch<T>>> {
    let s = clifford_two_form(model, sigma)?;
    let mut branches = Vec::new();
    for (z, k) in float_eigenvalues(&s) {
        let exact = snap::<T>(z).map(|l| exact_branch(&s, l, k, tol)).filter(|b| b.geometric == k);
        branches.push(match exact {
            Some(b) if T::EXACT => b,
            _ => float_branch(&s, z, k),
        });
    }
    sort_branches(&mut branches);
    branches
        .into_iter()
        .map(|b| {
            let pure = if b.geometric == 1 && b.vectors.len() == 1 { Some(is_pure_rank(model, &b.vectors[0], tol)?) } else { None };
            Ok(CkyBranch { eigen: b, pure })
        })
        .collect()
}
