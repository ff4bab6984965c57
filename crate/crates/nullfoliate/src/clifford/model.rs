//! Clifford models: metric, generator matrices and the invariant form Γ^(0).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::{dot, CFloat, DMatrix, ExactScalar, Scalar, DEFAULT_TOL};

use super::fock::FockBasis;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Odd,
    Even,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasisTag {
    /// Null (Witt) basis `δ_A, δ^A (, u)` of the flat model space.
    Witt,
    /// Tractor basis `X°, Y°, Z°_a` with `Z°_a` in Witt order.
    Tractor,
    /// Orthogonal complement of a unit vector in an even model.
    Reduced,
}

/// Sparse copy of a matrix used for fast repeated application.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMat<T> {
    rows: usize,
    entries: Vec<(usize, usize, T)>,
}

impl<T: Scalar> SparseMat<T> {
    pub fn from_dense(m: &DMatrix<T>) -> Self {
        let mut entries = Vec::new();
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                if !m[(r, c)].is_zero() {
                    entries.push((r, c, m[(r, c)].clone()));
                }
            }
        }
        SparseMat { rows: m.rows(), entries }
    }

    pub fn apply(&self, v: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); self.rows];
        for (r, c, x) in &self.entries {
            if !v[*c].is_zero() {
                out[*r] = out[*r].add_ref(&x.mul_ref(&v[*c]));
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct CliffordModel<T> {
    m: usize,
    parity: Parity,
    basis_tag: BasisTag,
    gram: DMatrix<T>,
    gram_inv: DMatrix<T>,
    gram_nz: Vec<Vec<(usize, T)>>,
    generators: Vec<DMatrix<T>>,
    sparse: Vec<SparseMat<T>>,
    gamma0: DMatrix<T>,
    gamma0_sign: i64,
    spinor_dim: usize,
    chirality: Option<(Vec<usize>, Vec<usize>)>,
}

fn check_m(m: usize) -> Result<()> {
    if !(1..=3).contains(&m) {
        return Err(Error::OutOfRange { what: "m", value: m as i64 });
    }
    Ok(())
}

/// Witt-basis Gram matrix for `m` null pairs, plus a unit vector when `with_u`.
fn witt_gram<T: Scalar>(m: usize, with_u: bool) -> DMatrix<T> {
    let n = 2 * m + usize::from(with_u);
    let mut g = DMatrix::zeros(n, n);
    for a in 0..m {
        g[(a, m + a)] = T::one();
        g[(m + a, a)] = T::one();
    }
    if with_u {
        g[(2 * m, 2 * m)] = T::one();
    }
    g
}

/// Generators `δ_A ↦ c_A`, `δ^A ↦ −2 a_A`, `u ↦ i·(−1)^{grade}` on the Fock space.
fn witt_generators<T: Scalar>(fock: &FockBasis, with_u: bool) -> Vec<DMatrix<T>> {
    let m = fock.modes();
    let mut gens = Vec::new();
    for a in 0..m {
        gens.push(fock.creation(a));
    }
    for a in 0..m {
        gens.push(fock.annihilation::<T>(a).scale(&T::from_i64(-2)));
    }
    if with_u {
        gens.push(fock.parity::<T>().scale(&T::i()));
    }
    gens
}

/// Lifts flat-space generators to the tractor level on `(ω, π)`:
/// `G_X(ω,π) = (0, √2 ω)`, `G_Y(ω,π) = (−√2 π, 0)`, `G_Z(ω,π) = (γ ω, −γ π)`.
fn tractor_generators<T: Scalar>(flat: &[DMatrix<T>], d: usize) -> Vec<DMatrix<T>> {
    let s2 = T::sqrt2();
    let gx = DMatrix::from_fn(2 * d, 2 * d, |r, c| if r == c + d { s2.clone() } else { T::zero() });
    let gy = DMatrix::from_fn(2 * d, 2 * d, |r, c| if c == r + d { s2.neg_ref() } else { T::zero() });
    let mut gens = vec![gx, gy];
    for g in flat {
        gens.push(DMatrix::from_fn(2 * d, 2 * d, |r, c| match (r < d, c < d) {
            (true, true) => g[(r, c)].clone(),
            (false, false) => g[(r - d, c - d)].neg_ref(),
            _ => T::zero(),
        }));
    }
    gens
}

fn tractor_gram<T: Scalar>(flat: &DMatrix<T>) -> DMatrix<T> {
    let n = flat.rows() + 2;
    DMatrix::from_fn(n, n, |r, c| match (r, c) {
        (0, 1) | (1, 0) => T::one(),
        (r, c) if r >= 2 && c >= 2 => flat[(r - 2, c - 2)].clone(),
        _ => T::zero(),
    })
}

/// Solves `Gᵀ C = ε C G` for all generators with `C` supported on `pairs`.
fn solve_invariant_form<T: Scalar>(
    gens: &[DMatrix<T>],
    d: usize,
    pairs: &[(usize, usize)],
    tol: f64,
) -> Result<(DMatrix<T>, i64)> {
    for eps in [1i64, -1] {
        let e = T::from_i64(eps);
        let mut eqs: BTreeMap<(usize, usize, usize), Vec<(usize, T)>> = BTreeMap::new();
        for (gi, g) in gens.iter().enumerate() {
            for (p, &(r, c)) in pairs.iter().enumerate() {
                for i in 0..d {
                    if !g[(r, i)].is_zero() {
                        eqs.entry((gi, i, c)).or_default().push((p, g[(r, i)].clone()));
                    }
                    if !g[(c, i)].is_zero() {
                        eqs.entry((gi, r, i)).or_default().push((p, e.mul_ref(&g[(c, i)]).neg_ref()));
                    }
                }
            }
        }
        let mut sys: DMatrix<T> = DMatrix::zeros(eqs.len(), pairs.len());
        for (row, terms) in eqs.values().enumerate() {
            for (p, x) in terms {
                sys[(row, *p)] = sys[(row, *p)].add_ref(x);
            }
        }
        let kernel = sys.kernel_vectors(tol);
        let Some(sol) = kernel.first() else { continue };
        let lead = sol.iter().find(|x| !x.near_zero(tol)).ok_or(Error::NoInvariantForm)?.inv()?;
        let mut c = DMatrix::zeros(d, d);
        for (p, &(r, col)) in pairs.iter().enumerate() {
            c[(r, col)] = sol[p].mul_ref(&lead);
        }
        if form_is_invariant(gens, &c, eps, tol) {
            return Ok((c, eps));
        }
    }
    Err(Error::NoInvariantForm)
}

fn form_is_invariant<T: Scalar>(gens: &[DMatrix<T>], c: &DMatrix<T>, eps: i64, tol: f64) -> bool {
    let e = T::from_i64(eps);
    gens.iter().all(|g| {
        let lhs = g.transpose().mul(c).expect("square");
        let rhs = c.mul(g).expect("square").scale(&e);
        lhs.approx_eq(&rhs, tol)
    })
}

fn nonzero_entries<T: Scalar>(m: &DMatrix<T>) -> Vec<Vec<(usize, T)>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).filter(|&c| !m[(r, c)].is_zero()).map(|c| (c, m[(r, c)].clone())).collect())
        .collect()
}

impl<T: Scalar> CliffordModel<T> {
    #[allow(clippy::too_many_arguments)]
    fn assemble(
        m: usize,
        parity: Parity,
        basis_tag: BasisTag,
        gram: DMatrix<T>,
        generators: Vec<DMatrix<T>>,
        gamma0: DMatrix<T>,
        gamma0_sign: i64,
        chirality: Option<(Vec<usize>, Vec<usize>)>,
    ) -> Result<Self> {
        let gram_inv = gram.inverse(DEFAULT_TOL)?;
        let sparse = generators.iter().map(SparseMat::from_dense).collect();
        let spinor_dim = generators.first().map_or(1, |g| g.rows());
        Ok(CliffordModel {
            m,
            parity,
            basis_tag,
            gram_nz: nonzero_entries(&gram),
            gram,
            gram_inv,
            generators,
            sparse,
            gamma0,
            gamma0_sign,
            spinor_dim,
            chirality,
        })
    }

    /// Model space `(V₀, g)` of dimension `2m+1` in the Witt basis
    /// `(δ_1..δ_m, δ^1..δ^m, u)` acting on the `2^m`-dimensional Fock space.
    pub fn build_v0_model(m: usize) -> Result<Self> {
        check_m(m)?;
        Self::build_flat(m, true)
    }

    /// Even-dimensional model space of dimension `2m` (no `u` direction).
    pub fn build_v0_even_model(m: usize) -> Result<Self> {
        check_m(m)?;
        Self::build_flat(m, false)
    }

    fn build_flat(m: usize, with_u: bool) -> Result<Self> {
        let fock = FockBasis::new(m);
        let gens = witt_generators::<T>(&fock, with_u);
        let gram = witt_gram::<T>(m, with_u);
        let pairs: Vec<(usize, usize)> = (0..fock.len()).map(|i| (i, fock.complement(i))).collect();
        let (gamma0, sign) = solve_invariant_form(&gens, fock.len(), &pairs, DEFAULT_TOL)?;
        let (parity, chirality) = if with_u {
            (Parity::Odd, None)
        } else {
            let alpha = (0..fock.len()).filter(|&i| fock.grade(i) % 2 == 0).collect();
            let beta = (0..fock.len()).filter(|&i| fock.grade(i) % 2 == 1).collect();
            (Parity::Even, Some((alpha, beta)))
        };
        Self::assemble(m, parity, BasisTag::Witt, gram, gens, gamma0, sign, chirality)
    }

    /// Tractor-level model of dimension `2m+3` (odd) or `2m+2` (even) in the
    /// basis `(X°, Y°, Z°_a)`, acting on `(ω, π)` with `ω, π` flat spinors.
    pub fn build_tractor_model(m: usize, parity: Parity) -> Result<Self> {
        check_m(m)?;
        let with_u = parity == Parity::Odd;
        let fock = FockBasis::new(m);
        let d = fock.len();
        let flat = witt_generators::<T>(&fock, with_u);
        let gens = tractor_generators(&flat, d);
        let gram = tractor_gram(&witt_gram::<T>(m, with_u));
        let mut pairs = Vec::new();
        for i in 0..d {
            pairs.push((i, d + fock.complement(i)));
            pairs.push((d + i, fock.complement(i)));
        }
        let (gamma0, sign) = solve_invariant_form(&gens, 2 * d, &pairs, DEFAULT_TOL)?;
        let chirality = if with_u {
            None
        } else {
            let odd = |i: usize| fock.grade(i) % 2 == 1;
            let alpha = (0..d).filter(|&i| odd(i)).chain((0..d).filter(|&i| !odd(i)).map(|i| d + i)).collect();
            let beta = (0..d).filter(|&i| !odd(i)).chain((0..d).filter(|&i| odd(i)).map(|i| d + i)).collect();
            Some((alpha, beta))
        };
        Self::assemble(m, parity, BasisTag::Tractor, gram, gens, gamma0, sign, chirality)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn basis_tag(&self) -> BasisTag {
        self.basis_tag
    }

    /// Dimension `N` of the vector space the generators represent.
    pub fn ambient_dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn spinor_dim(&self) -> usize {
        self.spinor_dim
    }

    /// Dimension of a maximal totally null subspace, `⌊N/2⌋`.
    pub fn max_null_dim(&self) -> usize {
        self.ambient_dim() / 2
    }

    pub fn gram(&self) -> &DMatrix<T> {
        &self.gram
    }

    pub fn gram_inv(&self) -> &DMatrix<T> {
        &self.gram_inv
    }

    /// Nonzero entries of row `a` of the Gram matrix.
    pub fn gram_row_nonzero(&self, a: usize) -> &[(usize, T)] {
        &self.gram_nz[a]
    }

    pub fn generators(&self) -> &[DMatrix<T>] {
        &self.generators
    }

    pub fn generator(&self, a: usize) -> &DMatrix<T> {
        &self.generators[a]
    }

    pub fn gamma0(&self) -> &DMatrix<T> {
        &self.gamma0
    }

    /// The sign `ε` with `Γ_Aᵀ Γ^(0) = ε Γ^(0) Γ_A`.
    pub fn gamma0_sign(&self) -> i64 {
        self.gamma0_sign
    }

    /// `(α, β)` index sets of the two chiral halves (even models only).
    pub fn chirality(&self) -> Option<(&[usize], &[usize])> {
        self.chirality.as_ref().map(|(a, b)| (a.as_slice(), b.as_slice()))
    }

    /// `Γ_A Z`.
    pub fn act(&self, a: usize, z: &[T]) -> Vec<T> {
        self.sparse[a].apply(z)
    }

    /// `v^A Γ_A Z`.
    pub fn act_vector(&self, v: &[T], z: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); self.spinor_dim];
        for (a, va) in v.iter().enumerate() {
            if va.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(self.act(a, z)) {
                *o = o.add_ref(&va.mul_ref(&x));
            }
        }
        out
    }

    /// Dense matrix of `v^A Γ_A`.
    pub fn vector_matrix(&self, v: &[T]) -> DMatrix<T> {
        let mut out = DMatrix::zeros(self.spinor_dim, self.spinor_dim);
        for (a, va) in v.iter().enumerate() {
            if !va.is_zero() {
                out = out.add(&self.generators[a].scale(va)).expect("same shape");
            }
        }
        out
    }

    /// `h(v, w)`.
    pub fn inner(&self, v: &[T], w: &[T]) -> T {
        self.gram.bilinear(v, w)
    }

    /// Index lowering `v_A = h_AB v^B`.
    pub fn lower(&self, v: &[T]) -> Vec<T> {
        self.gram.mul_vec(v)
    }

    /// Index raising `v^A = h^AB v_B`.
    pub fn raise(&self, v: &[T]) -> Vec<T> {
        self.gram_inv.mul_vec(v)
    }

    /// `Γ_A Γ_B + Γ_B Γ_A + 2 h_AB Id = 0` for one pair.
    pub fn clifford_pair_holds(&self, a: usize, b: usize, tol: f64) -> bool {
        let ga = &self.generators[a];
        let gb = &self.generators[b];
        let anti = ga.mul(gb).and_then(|x| x.add(&gb.mul(ga)?)).expect("square");
        let rhs = DMatrix::identity(self.spinor_dim).scale(&self.gram[(a, b)].mul_ref(&T::from_i64(-2)));
        anti.approx_eq(&rhs, tol)
    }

    /// Checks the Clifford identity on every unordered generator pair;
    /// returns `(pairs checked, failing pairs)`.
    pub fn verify_clifford_identity(&self, tol: f64) -> (usize, Vec<(usize, usize)>) {
        let n = self.ambient_dim();
        let mut failures = Vec::new();
        let mut count = 0;
        for a in 0..n {
            for b in a..n {
                count += 1;
                if !self.clifford_pair_holds(a, b, tol) {
                    failures.push((a, b));
                }
            }
        }
        (count, failures)
    }

    /// Checks `Γ_Aᵀ Γ^(0) = ε Γ^(0) Γ_A` for all generators.
    pub fn gamma0_is_invariant(&self, tol: f64) -> bool {
        form_is_invariant(&self.generators, &self.gamma0, self.gamma0_sign, tol)
    }

    /// Bilinear value `Γ^(0)(Z, W) = Zᵀ C W`.
    pub fn gamma0_pair(&self, z: &[T], w: &[T]) -> T {
        dot(&self.gamma0.vec_mul(z), w)
    }

    /// Odd model on the orthogonal complement of a unit vector `U` of an even
    /// model, generated by `Γ_A := Γ̃_A U` (matrix `Γ̃_U Γ̃_A`) restricted to the
    /// α-half.
    pub fn even_to_odd_reduce(&self, u: &[T], tol: f64) -> Result<ReducedModel<T>> {
        let Some((alpha, _)) = self.chirality() else {
            return Err(Error::Malformed("reduction needs an even model".into()));
        };
        if u.len() != self.ambient_dim() {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim(), got: u.len() });
        }
        if !self.inner(u, u).approx_eq(&T::one(), tol) {
            return Err(Error::NonUnit);
        }
        let alpha = alpha.to_vec();
        let row = DMatrix::from_rows(&[self.lower(u)], self.ambient_dim())?;
        let perp = row.kernel_vectors(tol);
        let k = perp.len();
        let gram = DMatrix::from_fn(k, k, |i, j| self.inner(&perp[i], &perp[j]));
        let gu = self.vector_matrix(u);
        let gens: Vec<DMatrix<T>> = perp
            .iter()
            .map(|v| gu.mul(&self.vector_matrix(v)).expect("square").submatrix(&alpha, &alpha))
            .collect();
        let d = alpha.len();
        let candidates = [self.gamma0.clone(), self.gamma0.mul(&gu)?];
        let mut found = None;
        for (idx, cand) in candidates.iter().enumerate() {
            let c = cand.submatrix(&alpha, &alpha);
            if c.is_zero(tol) {
                continue;
            }
            for eps in [1, -1] {
                if form_is_invariant(&gens, &c, eps, tol) {
                    found = Some((c.clone(), eps, idx == 1));
                    break;
                }
            }
            if found.is_some() {
                break;
            }
        }
        let (c, eps, via_u) = found.ok_or(Error::NoInvariantForm)?;
        debug_assert_eq!(c.rows(), d);
        let model = Self::assemble(self.m - 1, Parity::Odd, BasisTag::Reduced, gram, gens, c, eps, None)?;
        Ok(ReducedModel { model, perp_basis: perp, alpha, gamma0_through_u: via_u })
    }

    /// Extracts the α-half of a spinor of an even model.
    pub fn alpha_part(&self, z: &[T]) -> Option<Vec<T>> {
        self.chirality().map(|(a, _)| a.iter().map(|&i| z[i].clone()).collect())
    }

    /// Embeds an α-half spinor into the full spinor space.
    pub fn from_alpha(&self, za: &[T]) -> Option<Vec<T>> {
        self.chirality().map(|(a, _)| {
            let mut z = vec![T::zero(); self.spinor_dim];
            for (&i, x) in a.iter().zip(za) {
                z[i] = x.clone();
            }
            z
        })
    }
}

impl CliffordModel<ExactScalar> {
    /// The same model with complex-float entries.
    pub fn to_float(&self) -> CliffordModel<CFloat> {
        let f = |m: &DMatrix<ExactScalar>| m.map(CFloat::from_exact);
        let gram = f(&self.gram);
        let generators: Vec<DMatrix<CFloat>> = self.generators.iter().map(f).collect();
        CliffordModel {
            m: self.m,
            parity: self.parity,
            basis_tag: self.basis_tag,
            gram_nz: nonzero_entries(&gram),
            gram,
            gram_inv: f(&self.gram_inv),
            sparse: generators.iter().map(SparseMat::from_dense).collect(),
            generators,
            gamma0: f(&self.gamma0),
            gamma0_sign: self.gamma0_sign,
            spinor_dim: self.spinor_dim,
            chirality: self.chirality.clone(),
        }
    }
}

/// Output of [`CliffordModel::even_to_odd_reduce`].
#[derive(Clone, Debug)]
pub struct ReducedModel<T> {
    pub model: CliffordModel<T>,
    /// Basis of `U^⊥` in the even model's coordinates (the reduced basis).
    pub perp_basis: Vec<Vec<T>>,
    /// Indices of the α-half inside the even spinor space.
    pub alpha: Vec<usize>,
    /// Whether Γ^(0) was taken as `(Γ̃^(0) Γ̃_U)` rather than `Γ̃^(0)` restricted.
    pub gamma0_through_u: bool,
}
