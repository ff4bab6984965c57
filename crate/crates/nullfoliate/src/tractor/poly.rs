//! Sparse multivariate polynomials with exact or float coefficients, and
//! vectors, matrices and antisymmetric tensors of them.

use std::collections::BTreeMap;
use std::fmt;

use crate::clifford::{combinations, sort_with_sign};
use crate::scalar::{CFloat, DMatrix, ExactScalar, Scalar};

/// A polynomial in `nvars` variables; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<T> {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, T>,
}

impl<T: Scalar> Poly<T> {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: T) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(e, T::one());
        p
    }

    /// `Σ c_i x_i`.
    pub fn linear(coeffs: &[T]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(&Self::var(n, i).terms.into_keys().next().expect("one term"), c.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, T> {
        &self.terms
    }

    fn add_term(&mut self, e: &[u32], c: T) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(e) {
            Some(v) => {
                let s = v.add_ref(&c);
                if s.is_zero() {
                    self.terms.remove(e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e.to_vec(), c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// All coefficients below `tol` in magnitude.
    pub fn near_zero(&self, tol: f64) -> bool {
        self.terms.values().all(|c| c.near_zero(tol))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e, c.neg_ref());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg_ref())).collect() }
    }

    pub fn scale(&self, s: &T) -> Self {
        if s.is_zero() {
            return Self::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), c.mul_ref(s))).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(&e, c1.mul_ref(c2));
            }
        }
        out
    }

    /// `∂/∂x_i`.
    pub fn deriv(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(&e2, c.mul_ref(&T::from_i64(i64::from(e[i]))));
        }
        out
    }

    pub fn eval(&self, x: &[T]) -> T {
        let mut acc = T::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &p) in x.iter().zip(e) {
                for _ in 0..p {
                    t = t.mul_ref(xi);
                }
            }
            acc = acc.add_ref(&t);
        }
        acc
    }

    /// Substitutes `subs[i]` (polynomials in `nvars` variables) for `x_i`.
    pub fn compose(&self, nvars: usize, subs: &[Poly<T>]) -> Poly<T> {
        let mut powers: Vec<Vec<Poly<T>>> = vec![vec![Poly::constant(nvars, T::one())]; subs.len()];
        let mut out = Poly::zero(nvars);
        for (e, c) in &self.terms {
            let mut t = Poly::constant(nvars, c.clone());
            for (i, &p) in e.iter().enumerate() {
                while powers[i].len() <= p as usize {
                    let next = powers[i].last().expect("nonempty").mul(&subs[i]);
                    powers[i].push(next);
                }
                if p > 0 {
                    t = t.mul(&powers[i][p as usize]);
                }
            }
            out = out.add(&t);
        }
        out
    }

    pub fn gradient(&self) -> PolyVec<T> {
        (0..self.nvars).map(|i| self.deriv(i)).collect()
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e, f(c));
        }
        out
    }
}

impl Poly<ExactScalar> {
    pub fn to_float(&self) -> Poly<CFloat> {
        self.map(CFloat::from_exact)
    }
}

impl<T: Scalar> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &p)| p > 0)
                    .map(|(i, &p)| if p == 1 { format!("x{i}") } else { format!("x{i}^{p}") })
                    .collect();
                if mono.is_empty() {
                    format!("[{c}]")
                } else {
                    format!("[{c}]*{}", mono.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A vector of polynomials.
pub type PolyVec<T> = Vec<Poly<T>>;

pub fn pvec_const<T: Scalar>(nvars: usize, v: &[T]) -> PolyVec<T> {
    v.iter().map(|c| Poly::constant(nvars, c.clone())).collect()
}

pub fn pvec_zero<T: Scalar>(nvars: usize, len: usize) -> PolyVec<T> {
    vec![Poly::zero(nvars); len]
}

pub fn pvec_add<T: Scalar>(a: &[Poly<T>], b: &[Poly<T>]) -> PolyVec<T> {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

pub fn pvec_sub<T: Scalar>(a: &[Poly<T>], b: &[Poly<T>]) -> PolyVec<T> {
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

pub fn pvec_scale<T: Scalar>(s: &T, a: &[Poly<T>]) -> PolyVec<T> {
    a.iter().map(|x| x.scale(s)).collect()
}

/// `p · v` for a polynomial `p` and constant vector `v`.
pub fn pvec_times<T: Scalar>(p: &Poly<T>, v: &[T]) -> PolyVec<T> {
    v.iter().map(|c| p.scale(c)).collect()
}

pub fn pvec_deriv<T: Scalar>(a: &[Poly<T>], i: usize) -> PolyVec<T> {
    a.iter().map(|x| x.deriv(i)).collect()
}

pub fn pvec_eval<T: Scalar>(a: &[Poly<T>], x: &[T]) -> Vec<T> {
    a.iter().map(|p| p.eval(x)).collect()
}

pub fn pvec_is_zero<T: Scalar>(a: &[Poly<T>]) -> bool {
    a.iter().all(Poly::is_zero)
}

/// Constant matrix applied to a polynomial vector.
pub fn mat_pvec<T: Scalar>(m: &DMatrix<T>, v: &[Poly<T>]) -> PolyVec<T> {
    let nvars = v.first().map_or(0, Poly::nvars);
    (0..m.rows())
        .map(|r| {
            let mut acc = Poly::zero(nvars);
            for (c, p) in v.iter().enumerate() {
                let x = &m[(r, c)];
                if !x.is_zero() && !p.is_zero() {
                    acc = acc.add(&p.scale(x));
                }
            }
            acc
        })
        .collect()
}

/// `Σ_i p_i q_i`.
pub fn pvec_dot<T: Scalar>(p: &[Poly<T>], q: &[Poly<T>]) -> Poly<T> {
    let nvars = p.first().map_or(0, Poly::nvars);
    p.iter().zip(q).fold(Poly::zero(nvars), |acc, (a, b)| acc.add(&a.mul(b)))
}

/// A matrix of polynomials.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<Poly<T>>,
}

impl<T: Scalar> PolyMatrix<T> {
    pub fn from_const(nvars: usize, m: &DMatrix<T>) -> Self {
        PolyMatrix { rows: m.rows(), cols: m.cols(), entries: m.data().iter().map(|c| Poly::constant(nvars, c.clone())).collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Poly<T>) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        PolyMatrix { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Poly<T> {
        &self.entries[r * self.cols + c]
    }

    pub fn add(&self, o: &Self) -> Self {
        PolyMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        PolyMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a.sub(b)).collect() }
    }

    /// `p · M` for a polynomial `p` and constant matrix `M`.
    pub fn times_const(p: &Poly<T>, m: &DMatrix<T>) -> Self {
        PolyMatrix { rows: m.rows(), cols: m.cols(), entries: m.data().iter().map(|c| p.scale(c)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let nvars = self.entries.first().map_or(0, Poly::nvars);
        Self::from_fn(self.rows, o.cols, |r, c| {
            (0..self.cols).fold(Poly::zero(nvars), |acc, k| {
                let (a, b) = (self.get(r, k), o.get(k, c));
                if a.is_zero() || b.is_zero() {
                    acc
                } else {
                    acc.add(&a.mul(b))
                }
            })
        })
    }

    pub fn scale(&self, s: &T) -> Self {
        PolyMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|p| p.scale(s)).collect() }
    }

    pub fn deriv(&self, i: usize) -> Self {
        PolyMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|p| p.deriv(i)).collect() }
    }

    pub fn eval(&self, x: &[T]) -> DMatrix<T> {
        DMatrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c).eval(x))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    pub fn apply(&self, v: &[Poly<T>]) -> PolyVec<T> {
        let nvars = self.entries.first().map_or(0, Poly::nvars);
        (0..self.rows)
            .map(|r| (0..self.cols).fold(Poly::zero(nvars), |acc, c| acc.add(&self.get(r, c).mul(&v[c]))))
            .collect()
    }
}

/// An antisymmetric tensor with polynomial components on increasing tuples.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyForm<T> {
    dim: usize,
    k: usize,
    nvars: usize,
    comps: BTreeMap<Vec<usize>, Poly<T>>,
}

impl<T: Scalar> PolyForm<T> {
    pub fn zero(dim: usize, k: usize, nvars: usize) -> Self {
        let comps = combinations(dim, k).into_iter().map(|t| (t, Poly::zero(nvars))).collect();
        PolyForm { dim, k, nvars, comps }
    }

    /// Builds a form from its values on increasing tuples.
    pub fn from_fn(dim: usize, k: usize, nvars: usize, mut f: impl FnMut(&[usize]) -> Poly<T>) -> Self {
        let comps = combinations(dim, k).into_iter().map(|t| {
            let p = f(&t);
            (t, p)
        });
        PolyForm { dim, k, nvars, comps: comps.collect() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree_k(&self) -> usize {
        self.k
    }

    /// Component on an arbitrary tuple.
    pub fn get(&self, idx: &[usize]) -> Poly<T> {
        match sort_with_sign(idx) {
            Some((sign, sorted)) => {
                let p = self.comps.get(&sorted).cloned().unwrap_or_else(|| Poly::zero(self.nvars));
                if sign == 1 {
                    p
                } else {
                    p.neg()
                }
            }
            None => Poly::zero(self.nvars),
        }
    }

    pub fn components(&self) -> &BTreeMap<Vec<usize>, Poly<T>> {
        &self.comps
    }

    pub fn deriv(&self, i: usize) -> Self {
        PolyForm { dim: self.dim, k: self.k, nvars: self.nvars, comps: self.comps.iter().map(|(t, p)| (t.clone(), p.deriv(i))).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.values().all(Poly::is_zero)
    }

    /// Maximal total degree over the components.
    pub fn degree(&self) -> Option<u32> {
        self.comps.values().filter_map(Poly::degree).max()
    }

    pub fn eval(&self, x: &[T]) -> BTreeMap<Vec<usize>, T> {
        self.comps.iter().map(|(t, p)| (t.clone(), p.eval(x))).collect()
    }

    pub fn add(&self, o: &Self) -> Self {
        PolyForm { dim: self.dim, k: self.k, nvars: self.nvars, comps: self.comps.iter().map(|(t, p)| (t.clone(), p.add(&o.get(t)))).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type E = ExactScalar;

    #[test]
    fn arithmetic_and_derivatives() {
        let x = Poly::<E>::var(2, 0);
        let y = Poly::<E>::var(2, 1);
        let p = x.mul(&x).mul(&y).add(&y.scale(&E::from(3)));
        assert_eq!(p.degree(), Some(3));
        assert_eq!(p.deriv(0), x.mul(&y).scale(&E::from(2)));
        assert_eq!(p.deriv(1), x.mul(&x).add(&Poly::constant(2, E::from(3))));
        assert_eq!(p.eval(&[E::from(2), E::from(5)]), E::from(35));
        assert!(p.sub(&p).is_zero());
        assert_eq!(Poly::<E>::zero(2).degree(), None);
        let q = p.compose(1, &[Poly::var(1, 0), Poly::constant(1, E::from(5))]);
        assert_eq!(q.eval(&[E::from(2)]), E::from(35));
        assert_eq!(p.gradient()[1], p.deriv(1));
    }

    #[test]
    fn forms_are_antisymmetric() {
        let f = PolyForm::<E>::from_fn(3, 2, 1, |t| Poly::constant(1, E::from((t[0] + 2 * t[1]) as i64)));
        assert_eq!(f.get(&[1, 0]), f.get(&[0, 1]).neg());
        assert!(f.get(&[2, 2]).is_zero());
    }
}
