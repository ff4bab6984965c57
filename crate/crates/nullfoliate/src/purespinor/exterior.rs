//! Antisymmetric tensors on a small vector space, stored on increasing tuples.
//!
//! Components follow the Einstein convention: a `k`-form `Φ` has components
//! `Φ_{A₁…A_k}` for all tuples, and only the increasing ones are stored. The
//! wedge product is normalized so that `(α ∧ β)_{[S]}` is the unit-weight
//! antisymmetrization of `α_P β_Q`.

use std::collections::BTreeMap;

use rand::Rng;

use crate::clifford::{combinations, sort_with_sign};
use crate::scalar::{Scalar, ExactScalar};

#[derive(Clone, Debug, PartialEq)]
pub struct AntiTensor<T> {
    dim: usize,
    k: usize,
    comps: BTreeMap<Vec<usize>, T>,
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

impl<T: Scalar> AntiTensor<T> {
    pub fn zero(dim: usize, k: usize) -> Self {
        let comps = combinations(dim, k).into_iter().map(|t| (t, T::zero())).collect();
        AntiTensor { dim, k, comps }
    }

    /// The 0-form with value `c`.
    pub fn scalar(dim: usize, c: T) -> Self {
        let mut t = Self::zero(dim, 0);
        t.comps.insert(Vec::new(), c);
        t
    }

    pub fn vector(v: &[T]) -> Self {
        let mut t = Self::zero(v.len(), 1);
        for (i, x) in v.iter().enumerate() {
            t.comps.insert(vec![i], x.clone());
        }
        t
    }

    pub fn from_map(dim: usize, k: usize, map: BTreeMap<Vec<usize>, T>) -> Self {
        let mut t = Self::zero(dim, k);
        for (key, v) in map {
            if let Some((sign, sorted)) = sort_with_sign(&key) {
                let v = if sign == 1 { v } else { v.neg_ref() };
                t.comps.insert(sorted, v);
            }
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn components(&self) -> &BTreeMap<Vec<usize>, T> {
        &self.comps
    }

    /// Component on an arbitrary tuple (antisymmetry applied; zero on repeats).
    pub fn get(&self, idx: &[usize]) -> T {
        match sort_with_sign(idx) {
            Some((sign, sorted)) => {
                let v = self.comps.get(&sorted).cloned().unwrap_or_else(T::zero);
                if sign == 1 {
                    v
                } else {
                    v.neg_ref()
                }
            }
            None => T::zero(),
        }
    }

    pub fn set(&mut self, sorted: &[usize], v: T) {
        self.comps.insert(sorted.to_vec(), v);
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.comps.values().all(|x| x.near_zero(tol))
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (key, v) in &o.comps {
            let cur = out.comps.get(key).cloned().unwrap_or_else(T::zero);
            out.comps.insert(key.clone(), cur.add_ref(v));
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&T::from_i64(-1)))
    }

    pub fn scale(&self, c: &T) -> Self {
        AntiTensor { dim: self.dim, k: self.k, comps: self.comps.iter().map(|(t, v)| (t.clone(), c.mul_ref(v))).collect() }
    }

    pub fn approx_eq(&self, o: &Self, tol: f64) -> bool {
        self.k == o.k && self.sub(o).is_zero(tol)
    }

    /// `(α∧β)_S = (p! q! / (p+q)!) Σ sign(P,Q) α_P β_Q` over splits of `S`.
    pub fn wedge(&self, o: &Self) -> Self {
        let (p, q) = (self.k, o.k);
        let mut out = Self::zero(self.dim, p + q);
        if p + q > self.dim {
            return out;
        }
        let norm = T::from_ratio(factorial(p) * factorial(q), factorial(p + q));
        for s in combinations(self.dim, p + q) {
            let mut acc = T::zero();
            for pos in combinations(p + q, p) {
                let pt: Vec<usize> = pos.iter().map(|&i| s[i]).collect();
                let qt: Vec<usize> = (0..p + q).filter(|i| !pos.contains(i)).map(|i| s[i]).collect();
                let a = self.get(&pt);
                let b = o.get(&qt);
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                let mut order = pt.clone();
                order.extend(&qt);
                let (sign, _) = sort_with_sign(&order).expect("disjoint");
                let term = a.mul_ref(&b);
                acc = if sign == 1 { acc.add_ref(&term) } else { acc.sub_ref(&term) };
            }
            out.comps.insert(s, norm.mul_ref(&acc));
        }
        out
    }

    /// Components rendered as canonical strings, for reports.
    pub fn render(&self) -> String {
        let parts: Vec<String> = self.comps.iter().filter(|(_, v)| !v.is_zero()).map(|(t, v)| format!("{t:?}:{v}")).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

/// Uniform small Gaussian integer `a + b i` with `|a|, |b| ≤ r` (imaginary part only when `complex`).
pub fn random_small<R: Rng + ?Sized>(rng: &mut R, r: i64, complex: bool) -> ExactScalar {
    let a = rng.random_range(-r..=r);
    let b = if complex { rng.random_range(-r..=r) } else { 0 };
    ExactScalar::gaussian(a, b)
}

pub fn random_vector<R: Rng + ?Sized>(rng: &mut R, n: usize, r: i64, complex: bool) -> Vec<ExactScalar> {
    (0..n).map(|_| random_small(rng, r, complex)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    type E = ExactScalar;

    fn vecf(xs: &[i64]) -> AntiTensor<E> {
        AntiTensor::vector(&xs.iter().map(|&x| E::from(x)).collect::<Vec<_>>())
    }

    #[test]
    fn wedge_of_vectors_is_half_commutator() {
        let a = vecf(&[1, 0, 0]);
        let b = vecf(&[0, 1, 0]);
        let ab = a.wedge(&b);
        assert_eq!(ab.get(&[0, 1]), E::rational(1, 2));
        assert_eq!(ab.get(&[1, 0]), E::rational(-1, 2));
        assert!(a.wedge(&a).is_zero(0.0));
    }

    #[test]
    fn wedge_is_graded_commutative_and_associative() {
        let a = vecf(&[1, 2, 0, 1]);
        let b = vecf(&[0, 1, 3, 1]);
        let c = vecf(&[2, 0, 1, 5]);
        assert!(a.wedge(&b).approx_eq(&b.wedge(&a).scale(&E::from(-1)), 0.0));
        let left = a.wedge(&b).wedge(&c);
        let right = a.wedge(&b.wedge(&c));
        assert!(left.approx_eq(&right, 0.0));
        let ab = a.wedge(&b);
        let cd = c.wedge(&vecf(&[1, 1, 1, 0]));
        assert!(ab.wedge(&cd).approx_eq(&cd.wedge(&ab), 0.0));
    }

    #[test]
    fn decomposable_two_form_squares_to_zero() {
        let a = vecf(&[1, 2, 0, 1]);
        let b = vecf(&[0, 1, 3, 1]);
        let ab = a.wedge(&b);
        assert!(ab.wedge(&ab).is_zero(0.0));
        let e12 = vecf(&[1, 0, 0, 0]).wedge(&vecf(&[0, 1, 0, 0]));
        let e34 = vecf(&[0, 0, 1, 0]).wedge(&vecf(&[0, 0, 0, 1]));
        let w = e12.add(&e34);
        assert!(!w.wedge(&w).is_zero(0.0));
    }
}
