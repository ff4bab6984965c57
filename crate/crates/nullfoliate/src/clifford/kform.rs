//! The spinor bilinear forms Γ^(k) and their evaluation on spinor pairs.
//!
//! For an increasing index tuple `A₁ < … < A_k` let `Q` be the unit-weight
//! antisymmetrization of the matrix product `Γ_{A₁} ⋯ Γ_{A_k}`. Because a
//! product `Γ_A Γ_B` in abstract-index order applies `Γ_A` first, the form is
//! `Γ^(k)_{A₁…A_k}(Z, W) = s_k (Q Z)ᵀ Γ^(0) W` with `s_k = (−1)^{k(k−1)/2}`.
//! `Q` obeys the recursion
//! `Q_{A B₁…B_k} = Γ_A Q_{B₁…B_k} + Σ_j (−1)^{j−1} h_{A B_j} Q_{B₁…B̂_j…B_k}`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::{dot, DMatrix, Scalar};

use super::model::CliffordModel;

/// Increasing `k`-tuples from `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Sign of the permutation sorting `idx`, and the sorted tuple; `None` on repeats.
pub fn sort_with_sign(idx: &[usize]) -> Option<(i64, Vec<usize>)> {
    let mut v = idx.to_vec();
    let mut sign = 1;
    if v.len() < 2 {
        return Some((sign, v));
    }
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            } else if v[j] == v[j + 1] {
                return None;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((sign, v))
}

pub fn reversal_sign(k: usize) -> i64 {
    if (k * k.saturating_sub(1) / 2) % 2 == 0 {
        1
    } else {
        -1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpinorSymmetry {
    Symmetric,
    Antisymmetric,
    /// Every matrix is zero (both symmetric and antisymmetric).
    Zero,
    Mixed,
}

/// Γ^(k) stored on increasing index tuples.
#[derive(Clone, Debug)]
pub struct KForm<T> {
    k: usize,
    table: BTreeMap<Vec<usize>, DMatrix<T>>,
}

impl<T: Scalar> KForm<T> {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<usize>, &DMatrix<T>)> {
        self.table.iter()
    }

    /// Matrix for an arbitrary index tuple, with the antisymmetry sign applied.
    pub fn get(&self, idx: &[usize]) -> Option<DMatrix<T>> {
        let (sign, sorted) = sort_with_sign(idx)?;
        let m = self.table.get(&sorted)?;
        Some(if sign == 1 { m.clone() } else { m.scale(&T::from_i64(-1)) })
    }

    /// Common spinor-index symmetry of all stored matrices.
    pub fn symmetry(&self, tol: f64) -> SpinorSymmetry {
        let (mut sym, mut anti) = (true, true);
        for m in self.table.values() {
            sym &= m.is_symmetric(tol);
            anti &= m.is_antisymmetric(tol);
        }
        match (sym, anti) {
            (true, true) => SpinorSymmetry::Zero,
            (true, false) => SpinorSymmetry::Symmetric,
            (false, true) => SpinorSymmetry::Antisymmetric,
            (false, false) => SpinorSymmetry::Mixed,
        }
    }

    pub fn approx_eq(&self, o: &Self, tol: f64) -> bool {
        self.k == o.k
            && self.table.len() == o.table.len()
            && self.table.iter().all(|(t, m)| o.table.get(t).is_some_and(|n| m.approx_eq(n, tol)))
    }
}

fn check_k<T: Scalar>(model: &CliffordModel<T>, k: usize) -> Result<()> {
    if k > model.ambient_dim() {
        return Err(Error::OutOfRange { what: "k", value: k as i64 });
    }
    Ok(())
}

/// Γ^(k) via the one-generator recursion.
pub fn gamma_k<T: Scalar>(model: &CliffordModel<T>, k: usize) -> Result<KForm<T>> {
    check_k(model, k)?;
    let n = model.ambient_dim();
    let d = model.spinor_dim();
    let mut levels: Vec<BTreeMap<Vec<usize>, DMatrix<T>>> = vec![BTreeMap::new()];
    levels[0].insert(Vec::new(), DMatrix::identity(d));
    for size in 1..=k {
        let mut next = BTreeMap::new();
        for t in combinations(n, size) {
            let (a, rest) = (t[0], &t[1..]);
            let mut q = model.generator(a).mul(&levels[size - 1][rest])?;
            for (j, &b) in rest.iter().enumerate() {
                let h = model.gram()[(a, b)].clone();
                if h.is_zero() {
                    continue;
                }
                let mut reduced = rest.to_vec();
                reduced.remove(j);
                let sign = if j % 2 == 0 { h } else { h.neg_ref() };
                q = q.add(&levels[size - 2][&reduced].scale(&sign))?;
            }
            next.insert(t, q);
        }
        levels.push(next);
    }
    finish(model, k, levels.pop().expect("level k"))
}

/// Γ^(k) from the full `k!`-term antisymmetrization (independent oracle).
pub fn gamma_k_direct<T: Scalar>(model: &CliffordModel<T>, k: usize) -> Result<KForm<T>> {
    check_k(model, k)?;
    let n = model.ambient_dim();
    let d = model.spinor_dim();
    let perms = permutations(k);
    let mut fact = 1i64;
    for i in 2..=k as i64 {
        fact *= i;
    }
    let inv_fact = T::from_ratio(1, fact);
    let mut level = BTreeMap::new();
    for t in combinations(n, k) {
        let mut acc = DMatrix::zeros(d, d);
        for (sign, p) in &perms {
            let mut prod = DMatrix::identity(d);
            for &i in p {
                prod = prod.mul(model.generator(t[i]))?;
            }
            acc = acc.add(&prod.scale(&T::from_i64(*sign)))?;
        }
        level.insert(t, acc.scale(&inv_fact));
    }
    finish(model, k, level)
}

fn finish<T: Scalar>(model: &CliffordModel<T>, k: usize, q: BTreeMap<Vec<usize>, DMatrix<T>>) -> Result<KForm<T>> {
    let s = T::from_i64(reversal_sign(k));
    let mut table = BTreeMap::new();
    for (t, m) in q {
        table.insert(t, m.transpose().mul(model.gamma0())?.scale(&s));
    }
    Ok(KForm { k, table })
}

fn permutations(k: usize) -> Vec<(i64, Vec<usize>)> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out.into_iter()
        .map(|p| {
            let mut inv = 0;
            for i in 0..k {
                for j in i + 1..k {
                    if p[i] > p[j] {
                        inv += 1;
                    }
                }
            }
            (if inv % 2 == 0 { 1 } else { -1 }, p)
        })
        .collect()
}

/// The vectors `Q_t Z` for every increasing tuple `t` with `|t| ≤ kmax`.
#[derive(Clone, Debug)]
pub struct TupleVectors<T> {
    levels: Vec<BTreeMap<Vec<usize>, Vec<T>>>,
}

impl<T: Scalar> TupleVectors<T> {
    pub fn new(model: &CliffordModel<T>, z: &[T], kmax: usize) -> Self {
        let n = model.ambient_dim();
        let mut levels = Vec::new();
        let mut first = BTreeMap::new();
        first.insert(Vec::new(), z.to_vec());
        levels.push(first);
        for size in 1..=kmax.min(n) {
            let mut next = BTreeMap::new();
            for t in combinations(n, size) {
                let (a, rest) = (t[0], &t[1..]);
                let mut v = model.act(a, &levels[size - 1][rest]);
                for (j, &b) in rest.iter().enumerate() {
                    let h = &model.gram()[(a, b)];
                    if h.is_zero() {
                        continue;
                    }
                    let mut reduced = rest.to_vec();
                    reduced.remove(j);
                    let sign = if j % 2 == 0 { h.clone() } else { h.neg_ref() };
                    for (x, y) in v.iter_mut().zip(&levels[size - 2][&reduced]) {
                        *x = x.add_ref(&sign.mul_ref(y));
                    }
                }
                next.insert(t, v);
            }
            levels.push(next);
        }
        TupleVectors { levels }
    }

    pub fn kmax(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn vector(&self, tuple: &[usize]) -> Option<&Vec<T>> {
        self.levels.get(tuple.len())?.get(tuple)
    }

    /// `Γ^(k)_t(Z, W)` for every increasing `k`-tuple `t`, given `cw = Γ^(0) W`.
    pub fn values_with(&self, k: usize, cw: &[T]) -> BTreeMap<Vec<usize>, T> {
        let s = T::from_i64(reversal_sign(k));
        self.levels[k].iter().map(|(t, v)| (t.clone(), s.mul_ref(&dot(v, cw)))).collect()
    }

    /// True iff `Γ^(k)(Z, W) = 0` for all index tuples.
    pub fn vanishes_with(&self, k: usize, cw: &[T], tol: f64) -> bool {
        self.levels[k].values().all(|v| dot(v, cw).near_zero(tol))
    }
}

/// `Γ^(k)_t(Z, W)` for all increasing tuples `t`.
pub fn form_values<T: Scalar>(model: &CliffordModel<T>, k: usize, z: &[T], w: &[T]) -> Result<BTreeMap<Vec<usize>, T>> {
    check_k(model, k)?;
    let tv = TupleVectors::new(model, z, k);
    let cw = model.gamma0().mul_vec(w);
    Ok(tv.values_with(k, &cw))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combination_counts() {
        assert_eq!(combinations(9, 4).len(), 126);
        assert_eq!(combinations(5, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn sorting_sign() {
        assert_eq!(sort_with_sign(&[2, 0, 1]), Some((1, vec![0, 1, 2])));
        assert_eq!(sort_with_sign(&[1, 0]), Some((-1, vec![0, 1])));
        assert_eq!(sort_with_sign(&[1, 1]), None);
    }

    #[test]
    fn permutation_signs() {
        let p = permutations(3);
        assert_eq!(p.len(), 6);
        assert_eq!(p.iter().map(|(s, _)| s).sum::<i64>(), 0);
    }
}
