//! Fock basis of the spinor space and the fermionic creation/annihilation maps.
//!
//! Basis elements are indexed by subsets `S ⊂ {0, …, n−1}` stored as bitmasks,
//! ordered by size first and then lexicographically on the increasing tuple.
//! The element `e_S` for `S = {s₁ < … < s_k}` is `c_{s_k} ⋯ c_{s₁} o`, i.e. the
//! smallest index is applied to the vacuum first.

use crate::scalar::{DMatrix, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockBasis {
    n: usize,
    masks: Vec<u32>,
    index: Vec<usize>,
}

impl FockBasis {
    pub fn new(n: usize) -> Self {
        let mut masks: Vec<u32> = (0..(1u32 << n)).collect();
        masks.sort_by_key(|&s| (s.count_ones(), subset_indices(s)));
        let mut index = vec![0; masks.len()];
        for (i, &s) in masks.iter().enumerate() {
            index[s as usize] = i;
        }
        FockBasis { n, masks, index }
    }

    pub fn modes(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn mask(&self, i: usize) -> u32 {
        self.masks[i]
    }

    pub fn index_of(&self, mask: u32) -> usize {
        self.index[mask as usize]
    }

    pub fn grade(&self, i: usize) -> usize {
        self.masks[i].count_ones() as usize
    }

    pub fn full_mask(&self) -> u32 {
        (1u32 << self.n) - 1
    }

    /// Basis index of the complement subset.
    pub fn complement(&self, i: usize) -> usize {
        self.index_of(self.full_mask() ^ self.masks[i])
    }

    /// Creation map `c_a`: `e_S ↦ (−1)^{#{s∈S : s>a}} e_{S∪{a}}`.
    pub fn creation<T: Scalar>(&self, a: usize) -> DMatrix<T> {
        let mut m = DMatrix::zeros(self.len(), self.len());
        for i in 0..self.len() {
            let s = self.masks[i];
            if s & (1 << a) == 0 {
                let j = self.index_of(s | (1 << a));
                m[(j, i)] = T::from_i64(sign_above(s, a));
            }
        }
        m
    }

    /// Annihilation map `a_a`: `e_S ↦ (−1)^{#{s∈S : s>a}} e_{S∖{a}}`, adjoint to `c_a`.
    pub fn annihilation<T: Scalar>(&self, a: usize) -> DMatrix<T> {
        let mut m = DMatrix::zeros(self.len(), self.len());
        for i in 0..self.len() {
            let s = self.masks[i];
            if s & (1 << a) != 0 {
                let j = self.index_of(s & !(1 << a));
                m[(j, i)] = T::from_i64(sign_above(s, a));
            }
        }
        m
    }

    /// Grading operator `e_S ↦ (−1)^{|S|} e_S`.
    pub fn parity<T: Scalar>(&self) -> DMatrix<T> {
        DMatrix::from_fn(self.len(), self.len(), |r, c| {
            if r != c {
                T::zero()
            } else if self.grade(r) % 2 == 0 {
                T::one()
            } else {
                T::from_i64(-1)
            }
        })
    }
}

/// Increasing index tuple of a bitmask.
pub fn subset_indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|&i| mask & (1 << i) != 0).collect()
}

fn sign_above(s: u32, a: usize) -> i64 {
    let above = (s >> (a + 1)).count_ones();
    if above % 2 == 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ExactScalar;

    #[test]
    fn ordering_is_grade_major_then_lexicographic() {
        let b = FockBasis::new(3);
        let tuples: Vec<Vec<usize>> = (0..b.len()).map(|i| subset_indices(b.mask(i))).collect();
        assert_eq!(
            tuples,
            vec![
                vec![],
                vec![0],
                vec![1],
                vec![2],
                vec![0, 1],
                vec![0, 2],
                vec![1, 2],
                vec![0, 1, 2]
            ]
        );
    }

    #[test]
    fn canonical_anticommutation() {
        let b = FockBasis::new(3);
        for i in 0..3 {
            for j in 0..3 {
                let ci: DMatrix<ExactScalar> = b.creation(i);
                let aj: DMatrix<ExactScalar> = b.annihilation(j);
                let anti = ci.mul(&aj).unwrap().add(&aj.mul(&ci).unwrap()).unwrap();
                let expected = if i == j { DMatrix::identity(8) } else { DMatrix::zeros(8, 8) };
                assert_eq!(anti, expected);
                let cj: DMatrix<ExactScalar> = b.creation(j);
                assert!(ci.mul(&cj).unwrap().add(&cj.mul(&ci).unwrap()).unwrap().is_zero(0.0));
            }
        }
    }

    #[test]
    fn basis_element_is_ordered_product_on_vacuum() {
        let b = FockBasis::new(3);
        let mut v = vec![ExactScalar::zero(); 8];
        v[0] = ExactScalar::one();
        for a in [0, 2] {
            v = b.creation::<ExactScalar>(a).mul_vec(&v);
        }
        let target = b.index_of(0b101);
        for (i, x) in v.iter().enumerate() {
            let expected = if i == target { ExactScalar::one() } else { ExactScalar::zero() };
            assert_eq!(x, &expected);
        }
    }
}
