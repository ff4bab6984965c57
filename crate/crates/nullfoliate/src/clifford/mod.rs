//! Clifford algebra generators for the flat model space and the tractor space,
//! and the Γ^(k) spinor bilinear forms.

mod fock;
mod kform;
mod model;

pub use fock::{subset_indices, FockBasis};
pub use kform::{
    combinations, form_values, gamma_k, gamma_k_direct, reversal_sign, sort_with_sign, KForm, SpinorSymmetry,
    TupleVectors,
};
pub use model::{BasisTag, CliffordModel, Parity, ReducedModel, SparseMat};

/// Tractor basis positions.
pub const X_IDX: usize = 0;
pub const Y_IDX: usize = 1;
/// Offset of `Z°_a` inside the tractor basis.
pub const Z_OFFSET: usize = 2;

/// Expected spinor-index symmetry of Γ^(k) in an odd model of dimension
/// `2r+1`: symmetric iff `k ≡ r, r+1 (mod 4)`.
pub fn expected_symmetric(r: usize, k: usize) -> bool {
    let d = (k + 4 - r % 4) % 4;
    d == 0 || d == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{DMatrix, ExactScalar};

    type E = ExactScalar;

    fn basis_vec(n: usize, i: usize) -> Vec<E> {
        let mut v = vec![E::zero(); n];
        v[i] = E::one();
        v
    }

    #[test]
    fn v0_examples() {
        let m1 = CliffordModel::<E>::build_v0_model(1).unwrap();
        let o = basis_vec(2, 0);
        // u acts on the vacuum by i
        assert_eq!(m1.act(2, &o), vec![E::imag_unit(), E::zero()]);
        // δ^1 on δ_1 gives −2 o
        let d1 = basis_vec(2, 1);
        assert_eq!(m1.act(1, &d1), vec![E::from(-2), E::zero()]);
        let m2 = CliffordModel::<E>::build_v0_model(2).unwrap();
        let (count, fails) = m2.verify_clifford_identity(0.0);
        assert_eq!(count, 15);
        assert!(fails.is_empty());
    }

    #[test]
    fn clifford_identity_all_models() {
        for m in 1..=3 {
            for model in [
                CliffordModel::<E>::build_v0_model(m).unwrap(),
                CliffordModel::<E>::build_v0_even_model(m).unwrap(),
                CliffordModel::<E>::build_tractor_model(m, Parity::Odd).unwrap(),
                CliffordModel::<E>::build_tractor_model(m, Parity::Even).unwrap(),
            ] {
                assert!(model.verify_clifford_identity(0.0).1.is_empty());
                assert!(model.gamma0_is_invariant(0.0));
            }
        }
        let t3 = CliffordModel::<E>::build_tractor_model(3, Parity::Odd).unwrap();
        assert_eq!(t3.spinor_dim(), 16);
        assert_eq!(t3.verify_clifford_identity(0.0).0, 45);
    }

    #[test]
    fn m_out_of_range() {
        assert!(CliffordModel::<E>::build_v0_model(0).is_err());
        assert!(CliffordModel::<E>::build_tractor_model(4, Parity::Odd).is_err());
    }

    #[test]
    fn x_maps_omega_block_by_sqrt2() {
        let t = CliffordModel::<E>::build_tractor_model(1, Parity::Odd).unwrap();
        let gx = t.generator(X_IDX);
        for c in 0..2 {
            for r in 0..4 {
                let expected = if r == c + 2 { E::sqrt2() } else { E::zero() };
                assert_eq!(gx[(r, c)], expected);
            }
            for r in 0..4 {
                assert!(gx[(r, c + 2)].is_zero());
            }
        }
    }

    #[test]
    fn symmetry_classes_follow_mod_four_rule() {
        for m in 1..=3 {
            let t = CliffordModel::<E>::build_tractor_model(m, Parity::Odd).unwrap();
            for k in 0..=t.ambient_dim() {
                let f = gamma_k(&t, k).unwrap();
                let expected = if expected_symmetric(m + 1, k) {
                    SpinorSymmetry::Symmetric
                } else {
                    SpinorSymmetry::Antisymmetric
                };
                assert_eq!(f.symmetry(0.0), expected, "m={m} k={k}");
            }
        }
    }

    #[test]
    fn recursion_matches_direct_sum() {
        for m in 1..=2 {
            let t = CliffordModel::<E>::build_tractor_model(m, Parity::Odd).unwrap();
            for k in 0..=4 {
                assert!(gamma_k(&t, k).unwrap().approx_eq(&gamma_k_direct(&t, k).unwrap(), 0.0));
            }
        }
    }

    #[test]
    fn kform_antisymmetry() {
        let t = CliffordModel::<E>::build_tractor_model(1, Parity::Odd).unwrap();
        let f = gamma_k(&t, 2).unwrap();
        let ab = f.get(&[0, 3]).unwrap();
        let ba = f.get(&[3, 0]).unwrap();
        assert_eq!(ab, ba.scale(&E::from(-1)));
        assert!(f.get(&[2, 2]).is_none());
        assert!(gamma_k(&t, 6).is_err());
    }

    #[test]
    fn vacuum_succinct_contraction() {
        for m in 1..=3 {
            let v0 = CliffordModel::<E>::build_v0_model(m).unwrap();
            let mut o = vec![E::zero(); v0.spinor_dim()];
            o[0] = E::one();
            let n = v0.ambient_dim();
            let mut acc = DMatrix::<E>::zeros(o.len(), o.len());
            for a in 0..n {
                for b in 0..n {
                    let h = v0.gram_inv()[(a, b)].clone();
                    if h.is_zero() {
                        continue;
                    }
                    let ga = v0.act(a, &o);
                    let gb = v0.act(b, &o);
                    acc = acc.add(&DMatrix::from_fn(o.len(), o.len(), |i, j| h.mul_ref(&ga[i]).mul_ref(&gb[j]))).unwrap();
                }
            }
            let oo = DMatrix::from_fn(o.len(), o.len(), |i, j| o[i].mul_ref(&o[j]));
            assert!(acc.add(&oo).unwrap().is_zero(0.0));
        }
    }

    #[test]
    fn reduction_of_even_models() {
        for m in 2..=3 {
            let even = CliffordModel::<E>::build_tractor_model(m, Parity::Even).unwrap();
            let n = even.ambient_dim();
            // U = X° + ½ Y° is a unit vector
            let mut u = vec![E::zero(); n];
            u[X_IDX] = E::one();
            u[Y_IDX] = E::rational(1, 2);
            let red = even.even_to_odd_reduce(&u, 0.0).unwrap();
            assert_eq!(red.model.ambient_dim(), n - 1);
            assert_eq!(red.model.spinor_dim(), 1 << m);
            assert!(red.model.verify_clifford_identity(0.0).1.is_empty());
            assert!(red.model.gamma0_is_invariant(0.0));
        }
        let even = CliffordModel::<E>::build_tractor_model(2, Parity::Even).unwrap();
        let bad = vec![E::one(); even.ambient_dim()];
        assert!(even.even_to_odd_reduce(&bad, 0.0).is_err());
    }

    #[test]
    fn float_model_matches_exact() {
        let t = CliffordModel::<E>::build_tractor_model(2, Parity::Odd).unwrap();
        let f = t.to_float();
        assert!(f.verify_clifford_identity(1e-12).1.is_empty());
    }
}
