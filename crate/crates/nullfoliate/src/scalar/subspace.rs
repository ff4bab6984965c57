//! Linear subspaces given by a basis of row vectors.

use crate::error::{Error, Result};

use super::{DMatrix, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<T> {
    ambient_dim: usize,
    basis: DMatrix<T>,
}

impl<T: Scalar> Subspace<T> {
    /// Wraps vectors already known to be independent.
    pub(crate) fn from_independent(ambient_dim: usize, vecs: Vec<Vec<T>>) -> Self {
        let basis = DMatrix::from_rows(&vecs, ambient_dim).expect("vector length equals ambient dim");
        Subspace { ambient_dim, basis }
    }

    /// The span of arbitrary vectors; a maximal independent subset is kept.
    pub fn span(ambient_dim: usize, vecs: &[Vec<T>], tol: f64) -> Result<Self> {
        for v in vecs {
            if v.len() != ambient_dim {
                return Err(Error::DimensionMismatch { expected: ambient_dim, got: v.len() });
            }
        }
        let mut kept: Vec<Vec<T>> = Vec::new();
        for v in vecs {
            let mut trial = kept.clone();
            trial.push(v.clone());
            let m = DMatrix::from_rows(&trial, ambient_dim)?;
            if m.rank(tol) == trial.len() {
                kept = trial;
            }
        }
        Ok(Self::from_independent(ambient_dim, kept))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &DMatrix<T> {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<Vec<T>> {
        self.basis.row_vecs()
    }

    pub fn contains(&self, v: &[T], tol: f64) -> bool {
        let mut rows = self.vectors();
        rows.push(v.to_vec());
        match DMatrix::from_rows(&rows, self.ambient_dim) {
            Ok(m) => m.rank(tol) == self.dim(),
            Err(_) => false,
        }
    }

    /// `U ∩ V` via the kernel of `[Uᵀ | −Vᵀ]`.
    pub fn intersect(&self, other: &Self, tol: f64) -> Result<Self> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, got: other.ambient_dim });
        }
        if self.dim() == 0 || other.dim() == 0 {
            return Ok(Self::from_independent(self.ambient_dim, Vec::new()));
        }
        let ut = self.basis.transpose();
        let vt = other.basis.transpose().scale(&T::from_i64(-1));
        let kernel = ut.hstack(&vt)?.kernel_vectors(tol);
        let vecs: Vec<Vec<T>> = kernel.iter().map(|k| ut.mul_vec(&k[..self.dim()])).collect();
        Self::span(self.ambient_dim, &vecs, tol)
    }
}
