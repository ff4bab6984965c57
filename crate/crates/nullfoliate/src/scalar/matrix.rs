//! Small dense row-major matrices with exact or tolerance-based elimination.

use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};

use super::{dot, max_magnitude, Scalar, Subspace};

#[derive(Clone, Debug, PartialEq)]
pub struct DMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> DMatrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, got: data.len() });
        }
        Ok(DMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        DMatrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        DMatrix { rows, cols, data }
    }

    /// Builds a matrix from equal-length rows; `cols` is used when `rows` is empty.
    pub fn from_rows(rows: &[Vec<T>], cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, got: r.len() });
            }
            data.extend(r.iter().cloned());
        }
        Ok(DMatrix { rows: rows.len(), cols, data })
    }

    pub fn from_cols(cols: &[Vec<T>], rows: usize) -> Result<Self> {
        Ok(Self::from_rows(cols, rows)?.transpose())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> DMatrix<U> {
        DMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, got: o.rows });
        }
        let mut out = Self::zeros(self.rows, o.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..o.cols {
                    let b = &o[(k, c)];
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a.mul_ref(b);
                    out[(r, c)] = out[(r, c)].add_ref(&prod);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        (0..self.rows).map(|r| dot(self.row(r), v)).collect()
    }

    /// Row vector times matrix, `vᵀ M`.
    pub fn vec_mul(&self, v: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); self.cols];
        for (r, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                let b = &self[(r, c)];
                if !b.is_zero() {
                    *o = o.add_ref(&a.mul_ref(b));
                }
            }
        }
        out
    }

    /// Bilinear value `xᵀ M y`.
    pub fn bilinear(&self, x: &[T], y: &[T]) -> T {
        dot(&self.vec_mul(x), y)
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.zip_with(o, |a, b| a.add_ref(b))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.zip_with(o, |a, b| a.sub_ref(b))
    }

    fn zip_with(&self, o: &Self, f: impl Fn(&T, &T) -> T) -> Result<Self> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                got: o.rows * o.cols,
            });
        }
        let data = self.data.iter().zip(&o.data).map(|(a, b)| f(a, b)).collect();
        Ok(DMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|a| c.mul_ref(a))
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.data.iter().all(|a| a.near_zero(tol))
    }

    pub fn approx_eq(&self, o: &Self, tol: f64) -> bool {
        self.rows == o.rows
            && self.cols == o.cols
            && self.data.iter().zip(&o.data).all(|(a, b)| a.approx_eq(b, tol))
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.approx_eq(&self.transpose(), tol)
    }

    pub fn is_antisymmetric(&self, tol: f64) -> bool {
        self.approx_eq(&self.transpose().scale(&T::from_i64(-1)), tol)
    }

    /// Stacks `self` on top of `o`.
    pub fn vstack(&self, o: &Self) -> Result<Self> {
        if self.cols != o.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, got: o.cols });
        }
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Ok(DMatrix { rows: self.rows + o.rows, cols: self.cols, data })
    }

    /// Places `o` to the right of `self`.
    pub fn hstack(&self, o: &Self) -> Result<Self> {
        Ok(self.transpose().vstack(&o.transpose())?.transpose())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |r, c| self[(rows[r], cols[c])].clone())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Forward elimination to row echelon form; returns the pivot columns.
    ///
    /// Exact matrices use fraction-free (Bareiss) updates. Float matrices use
    /// partial pivoting and accept a pivot only when its magnitude exceeds
    /// `tol · max|aᵢⱼ|`.
    fn echelon(&mut self, tol: f64) -> Vec<usize> {
        let threshold = tol * max_magnitude(&self.data);
        let mut pivots = Vec::new();
        let mut prev = T::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let pivot = if T::EXACT {
                (r..self.rows).find(|&i| !self[(i, c)].is_zero())
            } else {
                (r..self.rows)
                    .max_by(|&i, &j| {
                        self[(i, c)].magnitude().partial_cmp(&self[(j, c)].magnitude()).unwrap()
                    })
                    .filter(|&i| self[(i, c)].magnitude() > threshold)
            };
            let Some(p) = pivot else {
                if !T::EXACT {
                    for i in r..self.rows {
                        self[(i, c)] = T::zero();
                    }
                }
                continue;
            };
            self.swap_rows(r, p);
            let piv = self[(r, c)].clone();
            for i in r + 1..self.rows {
                let f = self[(i, c)].clone();
                if T::EXACT {
                    let pinv = prev.inv().expect("nonzero Bareiss pivot");
                    for j in c..self.cols {
                        let v = piv.mul_ref(&self[(i, j)]).sub_ref(&f.mul_ref(&self[(r, j)]));
                        self[(i, j)] = v.mul_ref(&pinv);
                    }
                } else {
                    if f.is_zero() {
                        continue;
                    }
                    let ratio = f.div_ref(&piv).expect("nonzero pivot");
                    for j in c..self.cols {
                        let v = self[(i, j)].sub_ref(&ratio.mul_ref(&self[(r, j)]));
                        self[(i, j)] = v;
                    }
                    self[(i, c)] = T::zero();
                }
            }
            if T::EXACT {
                prev = piv;
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self, tol: f64) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.echelon(tol);
        for (r, &c) in pivots.iter().enumerate().rev() {
            let inv = m[(r, c)].inv().expect("nonzero pivot");
            for j in c..m.cols {
                m[(r, j)] = m[(r, j)].mul_ref(&inv);
            }
            for i in 0..r {
                let f = m[(i, c)].clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m[(i, j)].sub_ref(&f.mul_ref(&m[(r, j)]));
                    m[(i, j)] = v;
                }
            }
        }
        for i in pivots.len()..m.rows {
            for j in 0..m.cols {
                m[(i, j)] = T::zero();
            }
        }
        (m, pivots)
    }

    pub fn rank(&self, tol: f64) -> usize {
        let mut m = self.clone();
        m.echelon(tol).len()
    }

    /// Basis vectors of the right null space.
    pub fn kernel_vectors(&self, tol: f64) -> Vec<Vec<T>> {
        let (r, pivots) = self.rref(tol);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![T::zero(); self.cols];
                v[f] = T::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = r[(row, f)].neg_ref();
                }
                v
            })
            .collect()
    }

    pub fn kernel_basis(&self, tol: f64) -> Subspace<T> {
        let vecs = self.kernel_vectors(tol);
        Subspace::from_independent(self.cols, vecs)
    }

    /// A particular solution of `self · x = b`, if the system is consistent.
    pub fn solve(&self, b: &[T], tol: f64) -> Option<Vec<T>> {
        let bcol = DMatrix { rows: b.len(), cols: 1, data: b.to_vec() };
        let aug = self.hstack(&bcol).ok()?;
        let (r, pivots) = aug.rref(tol);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![T::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r[(row, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self, tol: f64) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch { expected: self.rows, got: self.cols });
        }
        let aug = self.hstack(&Self::identity(self.rows))?;
        let (r, pivots) = aug.rref(tol);
        if pivots.len() < self.rows || pivots[self.rows - 1] >= self.rows {
            return Err(Error::DivisionByZero);
        }
        let cols: Vec<usize> = (self.cols..2 * self.cols).collect();
        let rows: Vec<usize> = (0..self.rows).collect();
        Ok(r.submatrix(&rows, &cols))
    }
}

impl<T> Index<(usize, usize)> for DMatrix<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for DMatrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        &mut self.data[r * self.cols + c]
    }
}
