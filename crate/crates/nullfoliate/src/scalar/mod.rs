//! Scalars, dense matrices and subspaces over ℚ(i, √2) or complex floats.

mod exact;
mod float;
mod matrix;
mod subspace;

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use exact::{ExactScalar, GaussRational};
pub use float::{CFloat, DEFAULT_TOL};
pub use matrix::DMatrix;
pub use subspace::Subspace;

/// Operations shared by the exact and float backends.
///
/// Tolerances are ignored by the exact backend.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn i() -> Self;
    fn sqrt2() -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_ratio(n: i64, d: i64) -> Self;
    fn from_exact(x: &ExactScalar) -> Self;
    fn is_zero(&self) -> bool;
    fn near_zero(&self, tol: f64) -> bool;
    fn magnitude(&self) -> f64;
    fn inv(&self) -> Result<Self>;
    fn conj(&self) -> Self;
    fn to_c64(&self) -> Complex64;
    /// Inverse of `to_c64` on the float backend; `None` for exact scalars.
    fn from_c64(z: Complex64) -> Option<Self>;
    fn sqrt(&self) -> Result<Self>;
    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;

    fn div_ref(&self, o: &Self) -> Result<Self> {
        Ok(self.mul_ref(&o.inv()?))
    }

    fn neg_ref(&self) -> Self {
        self.clone().neg()
    }

    fn approx_eq(&self, o: &Self, tol: f64) -> bool {
        self.sub_ref(o).near_zero(tol)
    }
}

impl Scalar for ExactScalar {
    const EXACT: bool = true;

    fn zero() -> Self {
        ExactScalar::zero()
    }
    fn one() -> Self {
        ExactScalar::one()
    }
    fn i() -> Self {
        ExactScalar::imag_unit()
    }
    fn sqrt2() -> Self {
        ExactScalar::sqrt2()
    }
    fn from_i64(n: i64) -> Self {
        ExactScalar::rational(n, 1)
    }
    fn from_ratio(n: i64, d: i64) -> Self {
        ExactScalar::rational(n, d)
    }
    fn from_exact(x: &ExactScalar) -> Self {
        x.clone()
    }
    fn is_zero(&self) -> bool {
        ExactScalar::is_zero(self)
    }
    fn near_zero(&self, _tol: f64) -> bool {
        ExactScalar::is_zero(self)
    }
    fn magnitude(&self) -> f64 {
        self.to_c64().norm()
    }
    fn inv(&self) -> Result<Self> {
        ExactScalar::inv(self)
    }
    fn conj(&self) -> Self {
        ExactScalar::conj(self)
    }
    fn to_c64(&self) -> Complex64 {
        ExactScalar::to_c64(self)
    }
    fn from_c64(_: Complex64) -> Option<Self> {
        None
    }
    fn sqrt(&self) -> Result<Self> {
        ExactScalar::sqrt(self)
    }
    fn add_ref(&self, o: &Self) -> Self {
        ExactScalar::add_ref(self, o)
    }
    fn sub_ref(&self, o: &Self) -> Self {
        ExactScalar::sub_ref(self, o)
    }
    fn mul_ref(&self, o: &Self) -> Self {
        ExactScalar::mul_ref(self, o)
    }
    fn neg_ref(&self) -> Self {
        ExactScalar::neg_ref(self)
    }
}

impl Scalar for CFloat {
    const EXACT: bool = false;

    fn zero() -> Self {
        CFloat::new(0.0, 0.0)
    }
    fn one() -> Self {
        CFloat::new(1.0, 0.0)
    }
    fn i() -> Self {
        CFloat::new(0.0, 1.0)
    }
    fn sqrt2() -> Self {
        CFloat::new(std::f64::consts::SQRT_2, 0.0)
    }
    fn from_i64(n: i64) -> Self {
        CFloat::new(n as f64, 0.0)
    }
    fn from_ratio(n: i64, d: i64) -> Self {
        CFloat::new(n as f64 / d as f64, 0.0)
    }
    fn from_exact(x: &ExactScalar) -> Self {
        CFloat(x.to_c64())
    }
    fn is_zero(&self) -> bool {
        self.0.re == 0.0 && self.0.im == 0.0
    }
    fn near_zero(&self, tol: f64) -> bool {
        self.0.norm() <= tol
    }
    fn magnitude(&self) -> f64 {
        self.0.norm()
    }
    fn inv(&self) -> Result<Self> {
        if Scalar::is_zero(self) {
            return Err(Error::DivisionByZero);
        }
        Ok(CFloat(self.0.inv()))
    }
    fn conj(&self) -> Self {
        CFloat(self.0.conj())
    }
    fn to_c64(&self) -> Complex64 {
        self.0
    }
    fn from_c64(z: Complex64) -> Option<Self> {
        Some(CFloat(z))
    }
    fn sqrt(&self) -> Result<Self> {
        Ok(CFloat(self.0.sqrt()))
    }
    fn add_ref(&self, o: &Self) -> Self {
        *self + *o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        *self - *o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        *self * *o
    }
}

/// Dot product `Σ xᵢ yᵢ` (no conjugation).
pub fn dot<T: Scalar>(x: &[T], y: &[T]) -> T {
    let mut acc = T::zero();
    for (a, b) in x.iter().zip(y) {
        if a.is_zero() || b.is_zero() {
            continue;
        }
        acc = acc.add_ref(&a.mul_ref(b));
    }
    acc
}

/// `x + c·y` elementwise.
pub fn axpy<T: Scalar>(x: &[T], c: &T, y: &[T]) -> Vec<T> {
    x.iter().zip(y).map(|(a, b)| a.add_ref(&c.mul_ref(b))).collect()
}

pub fn scale_vec<T: Scalar>(c: &T, x: &[T]) -> Vec<T> {
    x.iter().map(|a| c.mul_ref(a)).collect()
}

pub fn add_vec<T: Scalar>(x: &[T], y: &[T]) -> Vec<T> {
    x.iter().zip(y).map(|(a, b)| a.add_ref(b)).collect()
}

pub fn sub_vec<T: Scalar>(x: &[T], y: &[T]) -> Vec<T> {
    x.iter().zip(y).map(|(a, b)| a.sub_ref(b)).collect()
}

pub fn is_zero_vec<T: Scalar>(x: &[T], tol: f64) -> bool {
    x.iter().all(|a| a.near_zero(tol))
}

/// Largest entry magnitude, used to scale float tolerances.
pub fn max_magnitude<T: Scalar>(x: &[T]) -> f64 {
    x.iter().map(|a| a.magnitude()).fold(0.0, f64::max)
}

/// True iff `x` and `y` are proportional (including either being zero).
pub fn proportional<T: Scalar>(x: &[T], y: &[T], tol: f64) -> bool {
    let Some(p) = x.iter().position(|a| !a.near_zero(tol)) else {
        return true;
    };
    if y[p].near_zero(tol) {
        return is_zero_vec(y, tol);
    }
    // y = c x with c = y_p / x_p; compare cross products to stay division-free.
    x.iter().zip(y).all(|(a, b)| a.mul_ref(&y[p]).approx_eq(&b.mul_ref(&x[p]), tol))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_backend_basics() {
        let x = CFloat::new(3.0, 4.0);
        assert!((x.magnitude() - 5.0).abs() < 1e-15);
        assert!(x.mul_ref(&x.inv().unwrap()).approx_eq(&CFloat::one(), 1e-12));
        assert_eq!(CFloat::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn proportionality() {
        let x: Vec<ExactScalar> = [1, 2, 0].iter().map(|&n| ExactScalar::from(n)).collect();
        let y: Vec<ExactScalar> = [3, 6, 0].iter().map(|&n| ExactScalar::from(n)).collect();
        let z: Vec<ExactScalar> = [3, 5, 0].iter().map(|&n| ExactScalar::from(n)).collect();
        assert!(proportional(&x, &y, 0.0));
        assert!(!proportional(&x, &z, 0.0));
    }
}
