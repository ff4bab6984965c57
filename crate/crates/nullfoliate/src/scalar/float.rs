//! Complex double-precision backend.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

/// Default absolute/relative tolerance for float comparisons.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct CFloat(pub Complex64);

impl CFloat {
    pub fn new(re: f64, im: f64) -> Self {
        CFloat(Complex64::new(re, im))
    }
}

impl fmt::Display for CFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}{:+e}i", self.0.re, self.0.im)
    }
}

impl Add for CFloat {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        CFloat(self.0 + o.0)
    }
}

impl Sub for CFloat {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        CFloat(self.0 - o.0)
    }
}

impl Mul for CFloat {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        CFloat(self.0 * o.0)
    }
}

impl Neg for CFloat {
    type Output = Self;
    fn neg(self) -> Self {
        CFloat(-self.0)
    }
}
