//! The number field ℚ(i, √2) with exact arbitrary-precision arithmetic.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Gaussian rational `re + i·im`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRational { re, im }
    }

    pub fn zero() -> Self {
        GaussRational { re: BigRational::zero(), im: BigRational::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn add(&self, o: &Self) -> Self {
        GaussRational { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    fn sub(&self, o: &Self) -> Self {
        GaussRational { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        GaussRational {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn neg(&self) -> Self {
        GaussRational { re: -&self.re, im: -&self.im }
    }

    fn conj(&self) -> Self {
        GaussRational { re: self.re.clone(), im: -&self.im }
    }

    fn scale(&self, r: &BigRational) -> Self {
        GaussRational { re: &self.re * r, im: &self.im * r }
    }

    fn norm_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm_sq();
        Ok(GaussRational { re: &self.re / &n, im: -&self.im / &n })
    }

    /// A square root inside ℚ(i), if one exists.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let r = rational_sqrt(&self.norm_sq())?;
        let two = BigRational::from_integer(2.into());
        let x = rational_sqrt(&((&r + &self.re) / &two))?;
        let mut y = rational_sqrt(&((&r - &self.re) / &two))?;
        if self.im.is_negative() {
            y = -y;
        }
        let cand = GaussRational { re: x, im: y };
        (cand.mul(&cand) == *self).then_some(cand)
    }
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

/// Element `a + b·√2` of ℚ(i, √2) with `a, b ∈ ℚ(i)`.
///
/// Rationals are always stored reduced, so structural equality is field equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ExactScalar {
    a: GaussRational,
    b: GaussRational,
}

impl ExactScalar {
    pub fn new(a_re: BigRational, a_im: BigRational, b_re: BigRational, b_im: BigRational) -> Self {
        ExactScalar { a: GaussRational::new(a_re, a_im), b: GaussRational::new(b_re, b_im) }
    }

    pub fn from_parts(a: GaussRational, b: GaussRational) -> Self {
        ExactScalar { a, b }
    }

    /// `(ar/ad) + i(ai/ad)` plus `√2·((br/bd) + i(bi/bd))` from small integers.
    pub fn from_ints(a_re: (i64, i64), a_im: (i64, i64), b_re: (i64, i64), b_im: (i64, i64)) -> Self {
        let q = |(n, d): (i64, i64)| BigRational::new(n.into(), d.into());
        Self::new(q(a_re), q(a_im), q(b_re), q(b_im))
    }

    pub fn rational(n: i64, d: i64) -> Self {
        Self::from_ints((n, d), (0, 1), (0, 1), (0, 1))
    }

    pub fn gaussian(re: i64, im: i64) -> Self {
        Self::from_ints((re, 1), (im, 1), (0, 1), (0, 1))
    }

    pub fn zero() -> Self {
        ExactScalar { a: GaussRational::zero(), b: GaussRational::zero() }
    }

    pub fn one() -> Self {
        Self::rational(1, 1)
    }

    pub fn imag_unit() -> Self {
        Self::gaussian(0, 1)
    }

    /// The embedding of √2.
    pub fn sqrt2() -> Self {
        Self::from_ints((0, 1), (0, 1), (1, 1), (0, 1))
    }

    pub fn a_re(&self) -> &BigRational {
        &self.a.re
    }
    pub fn a_im(&self) -> &BigRational {
        &self.a.im
    }
    pub fn b_re(&self) -> &BigRational {
        &self.b.re
    }
    pub fn b_im(&self) -> &BigRational {
        &self.b.im
    }
    pub fn rational_part(&self) -> &GaussRational {
        &self.a
    }
    pub fn sqrt2_part(&self) -> &GaussRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn add_ref(&self, o: &Self) -> Self {
        ExactScalar { a: self.a.add(&o.a), b: self.b.add(&o.b) }
    }

    pub fn sub_ref(&self, o: &Self) -> Self {
        ExactScalar { a: self.a.sub(&o.a), b: self.b.sub(&o.b) }
    }

    pub fn mul_ref(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let two = BigRational::from_integer(2.into());
        let a = self.a.mul(&o.a).add(&self.b.mul(&o.b).scale(&two));
        let b = self.a.mul(&o.b).add(&self.b.mul(&o.a));
        ExactScalar { a, b }
    }

    pub fn neg_ref(&self) -> Self {
        ExactScalar { a: self.a.neg(), b: self.b.neg() }
    }

    /// Complex conjugation (fixes √2).
    pub fn conj(&self) -> Self {
        ExactScalar { a: self.a.conj(), b: self.b.conj() }
    }

    /// The Galois automorphism √2 ↦ −√2.
    pub fn sqrt2_conj(&self) -> Self {
        ExactScalar { a: self.a.clone(), b: self.b.neg() }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let two = BigRational::from_integer(2.into());
        let n = self.a.mul(&self.a).sub(&self.b.mul(&self.b).scale(&two));
        let ninv = n.inv()?;
        Ok(ExactScalar { a: self.a.mul(&ninv), b: self.b.neg().mul(&ninv) })
    }

    pub fn div_ref(&self, o: &Self) -> Result<Self> {
        Ok(self.mul_ref(&o.inv()?))
    }

    /// Square root inside ℚ(i, √2), or an `IrrationalOutsideField` error.
    pub fn sqrt(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let outside = || Error::IrrationalOutsideField(format!("sqrt({self})"));
        let two = BigRational::from_integer(2.into());
        let half = BigRational::new(1.into(), 2.into());
        let mut cands = Vec::new();
        if self.b.is_zero() {
            if let Some(c) = self.a.sqrt() {
                cands.push(ExactScalar { a: c, b: GaussRational::zero() });
            }
            if let Some(d) = self.a.scale(&half).sqrt() {
                cands.push(ExactScalar { a: GaussRational::zero(), b: d });
            }
        } else {
            // (c + d√2)² = a + b√2  ⇒  c⁴ − a c² + b²/2 = 0, d = b / 2c.
            let disc = self.a.mul(&self.a).sub(&self.b.mul(&self.b).scale(&two));
            if let Some(s) = disc.sqrt() {
                for c2 in [self.a.add(&s).scale(&half), self.a.sub(&s).scale(&half)] {
                    if let Some(c) = c2.sqrt() {
                        if c.is_zero() {
                            continue;
                        }
                        let d = self.b.mul(&c.scale(&two).inv()?);
                        cands.push(ExactScalar { a: c, b: d });
                    }
                }
            }
        }
        cands.into_iter().find(|c| &c.mul_ref(c) == self).ok_or_else(outside)
    }

    pub fn to_c64(&self) -> Complex64 {
        let f = |q: &BigRational| q.to_f64().unwrap_or(f64::NAN);
        let s = std::f64::consts::SQRT_2;
        Complex64::new(f(&self.a.re) + s * f(&self.b.re), f(&self.a.im) + s * f(&self.b.im))
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero() && self.a.im.is_zero()
    }

    /// Total order used for deterministic tie-breaking: lexicographic on the
    /// numeric value `(re, im)`, then on the four stored rationals.
    pub fn lex_cmp(&self, o: &Self) -> std::cmp::Ordering {
        let (x, y) = (self.to_c64(), o.to_c64());
        x.re.partial_cmp(&y.re)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(x.im.partial_cmp(&y.im).unwrap_or(std::cmp::Ordering::Equal))
            .then_with(|| self.a.re.cmp(&o.a.re))
            .then_with(|| self.a.im.cmp(&o.a.im))
            .then_with(|| self.b.re.cmp(&o.b.re))
            .then_with(|| self.b.im.cmp(&o.b.im))
    }
}

fn fmt_q(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

impl fmt::Display for ExactScalar {
    /// Canonical form `(p/q + r/s·i) + (t/u + v/w·i)·sqrt2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({} + {}·i) + ({} + {}·i)·sqrt2",
            fmt_q(&self.a.re),
            fmt_q(&self.a.im),
            fmt_q(&self.b.re),
            fmt_q(&self.b.im)
        )
    }
}

fn parse_q(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    let (n, d) = s.trim().split_once('/').ok_or_else(bad)?;
    let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
    let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

fn parse_gauss(s: &str) -> Result<GaussRational> {
    let bad = || Error::Parse(format!("bad gaussian rational {s:?}"));
    let inner = s.trim().strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(bad)?;
    let (re, im) = inner.split_once(" + ").ok_or_else(bad)?;
    let im = im.trim().strip_suffix("·i").ok_or_else(bad)?;
    Ok(GaussRational::new(parse_q(re)?, parse_q(im)?))
}

impl FromStr for ExactScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad exact scalar {s:?}"));
        let body = s.trim().strip_suffix("·sqrt2").ok_or_else(bad)?;
        let split = body.find(") + (").ok_or_else(bad)?;
        let a = parse_gauss(&body[..=split])?;
        let b = parse_gauss(&body[split + 4..])?;
        Ok(ExactScalar { a, b })
    }
}

impl Add for ExactScalar {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self.add_ref(&o)
    }
}

impl Sub for ExactScalar {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self.sub_ref(&o)
    }
}

impl Mul for ExactScalar {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.mul_ref(&o)
    }
}

impl Neg for ExactScalar {
    type Output = Self;
    fn neg(self) -> Self {
        self.neg_ref()
    }
}

impl Div for ExactScalar {
    type Output = Result<Self>;
    fn div(self, o: Self) -> Result<Self> {
        self.div_ref(&o)
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        Self::rational(n, 1)
    }
}

impl From<BigRational> for ExactScalar {
    fn from(q: BigRational) -> Self {
        ExactScalar {
            a: GaussRational::new(q, BigRational::zero()),
            b: GaussRational::zero(),
        }
    }
}

impl One for ExactScalar {
    fn one() -> Self {
        ExactScalar::one()
    }
}

impl Zero for ExactScalar {
    fn zero() -> Self {
        ExactScalar::zero()
    }
    fn is_zero(&self) -> bool {
        ExactScalar::is_zero(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> ExactScalar {
        ExactScalar::rational(n, d)
    }

    #[test]
    fn sqrt2_squared_is_two() {
        let s = ExactScalar::sqrt2();
        assert_eq!(s.mul_ref(&s), q(2, 1));
    }

    #[test]
    fn norm_form_product() {
        let x = ExactScalar::from_ints((1, 1), (0, 1), (0, 1), (1, 1));
        let y = ExactScalar::from_ints((1, 1), (0, 1), (0, 1), (-1, 1));
        assert_eq!(x.mul_ref(&y), q(3, 1));
    }

    #[test]
    fn inverse_of_one_plus_sqrt2() {
        let x = q(1, 1).add_ref(&ExactScalar::sqrt2());
        let inv = x.inv().unwrap();
        // (1 + √2)(−1 + √2) = 2 − 1 = 1
        let expected = q(-1, 1).add_ref(&ExactScalar::sqrt2());
        assert_eq!(inv, expected);
        assert_eq!(inv.mul_ref(&x), q(1, 1));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(q(1, 1).div_ref(&ExactScalar::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn reduced_storage_gives_structural_equality() {
        assert_eq!(q(2, 4), q(1, 2));
        assert_eq!(q(3, -6), q(-1, 2));
        assert_eq!(q(3, -6).a_re().denom(), &BigInt::from(2));
    }

    #[test]
    fn display_roundtrip() {
        let x = ExactScalar::from_ints((-3, 4), (5, 1), (0, 1), (-7, 9));
        let s = x.to_string();
        assert_eq!(s, "(-3/4 + 5/1·i) + (0/1 + -7/9·i)·sqrt2");
        assert_eq!(s.parse::<ExactScalar>().unwrap(), x);
    }

    #[test]
    fn square_roots_in_field() {
        // −4 = (2i)²
        assert_eq!(q(-4, 1).sqrt().unwrap().mul_ref(&q(-4, 1).sqrt().unwrap()), q(-4, 1));
        // 2 = (√2)²
        assert_eq!(q(2, 1).sqrt().unwrap(), ExactScalar::sqrt2());
        // 3 + 2√2 = (1 + √2)²
        let x = q(3, 1).add_ref(&q(2, 1).mul_ref(&ExactScalar::sqrt2()));
        let r = x.sqrt().unwrap();
        assert_eq!(r.mul_ref(&r), x);
        // 2i = (1 + i)²
        let r = ExactScalar::gaussian(0, 2).sqrt().unwrap();
        assert_eq!(r.mul_ref(&r), ExactScalar::gaussian(0, 2));
        assert!(matches!(q(3, 1).sqrt(), Err(Error::IrrationalOutsideField(_))));
    }

    #[test]
    fn to_c64_matches_value() {
        let x = ExactScalar::from_ints((1, 2), (1, 1), (1, 1), (0, 1));
        let z = x.to_c64();
        assert!((z.re - (0.5 + std::f64::consts::SQRT_2)).abs() < 1e-15);
        assert!((z.im - 1.0).abs() < 1e-15);
    }
}
