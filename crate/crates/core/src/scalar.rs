//! Exact arithmetic in the real quadratic field ℚ(√2).
//!
//! Every value is stored as `r + s·√2` with `r`, `s` arbitrary-precision
//! rationals in lowest terms, so structural equality is field equality.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An element `r + s·√2` of ℚ(√2).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    r: BigRational,
    s: BigRational,
}

impl Scalar {
    pub fn new(r: BigRational, s: BigRational) -> Self {
        Scalar { r, s }
    }

    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    /// The element √2.
    pub fn sqrt2() -> Self {
        Scalar::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    /// `num / den` as a rational scalar. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar::new(r, BigRational::zero())
    }

    /// Rational part `r`.
    pub fn rational_part(&self) -> &BigRational {
        &self.r
    }

    /// Coefficient `s` of √2.
    pub fn sqrt2_part(&self) -> &BigRational {
        &self.s
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero() && self.s.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.r.is_one() && self.s.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.s.is_zero()
    }

    /// True for rationals `k·2ⁿ`.
    pub fn is_dyadic(&self) -> bool {
        if !self.s.is_zero() {
            return false;
        }
        let den = self.r.denom();
        // Denominators are positive after normalization.
        (den & (den - BigInt::one())).is_zero()
    }

    /// Galois conjugate `r − s·√2`.
    pub fn conjugate(&self) -> Self {
        Scalar::new(self.r.clone(), -self.s.clone())
    }

    /// Field norm `r² − 2s²`; zero only for the zero element.
    pub fn norm(&self) -> BigRational {
        &self.r * &self.r - BigRational::from_integer(BigInt::from(2)) * &self.s * &self.s
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(Scalar::new(&self.r / &n, -(&self.s / &n)))
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn powi(&self, exp: i32) -> Result<Self> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut acc = Scalar::one();
        for _ in 0..exp.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::from_rational(r)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.r, -self.s)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.r.clone(), -self.s.clone())
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.r + &rhs.r, &self.s + &rhs.s)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.r - &rhs.r, &self.s - &rhs.s)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let two = BigRational::from_integer(BigInt::from(2));
        Scalar::new(
            &self.r * &rhs.r + two * &self.s * &rhs.s,
            &self.r * &rhs.s + &self.s * &rhs.r,
        )
    }
}

/// Panics on division by zero; use [`Scalar::checked_div`] for a `Result`.
impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("scalar division by zero")
    }
}

macro_rules! forward_owned_binop {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    )*};
}

forward_owned_binop!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.r += &rhs.r;
        self.s += &rhs.s;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.r -= &rhs.r;
        self.s -= &rhs.s;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.r.is_zero(), self.s.is_zero()) {
            (_, true) => write!(f, "{}", self.r),
            (true, false) => write!(f, "{}*w2", self.s),
            (false, false) if self.s.is_negative() => write!(f, "{}-{}*w2", self.r, -self.s.clone()),
            (false, false) => write!(f, "{}+{}*w2", self.r, self.s),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

fn parse_rational(text: &str, whole: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("invalid scalar {whole:?}"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let digits_ok = |t: &str, signed: bool| {
        let t = if signed { t.strip_prefix('-').or_else(|| t.strip_prefix('+')).unwrap_or(t) } else { t };
        !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit())
    };
    if !digits_ok(num, true) {
        return Err(bad());
    }
    let num: BigInt = num.trim_start_matches('+').parse().map_err(|_| bad())?;
    let den: BigInt = match den {
        Some(d) if digits_ok(d, false) => d.parse().map_err(|_| bad())?,
        Some(_) => return Err(bad()),
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {whole:?}")));
    }
    Ok(BigRational::new(num, den))
}

/// Grammar: `p`, `p/q`, `p/q+r/s*w2`, `p/q-r/s*w2`, `r/s*w2`, `w2`, `-w2`.
impl FromStr for Scalar {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        if text.is_empty() || text.chars().any(char::is_whitespace) {
            return Err(Error::Parse(format!("invalid scalar {text:?}")));
        }
        let Some(body) = text.strip_suffix("w2") else {
            return Ok(Scalar::from_rational(parse_rational(text, text)?));
        };
        let body = body.strip_suffix('*').unwrap_or(body);
        let bytes = body.as_bytes();
        // A separator is a sign that follows a digit.
        let split = (1..bytes.len())
            .rev()
            .find(|&i| matches!(bytes[i], b'+' | b'-') && bytes[i - 1].is_ascii_digit());
        let (rational, irrational) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("0", body),
        };
        let irrational = irrational.strip_prefix('+').unwrap_or(irrational);
        let s = match irrational {
            "" => BigRational::one(),
            "-" => -BigRational::one(),
            t => parse_rational(t, text)?,
        };
        let r = parse_rational(rational, text)?;
        Ok(Scalar::new(r, s))
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Exact power of two `2^exp` for possibly negative `exp`.
pub fn pow2(exp: i32) -> Scalar {
    let p = BigInt::one() << exp.unsigned_abs();
    if exp >= 0 {
        Scalar::from_rational(BigRational::from_integer(p))
    } else {
        Scalar::from_rational(BigRational::new(BigInt::one(), p))
    }
}
