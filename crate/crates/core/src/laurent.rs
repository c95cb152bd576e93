//! Laurent polynomials `F(z) = Σ f(n) z⁻ⁿ` over ℚ(√2).
//!
//! Coefficients are indexed by the impulse-response time `n`, so `coeffs[i]`
//! multiplies `z^-(lo + i)`. The support interval of a nonzero polynomial is
//! `[lo, lo + coeffs.len() - 1]`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Linear-phase symmetry classes of lifting filters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symmetry {
    /// Half-sample symmetric with `S(z⁻¹) = z·S(z)`, e.g. `1 + z⁻¹`.
    HsPlus,
    /// Half-sample symmetric with `S(z⁻¹) = z⁻¹·S(z)`, e.g. `1 + z`.
    HsMinus,
    /// Whole-sample antisymmetric, `S(z⁻¹) = −S(z)`.
    Wa,
    Unconstrained,
}

impl Symmetry {
    pub fn name(self) -> &'static str {
        match self {
            Symmetry::HsPlus => "HS_plus",
            Symmetry::HsMinus => "HS_minus",
            Symmetry::Wa => "WA",
            Symmetry::Unconstrained => "unconstrained",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "HS_plus" => Some(Symmetry::HsPlus),
            "HS_minus" => Some(Symmetry::HsMinus),
            "WA" => Some(Symmetry::Wa),
            "unconstrained" => Some(Symmetry::Unconstrained),
            _ => None,
        }
    }

    /// Index `n'` such that the symmetry forces `f(n) = ±f(n')`, with the sign.
    pub(crate) fn partner(self, n: i64) -> Option<(i64, bool)> {
        match self {
            Symmetry::HsPlus => Some((1 - n, false)),
            Symmetry::HsMinus => Some((-1 - n, false)),
            Symmetry::Wa => Some((-n, true)),
            Symmetry::Unconstrained => None,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    lo: i64,
    coeffs: Vec<Scalar>,
}

impl LaurentPoly {
    /// Builds `Σ coeffs[i] z^-(lo+i)`, trimming zero coefficients at either end.
    pub fn new(lo: i64, coeffs: Vec<Scalar>) -> Self {
        let Some(first) = coeffs.iter().position(|c| !c.is_zero()) else {
            return LaurentPoly::zero();
        };
        let last = coeffs.iter().rposition(|c| !c.is_zero()).unwrap();
        let coeffs = coeffs[first..=last].to_vec();
        LaurentPoly { lo: lo + first as i64, coeffs }
    }

    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        LaurentPoly::new(0, vec![c])
    }

    /// `c · z^-n`.
    pub fn monomial(c: Scalar, n: i64) -> Self {
        LaurentPoly::new(n, vec![c])
    }

    /// Integer coefficients starting at time index `lo`.
    pub fn from_ints(lo: i64, coeffs: &[i64]) -> Self {
        LaurentPoly::new(lo, coeffs.iter().map(|&c| Scalar::from_int(c)).collect())
    }

    /// Rational coefficients `num/den` starting at time index `lo`.
    pub fn from_ratios(lo: i64, coeffs: &[(i64, i64)]) -> Self {
        LaurentPoly::new(lo, coeffs.iter().map(|&(n, d)| Scalar::ratio(n, d)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest time index holding a coefficient (0 for the zero polynomial).
    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficient `f(n)` of `z⁻ⁿ`.
    pub fn coeff(&self, n: i64) -> Scalar {
        let idx = n - self.lo;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            Scalar::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// Smallest interval `[a, b]` with `f(a) ≠ 0` and `f(b) ≠ 0`.
    pub fn support_interval(&self) -> Result<(i64, i64)> {
        if self.is_zero() {
            return Err(Error::EmptySupport);
        }
        Ok((self.lo, self.lo + self.coeffs.len() as i64 - 1))
    }

    pub fn order(&self) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::OrderOfZero);
        }
        Ok(self.coeffs.len() as i64 - 1)
    }

    /// True when the polynomial is a single nonzero term.
    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// The constant term if this polynomial has no other terms.
    pub fn as_constant(&self) -> Option<Scalar> {
        match (self.is_zero(), self.is_monomial() && self.lo == 0) {
            (true, _) => Some(Scalar::zero()),
            (false, true) => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    /// `f(z⁻¹)`.
    pub fn time_reverse(&self) -> Self {
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        let hi = self.lo + self.coeffs.len() as i64 - 1;
        LaurentPoly { lo: -hi, coeffs: self.coeffs.iter().rev().cloned().collect() }
    }

    /// Multiplication by `z^-k`; translates the support by `k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { lo: self.lo + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        LaurentPoly::new(self.lo, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Exact test of the symmetry identity; the zero polynomial has every symmetry.
    pub fn has_symmetry(&self, kind: Symmetry) -> bool {
        let reversed = self.time_reverse();
        match kind {
            Symmetry::HsPlus => reversed == self.shift(-1),
            Symmetry::HsMinus => reversed == self.shift(1),
            Symmetry::Wa => reversed == -self,
            Symmetry::Unconstrained => true,
        }
    }

    /// All coefficients are dyadic rationals.
    pub fn is_dyadic(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_dyadic)
    }

    /// Exact value at a nonzero point `z0`.
    pub fn evaluate(&self, z0: &Scalar) -> Result<Scalar> {
        if z0.is_zero() {
            return Err(Error::EvaluateAtZero);
        }
        if self.is_zero() {
            return Ok(Scalar::zero());
        }
        let w = z0.inv()?;
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &w) + c;
        }
        let lead = w.powi(i32::try_from(self.lo).map_err(|_| Error::Precondition("exponent too large".into()))?)?;
        Ok(&acc * &lead)
    }

    /// Iterator over `(n, f(n))` for nonzero coefficients.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Scalar)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.lo + i as i64, c))
    }

    fn combine(&self, rhs: &LaurentPoly, sign: bool) -> LaurentPoly {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if sign { -rhs } else { rhs.clone() };
        }
        let lo = self.lo.min(rhs.lo);
        let hi = (self.lo + self.coeffs.len() as i64).max(rhs.lo + rhs.coeffs.len() as i64);
        let mut out = vec![Scalar::zero(); (hi - lo) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[(self.lo - lo) as usize + i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            let slot = &mut out[(rhs.lo - lo) as usize + i];
            if sign {
                *slot -= c;
            } else {
                *slot += c;
            }
        }
        LaurentPoly::new(lo, out)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.combine(rhs, false)
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.combine(rhs, true)
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        LaurentPoly::new(self.lo + rhs.lo, out)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { lo: self.lo, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

macro_rules! forward_owned_binop {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
    )*};
}

forward_owned_binop!(Add add, Sub sub, Mul mul);

impl From<Scalar> for LaurentPoly {
    fn from(c: Scalar) -> Self {
        LaurentPoly::constant(c)
    }
}

/// Renders terms in descending powers of `z`, e.g. `-12z + 40 - 12z^-1`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (n, c)) in self.terms().enumerate() {
            let power = -n;
            let text = c.to_string();
            let compound = !c.is_rational() && !c.rational_part().is_zero();
            let (negative, magnitude) = match text.strip_prefix('-') {
                Some(rest) if !compound => (true, rest.to_string()),
                _ => (false, text),
            };
            let magnitude = if compound || (!c.is_rational() && power != 0) { format!("({magnitude})") } else { magnitude };
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let unit = magnitude == "1";
            match power {
                0 => write!(f, "{magnitude}")?,
                1 if unit => write!(f, "z")?,
                1 => write!(f, "{magnitude}z")?,
                p if unit => write!(f, "z^{p}")?,
                p => write!(f, "{magnitude}z^{p}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct PolyWire {
    lo: i64,
    c: Vec<Scalar>,
}

/// JSON form `{"lo": int, "c": [scalar, ...]}` with `c[i]` the coefficient of `z^-(lo+i)`.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PolyWire { lo: self.lo, c: self.coeffs.clone() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = PolyWire::deserialize(deserializer)?;
        Ok(LaurentPoly::new(wire.lo, wire.c))
    }
}
