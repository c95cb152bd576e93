//! 2×2 polyphase transfer matrices over Laurent polynomials.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::scalar::Scalar;

/// Analysis polyphase-with-advance matrix; row `i` holds the polyphase
/// components of filter `H_i`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PolyMatrix {
    entries: [[LaurentPoly; 2]; 2],
}

/// Scalar lowpass/highpass filter pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterPair {
    pub h0: LaurentPoly,
    pub h1: LaurentPoly,
}

impl PolyMatrix {
    pub fn new(h00: LaurentPoly, h01: LaurentPoly, h10: LaurentPoly, h11: LaurentPoly) -> Self {
        PolyMatrix { entries: [[h00, h01], [h10, h11]] }
    }

    pub fn from_rows(entries: [[LaurentPoly; 2]; 2]) -> Self {
        PolyMatrix { entries }
    }

    pub fn identity() -> Self {
        PolyMatrix::diag(LaurentPoly::one(), LaurentPoly::one())
    }

    pub fn zero() -> Self {
        PolyMatrix::diag(LaurentPoly::zero(), LaurentPoly::zero())
    }

    pub fn diag(a: LaurentPoly, d: LaurentPoly) -> Self {
        PolyMatrix::new(a, LaurentPoly::zero(), LaurentPoly::zero(), d)
    }

    /// Constant matrix from four scalars.
    pub fn constant(a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> Self {
        PolyMatrix::new(a.into(), b.into(), c.into(), d.into())
    }

    /// The Haar filter bank `[[1/2, 1/2], [−1, 1]]`, determinant 1 and unit DC gain.
    pub fn haar() -> Self {
        PolyMatrix::constant(Scalar::ratio(1, 2), Scalar::ratio(1, 2), Scalar::from_int(-1), Scalar::one())
    }

    /// Causal lazy wavelet `diag(1, z⁻¹)`.
    pub fn lazy_causal() -> Self {
        PolyMatrix::diag(LaurentPoly::one(), LaurentPoly::monomial(Scalar::one(), 1))
    }

    /// Named constants accepted in documents: `identity`, `haar`, `lazy-causal`.
    pub fn named(name: &str) -> Option<Self> {
        match name {
            "identity" => Some(PolyMatrix::identity()),
            "haar" => Some(PolyMatrix::haar()),
            "lazy-causal" => Some(PolyMatrix::lazy_causal()),
            _ => None,
        }
    }

    pub fn entry(&self, row: usize, col: usize) -> &LaurentPoly {
        &self.entries[row][col]
    }

    pub fn entries(&self) -> &[[LaurentPoly; 2]; 2] {
        &self.entries
    }

    pub fn row(&self, row: usize) -> &[LaurentPoly; 2] {
        &self.entries[row]
    }

    pub fn map(&self, mut f: impl FnMut(&LaurentPoly) -> LaurentPoly) -> Self {
        let [[a, b], [c, d]] = &self.entries;
        PolyMatrix::new(f(a), f(b), f(c), f(d))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(LaurentPoly::is_zero)
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        self.map(|p| p.scale(k))
    }

    /// Entrywise `H(z⁻¹)`.
    pub fn time_reverse(&self) -> Self {
        self.map(LaurentPoly::time_reverse)
    }

    pub fn det(&self) -> LaurentPoly {
        let [[a, b], [c, d]] = &self.entries;
        &(a * d) - &(b * c)
    }

    pub fn is_unimodular(&self) -> bool {
        self.det() == LaurentPoly::one()
    }

    /// Determinant is a nonzero monomial `a·z^-d`.
    pub fn is_fir_pr(&self) -> bool {
        self.det().is_monomial()
    }

    /// Inverse over Laurent polynomials: adjugate divided by the monomial determinant.
    pub fn inverse(&self) -> Result<Self> {
        let det = self.det();
        if !det.is_monomial() {
            return Err(Error::NotInvertible);
        }
        let (d, _) = det.support_interval()?;
        let inv_a = det.coeff(d).inv()?;
        let [[a, b], [c, dd]] = &self.entries;
        let adj = PolyMatrix::new(dd.clone(), -b, -c, a.clone());
        Ok(adj.map(|p| p.scale(&inv_a).shift(-d)))
    }

    /// Polyphase support interval: the hull of all entry supports.
    pub fn support_interval(&self) -> Result<(i64, i64)> {
        self.entries
            .iter()
            .flatten()
            .filter_map(|p| p.support_interval().ok())
            .reduce(|(a, b), (c, d)| (a.min(c), b.max(d)))
            .ok_or(Error::ZeroMatrix)
    }

    pub fn order(&self) -> Result<i64> {
        let (c, d) = self.support_interval()?;
        Ok(d - c)
    }

    /// Support interval of one row, viewed as a polyphase vector.
    pub fn row_support(&self, row: usize) -> Option<(i64, i64)> {
        self.entries[row]
            .iter()
            .filter_map(|p| p.support_interval().ok())
            .reduce(|(a, b), (c, d)| (a.min(c), b.max(d)))
    }

    /// Whole-sample symmetric intertwining `H(z⁻¹) = Λ(z) H(z) Λ(z⁻¹)` with `Λ(z) = diag(1, z⁻¹)`.
    pub fn is_ws(&self) -> bool {
        let lambda = PolyMatrix::lazy_causal();
        let lambda_rev = lambda.time_reverse();
        self.time_reverse() == &(&lambda * self) * &lambda_rev
    }

    /// Concentric half-sample symmetric relation `H(z⁻¹) = L H(z) J`.
    pub fn is_hs(&self) -> bool {
        let l = PolyMatrix::diag(LaurentPoly::one(), -LaurentPoly::one());
        let j = PolyMatrix::new(LaurentPoly::zero(), LaurentPoly::one(), LaurentPoly::one(), LaurentPoly::zero());
        self.time_reverse() == &(&l * self) * &j
    }

    pub fn is_dyadic(&self) -> bool {
        self.entries.iter().flatten().all(LaurentPoly::is_dyadic)
    }

    pub fn evaluate(&self, z0: &Scalar) -> Result<[[Scalar; 2]; 2]> {
        let [[a, b], [c, d]] = &self.entries;
        Ok([[a.evaluate(z0)?, b.evaluate(z0)?], [c.evaluate(z0)?, d.evaluate(z0)?]])
    }

    /// Row `i` becomes the polyphase vector of `fp.h_i`.
    pub fn from_filters(fp: &FilterPair) -> Self {
        let (a, b) = polyphase_split(&fp.h0);
        let (c, d) = polyphase_split(&fp.h1);
        PolyMatrix::new(a, b, c, d)
    }

    pub fn to_filters(&self) -> FilterPair {
        let [[a, b], [c, d]] = &self.entries;
        FilterPair { h0: polyphase_merge(a, b), h1: polyphase_merge(c, d) }
    }
}

/// Splits `F(z) = F₀(z²) + z·F₁(z²)` into `(F₀, F₁)`: `f₀(k) = f(2k)`, `f₁(k) = f(2k − 1)`.
pub fn polyphase_split(f: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for (n, c) in f.terms() {
        if n.rem_euclid(2) == 0 {
            even.push(LaurentPoly::monomial(c.clone(), n / 2));
        } else {
            odd.push(LaurentPoly::monomial(c.clone(), (n + 1) / 2));
        }
    }
    let sum = |v: Vec<LaurentPoly>| v.iter().fold(LaurentPoly::zero(), |acc, t| &acc + t);
    (sum(even), sum(odd))
}

/// Inverse of [`polyphase_split`].
pub fn polyphase_merge(f0: &LaurentPoly, f1: &LaurentPoly) -> LaurentPoly {
    let up = |p: &LaurentPoly, offset: i64| {
        p.terms()
            .map(|(k, c)| LaurentPoly::monomial(c.clone(), 2 * k + offset))
            .fold(LaurentPoly::zero(), |acc, t| &acc + &t)
    };
    &up(f0, 0) + &up(f1, -1)
}

impl<'a> Mul<&'a PolyMatrix> for &'a PolyMatrix {
    type Output = PolyMatrix;
    fn mul(self, rhs: &PolyMatrix) -> PolyMatrix {
        let a = &self.entries;
        let b = &rhs.entries;
        let cell = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
        PolyMatrix::new(cell(0, 0), cell(0, 1), cell(1, 0), cell(1, 1))
    }
}

impl Mul<PolyMatrix> for PolyMatrix {
    type Output = PolyMatrix;
    fn mul(self, rhs: PolyMatrix) -> PolyMatrix {
        &self * &rhs
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = &self.entries;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyMatrix{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(lo: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_ints(lo, c)
    }

    fn legall() -> PolyMatrix {
        // υ((1+z⁻¹)/4) · λ(−(z+1)/2), expanded by hand.
        PolyMatrix::new(
            LaurentPoly::from_ratios(-1, &[(-1, 8), (3, 4), (-1, 8)]),
            LaurentPoly::from_ratios(0, &[(1, 4), (1, 4)]),
            LaurentPoly::from_ratios(-1, &[(-1, 2), (-1, 2)]),
            LaurentPoly::one(),
        )
    }

    #[test]
    fn filters_to_polyphase() {
        let haar = FilterPair {
            h0: LaurentPoly::from_ratios(-1, &[(1, 2), (1, 2)]),
            h1: p(-1, &[1, -1]),
        };
        assert_eq!(PolyMatrix::from_filters(&haar), PolyMatrix::haar());
        assert_eq!(PolyMatrix::haar().to_filters(), haar);

        let lazy = FilterPair { h0: LaurentPoly::one(), h1: p(1, &[1]) };
        assert_eq!(PolyMatrix::from_filters(&lazy), PolyMatrix::lazy_causal());
        assert_eq!(PolyMatrix::lazy_causal().to_filters(), lazy);

        let unimodular_lazy = FilterPair { h0: LaurentPoly::one(), h1: p(-1, &[1]) };
        assert_eq!(PolyMatrix::from_filters(&unimodular_lazy), PolyMatrix::identity());
        assert_eq!(PolyMatrix::identity().to_filters(), unimodular_lazy);
    }

    #[test]
    fn determinants() {
        assert_eq!(PolyMatrix::haar().det(), LaurentPoly::one());
        assert_eq!(PolyMatrix::lazy_causal().det(), p(1, &[1]));
        assert!(PolyMatrix::haar().is_unimodular());
        assert!(!PolyMatrix::lazy_causal().is_unimodular());
        assert!(PolyMatrix::lazy_causal().is_fir_pr());
        assert!(PolyMatrix::haar().is_fir_pr());
        let bad = PolyMatrix::diag(p(0, &[1, 1]), LaurentPoly::one());
        assert!(!bad.is_fir_pr());
        assert_eq!(bad.inverse().unwrap_err().to_string(), "not invertible over Laurent polynomials");
    }

    #[test]
    fn inverses() {
        assert_eq!(PolyMatrix::identity().inverse().unwrap(), PolyMatrix::identity());
        let h = PolyMatrix::haar();
        let inv = h.inverse().unwrap();
        // adjugate of [[1/2,1/2],[-1,1]] with det 1
        assert_eq!(
            inv,
            PolyMatrix::constant(Scalar::one(), Scalar::ratio(-1, 2), Scalar::one(), Scalar::ratio(1, 2))
        );
        assert_eq!(&inv * &h, PolyMatrix::identity());
        let lazy = PolyMatrix::lazy_causal();
        assert_eq!(&lazy * &lazy.inverse().unwrap(), PolyMatrix::identity());
    }

    #[test]
    fn supports_and_orders() {
        assert_eq!(PolyMatrix::identity().support_interval().unwrap(), (0, 0));
        assert_eq!(PolyMatrix::identity().order().unwrap(), 0);
        assert_eq!(PolyMatrix::lazy_causal().support_interval().unwrap(), (0, 1));
        let e0 = PolyMatrix::new(LaurentPoly::one(), LaurentPoly::zero(), p(0, &[1, 1]), p(1, &[1]));
        assert_eq!(e0.support_interval().unwrap(), (0, 1));
        assert_eq!(e0.order().unwrap(), 1);
        assert_eq!(PolyMatrix::zero().order().unwrap_err(), Error::ZeroMatrix);
        assert_eq!(legall().order().unwrap(), 2);
    }

    #[test]
    fn ws_predicate() {
        assert!(PolyMatrix::identity().is_ws());
        assert!(legall().is_ws());
        assert!(!PolyMatrix::haar().is_ws());
    }

    #[test]
    fn hs_predicate() {
        assert!(PolyMatrix::haar().is_hs());
        assert!(!PolyMatrix::identity().is_hs());
        assert!(!legall().is_hs());
        let haar2 = &PolyMatrix::haar() * &PolyMatrix::haar();
        assert!(!haar2.is_hs());
    }

    #[test]
    fn named_constants() {
        assert_eq!(PolyMatrix::named("haar"), Some(PolyMatrix::haar()));
        assert_eq!(PolyMatrix::named("lazy-causal"), Some(PolyMatrix::lazy_causal()));
        assert!(PolyMatrix::named("daub4").is_none());
    }

    #[test]
    fn matrix_json_shape() {
        let text = serde_json::to_string(&PolyMatrix::lazy_causal()).unwrap();
        assert_eq!(
            text,
            r#"[[{"lo":0,"c":["1"]},{"lo":0,"c":[]}],[{"lo":0,"c":[]},{"lo":1,"c":["1"]}]]"#
        );
        let back: PolyMatrix = serde_json::from_str(&text).unwrap();
        assert_eq!(back, PolyMatrix::lazy_causal());
    }
}
