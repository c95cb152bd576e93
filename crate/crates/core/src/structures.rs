//! Group lifting structures `(𝒟, 𝒰, ℒ, 𝔅)` as membership predicates, the
//! polyphase order-increasing check, and equivalence modulo rescaling.
//!
//! The groups involved are infinite, so nothing here enumerates them: a
//! structure is a gain group, two additive groups of lifting filters, and a
//! set of base filter banks, each described by a decidable predicate.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, Symmetry};
use crate::lifting::{gain_matrix, gamma_step, Cascade, LiftingStep, Update};
use crate::polyphase::PolyMatrix;
use crate::scalar::Scalar;

/// Coefficient ring of a filter group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ring {
    /// All of ℚ(√2).
    Field,
    /// Dyadic rationals `k·2ⁿ`.
    Dyadic,
}

/// An additive group of lifting filters: a symmetry class intersected with a ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FilterGroupSpec {
    #[serde(with = "symmetry_name")]
    pub symmetry: Symmetry,
    pub ring: Ring,
}

mod symmetry_name {
    use super::Symmetry;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(s: &Symmetry, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(s.name())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Symmetry, D::Error> {
        let name = String::deserialize(de)?;
        Symmetry::from_name(&name).ok_or_else(|| serde::de::Error::custom(format!("unknown symmetry {name:?}")))
    }
}

impl FilterGroupSpec {
    pub const fn new(symmetry: Symmetry, ring: Ring) -> Self {
        FilterGroupSpec { symmetry, ring }
    }

    pub fn contains(&self, s: &LaurentPoly) -> bool {
        s.has_symmetry(self.symmetry) && (self.ring == Ring::Field || s.is_dyadic())
    }
}

impl fmt::Display for FilterGroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = match self.ring {
            Ring::Field => "field",
            Ring::Dyadic => "dyadic",
        };
        write!(f, "{}/{ring}", self.symmetry.name())
    }
}

/// Filter-group membership test.
pub fn filter_in_group(s: &LaurentPoly, g: &FilterGroupSpec) -> bool {
    g.contains(s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BaseSetSpec {
    IdentityOnly,
    HaarOnly,
    /// Unimodular concentric HS filter banks with `order(B₀) = order(B₁)`.
    ConcentricEqualLengthHS,
    /// The dyadic members of `ConcentricEqualLengthHS`; see [`base_in_set`].
    ConcentricEqualLengthHSDyadicLiftable,
}

/// Base-set membership. For the dyadic-liftable set only the necessary
/// conditions are decided here (dyadic entries on top of the concentric
/// equal-length HS test); [`crate::factorize::dyadic_liftability`] searches
/// for an actual dyadic factorization.
pub fn base_in_set(b: &PolyMatrix, set: &BaseSetSpec) -> bool {
    match set {
        BaseSetSpec::IdentityOnly => *b == PolyMatrix::identity(),
        BaseSetSpec::HaarOnly => *b == PolyMatrix::haar(),
        BaseSetSpec::ConcentricEqualLengthHS => is_concentric_equal_length_hs(b),
        BaseSetSpec::ConcentricEqualLengthHSDyadicLiftable => is_concentric_equal_length_hs(b) && b.is_dyadic(),
    }
}

fn is_concentric_equal_length_hs(b: &PolyMatrix) -> bool {
    if !b.is_unimodular() || !b.is_hs() {
        return false;
    }
    let filters = b.to_filters();
    match (filters.h0.order(), filters.h1.order()) {
        (Ok(a), Ok(c)) => a == c,
        _ => false,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GainGroup {
    /// `D_K` for every nonzero `K` in ℚ(√2).
    Full,
    /// Only `D_1 = I`.
    Trivial,
}

impl GainGroup {
    pub fn contains(&self, k: &Scalar) -> bool {
        match self {
            GainGroup::Full => !k.is_zero(),
            GainGroup::Trivial => k.is_one(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupLiftingStructure {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub gain: GainGroup,
    pub upper: FilterGroupSpec,
    pub lower: FilterGroupSpec,
    pub bases: BaseSetSpec,
}

const HS_PLUS_FIELD: FilterGroupSpec = FilterGroupSpec::new(Symmetry::HsPlus, Ring::Field);
const HS_MINUS_FIELD: FilterGroupSpec = FilterGroupSpec::new(Symmetry::HsMinus, Ring::Field);
const HS_PLUS_DYADIC: FilterGroupSpec = FilterGroupSpec::new(Symmetry::HsPlus, Ring::Dyadic);
const HS_MINUS_DYADIC: FilterGroupSpec = FilterGroupSpec::new(Symmetry::HsMinus, Ring::Dyadic);
const WA_FIELD: FilterGroupSpec = FilterGroupSpec::new(Symmetry::Wa, Ring::Field);
const WA_DYADIC: FilterGroupSpec = FilterGroupSpec::new(Symmetry::Wa, Ring::Dyadic);

impl GroupLiftingStructure {
    fn preset(name: &str, gain: GainGroup, upper: FilterGroupSpec, lower: FilterGroupSpec, bases: BaseSetSpec) -> Self {
        GroupLiftingStructure { name: Some(name.to_string()), gain, upper, lower, bases }
    }

    /// Unimodular WS group: HS lifting filters from the identity, any gain.
    pub fn ws() -> Self {
        Self::preset("ws", GainGroup::Full, HS_PLUS_FIELD, HS_MINUS_FIELD, BaseSetSpec::IdentityOnly)
    }

    /// Reversible WS group: dyadic HS lifting filters, no gain scaling.
    pub fn ws_reversible() -> Self {
        Self::preset("ws-reversible", GainGroup::Trivial, HS_PLUS_DYADIC, HS_MINUS_DYADIC, BaseSetSpec::IdentityOnly)
    }

    /// Unimodular HS class: WA lifting filters over concentric equal-length HS bases.
    pub fn hs() -> Self {
        Self::preset("hs", GainGroup::Full, WA_FIELD, WA_FIELD, BaseSetSpec::ConcentricEqualLengthHS)
    }

    pub fn hs_reversible() -> Self {
        Self::preset(
            "hs-reversible",
            GainGroup::Trivial,
            WA_DYADIC,
            WA_DYADIC,
            BaseSetSpec::ConcentricEqualLengthHSDyadicLiftable,
        )
    }

    /// Even-length analysis/synthesis filter family: dyadic WA lifts of the Haar.
    pub fn elasf() -> Self {
        Self::preset("elasf", GainGroup::Trivial, WA_DYADIC, WA_DYADIC, BaseSetSpec::HaarOnly)
    }

    /// All presets in a fixed order.
    pub fn presets() -> Vec<GroupLiftingStructure> {
        vec![Self::ws(), Self::ws_reversible(), Self::hs(), Self::hs_reversible(), Self::elasf()]
    }

    /// Preset by CLI name.
    pub fn by_name(name: &str) -> Option<Self> {
        Self::presets().into_iter().find(|s| s.name.as_deref() == Some(name))
    }

    pub fn label(&self) -> String {
        self.name.clone().unwrap_or_else(|| format!("({:?}, {}, {}, {:?})", self.gain, self.upper, self.lower, self.bases))
    }

    pub fn group_for(&self, m: Update) -> &FilterGroupSpec {
        match m {
            Update::Lowpass => &self.upper,
            Update::Highpass => &self.lower,
        }
    }
}

/// `m = 0` steps are checked against `upper`, `m = 1` against `lower`.
pub fn step_in_structure(step: &LiftingStep, s: &GroupLiftingStructure) -> bool {
    s.group_for(step.m).contains(&step.s)
}

pub fn cascade_in_structure(c: &Cascade, s: &GroupLiftingStructure) -> bool {
    s.gain.contains(c.gain.value())
        && c.steps.iter().all(|st| step_in_structure(st, s))
        && base_in_set(&c.base, &s.bases)
}

/// Decides `𝒟`-invariance analytically: `γ_K` scales filters by `K^{±2}`, so
/// the lifting groups are invariant iff every filter group is closed under
/// those multiples. Symmetry classes over a field always are; the dyadic
/// ring is not closed under `K² = 9` for example.
pub fn is_d_invariant(s: &GroupLiftingStructure) -> bool {
    match s.gain {
        GainGroup::Trivial => true,
        GainGroup::Full => s.upper.ring == Ring::Field && s.lower.ring == Ring::Field,
    }
}

/// Outcome of the per-cascade order-increasing check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum OrderIncrease {
    Increasing,
    /// `order(E⁽ⁿ⁾) ≤ order(E⁽ⁿ⁻¹⁾)` at `index = n`.
    NotIncreasing { index: usize, before: i64, after: i64 },
}

impl OrderIncrease {
    pub fn holds(&self) -> bool {
        matches!(self, OrderIncrease::Increasing)
    }
}

/// Walks the partial products `E⁽ⁿ⁾` and reports the first index whose
/// polyphase order fails to increase.
pub fn is_order_increasing(c: &Cascade) -> Result<OrderIncrease> {
    if !c.is_irreducible() {
        return Err(Error::Reducible("order-increasing"));
    }
    let orders = c.partial_products().iter().map(PolyMatrix::order).collect::<Result<Vec<_>>>()?;
    for (n, w) in orders.windows(2).enumerate() {
        if w[1] <= w[0] {
            return Ok(OrderIncrease::NotIncreasing { index: n, before: w[0], after: w[1] });
        }
    }
    Ok(OrderIncrease::Increasing)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EquivalenceVerdict {
    Identical,
    EquivalentModuloRescaling { alpha: Scalar },
    Inequivalent { reason: String },
}

impl EquivalenceVerdict {
    /// The rescaling factor, `1` for identical cascades.
    pub fn alpha(&self) -> Option<Scalar> {
        match self {
            EquivalenceVerdict::Identical => Some(Scalar::one()),
            EquivalenceVerdict::EquivalentModuloRescaling { alpha } => Some(alpha.clone()),
            EquivalenceVerdict::Inequivalent { .. } => None,
        }
    }

    pub fn is_equivalent(&self) -> bool {
        self.alpha().is_some()
    }
}

impl fmt::Display for EquivalenceVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EquivalenceVerdict::Identical => write!(f, "identical"),
            EquivalenceVerdict::EquivalentModuloRescaling { alpha } => write!(f, "equivalent modulo rescaling (alpha = {alpha})"),
            EquivalenceVerdict::Inequivalent { reason } => write!(f, "inequivalent: {reason}"),
        }
    }
}

/// Compares two irreducible cascades: with `α = K/K'`, they are equivalent
/// modulo rescaling when `N' = N`, `B' = D_α B` and `S'_i = γ_α S_i`.
/// Conditions are checked in that order and the first failure is reported.
pub fn equivalent_mod_rescaling(c1: &Cascade, c2: &Cascade) -> Result<EquivalenceVerdict> {
    if !c1.is_irreducible() || !c2.is_irreducible() {
        return Err(Error::Reducible("equivalence modulo rescaling"));
    }
    if c1.len() != c2.len() {
        return Ok(EquivalenceVerdict::Inequivalent {
            reason: format!("step counts differ (N = {}, N' = {})", c1.len(), c2.len()),
        });
    }
    let alpha = c1.gain.value().checked_div(c2.gain.value())?;
    if c2.base != &gain_matrix(&alpha)? * &c1.base {
        return Ok(EquivalenceVerdict::Inequivalent {
            reason: format!("base B' is not D_alpha B for alpha = K/K' = {alpha}"),
        });
    }
    for (i, (a, b)) in c1.steps.iter().zip(&c2.steps).enumerate() {
        if gamma_step(&alpha, a)? != *b {
            return Ok(EquivalenceVerdict::Inequivalent {
                reason: format!("step {i} differs: S'_{i} != gamma_alpha S_{i} for alpha = {alpha}"),
            });
        }
    }
    if alpha.is_one() {
        Ok(EquivalenceVerdict::Identical)
    } else {
        Ok(EquivalenceVerdict::EquivalentModuloRescaling { alpha })
    }
}

/// Lowpass DC gain normalization `H₀(1) = 1`.
pub fn dc_normalized(m: &PolyMatrix) -> bool {
    m.to_filters().h0.evaluate(&Scalar::one()).map(|v| v.is_one()).unwrap_or(false)
}

/// True if some entry `(i, j)` satisfies `B_ij(z0) = B'_ij(z0) ≠ 0`.
pub fn bases_share_value(b1: &PolyMatrix, b2: &PolyMatrix, z0: &Scalar) -> Result<bool> {
    let v1 = b1.evaluate(z0)?;
    let v2 = b2.evaluate(z0)?;
    Ok(v1.iter().flatten().zip(v2.iter().flatten()).any(|(a, b)| !a.is_zero() && a == b))
}
