//! Lifting steps, gain scaling, and partially factored lifting cascades
//! `H(z) = diag(1/K, K) · S_{N−1}(z) ⋯ S_0(z) · B(z)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::polyphase::PolyMatrix;
use crate::scalar::Scalar;

/// Which polyphase channel a lifting step updates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Update {
    /// `m = 0`: upper triangular `[[1, S], [0, 1]]`.
    Lowpass,
    /// `m = 1`: lower triangular `[[1, 0], [S, 1]]`.
    Highpass,
}

impl Update {
    pub fn bit(self) -> u8 {
        match self {
            Update::Lowpass => 0,
            Update::Highpass => 1,
        }
    }

    pub fn from_bit(m: u8) -> Option<Self> {
        match m {
            0 => Some(Update::Lowpass),
            1 => Some(Update::Highpass),
            _ => None,
        }
    }

    pub fn opposite(self) -> Self {
        match self {
            Update::Lowpass => Update::Highpass,
            Update::Highpass => Update::Lowpass,
        }
    }
}

impl Serialize for Update {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u8(self.bit())
    }
}

impl<'de> Deserialize<'de> for Update {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m = u8::deserialize(d)?;
        Update::from_bit(m).ok_or_else(|| serde::de::Error::custom(format!("update characteristic must be 0 or 1, got {m}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LiftingStep {
    pub m: Update,
    pub s: LaurentPoly,
}

impl LiftingStep {
    pub fn new(m: Update, s: LaurentPoly) -> Self {
        LiftingStep { m, s }
    }

    pub fn upper(s: LaurentPoly) -> Self {
        LiftingStep::new(Update::Lowpass, s)
    }

    pub fn lower(s: LaurentPoly) -> Self {
        LiftingStep::new(Update::Highpass, s)
    }

    pub fn is_identity(&self) -> bool {
        self.s.is_zero()
    }

    /// `υ(S)` for `m = 0`, `λ(S)` for `m = 1`.
    pub fn matrix(&self) -> PolyMatrix {
        let (one, zero) = (LaurentPoly::one(), LaurentPoly::zero());
        match self.m {
            Update::Lowpass => PolyMatrix::new(one.clone(), self.s.clone(), zero, one),
            Update::Highpass => PolyMatrix::new(one.clone(), zero, self.s.clone(), one),
        }
    }

    pub fn inverse(&self) -> Self {
        LiftingStep::new(self.m, -&self.s)
    }
}

impl fmt::Display for LiftingStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.m {
            Update::Lowpass => "υ",
            Update::Highpass => "λ",
        };
        write!(f, "{name}({})", self.s)
    }
}

/// Nonzero gain scaling factor `K` of `D_K = diag(1/K, K)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GainScale(Scalar);

impl GainScale {
    pub fn new(k: Scalar) -> Result<Self> {
        if k.is_zero() {
            return Err(Error::ZeroGain);
        }
        Ok(GainScale(k))
    }

    pub fn one() -> Self {
        GainScale(Scalar::one())
    }

    pub fn value(&self) -> &Scalar {
        &self.0
    }

    pub fn matrix(&self) -> PolyMatrix {
        gain_matrix(&self.0).expect("gain is nonzero")
    }

    /// `D_K · D_J = D_{KJ}`.
    pub fn compose(&self, other: &GainScale) -> GainScale {
        GainScale(&self.0 * &other.0)
    }

    pub fn inverse(&self) -> GainScale {
        GainScale(self.0.inv().expect("gain is nonzero"))
    }
}

/// `D_K = diag(1/K, K)`.
pub fn gain_matrix(k: &Scalar) -> Result<PolyMatrix> {
    let inv = k.inv().map_err(|_| Error::ZeroGain)?;
    Ok(PolyMatrix::diag(LaurentPoly::constant(inv), LaurentPoly::constant(k.clone())))
}

/// Inner automorphism `γ_K(A) = D_K A D_K⁻¹ = [[a, K⁻²b], [K²c, d]]`.
pub fn gamma(k: &Scalar, m: &PolyMatrix) -> Result<PolyMatrix> {
    let k2 = k * k;
    let k2_inv = k2.inv().map_err(|_| Error::ZeroGain)?;
    let [[a, b], [c, d]] = m.entries();
    Ok(PolyMatrix::new(a.clone(), b.scale(&k2_inv), c.scale(&k2), d.clone()))
}

/// `γ_K` acting on a single lifting step; the characteristic is unchanged.
pub fn gamma_step(k: &Scalar, step: &LiftingStep) -> Result<LiftingStep> {
    let k2 = k * k;
    let factor = match step.m {
        Update::Lowpass => k2.inv().map_err(|_| Error::ZeroGain)?,
        Update::Highpass => {
            if k2.is_zero() {
                return Err(Error::ZeroGain);
            }
            k2
        }
    };
    Ok(LiftingStep::new(step.m, step.s.scale(&factor)))
}

/// A partially factored lifting cascade. `steps[0]` is applied first, i.e. it
/// sits immediately to the left of `base` in the matrix product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cascade {
    pub gain: GainScale,
    pub steps: Vec<LiftingStep>,
    pub base: PolyMatrix,
}

impl Cascade {
    pub fn new(gain: Scalar, steps: Vec<LiftingStep>, base: PolyMatrix) -> Result<Self> {
        Ok(Cascade { gain: GainScale::new(gain)?, steps, base })
    }

    /// Gain 1, identity base.
    pub fn from_steps(steps: Vec<LiftingStep>) -> Self {
        Cascade { gain: GainScale::one(), steps, base: PolyMatrix::identity() }
    }

    pub fn identity() -> Self {
        Cascade::from_steps(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// `E⁽⁻¹⁾ = B, E⁽ⁿ⁾ = S_n E⁽ⁿ⁻¹⁾`; returns all `N + 1` partial products.
    pub fn partial_products(&self) -> Vec<PolyMatrix> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        out.push(self.base.clone());
        for step in &self.steps {
            let next = &step.matrix() * out.last().unwrap();
            out.push(next);
        }
        out
    }

    /// `D_K · S_{N−1} ⋯ S_0 · B`.
    pub fn product(&self) -> PolyMatrix {
        let top = self.partial_products().pop().unwrap();
        &self.gain.matrix() * &top
    }

    /// No identity steps and strictly alternating update characteristics.
    pub fn is_irreducible(&self) -> bool {
        self.steps.iter().all(|s| !s.is_identity()) && self.steps.windows(2).all(|w| w[0].m != w[1].m)
    }

    /// Merges adjacent steps of equal characteristic (`υ(S)υ(T) = υ(S+T)`) and
    /// drops identity steps, re-examining neighbours across every deletion.
    /// Gain and base are left untouched.
    pub fn reduce_to_irreducible(&self) -> Cascade {
        let mut stack: Vec<LiftingStep> = Vec::with_capacity(self.steps.len());
        for step in &self.steps {
            if step.is_identity() {
                continue;
            }
            match stack.last_mut() {
                Some(top) if top.m == step.m => {
                    top.s = &top.s + &step.s;
                    if top.s.is_zero() {
                        stack.pop();
                    }
                }
                _ => stack.push(step.clone()),
            }
        }
        Cascade { gain: self.gain.clone(), steps: stack, base: self.base.clone() }
    }

    /// Group inverse for cascades lifted from the identity:
    /// `(D_K S_{N−1} ⋯ S_0)⁻¹ = D_{1/K} γ_K(S_0⁻¹) ⋯ γ_K(S_{N−1}⁻¹)`.
    pub fn invert(&self) -> Result<Cascade> {
        if self.base != PolyMatrix::identity() {
            return Err(Error::NonIdentityBase);
        }
        let k = self.gain.value();
        let steps = self
            .steps
            .iter()
            .rev()
            .map(|s| gamma_step(k, &s.inverse()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Cascade { gain: self.gain.inverse(), steps, base: PolyMatrix::identity() })
    }

    /// The rescaled cascade `(K/α, γ_α S_i, D_α B)`, which has the same product.
    pub fn rescale(&self, alpha: &Scalar) -> Result<Cascade> {
        let inv = alpha.inv().map_err(|_| Error::ZeroGain)?;
        let steps = self.steps.iter().map(|s| gamma_step(alpha, s)).collect::<Result<Vec<_>>>()?;
        Ok(Cascade {
            gain: GainScale::new(self.gain.value() * &inv)?,
            steps,
            base: &gain_matrix(alpha)? * &self.base,
        })
    }
}

impl fmt::Display for Cascade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D_{{{}}}", self.gain.value())?;
        for step in self.steps.iter().rev() {
            write!(f, " · {step}")?;
        }
        write!(f, " · {}", self.base)
    }
}

/// The eight-step lifting of the identity obtained by factoring `diag(1/2, 2)`
/// and cancelling it against the two Haar factorizations.
pub fn identity_lift_8() -> Cascade {
    let c = |n, d| LaurentPoly::constant(Scalar::ratio(n, d));
    // Listed in the order applied (rightmost matrix first).
    Cascade::from_steps(vec![
        LiftingStep::upper(c(-1, 2)),
        LiftingStep::lower(c(1, 1)),
        LiftingStep::upper(c(1, 1)),
        LiftingStep::lower(c(-1, 2)),
        LiftingStep::upper(c(2, 1)),
        LiftingStep::lower(c(1, 2)),
        LiftingStep::upper(c(-1, 1)),
        LiftingStep::lower(c(-1, 1)),
    ])
}

/// A second irreducible cascade with the same product, gain and base, built by
/// splicing a lifting of the identity in front of the existing steps.
pub fn nonuniqueness_witness(h: &Cascade) -> Result<Cascade> {
    if !h.is_irreducible() {
        return Err(Error::Reducible("nonuniqueness witness"));
    }
    let plain = identity_lift_8();
    let conjugated = Cascade::from_steps(
        plain.steps.iter().map(|s| gamma_step(&Scalar::from_int(2), s)).collect::<Result<Vec<_>>>()?,
    );
    for splice in [plain, conjugated] {
        let mut steps = splice.steps;
        steps.extend(h.steps.iter().cloned());
        let candidate = Cascade { gain: h.gain.clone(), steps, base: h.base.clone() }.reduce_to_irreducible();
        if candidate.steps != h.steps {
            debug_assert_eq!(candidate.product(), h.product());
            return Ok(candidate);
        }
    }
    Err(Error::WitnessCollapsed)
}
