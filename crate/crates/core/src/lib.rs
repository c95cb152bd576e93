//! Exact algebra of lifting factorizations for two-channel FIR perfect
//! reconstruction filter banks.
//!
//! Coefficients live in ℚ(√2) ([`Scalar`]); filters are [`LaurentPoly`]
//! values and filter banks are 2×2 [`PolyMatrix`] polyphase matrices.
//! [`Cascade`] holds a partially factored lifting cascade, [`structures`]
//! provides group lifting structures with the uniqueness-modulo-rescaling
//! test, and [`factorize`] constructs factorizations.

pub mod document;
pub mod error;
pub mod factorize;
pub mod fixtures;
pub mod laurent;
pub mod lifting;
pub mod polyphase;
pub mod sampling;
pub mod scalar;
pub mod structures;

pub use error::{Error, Result};
pub use factorize::{factor_gain, factor_generic, factor_in_structure, factor_in_structure_traced, peel_step, PeelReport};
pub use laurent::{LaurentPoly, Symmetry};
pub use lifting::{gain_matrix, gamma, gamma_step, identity_lift_8, nonuniqueness_witness, Cascade, GainScale, LiftingStep, Update};
pub use polyphase::{FilterPair, PolyMatrix};
pub use scalar::Scalar;
pub use structures::{
    equivalent_mod_rescaling, is_d_invariant, is_order_increasing, EquivalenceVerdict, FilterGroupSpec,
    GroupLiftingStructure, OrderIncrease, Ring,
};
