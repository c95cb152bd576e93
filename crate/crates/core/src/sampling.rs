//! Seeded random filters, cascades and matrices for tests and sampled checks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::laurent::{LaurentPoly, Symmetry};
use crate::lifting::{Cascade, GainScale, LiftingStep, Update};
use crate::polyphase::PolyMatrix;
use crate::scalar::Scalar;
use crate::structures::{is_order_increasing, BaseSetSpec, FilterGroupSpec, GainGroup, GroupLiftingStructure, Ring};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small ring element; field draws sometimes carry a `√2` part.
pub fn scalar<R: Rng>(rng: &mut R, ring: Ring) -> Scalar {
    let dens: &[i64] = match ring {
        Ring::Dyadic => &[1, 2, 4, 8],
        Ring::Field => &[1, 2, 3, 4, 5, 7],
    };
    let r = Scalar::ratio(rng.gen_range(-6..=6), *dens.choose(rng).unwrap());
    if ring == Ring::Field && rng.gen_bool(0.2) {
        &r + &(&Scalar::ratio(rng.gen_range(-3..=3), *dens.choose(rng).unwrap()) * &Scalar::sqrt2())
    } else {
        r
    }
}

pub fn nonzero_scalar<R: Rng>(rng: &mut R, ring: Ring) -> Scalar {
    loop {
        let s = scalar(rng, ring);
        if !s.is_zero() {
            return s;
        }
    }
}

/// Nonzero filter in `g` with support width at most `max_width` (at least 2 for
/// HS classes and 3 for WA).
pub fn filter<R: Rng>(rng: &mut R, g: &FilterGroupSpec, max_width: usize) -> LaurentPoly {
    let max_width = max_width as i64;
    loop {
        let f = match g.symmetry {
            Symmetry::HsPlus | Symmetry::HsMinus => {
                let h = rng.gen_range(1..=(max_width / 2).max(1));
                // Pairs (n, 1 − n) or (n, −1 − n) for n below the centre.
                let first = if g.symmetry == Symmetry::HsPlus { 1 - h } else { -h };
                let half: Vec<Scalar> = (0..h).map(|_| scalar(rng, g.ring)).collect();
                let mut c = half.clone();
                c.extend(half.into_iter().rev());
                LaurentPoly::new(first, c)
            }
            Symmetry::Wa => {
                let h = rng.gen_range(1..=((max_width - 1) / 2).max(1));
                let half: Vec<Scalar> = (0..h).map(|_| scalar(rng, g.ring)).collect();
                let mut c = half.clone();
                c.push(Scalar::zero());
                c.extend(half.into_iter().rev().map(|v| -v));
                LaurentPoly::new(-h, c)
            }
            Symmetry::Unconstrained => {
                let w = rng.gen_range(1..=max_width.max(1));
                let lo = rng.gen_range(-2..=2);
                LaurentPoly::new(lo, (0..w).map(|_| scalar(rng, g.ring)).collect())
            }
        };
        if !f.is_zero() {
            debug_assert!(g.contains(&f));
            return f;
        }
    }
}

/// Random matrix with unconstrained field entries of width at most 3.
pub fn matrix<R: Rng>(rng: &mut R) -> PolyMatrix {
    let g = FilterGroupSpec::new(Symmetry::Unconstrained, Ring::Field);
    let mut e = || if rng.gen_bool(0.1) { LaurentPoly::zero() } else { filter(rng, &g, 3) };
    PolyMatrix::new(e(), e(), e(), e())
}

/// Irreducible cascade in `s` with `1..=max_steps` alternating steps. The
/// order-increasing property is not enforced.
pub fn irreducible_cascade<R: Rng>(rng: &mut R, s: &GroupLiftingStructure, max_steps: usize, max_width: usize) -> Cascade {
    let base = match s.bases {
        BaseSetSpec::IdentityOnly => PolyMatrix::identity(),
        _ => PolyMatrix::haar(),
    };
    let n = rng.gen_range(1..=max_steps);
    let mut m = if rng.gen_bool(0.5) { Update::Lowpass } else { Update::Highpass };
    let mut steps = Vec::with_capacity(n);
    for _ in 0..n {
        steps.push(LiftingStep::new(m, filter(rng, s.group_for(m), max_width)));
        m = m.opposite();
    }
    let gain = match s.gain {
        GainGroup::Full => nonzero_scalar(rng, Ring::Field),
        GainGroup::Trivial => Scalar::one(),
    };
    Cascade { gain: GainScale::new(gain).expect("nonzero"), steps, base }
}

/// [`irreducible_cascade`] redrawn until it is polyphase order-increasing.
pub fn cascade<R: Rng>(rng: &mut R, s: &GroupLiftingStructure, max_steps: usize, max_width: usize) -> Cascade {
    loop {
        let c = irreducible_cascade(rng, s, max_steps, max_width);
        if is_order_increasing(&c).map(|o| o.holds()).unwrap_or(false) {
            return c;
        }
    }
}
