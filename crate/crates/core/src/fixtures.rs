//! Worked examples: lifting cascades together with the matrices they are
//! displayed as multiplying to. Step lists are in application order.

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::lifting::{Cascade, LiftingStep};
use crate::polyphase::PolyMatrix;
use crate::scalar::Scalar;

pub use crate::lifting::identity_lift_8;

fn c(n: i64, d: i64) -> LaurentPoly {
    LaurentPoly::constant(Scalar::ratio(n, d))
}

fn r(lo: i64, coeffs: &[(i64, i64)]) -> LaurentPoly {
    LaurentPoly::from_ratios(lo, coeffs)
}

/// `υ(1/2) · λ(−1)`.
pub fn haar() -> Cascade {
    Cascade::from_steps(vec![LiftingStep::lower(c(-1, 1)), LiftingStep::upper(c(1, 2))])
}

/// `D_2 · λ(−1/2) · υ(1)`.
pub fn haar_alt() -> Cascade {
    Cascade::new(Scalar::from_int(2), vec![LiftingStep::upper(c(1, 1)), LiftingStep::lower(c(-1, 2))], PolyMatrix::identity())
        .expect("nonzero gain")
}

/// Six-step dyadic lifting of the identity with linear-phase filters.
pub fn identity_lift_6() -> Cascade {
    Cascade::from_steps(vec![
        // 5z⁻²(1 + z⁻¹)
        LiftingStep::lower(r(2, &[(5, 1), (5, 1)])),
        // −z²(1 − z⁻¹)
        LiftingStep::upper(r(-2, &[(-1, 1), (1, 1)])),
        LiftingStep::lower(r(0, &[(-1, 1), (-1, 1)])),
        LiftingStep::upper(r(0, &[(5, 4), (-5, 4)])),
        LiftingStep::lower(r(0, &[(-4, 1), (-4, 1)])),
        // (−z²/4)(1 − z⁻¹)
        LiftingStep::upper(r(-2, &[(-1, 4), (1, 4)])),
    ])
}

/// The two irreducible three-step factorizations of one fourth-order matrix.
#[derive(Debug, Clone)]
pub struct Example1 {
    pub b: Scalar,
    pub c: Scalar,
    /// `S₂ S₁ S₀` with `S₀, S₂` lower triangular.
    pub first: Cascade,
    /// `S'₂ S'₁ S'₀` with `S'₀, S'₂` upper triangular.
    pub second: Cascade,
    pub matrix: PolyMatrix,
}

/// Requires `b, c ≠ 0` and `b² ≠ c²`.
pub fn example1(b: &Scalar, c: &Scalar) -> Result<Example1> {
    let (b2, c2) = (b * b, c * c);
    if b.is_zero() || c.is_zero() || b2 == c2 {
        return Err(Error::Precondition("example 1 needs b, c nonzero and b^2 != c^2".into()));
    }
    let one = Scalar::one();
    let plus = LaurentPoly::new(0, vec![one.clone(), b.clone()]);
    let minus = LaurentPoly::new(0, vec![one.clone(), -b]);
    let z2 = LaurentPoly::monomial(one.clone(), -2);
    let zm2 = LaurentPoly::monomial(one, 2);
    let b2_inv = b2.inv()?;
    let diff = &b2 - &c2;

    let first = Cascade::from_steps(vec![
        LiftingStep::lower(plus.clone()),
        LiftingStep::upper((&z2 * &minus).scale(&b2_inv)),
        LiftingStep::lower((&zm2 * &plus).scale(&-&c2)),
    ]);
    let second = Cascade::from_steps(vec![
        LiftingStep::upper(minus.scale(&c2.checked_div(&-&diff)?)),
        LiftingStep::lower(plus.scale(&diff.checked_div(&b2)?)),
        LiftingStep::upper((&z2 * &minus).scale(&diff.inv()?)),
    ]);

    // Entries as displayed, written out independently of the steps.
    let d_over_b2 = diff.checked_div(&b2)?;
    let h00 = z2.scale(&b2_inv);
    let h01 = (&z2 * &minus).scale(&b2_inv);
    let h10 = plus.scale(&d_over_b2);
    let tail = (&b2 * &c2).checked_div(&(&c2 - &b2))?;
    let h11 = (&LaurentPoly::one() - &zm2.scale(&tail)).scale(&d_over_b2);
    let matrix = PolyMatrix::new(h00, h01, h10, h11);
    Ok(Example1 { b: b.clone(), c: c.clone(), first, second, matrix })
}

/// The HS-filter CDF 7/5 factorization in synthesis form, with base
/// `diag(2√2, 1/(2√2))`.
pub fn cdf75() -> Cascade {
    let two_r2 = &Scalar::from_int(2) * &Scalar::sqrt2();
    let base = PolyMatrix::diag(LaurentPoly::constant(two_r2.clone()), LaurentPoly::constant(two_r2.inv().expect("nonzero")));
    Cascade::new(
        Scalar::one(),
        vec![
            // 3(z + 1)/16
            LiftingStep::lower(r(-1, &[(3, 16), (3, 16)])),
            LiftingStep::upper(r(0, &[(-1, 1), (-1, 1)])),
            LiftingStep::lower(r(-1, &[(-1, 4), (-1, 4)])),
        ],
        base,
    )
    .expect("nonzero gain")
}

/// `2^{-9/2} [[−12z + 40 − 12z⁻¹, −8 − 8z⁻¹], [3z² + 5z + 5 + 3z⁻¹, 2z + 12 + 2z⁻¹]]`.
pub fn cdf75_matrix() -> PolyMatrix {
    let scale = Scalar::sqrt2().checked_div(&Scalar::from_int(32)).expect("nonzero");
    PolyMatrix::new(
        LaurentPoly::from_ints(-1, &[-12, 40, -12]),
        LaurentPoly::from_ints(0, &[-8, -8]),
        LaurentPoly::from_ints(-2, &[3, 5, 5, 3]),
        LaurentPoly::from_ints(-1, &[2, 12, 2]),
    )
    .scale(&scale)
}

/// `υ((1 + z⁻¹)/4) · λ(−(z + 1)/2)`.
pub fn legall() -> Cascade {
    Cascade::from_steps(vec![
        LiftingStep::lower(r(-1, &[(-1, 2), (-1, 2)])),
        LiftingStep::upper(r(0, &[(1, 4), (1, 4)])),
    ])
}

/// LeGall 5/3 analysis polyphase matrix, expanded by hand.
pub fn legall_matrix() -> PolyMatrix {
    PolyMatrix::new(
        r(-1, &[(-1, 8), (3, 4), (-1, 8)]),
        r(0, &[(1, 4), (1, 4)]),
        r(-1, &[(-1, 2), (-1, 2)]),
        LaurentPoly::one(),
    )
}

/// HS lifting of the causal lazy bank that fails to raise the polyphase order.
pub fn example7() -> Cascade {
    Cascade::new(Scalar::one(), vec![LiftingStep::lower(LaurentPoly::from_ints(0, &[1, 1]))], PolyMatrix::lazy_causal())
        .expect("nonzero gain")
}

/// `E⁽⁰⁾ = [[1, 0], [1 + z⁻¹, z⁻¹]]`.
pub fn example7_e0() -> PolyMatrix {
    PolyMatrix::new(
        LaurentPoly::one(),
        LaurentPoly::zero(),
        LaurentPoly::from_ints(0, &[1, 1]),
        LaurentPoly::from_ints(1, &[1]),
    )
}

/// One-step WS bank `D_3 · υ(1 + z⁻¹)`, lowpass `z + 1 + z⁻¹` normalized by `K = 3`.
pub fn ws_one_step() -> Cascade {
    Cascade::new(Scalar::from_int(3), vec![LiftingStep::upper(LaurentPoly::from_ints(0, &[1, 1]))], PolyMatrix::identity())
        .expect("nonzero gain")
}

/// Names accepted by [`by_name`].
pub const NAMES: [&str; 9] =
    ["haar", "haar-alt", "identity-lift-8", "identity-lift-6", "example1", "cdf75", "legall", "example7", "ws-one-step"];

/// Named fixtures as `(label, cascade)` pairs; `example1` yields both of its
/// cascades for `b = 2, c = 3`.
pub fn by_name(name: &str) -> Option<Vec<(String, Cascade)>> {
    let one = |c: Cascade| Some(vec![(name.to_string(), c)]);
    match name {
        "haar" => one(haar()),
        "haar-alt" => one(haar_alt()),
        "identity-lift-8" => one(identity_lift_8()),
        "identity-lift-6" => one(identity_lift_6()),
        "example1" => {
            let ex = example1(&Scalar::from_int(2), &Scalar::from_int(3)).ok()?;
            Some(vec![("example1-A".into(), ex.first), ("example1-B".into(), ex.second)])
        }
        "cdf75" => one(cdf75()),
        "legall" => one(legall()),
        "example7" => one(example7()),
        "ws-one-step" => one(ws_one_step()),
        _ => None,
    }
}
