//! Constructive lifting factorization.
//!
//! [`peel_step`] removes one lifting matrix from the left of a unimodular
//! polyphase matrix by solving a linear system over ℚ(√2) for a filter in a
//! given group. [`factor_in_structure`] iterates it with alternating update
//! characteristics; [`factor_generic`] is the unconstrained Euclidean route.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, Symmetry};
use crate::lifting::{gamma_step, Cascade, GainScale, LiftingStep, Update};
use crate::polyphase::PolyMatrix;
use crate::scalar::Scalar;
use crate::structures::{
    cascade_in_structure, is_order_increasing, BaseSetSpec, FilterGroupSpec, GainGroup, GroupLiftingStructure,
};

/// One order-reducing peel: `input = step · remainder`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeelReport {
    pub step: LiftingStep,
    pub remainder: PolyMatrix,
    pub order_before: i64,
    pub order_after: i64,
}

/// Expands `diag(1/k, k)` into four lifting steps, listed in the order applied:
/// `υ(k(k−1))`, `λ(1/k)`, `υ(1−k)`, `λ(−1)`. Returns no steps for `k = 1`.
pub fn factor_gain(k: &Scalar) -> Result<Vec<LiftingStep>> {
    let inv = k.inv().map_err(|_| Error::ZeroGain)?;
    if k.is_one() {
        return Ok(Vec::new());
    }
    let one = Scalar::one();
    let c = LaurentPoly::constant;
    Ok(vec![
        LiftingStep::upper(c(k * &(k - &one))),
        LiftingStep::lower(c(inv)),
        LiftingStep::upper(c(&one - k)),
        LiftingStep::lower(c(-one)),
    ])
}

/// Solves `A x = b` by Gauss-Jordan elimination; free variables are set to zero.
fn solve(mut a: Vec<Vec<Scalar>>, mut b: Vec<Scalar>, n: usize) -> Option<Vec<Scalar>> {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..rows).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(r, p);
        b.swap(r, p);
        let inv = a[r][col].inv().expect("pivot is nonzero");
        for v in a[r].iter_mut() {
            *v *= &inv;
        }
        b[r] *= &inv;
        for i in 0..rows {
            if i != r && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in 0..n {
                    let t = &f * &a[r][j];
                    a[i][j] -= &t;
                }
                let t = &f * &b[r];
                b[i] -= &t;
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows {
            break;
        }
    }
    if b[r..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    let mut x = vec![Scalar::zero(); n];
    for (i, &col) in pivots.iter().enumerate() {
        x[col] = b[i].clone();
    }
    Some(x)
}

/// Finds `S` with coefficients on `[p, q]`, obeying `sym`, such that every
/// coefficient of `upd_j − S·fixed_j` outside `[t0, t1]` vanishes.
fn solve_window(
    upd: &[LaurentPoly; 2],
    fixed: &[LaurentPoly; 2],
    sym: Symmetry,
    (p, q): (i64, i64),
    (t0, t1): (i64, i64),
    (lo, hi): (i64, i64),
) -> Option<LaurentPoly> {
    let n = (q - p + 1) as usize;
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for j in 0..2 {
        for t in (lo..=hi).filter(|t| *t < t0 || *t > t1) {
            let row: Vec<Scalar> = (p..=q).map(|k| fixed[j].coeff(t - k)).collect();
            let target = upd[j].coeff(t);
            if row.iter().all(Scalar::is_zero) {
                if !target.is_zero() {
                    return None;
                }
                continue;
            }
            rows.push(row);
            rhs.push(target);
        }
    }
    for k in p..=q {
        if let Some((partner, negate)) = sym.partner(k) {
            let mut row = vec![Scalar::zero(); n];
            row[(k - p) as usize] += &Scalar::one();
            if (p..=q).contains(&partner) {
                let sign = if negate { Scalar::one() } else { -Scalar::one() };
                row[(partner - p) as usize] += &sign;
            }
            rows.push(row);
            rhs.push(Scalar::zero());
        }
    }
    if rows.is_empty() {
        return Some(LaurentPoly::zero());
    }
    solve(rows, rhs, n).map(|x| LaurentPoly::new(p, x))
}

/// Removes one lifting matrix of characteristic `m` from the left of `e`.
///
/// Candidates are ranked by the polyphase order of the remainder, then by
/// support width of the filter, then by lowest exponent.
pub fn peel_step(e: &PolyMatrix, m: Update, g: &FilterGroupSpec) -> Result<PeelReport> {
    if !e.is_unimodular() {
        return Err(Error::Precondition("peel requires a unimodular matrix".into()));
    }
    let order_before = e.order()?;
    if order_before < 1 {
        return Err(Error::Precondition("peel requires polyphase order at least 1".into()));
    }
    let failed = || Error::PeelFailed { update: m.bit(), group: g.to_string() };
    let (fixed_row, upd_row) = match m {
        Update::Lowpass => (1, 0),
        Update::Highpass => (0, 1),
    };
    let fixed = e.row(fixed_row);
    let upd = e.row(upd_row);
    let (c, d) = e.support_interval()?;
    let (f_lo, f_hi) = e.row_support(fixed_row).ok_or_else(failed)?;

    for len in (f_hi - f_lo)..order_before {
        let mut best: Option<LaurentPoly> = None;
        for t0 in (f_hi - len)..=f_lo {
            let t1 = t0 + len;
            let (lo, hi) = (c.min(t0), d.max(t1));
            let (wp, wq) = (lo - f_lo, hi - f_hi);
            if wq < wp {
                continue;
            }
            if solve_window(upd, fixed, g.symmetry, (wp, wq), (t0, t1), (lo, hi)).is_none() {
                continue;
            }
            'width: for w in 1..=(wq - wp + 1) {
                if best.as_ref().is_some_and(|b| (b.coeffs().len() as i64) < w) {
                    break;
                }
                for p in wp..=(wq - w + 1) {
                    let Some(s) = solve_window(upd, fixed, g.symmetry, (p, p + w - 1), (t0, t1), (lo, hi)) else {
                        continue;
                    };
                    if s.is_zero() || !g.contains(&s) {
                        continue;
                    }
                    let better = match &best {
                        None => true,
                        Some(b) => (s.coeffs().len(), s.lo()) < (b.coeffs().len(), b.lo()),
                    };
                    if better {
                        best = Some(s);
                    }
                    break 'width;
                }
            }
        }
        if let Some(s) = best {
            let step = LiftingStep::new(m, s);
            let remainder = &step.inverse().matrix() * e;
            let order_after = remainder.order()?;
            debug_assert!(order_after < order_before);
            return Ok(PeelReport { step, remainder, order_before, order_after });
        }
    }
    Err(failed())
}

/// If `r` is a terminal remainder for `bases`, returns the gain `K` and the base.
fn split_base(r: &PolyMatrix, bases: &BaseSetSpec) -> Option<(Scalar, PolyMatrix)> {
    match bases {
        BaseSetSpec::IdentityOnly => {
            let [[a, b], [c, d]] = r.entries();
            if !b.is_zero() || !c.is_zero() {
                return None;
            }
            let k = d.as_constant()?;
            (a.as_constant()? * &k).is_one().then(|| (k, PolyMatrix::identity()))
        }
        BaseSetSpec::HaarOnly => {
            let r00 = r.entry(0, 0).as_constant()?;
            let k = (&r00 * &Scalar::from_int(2)).inv().ok()?;
            (*r == &crate::lifting::gain_matrix(&k).ok()? * &PolyMatrix::haar()).then(|| (k, PolyMatrix::haar()))
        }
        BaseSetSpec::ConcentricEqualLengthHS | BaseSetSpec::ConcentricEqualLengthHSDyadicLiftable => {
            crate::structures::base_in_set(r, bases).then(|| (Scalar::one(), r.clone()))
        }
    }
}

/// Factors `h` inside the group lifting structure `s` by peeling lifting
/// steps from the left with alternating characteristics until a base in
/// `s.bases` (times a gain matrix) remains.
pub fn factor_in_structure(h: &PolyMatrix, s: &GroupLiftingStructure) -> Result<Cascade> {
    factor_in_structure_traced(h, s, &mut Vec::new())
}

/// [`factor_in_structure`], appending every successful peel to `trace`.
pub fn factor_in_structure_traced(h: &PolyMatrix, s: &GroupLiftingStructure, trace: &mut Vec<PeelReport>) -> Result<Cascade> {
    if !h.is_unimodular() {
        return Err(Error::Precondition("matrix is not unimodular".into()));
    }
    let not_factorable = |why: String| Error::NotFactorable(format!("{} ({why})", s.label()));
    // A matrix violating the structure's symmetry relation is outside its factorizable set.
    let ws_filters = |g: &FilterGroupSpec| matches!(g.symmetry, Symmetry::HsPlus | Symmetry::HsMinus);
    if ws_filters(&s.upper) && ws_filters(&s.lower) && !h.is_ws() {
        return Err(not_factorable("matrix fails the WS intertwining relation".into()));
    }
    if s.upper.symmetry == Symmetry::Wa && s.lower.symmetry == Symmetry::Wa && !h.is_hs() {
        return Err(not_factorable("matrix fails the HS relation".into()));
    }

    let max_peels = h.order()? + 2;
    let mut r = h.clone();
    let mut peeled: Vec<LiftingStep> = Vec::new();
    let (k, base) = loop {
        if let Some(done) = split_base(&r, &s.bases) {
            break done;
        }
        if peeled.len() as i64 >= max_peels {
            return Err(not_factorable(format!("no base reached after {max_peels} peels")));
        }
        let order = r.order()?;
        if order == 0 {
            return Err(not_factorable(format!("order-0 remainder {r} is not a base")));
        }
        let schedule = match peeled.last() {
            None => vec![Update::Highpass, Update::Lowpass],
            Some(prev) => vec![prev.m.opposite()],
        };
        let mut last_err = None;
        let mut report = None;
        for m in schedule {
            match peel_step(&r, m, s.group_for(m)) {
                Ok(rep) => {
                    report = Some(rep);
                    break;
                }
                Err(e) => last_err = Some(e),
            }
        }
        match report {
            Some(rep) => {
                r = rep.remainder.clone();
                peeled.push(rep.step.clone());
                trace.push(rep);
            }
            None => return Err(not_factorable(last_err.map(|e| e.to_string()).unwrap_or_default())),
        }
    };
    if s.gain == GainGroup::Trivial && !k.is_one() {
        return Err(not_factorable(format!("gain {k} is outside the trivial gain group")));
    }
    let k_inv = k.inv()?;
    let steps = peeled.iter().rev().map(|st| gamma_step(&k_inv, st)).collect::<Result<Vec<_>>>()?;
    let cascade = Cascade { gain: GainScale::new(k)?, steps, base };

    if cascade.product() != *h {
        return Err(not_factorable("product mismatch".into()));
    }
    if !cascade_in_structure(&cascade, s) {
        return Err(not_factorable("filters fall outside the lifting groups".into()));
    }
    if !cascade.is_irreducible() || !is_order_increasing(&cascade)?.holds() {
        return Err(not_factorable("result is not irreducible and order-increasing".into()));
    }
    Ok(cascade)
}

/// Quotient of Laurent division of `a` by `c` in powers of `z⁻¹`, leaving a
/// remainder supported on `[lo(a), lo(a) + width(c) − 1]`.
fn laurent_div(a: &LaurentPoly, c: &LaurentPoly) -> Result<LaurentPoly> {
    let (c_lo, c_hi) = c.support_interval()?;
    let lead_inv = c.coeff(c_hi).inv()?;
    let mut rem = a.clone();
    let mut q = LaurentPoly::zero();
    while let Ok((r_lo, r_hi)) = rem.support_interval() {
        if r_hi - r_lo < c_hi - c_lo {
            break;
        }
        let t = LaurentPoly::monomial(&rem.coeff(r_hi) * &lead_inv, r_hi - c_hi);
        rem = &rem - &(&t * c);
        q = &q + &t;
    }
    Ok(q)
}

/// Unconstrained factorization by Euclidean reduction of the first column.
/// The output is irreducible with identity base but not unique.
pub fn factor_generic(h: &PolyMatrix) -> Result<Cascade> {
    if !h.is_unimodular() {
        return Err(Error::Precondition("matrix is not unimodular".into()));
    }
    // h = L_1 L_2 ⋯ L_r · m
    let mut left: Vec<LiftingStep> = Vec::new();
    let mut m = h.clone();
    let mut peel = |m: &mut PolyMatrix, step: LiftingStep| {
        *m = &step.inverse().matrix() * &*m;
        left.push(step);
    };
    while !m.entry(1, 0).is_zero() {
        let (a, c) = (m.entry(0, 0).clone(), m.entry(1, 0).clone());
        if a.is_zero() {
            // c is a monomial unit: move it up, then clear it.
            peel(&mut m, LiftingStep::upper(LaurentPoly::one()));
            peel(&mut m, LiftingStep::lower(-LaurentPoly::one()));
            continue;
        }
        let width = |p: &LaurentPoly| p.coeffs().len();
        if width(&a) >= width(&c) {
            peel(&mut m, LiftingStep::upper(laurent_div(&a, &c)?));
        } else {
            peel(&mut m, LiftingStep::lower(laurent_div(&c, &a)?));
        }
    }
    // m = [[a, b], [0, 1/a]] = diag(a, 1/a) · υ(b/a), with a = α z^-k.
    let a = m.entry(0, 0).clone();
    let (k_exp, _) = a.support_interval()?;
    let alpha = a.coeff(k_exp);
    let a_inv = LaurentPoly::monomial(alpha.inv()?, -k_exp);
    let mut steps = vec![LiftingStep::upper(m.entry(0, 1) * &a_inv)];
    if k_exp != 0 {
        // diag(u, 1/u) = υ(u)λ(−1/u)υ(u) · υ(−1)λ(1)υ(−1)
        let u = LaurentPoly::monomial(Scalar::one(), k_exp);
        let u_inv = LaurentPoly::monomial(-Scalar::one(), -k_exp);
        let one = LaurentPoly::one();
        steps.extend([
            LiftingStep::upper(-&one),
            LiftingStep::lower(one.clone()),
            LiftingStep::upper(-&one),
            LiftingStep::upper(u.clone()),
            LiftingStep::lower(u_inv),
            LiftingStep::upper(u),
        ]);
    }
    let gain = alpha.inv()?;
    let gain_inv = alpha;
    for step in left.iter().rev() {
        steps.push(gamma_step(&gain_inv, step)?);
    }
    let cascade = Cascade { gain: GainScale::new(gain)?, steps, base: PolyMatrix::identity() }.reduce_to_irreducible();
    debug_assert_eq!(cascade.product(), *h);
    Ok(cascade)
}

/// Outcome of the search for a dyadic lifting factorization of a base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DyadicLiftability {
    /// A gain-free cascade with dyadic filters and identity base.
    Confirmed(Cascade),
    /// The search found no dyadic factorization; this is not a proof that none exists.
    NotConfirmed,
}

/// Runs [`factor_generic`], expands any leftover gain with [`factor_gain`],
/// and reports whether every resulting filter is dyadic.
pub fn dyadic_liftability(b: &PolyMatrix) -> Result<DyadicLiftability> {
    if !b.is_dyadic() || !b.is_unimodular() {
        return Ok(DyadicLiftability::NotConfirmed);
    }
    let generic = factor_generic(b)?;
    let mut steps = generic.steps.clone();
    steps.extend(factor_gain(generic.gain.value())?);
    let cascade = Cascade::from_steps(steps).reduce_to_irreducible();
    debug_assert_eq!(cascade.product(), *b);
    if cascade.steps.iter().all(|s| s.s.is_dyadic()) {
        Ok(DyadicLiftability::Confirmed(cascade))
    } else {
        Ok(DyadicLiftability::NotConfirmed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lifting::gain_matrix;
    use crate::structures::Ring;

    fn ratios(lo: i64, c: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_ratios(lo, c)
    }

    fn legall_steps() -> Vec<LiftingStep> {
        vec![
            LiftingStep::lower(ratios(-1, &[(-1, 2), (-1, 2)])),
            LiftingStep::upper(ratios(0, &[(1, 4), (1, 4)])),
        ]
    }

    fn product(steps: &[LiftingStep]) -> PolyMatrix {
        Cascade::from_steps(steps.to_vec()).product()
    }

    #[test]
    fn gain_expansion() {
        let steps = factor_gain(&Scalar::from_int(2)).unwrap();
        let filters: Vec<String> = steps.iter().map(|s| s.s.to_string()).collect();
        assert_eq!(filters, ["2", "1/2", "-1", "-1"]);
        assert_eq!(steps.iter().map(|s| s.m.bit()).collect::<Vec<_>>(), [0, 1, 0, 1]);
        assert_eq!(product(&steps), gain_matrix(&Scalar::from_int(2)).unwrap());
        assert!(factor_gain(&Scalar::one()).unwrap().is_empty());
        let neg = product(&factor_gain(&Scalar::from_int(-1)).unwrap());
        assert_eq!(neg, PolyMatrix::identity().scale(&Scalar::from_int(-1)));
        let r2 = Scalar::sqrt2();
        assert_eq!(product(&factor_gain(&r2).unwrap()), gain_matrix(&r2).unwrap());
        assert_eq!(factor_gain(&Scalar::zero()), Err(Error::ZeroGain));
    }

    #[test]
    fn solver_handles_free_and_inconsistent_systems() {
        let s = |n| Scalar::from_int(n);
        let x = solve(vec![vec![s(1), s(1)], vec![s(2), s(2)]], vec![s(3), s(6)], 2).unwrap();
        assert_eq!(x, vec![s(3), s(0)]);
        assert!(solve(vec![vec![s(1), s(1)], vec![s(1), s(1)]], vec![s(1), s(2)], 2).is_none());
    }

    #[test]
    fn peel_legall() {
        let e = product(&legall_steps());
        let g = FilterGroupSpec::new(Symmetry::HsPlus, Ring::Field);
        let rep = peel_step(&e, Update::Lowpass, &g).unwrap();
        assert_eq!(rep.step, legall_steps()[1]);
        assert_eq!(rep.remainder, legall_steps()[0].matrix());
        assert!(rep.order_after < rep.order_before);
        assert!(peel_step(&PolyMatrix::identity(), Update::Lowpass, &g).is_err());
    }

    #[test]
    fn peel_round_trip_on_constant_base() {
        // Support avoids z⁰, so no constant shift of S has smaller support.
        let s = ratios(-2, &[(1, 3), (-2, 1)]);
        let b = PolyMatrix::constant(Scalar::from_int(2), Scalar::one(), Scalar::one(), Scalar::one());
        let e = &LiftingStep::upper(s.clone()).matrix() * &b;
        let g = FilterGroupSpec::new(Symmetry::Unconstrained, Ring::Field);
        let rep = peel_step(&e, Update::Lowpass, &g).unwrap();
        assert_eq!(rep.step, LiftingStep::upper(s));
        assert_eq!(rep.remainder, b);
    }

    #[test]
    fn legall_in_reversible_ws() {
        let c = factor_in_structure(&product(&legall_steps()), &GroupLiftingStructure::ws_reversible()).unwrap();
        assert_eq!(c.steps, legall_steps());
        assert!(c.gain.value().is_one());
        assert_eq!(c.base, PolyMatrix::identity());
    }

    #[test]
    fn haar_in_hs_is_a_bare_base() {
        let c = factor_in_structure(&PolyMatrix::haar(), &GroupLiftingStructure::hs()).unwrap();
        assert!(c.steps.is_empty());
        assert_eq!(c.base, PolyMatrix::haar());
    }

    #[test]
    fn one_step_ws_bank() {
        let step = LiftingStep::upper(LaurentPoly::from_ints(0, &[1, 1]));
        let h = &gain_matrix(&Scalar::from_int(3)).unwrap() * &step.matrix();
        let c = factor_in_structure(&h, &GroupLiftingStructure::ws()).unwrap();
        assert_eq!(c.steps, vec![step]);
        assert_eq!(c.gain.value(), &Scalar::from_int(3));
    }

    #[test]
    fn precondition_failures() {
        let h = product(&[LiftingStep::upper(LaurentPoly::from_ints(0, &[1, 2]))]);
        assert!(matches!(factor_in_structure(&h, &GroupLiftingStructure::ws()), Err(Error::NotFactorable(_))));
        let scaled = PolyMatrix::identity().scale(&Scalar::from_int(2));
        assert!(matches!(factor_in_structure(&scaled, &GroupLiftingStructure::ws()), Err(Error::Precondition(_))));
        let scaled = PolyMatrix::identity().scale(&Scalar::from_int(2));
        assert!(matches!(factor_generic(&scaled), Err(Error::Precondition(_))));
    }

    #[test]
    fn generic_reproduces_products() {
        assert!(factor_generic(&PolyMatrix::identity()).unwrap().is_empty());
        let haar = factor_generic(&PolyMatrix::haar()).unwrap();
        assert_eq!(haar.product(), PolyMatrix::haar());
        assert!(haar.is_irreducible());
        let shifted = PolyMatrix::diag(LaurentPoly::monomial(Scalar::from_int(3), 2), LaurentPoly::monomial(Scalar::ratio(1, 3), -2));
        let c = factor_generic(&shifted).unwrap();
        assert_eq!(c.product(), shifted);
        let legall = product(&legall_steps());
        assert_eq!(factor_generic(&legall).unwrap().product(), legall);
    }

    #[test]
    fn dyadic_liftability_of_haar() {
        match dyadic_liftability(&PolyMatrix::haar()).unwrap() {
            DyadicLiftability::Confirmed(c) => assert_eq!(c.product(), PolyMatrix::haar()),
            DyadicLiftability::NotConfirmed => panic!("haar has a dyadic lifting"),
        }
        let thirds = &gain_matrix(&Scalar::from_int(3)).unwrap() * &PolyMatrix::identity();
        assert_eq!(dyadic_liftability(&thirds).unwrap(), DyadicLiftability::NotConfirmed);
    }
}
