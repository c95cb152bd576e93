//! Independent arithmetic for checking the library: ℚ(√2) as a pair of
//! `BigRational`, polynomials as maps from powers of `z` (not `z⁻¹`), and
//! schoolbook 2×2 products. Nothing here calls library arithmetic.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::str::FromStr;

use liftkit::{Cascade, LaurentPoly, LiftingStep, PolyMatrix, Scalar, Update};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Q2(pub BigRational, pub BigRational);

impl Q2 {
    pub fn rat(text: &str) -> Q2 {
        Q2(BigRational::from_str(text).unwrap(), BigRational::zero())
    }

    pub fn int(n: i64) -> Q2 {
        Q2(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero() && self.1.is_zero()
    }

    pub fn add(&self, o: &Q2) -> Q2 {
        Q2(&self.0 + &o.0, &self.1 + &o.1)
    }

    pub fn mul(&self, o: &Q2) -> Q2 {
        let two = BigRational::from_integer(BigInt::from(2));
        Q2(&self.0 * &o.0 + two * &self.1 * &o.1, &self.0 * &o.1 + &self.1 * &o.0)
    }

    pub fn from_lib(s: &Scalar) -> Q2 {
        Q2(s.rational_part().clone(), s.sqrt2_part().clone())
    }
}

/// `Σ c_p z^p`, zero coefficients never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct P(pub BTreeMap<i64, Q2>);

impl P {
    /// Terms given as `(power of z, rational text)`.
    pub fn of(terms: &[(i64, &str)]) -> P {
        let mut p = P::default();
        for (k, c) in terms {
            p.add_term(*k, Q2::rat(c));
        }
        p
    }

    pub fn one() -> P {
        P::of(&[(0, "1")])
    }

    pub fn add_term(&mut self, k: i64, c: Q2) {
        let v = self.0.get(&k).cloned().unwrap_or(Q2::int(0)).add(&c);
        if v.is_zero() {
            self.0.remove(&k);
        } else {
            self.0.insert(k, v);
        }
    }

    pub fn add(&self, o: &P) -> P {
        let mut out = self.clone();
        for (k, c) in &o.0 {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn mul(&self, o: &P) -> P {
        let mut out = P::default();
        for (i, a) in &self.0 {
            for (j, b) in &o.0 {
                out.add_term(i + j, a.mul(b));
            }
        }
        out
    }

    pub fn scale(&self, c: &Q2) -> P {
        let mut out = P::default();
        for (k, v) in &self.0 {
            out.add_term(*k, v.mul(c));
        }
        out
    }

    pub fn from_lib(p: &LaurentPoly) -> P {
        let mut out = P::default();
        for (n, c) in p.terms() {
            out.add_term(-n, Q2::from_lib(c));
        }
        out
    }
}

pub type M = [[P; 2]; 2];

pub fn mat_mul(a: &M, b: &M) -> M {
    let e = |i: usize, j: usize| a[i][0].mul(&b[0][j]).add(&a[i][1].mul(&b[1][j]));
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

pub fn mat_from_lib(m: &PolyMatrix) -> M {
    let e = |i, j| P::from_lib(m.entry(i, j));
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

pub fn identity() -> M {
    [[P::one(), P::default()], [P::default(), P::one()]]
}

pub fn diag(a: Q2, d: Q2) -> M {
    let c = |v: Q2| {
        let mut p = P::default();
        p.add_term(0, v);
        p
    };
    [[c(a), P::default()], [P::default(), c(d)]]
}

pub fn step_matrix(s: &LiftingStep) -> M {
    let f = P::from_lib(&s.s);
    match s.m {
        Update::Lowpass => [[P::one(), f], [P::default(), P::one()]],
        Update::Highpass => [[P::one(), P::default()], [f, P::one()]],
    }
}

/// `D_K · S_{N−1} ⋯ S_0 · B` multiplied out with the oracle.
pub fn cascade_product(c: &Cascade) -> M {
    let k = Q2::from_lib(c.gain.value());
    let k_inv = Q2::from_lib(&c.gain.value().inv().unwrap());
    let mut acc = mat_from_lib(&c.base);
    for s in &c.steps {
        acc = mat_mul(&step_matrix(s), &acc);
    }
    mat_mul(&diag(k_inv, k), &acc)
}

pub fn scale_mat(m: &M, c: &Q2) -> M {
    [[m[0][0].scale(c), m[0][1].scale(c)], [m[1][0].scale(c), m[1][1].scale(c)]]
}

pub fn is_identity(m: &M) -> bool {
    *m == identity()
}

pub fn half() -> Q2 {
    Q2::rat("1/2")
}

pub fn one_q() -> Q2 {
    Q2(BigRational::one(), BigRational::zero())
}
