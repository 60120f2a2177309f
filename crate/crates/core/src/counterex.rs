//! Exact counterexamples for bi-degree `(3, 1)`.
//!
//! With `t1 = b(m)`, `t2 = b(m+1)` and
//! `D1 = (t1 + a(m)(n+1)) (t1 + a(m) n)`, `D2 = (t2 + a(m+1)(n+1)) (t2 + a(m+1) n)`,
//! the mixed difference of `1/p` is `-a(m+1)/D2 + a(m)/D1`. At `m = 0, n = 1`
//! with monic `a = x + 1` it reduces to `(D2 - 2 D1) / (D1 D2)`, negative iff
//! `2 (t2 + 3)^2 - 4 (t1 + 3/2)^2 < 1`. Substituting the two one-parameter
//! root families gives degree-6 polynomials in `b` whose positive roots are
//! the thresholds past which the net stops being jointly completely monotone.

use std::fmt;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cmnet::{jcm_check, Verdict, Window};
use crate::error::{Error, Result};
use crate::ratpoly::{
    format_rational, int, serde_rational, DensePoly, FactoredPoly, Rational, TwoVarPoly,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `b1 = b, b2 = 2b, b3 = 3b, a1 = 1`
    Family1,
    /// `b1 = b2 = b3 = b, a1 = 1`
    Family2,
}

const FAMILY1: [i64; 7] = [11, 48, 124, 144, 193, 132, -36];
const FAMILY2: [i64; 7] = [11, 24, 33, 20, 15, 6, -1];

impl Family {
    pub fn from_index(i: u8) -> Result<Self> {
        match i {
            1 => Ok(Family::Family1),
            2 => Ok(Family::Family2),
            other => Err(Error::Config(format!(
                "unknown family {other}, expected 1 or 2"
            ))),
        }
    }

    /// Shifts of `b` for parameter `b > 0`.
    pub fn b_roots(self, b: &Rational) -> Vec<Rational> {
        match self {
            Family::Family1 => vec![b.clone(), b * int(2), b * int(3)],
            Family::Family2 => vec![b.clone(), b.clone(), b.clone()],
        }
    }

    /// `p(x, y) = prod (x + b_j) + (x + 1) y`.
    pub fn polynomial(self, b: &Rational) -> Result<TwoVarPoly> {
        if !b.is_positive() {
            return Err(Error::Precondition(
                "family parameter must be positive".into(),
            ));
        }
        TwoVarPoly::new(
            FactoredPoly::new(Rational::one(), self.b_roots(b))?,
            FactoredPoly::new(Rational::one(), vec![Rational::one()])?,
        )
    }

    /// Ascending coefficients of the degree-6 condition polynomial.
    pub fn condition_poly(self) -> DensePoly {
        DensePoly::from_ints(match self {
            Family::Family1 => &FAMILY1,
            Family::Family2 => &FAMILY2,
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Family1 => write!(f, "family1"),
            Family::Family2 => write!(f, "family2"),
        }
    }
}

/// Mixed difference `Delta_1 Delta_2 (1/p)(m, n)` with the denominators of
/// its closed form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MixedDifference {
    #[serde(with = "serde_rational")]
    pub value: Rational,
    #[serde(with = "serde_rational")]
    pub d1: Rational,
    #[serde(with = "serde_rational")]
    pub d2: Rational,
}

impl MixedDifference {
    /// `value * D1 * D2`; equals `D2 - 2 D1` at `m = 0, n = 1` with `a = x + 1`.
    pub fn cleared_numerator(&self) -> Rational {
        &self.value * &self.d1 * &self.d2
    }
}

fn require_31(p: &TwoVarPoly) -> Result<()> {
    if p.degrees() != (3, 1) {
        return Err(Error::Degree(format!(
            "expected deg b = 3, deg a = 1, got {:?}",
            p.degrees()
        )));
    }
    Ok(())
}

fn denominators(p: &TwoVarPoly, m: u64, n: u64) -> (Rational, Rational) {
    let d = |x: u64| {
        let xr = Rational::from_integer(x.into());
        let (t, a) = (p.b.eval(&xr), p.a.eval(&xr));
        let n = Rational::from_integer(n.into());
        (&t + &a * (&n + Rational::one())) * (&t + &a * &n)
    };
    (d(m), d(m + 1))
}

/// Four-term definition: `beta(m+1,n+1) - beta(m,n+1) - beta(m+1,n) + beta(m,n)`.
pub fn delta11_at(p: &TwoVarPoly, m: u64, n: u64) -> Result<MixedDifference> {
    require_31(p)?;
    let beta = |i: u64, j: u64| p.eval(i, j).recip();
    let value = beta(m + 1, n + 1) - beta(m, n + 1) - beta(m + 1, n) + beta(m, n);
    let (d1, d2) = denominators(p, m, n);
    Ok(MixedDifference { value, d1, d2 })
}

/// Closed form `-a(m+1)/D2 + a(m)/D1`.
pub fn delta11_closed_form(p: &TwoVarPoly, m: u64, n: u64) -> Result<MixedDifference> {
    require_31(p)?;
    let (d1, d2) = denominators(p, m, n);
    let a_m = p.a.eval(&Rational::from_integer(m.into()));
    let a_next = p.a.eval(&Rational::from_integer((m + 1).into()));
    let value = -(a_next / &d2) + a_m / &d1;
    Ok(MixedDifference { value, d1, d2 })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperbolaCheck {
    /// `2 (t2 + 3)^2 - 4 (t1 + 3/2)^2 < 1`
    pub holds: bool,
    #[serde(with = "serde_rational")]
    pub hyperbola_value: Rational,
    /// `D2 - 2 D1` with `D1 = (t1+1)(t1+2)`, `D2 = (t2+2)(t2+4)`.
    #[serde(with = "serde_rational")]
    pub d2_minus_2d1: Rational,
}

pub fn hyperbola_condition(t1: &Rational, t2: &Rational) -> Result<HyperbolaCheck> {
    if !t1.is_positive() || !t2.is_positive() {
        return Err(Error::Precondition("t1 and t2 must be positive".into()));
    }
    let three_halves = Rational::new(3.into(), 2.into());
    let hyperbola_value =
        int(2) * num_traits::pow(t2 + int(3), 2) - int(4) * num_traits::pow(t1 + three_halves, 2);
    let d1 = (t1 + int(1)) * (t1 + int(2));
    let d2 = (t2 + int(2)) * (t2 + int(4));
    let d2_minus_2d1 = d2 - int(2) * d1;
    let holds = hyperbola_value < Rational::one();
    // 2 (t2+3)^2 - 4 (t1+3/2)^2 - 1 = 2 (D2 - 2 D1)
    debug_assert_eq!(&hyperbola_value - int(1), int(2) * &d2_minus_2d1);
    Ok(HyperbolaCheck {
        holds,
        hyperbola_value,
        d2_minus_2d1,
    })
}

/// Condition polynomial of the family at `b`; negative iff the mixed
/// difference at `(0, 1)` is negative.
pub fn family_condition_value(family: Family, b: &Rational) -> Result<Rational> {
    if !b.is_positive() {
        return Err(Error::Precondition(
            "family parameter must be positive".into(),
        ));
    }
    Ok(family.condition_poly().eval(b))
}

/// Bracket `[lo, hi]` of width `<= tol` around a sign change.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Threshold {
    #[serde(with = "serde_rational")]
    pub lo: Rational,
    #[serde(with = "serde_rational")]
    pub hi: Rational,
    #[serde(with = "serde_rational")]
    pub midpoint: Rational,
    pub iterations: usize,
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{:.6}, {:.6}]",
            crate::ratpoly::to_f64(&self.lo),
            crate::ratpoly::to_f64(&self.hi)
        )
    }
}

/// Exact bisection on the family's condition polynomial.
pub fn threshold_bisect(
    family: Family,
    lo: &Rational,
    hi: &Rational,
    tol: &Rational,
) -> Result<Threshold> {
    if !tol.is_positive() || lo >= hi {
        return Err(Error::Precondition("need lo < hi and tol > 0".into()));
    }
    let sign = |x: &Rational| family_condition_value(family, x).map(|v| v.signum());
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    let sign_lo = sign(&lo)?;
    let sign_hi = sign(&hi)?;
    if sign_lo.is_zero() || sign_hi.is_zero() || sign_lo == sign_hi {
        return Err(Error::Bracket {
            lo: Box::new(lo),
            hi: Box::new(hi),
        });
    }
    let two = int(2);
    let mut iterations = 0;
    while &hi - &lo > *tol {
        let mid = (&lo + &hi) / &two;
        let s = sign(&mid)?;
        if s.is_zero() {
            return Ok(Threshold {
                lo: mid.clone(),
                hi: mid.clone(),
                midpoint: mid,
                iterations,
            });
        }
        if s == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    let midpoint = (&lo + &hi) / two;
    Ok(Threshold {
        lo,
        hi,
        midpoint,
        iterations,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    #[serde(with = "serde_rational")]
    pub b: Rational,
    #[serde(with = "serde_rational")]
    pub condition_value: Rational,
    /// `-1`, `0` or `1`.
    pub sign: i8,
    pub window_verdict: Option<Verdict>,
}

/// Condition sign for every `b`, and the window verdict of the full net when
/// a window is given. Rows come back in input order.
pub fn family_scan(
    family: Family,
    b_values: &[Rational],
    window: Option<Window>,
) -> Result<Vec<ScanRow>> {
    b_values
        .par_iter()
        .map(|b| {
            let condition_value = family_condition_value(family, b)?;
            let sign = if condition_value.is_negative() {
                -1
            } else if condition_value.is_zero() {
                0
            } else {
                1
            };
            let window_verdict = match window {
                Some(w) => Some(jcm_check(&family.polynomial(b)?, w).verdict),
                None => None,
            };
            Ok(ScanRow {
                b: b.clone(),
                condition_value,
                sign,
                window_verdict,
            })
        })
        .collect()
}

/// `from, from + step, ...` up to and including `to`.
pub fn b_grid(from: &Rational, to: &Rational, step: &Rational) -> Result<Vec<Rational>> {
    if !step.is_positive() {
        return Err(Error::Precondition(format!(
            "step must be positive, got {}",
            format_rational(step)
        )));
    }
    let mut out = Vec::new();
    let mut b = from.clone();
    while &b <= to {
        out.push(b.clone());
        b += step;
    }
    Ok(out)
}
