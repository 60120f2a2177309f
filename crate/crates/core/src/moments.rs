//! Numerical checks of the moment representations behind the sufficiency
//! argument.
//!
//! * the log-moment identity
//!   `((-1)^{k-1}/(k-1)!) int_0^1 (log s)^{k-1} s^{x-1+n} ds = 1/(n+x)^k`;
//! * the weight `w(s,t) = s^{a-1} sum_{j>=1} (A log t)^j (-log s)^{j-1} / ((j-1)! j!)`
//!   and the measure `delta_1 + w(s,t) ds`, whose `m`-th moment is `t^{A/(m+a)}`;
//! * the one-variable sequences `t^{b(m)/a(m)}`.
//!
//! Integrals and series are binary64; targets are computed exactly and
//! converted at the end. The point mass at 1 contributes exactly 1 to every
//! moment and is never integrated.

use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cmnet::cm_margin_f64;
use crate::error::{Error, Result};
use crate::quad::{integrate, QuadratureOptions, QuadratureResult};
use crate::ratpoly::{format_rational, serde_rational, to_f64, FactoredPoly, Rational, TwoVarPoly};

/// Slack allowed on float difference tables.
pub const CM_FLOAT_SLACK: f64 = -1e-12;

const MAX_SERIES_TERMS: usize = 100_000;

/// Residue `A`, pole `a > 0` and `t` in `(0, 1)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightParams {
    #[serde(with = "serde_rational")]
    pub residue: Rational,
    #[serde(with = "serde_rational")]
    pub pole: Rational,
    pub t: f64,
}

impl WeightParams {
    pub fn new(residue: Rational, pole: Rational, t: f64) -> Result<Self> {
        if !pole.is_positive() {
            return Err(Error::Precondition(format!(
                "pole must be positive, got {}",
                format_rational(&pole)
            )));
        }
        if !(t > 0.0 && t < 1.0) {
            return Err(Error::Precondition(format!(
                "t must lie in (0, 1), got {t}"
            )));
        }
        Ok(WeightParams { residue, pole, t })
    }

    /// `t^{A/(m+a)}`, the moment the measure must reproduce.
    pub fn moment_target(&self, m: u64) -> f64 {
        let exponent = to_f64(&(&self.residue / (&self.pole + Rational::from_integer(m.into()))));
        self.t.powf(exponent)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesValue {
    pub value: f64,
    pub tail_bound: f64,
    pub terms: usize,
}

/// `sum_{i>=0} z^i / (i! (i+1)!)`, stopped once the geometric tail bound
/// drops below `tol` relative to the partial sum.
fn bessel_type_series(z: f64, tol: f64) -> SeriesValue {
    let mut term = 1.0;
    let mut sum = 1.0;
    for i in 0..MAX_SERIES_TERMS {
        // ratio of term i+1 to term i; decreasing in i
        let ratio = z.abs() / ((i + 1) as f64 * (i + 2) as f64);
        if ratio < 0.5 {
            let tail = term.abs() * ratio / (1.0 - ratio);
            if tail <= tol * sum.abs() {
                return SeriesValue {
                    value: sum,
                    tail_bound: tail,
                    terms: i + 1,
                };
            }
        }
        term *= z / ((i + 1) as f64 * (i + 2) as f64);
        sum += term;
    }
    SeriesValue {
        value: sum,
        tail_bound: f64::INFINITY,
        terms: MAX_SERIES_TERMS,
    }
}

/// `w(s, t)` with its truncation bound. `tail_bound` is absolute.
pub fn weight_series(wp: &WeightParams, s: f64, tol: f64) -> Result<SeriesValue> {
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::Precondition(format!(
            "s must lie in (0, 1), got {s}"
        )));
    }
    let u = to_f64(&wp.residue) * wp.t.ln();
    if u == 0.0 {
        return Ok(SeriesValue {
            value: 0.0,
            tail_bound: 0.0,
            terms: 0,
        });
    }
    let v = -s.ln();
    let series = bessel_type_series(u * v, tol);
    let factor = s.powf(to_f64(&wp.pole) - 1.0) * u;
    Ok(SeriesValue {
        value: factor * series.value,
        tail_bound: (factor * series.tail_bound).abs(),
        terms: series.terms,
    })
}

pub fn weight_eval(wp: &WeightParams, s: f64, tol: f64) -> Result<f64> {
    weight_series(wp, s, tol).map(|sv| sv.value)
}

/// `1 + int_0^1 s^m w(s, t) ds`, integrated after `s = u^{1/a}` so the
/// `s^{a-1}` endpoint factor becomes the constant `1/a`.
pub fn measure_moment(wp: &WeightParams, m: u64, tol: f64) -> Result<QuadratureResult> {
    let u_coef = to_f64(&wp.residue) * wp.t.ln();
    if u_coef == 0.0 {
        return Ok(QuadratureResult {
            value: 1.0,
            error_bound: 0.0,
            evaluations: 0,
        });
    }
    let a = to_f64(&wp.pole);
    let power = m as f64 / a;
    let integrand = |u: f64| {
        let v = -u.ln() / a;
        let series = bessel_type_series(u_coef * v, 1e-16);
        u.powf(power) * u_coef * series.value / a
    };
    let opts = QuadratureOptions {
        abs_tol: 0.1 * tol,
        rel_tol: 1e-14,
        ..QuadratureOptions::default()
    };
    let r = integrate(integrand, 0.0, 1.0, opts)?;
    Ok(QuadratureResult {
        value: 1.0 + r.value,
        ..r
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub lhs: QuadratureResult,
    pub rhs: f64,
}

impl IdentityCheck {
    pub fn abs_error(&self) -> f64 {
        (self.lhs.value - self.rhs).abs()
    }

    /// `|lhs - rhs| <= error_bound + slack`
    pub fn holds(&self, slack: f64) -> bool {
        self.abs_error() <= self.lhs.error_bound + slack
    }
}

// s = w^q with q c >= 2 turns s^{c-1} ds into q w^{qc-1} dw, which vanishes at 0.
fn power_substitution(c: f64) -> f64 {
    if c >= 2.0 {
        1.0
    } else {
        2.0 / c
    }
}

/// Both sides of the log-moment identity for `k >= 1`, `x > 0`, `n >= 0`.
pub fn log_moment_identity(k: u32, x: &Rational, n: u64) -> Result<IdentityCheck> {
    if k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    if !x.is_positive() {
        return Err(Error::Precondition("x must be positive".into()));
    }
    let shift = x + Rational::from_integer(n.into());
    let rhs = to_f64(&num_traits::pow(shift.clone(), k as usize).recip());

    let c = to_f64(&shift);
    let q = power_substitution(c);
    let factorial: f64 = (1..k).map(f64::from).product();
    // (-1)^{k-1} (log s)^{k-1} = (-log s)^{k-1} = (-q log w)^{k-1}
    let integrand = |w: f64| {
        let neg_log = -q * w.ln();
        neg_log.powi(k as i32 - 1) * q * w.powf(q * c - 1.0) / factorial
    };
    let lhs = integrate(integrand, 0.0, 1.0, QuadratureOptions::default())?;
    Ok(IdentityCheck { lhs, rhs })
}

/// `int_0^1 t^{n + b(m)/a(m) - 1} / a(m) dt` against `1 / p(m, n)`.
pub fn moment_representation_check(
    p: &TwoVarPoly,
    m: u64,
    n: u64,
    tol: f64,
) -> Result<IdentityCheck> {
    let x = Rational::from_integer(m.into());
    let a_m = p.a.eval(&x);
    let c = to_f64(&(p.b.eval(&x) / &a_m + Rational::from_integer(n.into())));
    let a_m = to_f64(&a_m);
    let q = power_substitution(c);
    let integrand = |w: f64| q * w.powf(q * c - 1.0) / a_m;
    let lhs = integrate(
        integrand,
        0.0,
        1.0,
        QuadratureOptions::with_abs_tol(0.1 * tol),
    )?;
    let rhs = to_f64(&p.eval(m, n).recip());
    let check = IdentityCheck { lhs, rhs };
    if check.abs_error() > tol {
        return Err(Error::Accuracy {
            requested: tol,
            achieved: check.abs_error(),
            evaluations: lhs.evaluations,
        });
    }
    Ok(check)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExponentialMomentRow {
    pub t: f64,
    pub worst_margin: f64,
    /// Difference order and index where the worst margin occurs.
    pub at: (usize, usize),
    pub pass: bool,
}

/// Float difference table of `t^{b(m)/a(m)}`, `m < length`, for each `t`.
pub fn exponential_moment_test(
    b: &FactoredPoly,
    a: &FactoredPoly,
    t_grid: &[f64],
    length: usize,
) -> Result<Vec<ExponentialMomentRow>> {
    if a.degree() >= b.degree() {
        return Err(Error::Degree(format!(
            "expected deg a < deg b, got {} and {}",
            a.degree(),
            b.degree()
        )));
    }
    if length < 2 {
        return Err(Error::Precondition("length must be at least 2".into()));
    }
    if let Some(t) = t_grid.iter().find(|t| !(**t > 0.0 && **t < 1.0)) {
        return Err(Error::Precondition(format!(
            "t must lie in (0, 1), got {t}"
        )));
    }
    let exponents: Vec<f64> = (0..length as u64)
        .map(|m| to_f64(&(b.eval_int(m) / a.eval_int(m))))
        .collect();
    Ok(t_grid
        .par_iter()
        .map(|&t| {
            let seq: Vec<f64> = exponents.iter().map(|e| t.powf(*e)).collect();
            let (worst_margin, k, m) = cm_margin_f64(&seq).expect("non-empty sequence");
            ExponentialMomentRow {
                t,
                worst_margin,
                at: (k, m),
                pass: worst_margin >= CM_FLOAT_SLACK,
            }
        })
        .collect())
}
