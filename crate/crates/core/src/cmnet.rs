//! Forward-difference tables and finite-window complete monotonicity checks.
//!
//! A net `x` is jointly completely monotone when
//! `(-1)^{|beta|} Delta^beta x_alpha >= 0` for every pair of multi-indices.
//! Only finitely many pairs can be inspected, so a `Pass` certificate means
//! "no violation up to the window", while a `Violation` is an exact,
//! checkable proof that the net is not completely monotone.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ratpoly::{lcm_of, serde_rational, Rational, TwoVarPoly};

/// Violations kept verbatim in a certificate; the rest are only counted.
pub const MAX_RECORDED_VIOLATIONS: usize = 64;

/// Grid extent `[0, m] x [0, n]` of a finite check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "[usize; 2]", into = "[usize; 2]")]
pub struct Window {
    pub m: usize,
    pub n: usize,
}

impl Window {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::Precondition(format!(
                "window extents must be at least 1, got ({m}, {n})"
            )));
        }
        Ok(Window { m, n })
    }

    pub fn square(size: usize) -> Result<Self> {
        Self::new(size, size)
    }
}

impl Default for Window {
    fn default() -> Self {
        Window { m: 20, n: 20 }
    }
}

impl TryFrom<[usize; 2]> for Window {
    type Error = Error;

    fn try_from(v: [usize; 2]) -> Result<Self> {
        Window::new(v[0], v[1])
    }
}

impl From<Window> for [usize; 2] {
    fn from(w: Window) -> Self {
        [w.m, w.n]
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.m, self.n)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    /// No violation up to the window. Evidence only.
    Pass,
    /// An exact violating difference was found.
    Violation,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => write!(f, "no violation up to window"),
            Verdict::Violation => write!(f, "violation"),
        }
    }
}

/// `value = Delta^beta x` evaluated at `alpha`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub alpha: Vec<usize>,
    pub beta: Vec<usize>,
    #[serde(with = "serde_rational")]
    pub value: Rational,
}

impl Witness {
    pub fn order(&self) -> usize {
        self.beta.iter().sum()
    }

    /// `(-1)^{|beta|} value`, negative for a genuine violation.
    pub fn signed_value(&self) -> Rational {
        if self.order().is_multiple_of(2) {
            self.value.clone()
        } else {
            -self.value.clone()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferenceCertificate {
    pub verdict: Verdict,
    /// First violation in `(|beta|, beta, alpha)` order.
    pub witness: Option<Witness>,
    pub window: Vec<usize>,
    pub violation_count: usize,
    /// Up to [`MAX_RECORDED_VIOLATIONS`] violations, in witness order.
    pub violations: Vec<Witness>,
}

impl DifferenceCertificate {
    fn from_violations(window: Vec<usize>, mut found: Vec<Witness>) -> Self {
        found.sort_by(|x, y| (x.order(), &x.beta, &x.alpha).cmp(&(y.order(), &y.beta, &y.alpha)));
        let violation_count = found.len();
        found.truncate(MAX_RECORDED_VIOLATIONS);
        DifferenceCertificate {
            verdict: if found.is_empty() {
                Verdict::Pass
            } else {
                Verdict::Violation
            },
            witness: found.first().cloned(),
            window,
            violation_count,
            violations: found,
        }
    }

    pub fn is_pass(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// The recorded violation at `(alpha, beta)`, if any.
    pub fn violation_at(&self, alpha: &[usize], beta: &[usize]) -> Option<&Witness> {
        self.violations
            .iter()
            .find(|w| w.alpha == alpha && w.beta == beta)
    }
}

/// Rectangular table of exact values `x[(m, n)]`, `m` in `0..rows`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    rows: usize,
    cols: usize,
    values: Vec<Rational>,
}

impl Grid {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut values = Vec::with_capacity(rows * cols);
        for m in 0..rows {
            for n in 0..cols {
                values.push(f(m, n));
            }
        }
        Grid { rows, cols, values }
    }

    /// `1 / p(m, n)` over the window (inclusive extents).
    pub fn reciprocal(p: &TwoVarPoly, window: Window) -> Self {
        Self::from_fn(window.m + 1, window.n + 1, |m, n| {
            p.eval(m as u64, n as u64).recip()
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, m: usize, n: usize) -> &Rational {
        &self.values[m * self.cols + n]
    }

    fn check_range(&self, alpha: [usize; 2], beta: [usize; 2]) -> Result<()> {
        if alpha[0] + beta[0] >= self.rows || alpha[1] + beta[1] >= self.cols {
            return Err(Error::Index(format!(
                "alpha {alpha:?} + beta {beta:?} outside a {}x{} grid",
                self.rows, self.cols
            )));
        }
        Ok(())
    }
}

/// `Delta^beta x` at `alpha` through the binomial expansion
/// `sum_{gamma <= beta} (-1)^{|beta - gamma|} C(beta, gamma) x_{alpha + gamma}`.
pub fn mixed_difference_binomial(
    grid: &Grid,
    alpha: [usize; 2],
    beta: [usize; 2],
) -> Result<Rational> {
    grid.check_range(alpha, beta)?;
    let row0 = binomial_row(beta[0]);
    let row1 = binomial_row(beta[1]);
    let mut total = Rational::zero();
    for (i, c0) in row0.iter().enumerate() {
        for (j, c1) in row1.iter().enumerate() {
            let mut term = grid.get(alpha[0] + i, alpha[1] + j) * (c0 * c1);
            if (beta[0] - i + beta[1] - j) % 2 == 1 {
                term = -term;
            }
            total += term;
        }
    }
    Ok(total)
}

/// `Delta^beta x` at `alpha` by applying single-step differences, first
/// along the second index, then along the first.
pub fn mixed_difference_iterated(
    grid: &Grid,
    alpha: [usize; 2],
    beta: [usize; 2],
) -> Result<Rational> {
    grid.check_range(alpha, beta)?;
    let mut block: Vec<Vec<Rational>> = (0..=beta[0])
        .map(|i| {
            (0..=beta[1])
                .map(|j| grid.get(alpha[0] + i, alpha[1] + j).clone())
                .collect()
        })
        .collect();
    for row in &mut block {
        for _ in 0..beta[1] {
            forward_difference_in_place(row);
        }
    }
    let mut column: Vec<Rational> = block.into_iter().map(|row| row[0].clone()).collect();
    for _ in 0..beta[0] {
        forward_difference_in_place(&mut column);
    }
    Ok(column.swap_remove(0))
}

/// `Delta^beta x` at `alpha`. Both evaluation routes are run in debug builds.
pub fn mixed_difference(grid: &Grid, alpha: [usize; 2], beta: [usize; 2]) -> Result<Rational> {
    let value = mixed_difference_binomial(grid, alpha, beta)?;
    debug_assert_eq!(
        Some(&value),
        mixed_difference_iterated(grid, alpha, beta).ok().as_ref(),
        "binomial and iterated differences disagree"
    );
    Ok(value)
}

fn forward_difference_in_place<T>(seq: &mut Vec<T>)
where
    for<'a> &'a T: std::ops::Sub<&'a T, Output = T>,
{
    let next: Vec<T> = seq.windows(2).map(|w| &w[1] - &w[0]).collect();
    *seq = next;
}

fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 0..n {
        let next = &row[k] * BigInt::from(n - k) / BigInt::from(k + 1);
        row.push(next);
    }
    row
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Scope {
    Joint,
    Separate,
}

/// Checks `(-1)^{|beta|} Delta^beta (1/p)(alpha) >= 0` for every
/// `alpha + beta` inside the window.
pub fn jcm_check(p: &TwoVarPoly, window: Window) -> DifferenceCertificate {
    scan_net(p, window, Scope::Joint)
}

/// Same as [`jcm_check`] but only for differences along one index at a time.
pub fn separate_cm_check(p: &TwoVarPoly, window: Window) -> DifferenceCertificate {
    scan_net(p, window, Scope::Separate)
}

// Grid values are brought to a common denominator so the whole table is
// integer arithmetic; differences are rescaled only for reported witnesses.
fn scan_net(p: &TwoVarPoly, window: Window, scope: Scope) -> DifferenceCertificate {
    let grid = Grid::reciprocal(p, window);
    let scale = lcm_of(grid.values.iter().map(|v| v.denom()));
    let mut current: Vec<Vec<BigInt>> = (0..grid.rows)
        .map(|m| {
            (0..grid.cols)
                .map(|n| {
                    let v = grid.get(m, n);
                    v.numer() * (&scale / v.denom())
                })
                .collect()
        })
        .collect();

    let mut found = Vec::new();
    for beta0 in 0..=window.m {
        if beta0 > 0 {
            current = current
                .windows(2)
                .map(|w| w[1].iter().zip(&w[0]).map(|(x, y)| x - y).collect())
                .collect();
        }
        let max_beta1 = if scope == Scope::Separate && beta0 > 0 {
            0
        } else {
            window.n
        };
        let rows: Vec<Witness> = current
            .par_iter()
            .enumerate()
            .flat_map_iter(|(alpha0, row)| {
                let mut seq = row.clone();
                let mut local = Vec::new();
                for beta1 in 0..=max_beta1 {
                    if beta1 > 0 {
                        forward_difference_in_place(&mut seq);
                    }
                    let odd = (beta0 + beta1) % 2 == 1;
                    for (alpha1, v) in seq.iter().enumerate() {
                        let violates = if odd {
                            v.is_positive()
                        } else {
                            v.is_negative()
                        };
                        if violates {
                            local.push(Witness {
                                alpha: vec![alpha0, alpha1],
                                beta: vec![beta0, beta1],
                                value: Rational::new(v.clone(), scale.clone()),
                            });
                        }
                    }
                }
                local
            })
            .collect();
        found.extend(rows);
    }
    DifferenceCertificate::from_violations(vec![window.m, window.n], found)
}

/// Full triangular difference table of a finite sequence.
pub fn cm_check_1d(seq: &[Rational]) -> Result<DifferenceCertificate> {
    if seq.len() < 2 {
        return Err(Error::Precondition(format!(
            "need at least 2 terms, got {}",
            seq.len()
        )));
    }
    let scale = seq.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let mut current: Vec<BigInt> = seq
        .iter()
        .map(|v| v.numer() * (&scale / v.denom()))
        .collect();
    let mut found = Vec::new();
    for k in 0..seq.len() {
        if k > 0 {
            forward_difference_in_place(&mut current);
        }
        for (m, v) in current.iter().enumerate() {
            let violates = if k % 2 == 1 {
                v.is_positive()
            } else {
                v.is_negative()
            };
            if violates {
                found.push(Witness {
                    alpha: vec![m],
                    beta: vec![k],
                    value: Rational::new(v.clone(), scale.clone()),
                });
            }
        }
    }
    Ok(DifferenceCertificate::from_violations(
        vec![seq.len() - 1],
        found,
    ))
}

/// Smallest `(-1)^k Delta^k x_m` over the triangular table of a float
/// sequence, with the `(k, m)` where it occurs. `None` for an empty input.
pub fn cm_margin_f64(seq: &[f64]) -> Option<(f64, usize, usize)> {
    let mut current = seq.to_vec();
    let mut worst: Option<(f64, usize, usize)> = None;
    for k in 0..seq.len() {
        if k > 0 {
            current = current.windows(2).map(|w| w[1] - w[0]).collect();
        }
        let sign = if k % 2 == 1 { -1.0 } else { 1.0 };
        for (m, v) in current.iter().enumerate() {
            let margin = sign * v;
            if worst.is_none_or(|(w, _, _)| margin < w) {
                worst = Some((margin, k, m));
            }
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::{int, ratio, FactoredPoly};

    fn harmonic_grid(size: usize) -> Grid {
        Grid::from_fn(size, size, |m, n| ratio(1, (1 + m + n) as i64))
    }

    #[test]
    fn mixed_difference_examples() {
        let g = harmonic_grid(3);
        assert_eq!(mixed_difference(&g, [0, 0], [1, 1]).unwrap(), ratio(1, 3));
        assert_eq!(mixed_difference(&g, [1, 2], [0, 0]).unwrap(), ratio(1, 4));

        let p = TwoVarPoly::monic_int(&[9, 9, 9], &[1]);
        let g = Grid::reciprocal(&p, Window::new(2, 2).unwrap());
        let d1 = BigInt::from(730 * 731);
        let d2 = BigInt::from(1004 * 1002);
        let expected = Rational::new(BigInt::from(-61252), d1 * d2);
        assert_eq!(mixed_difference(&g, [0, 1], [1, 1]).unwrap(), expected);
    }

    #[test]
    fn out_of_window_is_an_index_error() {
        let g = harmonic_grid(3);
        assert!(matches!(
            mixed_difference(&g, [2, 0], [1, 0]),
            Err(Error::Index(_))
        ));
        assert!(mixed_difference_iterated(&g, [0, 0], [0, 3]).is_err());
    }

    #[test]
    fn linear_polynomial_passes() {
        let p = TwoVarPoly::new(
            FactoredPoly::monic_int(&[1]),
            FactoredPoly::constant(int(1)).unwrap(),
        )
        .unwrap();
        let cert = jcm_check(&p, Window::square(10).unwrap());
        assert!(cert.is_pass());
        assert!(cert.witness.is_none());
        assert!(separate_cm_check(&p, Window::square(10).unwrap()).is_pass());
    }

    #[test]
    fn interlacing_quadratic_passes() {
        let p = TwoVarPoly::monic_int(&[1, 3], &[2]);
        assert!(jcm_check(&p, Window::square(12).unwrap()).is_pass());
    }

    #[test]
    fn cubic_counterexample_certificate() {
        let p = TwoVarPoly::monic_int(&[9, 9, 9], &[1]);
        let cert = jcm_check(&p, Window::new(2, 2).unwrap());
        assert_eq!(cert.verdict, Verdict::Violation);
        assert_eq!(cert.violation_count, 6);
        let w = cert
            .violation_at(&[0, 1], &[1, 1])
            .expect("witness at (0,1),(1,1)");
        assert_eq!(w.value, ratio(-15313, 134209012260));
        assert!(w.signed_value() < Rational::zero());
        let first = cert.witness.as_ref().unwrap();
        assert_eq!(
            (first.alpha.as_slice(), first.beta.as_slice()),
            (&[0, 0][..], &[1, 1][..])
        );

        // each one-variable slice is still completely monotone
        assert!(separate_cm_check(&p, Window::square(10).unwrap()).is_pass());
    }

    #[test]
    fn one_dimensional_examples() {
        let harmonic: Vec<Rational> = (1..=12).map(|m| ratio(1, m)).collect();
        assert!(cm_check_1d(&harmonic).unwrap().is_pass());

        let increasing: Vec<Rational> = (1..=3).map(int).collect();
        let cert = cm_check_1d(&increasing).unwrap();
        let w = cert.witness.unwrap();
        assert_eq!((w.alpha, w.beta, w.value), (vec![0], vec![1], int(1)));

        assert!(cm_check_1d(&[int(1)]).is_err());
    }

    #[test]
    fn certificate_json_shape() {
        let p = TwoVarPoly::monic_int(&[9, 9, 9], &[1]);
        let cert = jcm_check(&p, Window::new(2, 2).unwrap());
        let json = serde_json::to_value(&cert).unwrap();
        assert_eq!(json["verdict"], "violation");
        assert_eq!(json["window"], serde_json::json!([2, 2]));
        assert_eq!(json["witness"]["alpha"], serde_json::json!([0, 0]));
        assert_eq!(json["witness"]["value"], "-1039/8887239000");
        let back: DifferenceCertificate = serde_json::from_value(json).unwrap();
        assert_eq!(back, cert);
    }

    #[test]
    fn float_margins() {
        let seq: Vec<f64> = (0..10).map(|m| 0.5f64.powi(m)).collect();
        let (worst, _, _) = cm_margin_f64(&seq).unwrap();
        assert!(worst > 0.0);
        let (worst, k, m) = cm_margin_f64(&[1.0, 2.0]).unwrap();
        assert_eq!((worst, k, m), (-1.0, 1, 0));
        assert!(cm_margin_f64(&[]).is_none());
    }
}
