//! Closed-form sufficient and necessary conditions for joint complete
//! monotonicity of `1 / (b(m) + a(m) n)` in the bi-degree `(k, 1)` setting.
//!
//! None of the necessary conditions is ever used to infer that a net *is*
//! jointly completely monotone; the only positive statements come from the
//! interlacing conditions and the exact `(2, 1)` classifier.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ratpoly::{format_rational, serde_rational, Rational, TwoVarPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tristate {
    Holds,
    Fails,
    NotApplicable,
}

impl Tristate {
    fn from_bool(holds: bool) -> Self {
        if holds {
            Tristate::Holds
        } else {
            Tristate::Fails
        }
    }
}

impl fmt::Display for Tristate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tristate::Holds => "holds",
            Tristate::Fails => "fails",
            Tristate::NotApplicable => "not applicable",
        })
    }
}

/// Which interlacing chain to test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum InterlaceMode {
    /// `deg a = deg b`: `b_1 <= a_1 <= b_2 <= a_2 <= ... <= b_k <= a_k`.
    EqualDegree,
    /// `deg a = deg b - 1`: `b_1 <= a_1 <= b_2 <= ... <= a_l <= b_k`.
    OneLess,
}

/// Whether an interlacing chain holds, and if so with or without ties.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Strict,
    NonStrict,
    NotInterlacing,
}

fn merged_chain<'a>(a: &'a [Rational], b: &'a [Rational]) -> Vec<&'a Rational> {
    let mut chain = Vec::with_capacity(a.len() + b.len());
    for (i, bi) in b.iter().enumerate() {
        chain.push(bi);
        if let Some(ai) = a.get(i) {
            chain.push(ai);
        }
    }
    chain
}

fn sorted(v: &[Rational]) -> Vec<Rational> {
    let mut v = v.to_vec();
    v.sort();
    v
}

fn lengths_fit(a_len: usize, b_len: usize, mode: InterlaceMode) -> bool {
    match mode {
        InterlaceMode::EqualDegree => a_len == b_len && a_len > 0,
        InterlaceMode::OneLess => a_len + 1 == b_len,
    }
}

/// Tests the alternating chain on the ascending root lists.
pub fn interlace_check(
    a_roots: &[Rational],
    b_roots: &[Rational],
    mode: InterlaceMode,
) -> Tristate {
    match interlacing_regime(a_roots, b_roots, mode) {
        None => Tristate::NotApplicable,
        Some(Regime::NotInterlacing) => Tristate::Fails,
        Some(_) => Tristate::Holds,
    }
}

/// Strict / non-strict classification of the chain; `None` when the root
/// counts do not fit `mode`.
pub fn interlacing_regime(
    a_roots: &[Rational],
    b_roots: &[Rational],
    mode: InterlaceMode,
) -> Option<Regime> {
    if !lengths_fit(a_roots.len(), b_roots.len(), mode) {
        return None;
    }
    let (a, b) = (sorted(a_roots), sorted(b_roots));
    let chain = merged_chain(&a, &b);
    let mut strict = true;
    for w in chain.windows(2) {
        if w[0] > w[1] {
            return Some(Regime::NotInterlacing);
        }
        strict &= w[0] < w[1];
    }
    Some(if strict {
        Regime::Strict
    } else {
        Regime::NonStrict
    })
}

/// One inequality `lhs <= rhs`, evaluated exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inequality {
    #[serde(with = "serde_rational")]
    pub lhs: Rational,
    #[serde(with = "serde_rational")]
    pub rhs: Rational,
    pub holds: bool,
    /// Whether the inequality is a valid necessary condition for these degrees.
    pub applicable: bool,
}

impl Inequality {
    fn new(lhs: Rational, rhs: Rational, applicable: bool) -> Self {
        let holds = lhs <= rhs;
        Inequality {
            lhs,
            rhs,
            holds,
            applicable,
        }
    }

    pub fn status(&self) -> Tristate {
        if self.applicable {
            Tristate::from_bool(self.holds)
        } else {
            Tristate::NotApplicable
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NecessaryConditions {
    /// `sum 1/a_j <= sum 1/b_j`, necessary whenever `deg a <= deg b`.
    pub reciprocal_sum: Inequality,
    /// `prod b_j <= prod a_j`, necessary only for `deg a = deg b`.
    pub product: Inequality,
    /// `sum b_j <= sum a_j`, necessary only for `deg a = deg b`.
    pub sum: Inequality,
}

pub fn necessary_conditions(a_roots: &[Rational], b_roots: &[Rational]) -> NecessaryConditions {
    let recip = |v: &[Rational]| v.iter().map(|r| r.recip()).sum::<Rational>();
    let prod = |v: &[Rational]| v.iter().fold(Rational::one(), |acc, r| acc * r);
    let sum = |v: &[Rational]| v.iter().sum::<Rational>();
    let equal_degree = a_roots.len() == b_roots.len();
    NecessaryConditions {
        reciprocal_sum: Inequality::new(
            recip(a_roots),
            recip(b_roots),
            a_roots.len() <= b_roots.len(),
        ),
        product: Inequality::new(prod(b_roots), prod(a_roots), equal_degree),
        sum: Inequality::new(sum(b_roots), sum(a_roots), equal_degree),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivativePoint {
    #[serde(with = "serde_rational")]
    pub x: Rational,
    /// `a'(x) b(x)`
    #[serde(with = "serde_rational")]
    pub lhs: Rational,
    /// `a(x) b'(x)`
    #[serde(with = "serde_rational")]
    pub rhs: Rational,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivativeReport {
    pub degree_condition: bool,
    pub holds_on_grid: bool,
    pub points: Vec<DerivativePoint>,
}

/// Exact test of `a'(x) b(x) <= a(x) b'(x)` on the given points, plus the
/// structural `deg a <= deg b` condition.
pub fn derivative_inequality_check(p: &TwoVarPoly, grid: &[Rational]) -> Result<DerivativeReport> {
    if let Some(bad) = grid.iter().find(|x| **x < Rational::zero()) {
        return Err(Error::Precondition(format!(
            "grid points must be >= 0, got {}",
            format_rational(bad)
        )));
    }
    let degree_condition = p.a.degree() <= p.b.degree();
    let points: Vec<DerivativePoint> = grid
        .iter()
        .map(|x| {
            let lhs = p.a.derivative_eval(x) * p.b.eval(x);
            let rhs = p.a.eval(x) * p.b.derivative_eval(x);
            let holds = lhs <= rhs;
            DerivativePoint {
                x: x.clone(),
                lhs,
                rhs,
                holds,
            }
        })
        .collect();
    Ok(DerivativeReport {
        degree_condition,
        holds_on_grid: degree_condition && points.iter().all(|pt| pt.holds),
        points,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Jcm,
    NotJcm,
}

/// Exact decision for `b = b0 (x+b1)(x+b2)`, `a = a0 (x+a1)`:
/// jointly completely monotone iff `b1 <= a1 <= b2`.
pub fn classify_21(
    b0: &Rational,
    b1: &Rational,
    b2: &Rational,
    a0: &Rational,
    a1: &Rational,
) -> Result<Classification> {
    let zero = Rational::zero();
    if [b0, b1, b2, a0, a1].iter().any(|v| **v <= zero) {
        return Err(Error::Precondition(
            "all (2,1) parameters must be positive".into(),
        ));
    }
    if b1 > b2 {
        return Err(Error::Precondition("expected b1 <= b2".into()));
    }
    Ok(if b1 <= a1 && a1 <= b2 {
        Classification::Jcm
    } else {
        Classification::NotJcm
    })
}

/// Convenience wrapper for a `TwoVarPoly` of bi-degree `(2, 1)`.
pub fn classify_21_poly(p: &TwoVarPoly) -> Result<Classification> {
    if p.degrees() != (2, 1) {
        return Err(Error::Degree(format!(
            "classifier needs deg b = 2, deg a = 1, got {:?}",
            p.degrees()
        )));
    }
    let (b, a) = (p.b.roots(), p.a.roots());
    classify_21(p.b.lead(), &b[0], &b[1], p.a.lead(), &a[0])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriteriaReport {
    pub degrees: (usize, usize),
    pub interlacing_lk: Tristate,
    pub interlacing_l_km1: Tristate,
    pub regime: Option<Regime>,
    pub reciprocal_sum_necessary: bool,
    pub product_necessary: Tristate,
    pub sum_necessary: Tristate,
    pub derivative_inequality_grid: bool,
    pub degree_condition: bool,
    pub classify_21: Option<Classification>,
    pub necessary: NecessaryConditions,
}

impl CriteriaReport {
    /// The interlacing chain for `deg a = deg b - 1` holds.
    pub fn sufficient_condition_holds(&self) -> bool {
        self.interlacing_l_km1 == Tristate::Holds
    }
}

pub fn criteria_report(p: &TwoVarPoly, grid: &[Rational]) -> Result<CriteriaReport> {
    let (a, b) = (p.a.roots(), p.b.roots());
    let necessary = necessary_conditions(a, b);
    let derivative = derivative_inequality_check(p, grid)?;
    let regime = interlacing_regime(a, b, InterlaceMode::OneLess)
        .or_else(|| interlacing_regime(a, b, InterlaceMode::EqualDegree));
    Ok(CriteriaReport {
        degrees: p.degrees(),
        interlacing_lk: interlace_check(a, b, InterlaceMode::EqualDegree),
        interlacing_l_km1: interlace_check(a, b, InterlaceMode::OneLess),
        regime,
        reciprocal_sum_necessary: necessary.reciprocal_sum.holds,
        product_necessary: necessary.product.status(),
        sum_necessary: necessary.sum.status(),
        derivative_inequality_grid: derivative.holds_on_grid,
        degree_condition: derivative.degree_condition,
        classify_21: classify_21_poly(p).ok(),
        necessary,
    })
}

impl fmt::Display for CriteriaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: [(&str, String); 9] = [
            ("bi-degree (k, l)", format!("{:?}", self.degrees)),
            ("interlacing, l = k", self.interlacing_lk.to_string()),
            ("interlacing, l = k-1", self.interlacing_l_km1.to_string()),
            (
                "regime",
                self.regime
                    .map_or("n/a", |r| match r {
                        Regime::Strict => "strict",
                        Regime::NonStrict => "non-strict",
                        Regime::NotInterlacing => "not interlacing",
                    })
                    .to_string(),
            ),
            (
                "sum 1/a_j <= sum 1/b_j",
                format!(
                    "{} ({} <= {})",
                    Tristate::from_bool(self.reciprocal_sum_necessary),
                    format_rational(&self.necessary.reciprocal_sum.lhs),
                    format_rational(&self.necessary.reciprocal_sum.rhs)
                ),
            ),
            ("prod b_j <= prod a_j", self.product_necessary.to_string()),
            ("sum b_j <= sum a_j", self.sum_necessary.to_string()),
            (
                "a'b <= ab' on grid",
                Tristate::from_bool(self.derivative_inequality_grid).to_string(),
            ),
            (
                "(2,1) classifier",
                self.classify_21
                    .map_or("n/a", |c| match c {
                        Classification::Jcm => "jcm",
                        Classification::NotJcm => "not jcm",
                    })
                    .to_string(),
            ),
        ];
        for (name, value) in rows {
            writeln!(f, "{name:<26} {value}")?;
        }
        write!(
            f,
            "{:<26} {}",
            "deg a <= deg b",
            Tristate::from_bool(self.degree_condition)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::{int, ratio, FactoredPoly};

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn interlace_examples() {
        assert_eq!(
            interlace_check(&ints(&[2]), &ints(&[1, 3]), InterlaceMode::OneLess),
            Tristate::Holds
        );
        assert_eq!(
            interlace_check(&ints(&[1]), &ints(&[9, 9, 9]), InterlaceMode::OneLess),
            Tristate::NotApplicable
        );
        assert_eq!(
            interlace_check(&ints(&[1, 3]), &ints(&[1, 3]), InterlaceMode::EqualDegree),
            Tristate::Holds
        );
        assert_eq!(
            interlace_check(&ints(&[5]), &ints(&[1, 3]), InterlaceMode::OneLess),
            Tristate::Fails
        );
        assert_eq!(
            interlacing_regime(&ints(&[1, 3]), &ints(&[1, 3]), InterlaceMode::EqualDegree),
            Some(Regime::NonStrict)
        );
        assert_eq!(
            interlacing_regime(&ints(&[2]), &ints(&[1, 3]), InterlaceMode::OneLess),
            Some(Regime::Strict)
        );
    }

    #[test]
    fn necessary_examples() {
        let nc = necessary_conditions(&ints(&[2]), &ints(&[1, 3]));
        assert!(nc.reciprocal_sum.holds);
        assert_eq!(
            (nc.reciprocal_sum.lhs.clone(), nc.reciprocal_sum.rhs.clone()),
            (ratio(1, 2), ratio(4, 3))
        );
        assert!(!nc.product.holds && !nc.product.applicable);
        assert!(!nc.sum.holds && !nc.sum.applicable);
        assert_eq!(nc.product.status(), Tristate::NotApplicable);

        let nc = necessary_conditions(&ints(&[1, 2]), &ints(&[1, 2]));
        assert!(nc.reciprocal_sum.holds && nc.product.holds && nc.sum.holds);
        assert_eq!(nc.product.status(), Tristate::Holds);

        let nc = necessary_conditions(&ints(&[1]), &ints(&[9, 9, 9]));
        assert!(!nc.reciprocal_sum.holds);
        assert_eq!(nc.reciprocal_sum.rhs, ratio(1, 3));
    }

    #[test]
    fn derivative_examples() {
        let p = TwoVarPoly::monic_int(&[1, 3], &[2]);
        let grid = ints(&[0, 1, 2, 5, 10]);
        let r = derivative_inequality_check(&p, &grid).unwrap();
        assert!(r.degree_condition && r.holds_on_grid);

        let q = TwoVarPoly::new_relaxed(
            FactoredPoly::monic_int(&[1]),
            FactoredPoly::new(int(2), vec![int(3)]).unwrap(),
        );
        let r = derivative_inequality_check(&q, &grid).unwrap();
        assert_eq!(
            (r.points[0].lhs.clone(), r.points[0].rhs.clone()),
            (int(2), int(6))
        );
        // 2(x+1) <= 2(x+3) everywhere
        assert!(r.holds_on_grid);

        let wrong = TwoVarPoly::monic_int(&[1], &[1, 2]);
        let r = derivative_inequality_check(&wrong, &grid).unwrap();
        assert!(!r.degree_condition && !r.holds_on_grid);

        assert!(derivative_inequality_check(&p, &[int(-1)]).is_err());
    }

    #[test]
    fn classifier_examples() {
        let c =
            |v: [i64; 5]| classify_21(&int(v[0]), &int(v[1]), &int(v[2]), &int(v[3]), &int(v[4]));
        assert_eq!(c([1, 1, 3, 1, 2]).unwrap(), Classification::Jcm);
        assert_eq!(c([1, 1, 3, 1, 5]).unwrap(), Classification::NotJcm);
        assert_eq!(c([1, 2, 2, 1, 2]).unwrap(), Classification::Jcm);
        assert!(c([1, 3, 1, 1, 2]).is_err());
        assert!(c([0, 1, 3, 1, 2]).is_err());
    }

    #[test]
    fn report_for_quadratic_over_linear_parameters() {
        let p = TwoVarPoly::monic_int(&[1, 3], &[2]);
        let r = criteria_report(&p, &ints(&[0, 1, 5])).unwrap();
        assert!(r.sufficient_condition_holds());
        assert_eq!(r.interlacing_lk, Tristate::NotApplicable);
        assert_eq!(r.product_necessary, Tristate::NotApplicable);
        assert_eq!(r.sum_necessary, Tristate::NotApplicable);
        assert_eq!(r.classify_21, Some(Classification::Jcm));
        assert!(r.to_string().contains("interlacing, l = k-1"));
    }
}
