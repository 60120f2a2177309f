//! Partial fractions of `b(x) / a(x)` for simple-rooted `a`.
//!
//! For `deg a = deg b - 1`,
//!
//! ```text
//! b(x) / a(x) = c0 * (x + c + sum_i A_i / (x + a_i))
//! c0  = lead(b) / lead(a)
//! c   = sum_j b_j - sum_i a_i
//! A_i = prod_j (b_j - a_i) / prod_{j != i} (a_j - a_i)
//! ```
//!
//! For any `deg a < deg b` the polynomial part is taken by long division and
//! the proper part is split over the simple poles of `a`. Every result is
//! checked against `b` coefficient by coefficient before it is returned.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ratpoly::{format_rational, serde_rational, DensePoly, FactoredPoly, Rational};

/// Coefficient of `1 / (x + root)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Residue {
    #[serde(with = "serde_rational")]
    pub root: Rational,
    #[serde(with = "serde_rational")]
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialFraction {
    #[serde(with = "serde_rational")]
    pub c0: Rational,
    #[serde(with = "serde_rational")]
    pub c: Rational,
    pub residues: Vec<Residue>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientResidue {
    pub quotient: DensePoly,
    pub residues: Vec<Residue>,
}

/// First coefficient where a reconstruction disagrees with `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientMismatch {
    pub power: usize,
    pub expected: Rational,
    pub found: Rational,
}

impl std::fmt::Display for CoefficientMismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "coefficient of x^{}: expected {}, reconstructed {}",
            self.power,
            format_rational(&self.expected),
            format_rational(&self.found)
        )
    }
}

pub trait Decomposition {
    /// Rebuilds `b` as a dense polynomial from the decomposition and `a`.
    fn reconstruct(&self, a: &FactoredPoly) -> DensePoly;
}

impl Decomposition for PartialFraction {
    // c0 * ((x + c) a(x) + sum_i A_i a(x) / (x + a_i))
    fn reconstruct(&self, a: &FactoredPoly) -> DensePoly {
        let mut total = a.expand().mul_linear(&self.c);
        total = total.add(&proper_part(&self.residues, a));
        total.scale(&self.c0)
    }
}

impl Decomposition for QuotientResidue {
    fn reconstruct(&self, a: &FactoredPoly) -> DensePoly {
        self.quotient
            .mul(&a.expand())
            .add(&proper_part(&self.residues, a))
    }
}

// sum_i value_i * a(x) / (x + root_i); residues line up with a's roots.
fn proper_part(residues: &[Residue], a: &FactoredPoly) -> DensePoly {
    residues
        .iter()
        .enumerate()
        .fold(DensePoly::zero(), |acc, (i, r)| {
            acc.add(&a.expand_without(i).scale(&r.value))
        })
}

/// Exact coefficient comparison of the reconstruction against `b`.
pub fn reconstruct_and_verify(
    d: &impl Decomposition,
    b: &FactoredPoly,
    a: &FactoredPoly,
) -> std::result::Result<(), Box<CoefficientMismatch>> {
    let expected = b.expand();
    let found = d.reconstruct(a);
    let len = expected.coeffs().len().max(found.coeffs().len());
    for power in 0..len {
        let (e, f) = (expected.coeff(power), found.coeff(power));
        if e != f {
            return Err(Box::new(CoefficientMismatch {
                power,
                expected: e,
                found: f,
            }));
        }
    }
    Ok(())
}

fn require_simple_roots(a: &FactoredPoly) -> Result<()> {
    match a.repeated_root() {
        Some(r) => Err(Error::RepeatedRoot(r.clone())),
        None => Ok(()),
    }
}

/// `prod_{j != i} (a_j - a_i)`
fn pole_separation(a: &FactoredPoly, i: usize) -> Rational {
    let ai = &a.roots()[i];
    a.roots()
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .fold(Rational::one(), |acc, (_, aj)| acc * (aj - ai))
}

/// Closed-form decomposition for `deg a = deg b - 1`.
pub fn partial_fractions(b: &FactoredPoly, a: &FactoredPoly) -> Result<PartialFraction> {
    if a.degree() + 1 != b.degree() {
        return Err(Error::Degree(format!(
            "expected deg a = deg b - 1, got deg a = {}, deg b = {}",
            a.degree(),
            b.degree()
        )));
    }
    require_simple_roots(a)?;

    let c0 = b.lead() / a.lead();
    let c = b.roots().iter().sum::<Rational>() - a.roots().iter().sum::<Rational>();
    let residues = a
        .roots()
        .iter()
        .enumerate()
        .map(|(i, ai)| {
            let numer = b
                .roots()
                .iter()
                .fold(Rational::one(), |acc, bj| acc * (bj - ai));
            Residue {
                root: ai.clone(),
                value: numer / pole_separation(a, i),
            }
        })
        .collect();
    let pf = PartialFraction { c0, c, residues };
    verified(pf, b, a)
}

/// Polynomial quotient plus simple-pole residues, for any `deg a < deg b`.
pub fn quotient_residue_decompose(b: &FactoredPoly, a: &FactoredPoly) -> Result<QuotientResidue> {
    if a.degree() >= b.degree() {
        return Err(Error::Degree(format!(
            "expected deg a < deg b, got deg a = {}, deg b = {}",
            a.degree(),
            b.degree()
        )));
    }
    require_simple_roots(a)?;

    let (quotient, _) = b.expand().div_rem(&a.expand());
    // residue_i = b(-a_i) / (lead(a) prod_{j != i} (a_j - a_i)); q * a vanishes there.
    let residues = a
        .roots()
        .iter()
        .enumerate()
        .map(|(i, ai)| Residue {
            root: ai.clone(),
            value: b.eval(&-ai) / (a.lead() * pole_separation(a, i)),
        })
        .collect();
    verified(QuotientResidue { quotient, residues }, b, a)
}

/// The cubic-over-linear display: with `b = b0 (x+b1)(x+b2)(x+b3)` and
/// `a = a0 (x+a1)`,
/// `b/a = (b0/a0) [ (x+b1)(x+b2+b3-a1) + (b3-a1)(b2-a1) + prod_j (b_j-a1)/(x+a1) ]`.
pub fn cubic_over_linear(b: &FactoredPoly, a: &FactoredPoly) -> Result<QuotientResidue> {
    if b.degree() != 3 || a.degree() != 1 {
        return Err(Error::Degree(format!(
            "expected deg b = 3 and deg a = 1, got {} and {}",
            b.degree(),
            a.degree()
        )));
    }
    let (r, a1) = (b.roots(), &a.roots()[0]);
    let scale = b.lead() / a.lead();
    let quotient = DensePoly::constant(Rational::one())
        .mul_linear(&r[0])
        .mul_linear(&(&r[1] + &r[2] - a1))
        .add(&DensePoly::constant((&r[2] - a1) * (&r[1] - a1)))
        .scale(&scale);
    let residue = r.iter().fold(Rational::one(), |acc, bj| acc * (bj - a1)) * &scale;
    Ok(QuotientResidue {
        quotient,
        residues: vec![Residue {
            root: a1.clone(),
            value: residue,
        }],
    })
}

fn verified<D: Decomposition>(d: D, b: &FactoredPoly, a: &FactoredPoly) -> Result<D> {
    reconstruct_and_verify(&d, b, a)
        .map_err(|m| Error::Precondition(format!("decomposition failed to reconstruct b: {m}")))?;
    Ok(d)
}

/// Sign pattern implied by interlacing: every residue `<= 0` and `c >= 0`.
pub fn has_interlacing_signs(pf: &PartialFraction, strict: bool) -> bool {
    let zero = Rational::zero();
    if strict {
        pf.c > zero && pf.residues.iter().all(|r| r.value < zero)
    } else {
        pf.c >= zero && pf.residues.iter().all(|r| r.value <= zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::{int, FactoredPoly};

    #[test]
    fn quadratic_over_linear_parameters() {
        let b = FactoredPoly::monic_int(&[1, 3]);
        let a = FactoredPoly::monic_int(&[2]);
        let pf = partial_fractions(&b, &a).unwrap();
        assert_eq!((pf.c0.clone(), pf.c.clone()), (int(1), int(2)));
        assert_eq!(pf.residues[0].value, int(-1));
        // long division oracle: (x+1)(x+3) = (x+2)(x+2) - 1
        let (q, r) = b.expand().div_rem(&a.expand());
        assert_eq!(q, DensePoly::from_ints(&[2, 1]));
        assert_eq!(r.eval(&int(-2)), int(-1));
        assert!(has_interlacing_signs(&pf, true));
    }

    #[test]
    fn shared_root_gives_zero_residue() {
        let b = FactoredPoly::monic_int(&[2, 5]);
        let a = FactoredPoly::monic_int(&[2]);
        let pf = partial_fractions(&b, &a).unwrap();
        assert_eq!(pf.c, int(5));
        assert_eq!(pf.residues[0].value, int(0));
    }

    #[test]
    fn scaled_cubic_over_quadratic() {
        let b = FactoredPoly::new(int(2), vec![int(1), int(2), int(4)]).unwrap();
        let a = FactoredPoly::monic_int(&[1, 3]);
        let pf = partial_fractions(&b, &a).unwrap();
        assert_eq!(pf.c0, int(2));
        assert_eq!(pf.c, int(3));
        let values: Vec<_> = pf.residues.iter().map(|r| r.value.clone()).collect();
        assert_eq!(values, vec![int(0), int(-1)]);
    }

    #[test]
    fn errors() {
        let b = FactoredPoly::monic_int(&[1, 2, 3]);
        assert!(matches!(
            partial_fractions(&b, &FactoredPoly::monic_int(&[1])),
            Err(Error::Degree(_))
        ));
        assert!(matches!(
            partial_fractions(&b, &FactoredPoly::monic_int(&[2, 2])),
            Err(Error::RepeatedRoot(_))
        ));
        assert!(matches!(
            quotient_residue_decompose(&b, &FactoredPoly::monic_int(&[1, 2, 4])),
            Err(Error::Degree(_))
        ));
        assert!(matches!(
            quotient_residue_decompose(&b, &FactoredPoly::monic_int(&[5, 5])),
            Err(Error::RepeatedRoot(_))
        ));
    }

    #[test]
    fn quotient_residue_examples() {
        let b = FactoredPoly::monic_int(&[1, 2, 3]);
        let qr = quotient_residue_decompose(&b, &FactoredPoly::monic_int(&[1])).unwrap();
        assert_eq!(qr.quotient, DensePoly::from_ints(&[6, 5, 1]));
        assert_eq!(qr.residues[0].value, int(0));

        let a = FactoredPoly::monic_int(&[2]);
        let qr = quotient_residue_decompose(&b, &a).unwrap();
        assert_eq!(qr.quotient, DensePoly::from_ints(&[3, 4, 1]));
        assert_eq!(qr.residues[0].value, int(0));
        assert_eq!(cubic_over_linear(&b, &a).unwrap(), qr);
        assert_eq!(qr.quotient.degree(), Some(2));
    }

    #[test]
    fn perturbed_residue_is_reported() {
        let b = FactoredPoly::monic_int(&[1, 3]);
        let a = FactoredPoly::monic_int(&[2]);
        let mut pf = partial_fractions(&b, &a).unwrap();
        assert!(reconstruct_and_verify(&pf, &b, &a).is_ok());
        pf.residues[0].value += int(1);
        let err = reconstruct_and_verify(&pf, &b, &a).unwrap_err();
        assert_eq!(err.power, 0);
        assert_eq!((err.expected, err.found), (int(3), int(4)));
    }
}
