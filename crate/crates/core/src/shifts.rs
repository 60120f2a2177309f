//! Unilateral weighted shifts built from one slice `beta_m = 1/p(m, n)` of
//! the net, with `n` fixed.
//!
//! The shift has weights `alpha_m^2 = beta_{m+1} / beta_m`, it is `M_z` on
//! `H^2(gamma)` with `gamma_m^2 = beta_m / beta_0`, and its self-commutator is
//! diagonal with entries `alpha_0^2, alpha_1^2 - alpha_0^2, ...`. Every
//! quantity here is stored squared so it stays rational.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cmnet::{cm_check_1d, DifferenceCertificate};
use crate::error::{Error, Result};
use crate::ratpoly::{serde_rational, to_f64, Rational, TwoVarPoly};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShiftProfile {
    pub n: u64,
    /// Last index `M`; `beta` holds `beta_0 ..= beta_M`.
    pub length: usize,
    #[serde(with = "serde_rational::vec")]
    pub beta: Vec<Rational>,
    /// `alpha_m^2` for `m < M`.
    #[serde(with = "serde_rational::vec")]
    pub alpha_sq: Vec<Rational>,
    /// `gamma_m^2 = beta_m / beta_0` for `m <= M`.
    #[serde(with = "serde_rational::vec")]
    pub gamma_sq: Vec<Rational>,
    /// `d_0 = alpha_0^2`, `d_m = alpha_m^2 - alpha_{m-1}^2` for `m < M`.
    #[serde(with = "serde_rational::vec")]
    pub commutator_diag: Vec<Rational>,
    /// `||z||_gamma^2 = beta_1 / beta_0`.
    #[serde(with = "serde_rational")]
    pub norm_z_sq: Rational,
    pub spectral_radius_est: f64,
    #[serde(skip)]
    source: Option<TwoVarPoly>,
}

impl ShiftProfile {
    /// `||z||_gamma`, the unsquared convention.
    pub fn norm_z(&self) -> f64 {
        to_f64(&self.norm_z_sq).sqrt()
    }

    pub fn source(&self) -> Option<&TwoVarPoly> {
        self.source.as_ref()
    }

    /// Profile of an arbitrary positive moment prefix `beta_0 ..= beta_M`.
    pub fn from_moments(beta: Vec<Rational>, n: u64) -> Result<Self> {
        build(beta, n, None)
    }
}

/// `beta_m = 1/p(m, n)` for `m = 0 ..= length` and everything derived from it.
pub fn build_profile(p: &TwoVarPoly, n: u64, length: usize) -> Result<ShiftProfile> {
    if length < 2 {
        return Err(Error::Precondition(format!(
            "length must be at least 2, got {length}"
        )));
    }
    let beta = (0..=length as u64).map(|m| p.eval(m, n).recip()).collect();
    build(beta, n, Some(p.clone()))
}

fn build(beta: Vec<Rational>, n: u64, source: Option<TwoVarPoly>) -> Result<ShiftProfile> {
    if beta.len() < 3 {
        return Err(Error::Precondition(
            "need beta_0, beta_1, beta_2 at least".into(),
        ));
    }
    if beta.iter().any(|b| !b.is_positive()) {
        return Err(Error::Precondition("moments must be positive".into()));
    }
    let length = beta.len() - 1;
    let alpha_sq: Vec<Rational> = beta.windows(2).map(|w| &w[1] / &w[0]).collect();
    let gamma_sq = beta.iter().map(|b| b / &beta[0]).collect();
    let commutator_diag = std::iter::once(alpha_sq[0].clone())
        .chain(alpha_sq.windows(2).map(|w| &w[1] - &w[0]))
        .collect();
    let norm_z_sq = &beta[1] / &beta[0];
    let mut profile = ShiftProfile {
        n,
        length,
        beta,
        alpha_sq,
        gamma_sq,
        commutator_diag,
        norm_z_sq,
        spectral_radius_est: 0.0,
        source,
    };
    let power = (length / 2).max(1);
    profile.spectral_radius_est = spectral_radius_estimate(&profile, &[power], length - power)?
        .last()
        .unwrap_or(0.0);
    Ok(profile)
}

/// `||z||_gamma^2` from the root parameters:
/// `p(0, n) / p(1, n) = (b(0) + a(0) n) / (b(1) + a(1) n)` with each factor
/// multiplied out as `lead * prod (x + r_j)`.
pub fn norm_z_sq_closed_form(p: &TwoVarPoly, n: u64) -> Rational {
    let at = |x: i64, f: &crate::ratpoly::FactoredPoly| {
        f.roots().iter().fold(f.lead().clone(), |acc, r| {
            acc * (r + Rational::from_integer(x.into()))
        })
    };
    let n = Rational::from_integer(n.into());
    (at(0, &p.b) + at(0, &p.a) * &n) / (at(1, &p.b) + at(1, &p.a) * &n)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubnormalReport {
    /// `alpha_m^2 <= 1` for every stored `m`.
    pub contraction: bool,
    pub first_expansive_index: Option<usize>,
    /// Difference table of the prefix `beta_0 .. beta_{window-1}`.
    pub moment_certificate: DifferenceCertificate,
}

impl SubnormalReport {
    pub fn evidence_holds(&self) -> bool {
        self.contraction && self.moment_certificate.is_pass()
    }
}

pub fn subnormal_contraction_check(
    profile: &ShiftProfile,
    window_for_cm: usize,
) -> Result<SubnormalReport> {
    let first_expansive_index = profile.alpha_sq.iter().position(|a| *a > Rational::one());
    let take = window_for_cm.min(profile.beta.len());
    Ok(SubnormalReport {
        contraction: first_expansive_index.is_none(),
        first_expansive_index,
        moment_certificate: cm_check_1d(&profile.beta[..take])?,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EssentialNormality {
    pub tail_start: usize,
    pub tail_max_abs: f64,
    /// Least-squares slope of `log |d_m|` against `log m` over the tail.
    pub decay_exponent: Option<f64>,
    /// Tail of the self-commutator diagonal is identically zero.
    pub exactly_normal_tail: bool,
    /// `sum_m d_m`, which telescopes to the last `alpha^2`.
    #[serde(with = "serde_rational")]
    pub telescoped_sum: Rational,
}

pub fn essential_normality_report(profile: &ShiftProfile) -> Result<EssentialNormality> {
    if profile.length < 10 {
        return Err(Error::Precondition(format!(
            "need length >= 10, got {}",
            profile.length
        )));
    }
    let diag = &profile.commutator_diag;
    let tail_start = profile.length / 2;
    let tail: Vec<(f64, f64)> = diag
        .iter()
        .enumerate()
        .skip(tail_start.max(1))
        .map(|(m, d)| (m as f64, to_f64(d).abs()))
        .collect();
    let tail_max_abs = tail.iter().map(|&(_, d)| d).fold(0.0, f64::max);
    let points: Vec<(f64, f64)> = tail
        .iter()
        .filter(|&&(_, d)| d > 0.0)
        .map(|&(m, d)| (m.ln(), d.ln()))
        .collect();
    let decay_exponent = least_squares_slope(&points);
    Ok(EssentialNormality {
        tail_start,
        tail_max_abs,
        decay_exponent,
        exactly_normal_tail: diag[tail_start.max(1)..].iter().all(Zero::is_zero),
        telescoped_sum: diag.iter().sum(),
    })
}

fn least_squares_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let count = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / count;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / count;
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralEstimate {
    pub i_cap: usize,
    /// `(m, max_{i <= i_cap} (beta_{i+m} / beta_i)^{1/(2m)})`.
    pub per_power: Vec<(usize, f64)>,
}

impl SpectralEstimate {
    pub fn last(&self) -> Option<f64> {
        self.per_power.last().map(|&(_, v)| v)
    }
}

/// Lower estimates of `||T^m||^{1/m}`; the supremum over all `i` is a limit
/// as `i -> inf`, so these increase with `i_cap`.
///
/// Ratios past the stored prefix are evaluated from the profile's polynomial
/// in floating point; profiles built from raw moments must cover
/// `i_cap + max(m)`.
pub fn spectral_radius_estimate(
    profile: &ShiftProfile,
    m_powers: &[usize],
    i_cap: usize,
) -> Result<SpectralEstimate> {
    let max_power = m_powers.iter().copied().max().unwrap_or(0);
    if m_powers.contains(&0) {
        return Err(Error::Precondition("powers must be positive".into()));
    }
    if profile.source.is_none() && i_cap + max_power > profile.length {
        return Err(Error::Precondition(format!(
            "i_cap + max power = {} exceeds profile length {}",
            i_cap + max_power,
            profile.length
        )));
    }
    let n = profile.n as f64;
    let ratio = |i: usize, m: usize| -> f64 {
        if i + m <= profile.length {
            to_f64(&(&profile.beta[i + m] / &profile.beta[i]))
        } else {
            let p = profile.source.as_ref().expect("checked above");
            p.eval_f64(i as f64, n) / p.eval_f64((i + m) as f64, n)
        }
    };
    let per_power = m_powers
        .iter()
        .map(|&m| {
            let best = (0..=i_cap).map(|i| ratio(i, m)).fold(0.0, f64::max);
            (m, best.powf(1.0 / (2 * m) as f64))
        })
        .collect();
    Ok(SpectralEstimate { i_cap, per_power })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceWitness {
    /// Weights agree on the compared prefix.
    pub identical_weights: bool,
    pub first_difference: Option<usize>,
    pub compared: usize,
    #[serde(with = "serde_rational::vec")]
    pub norm_z_sq: Vec<Rational>,
}

/// Compares `alpha_m^2` of the two shifts on `m < length`. Differing weights
/// show the shifts are not unitarily equivalent.
pub fn unitary_equivalence_witness(
    p1: &TwoVarPoly,
    p2: &TwoVarPoly,
    n: u64,
    length: usize,
) -> Result<EquivalenceWitness> {
    let a = build_profile(p1, n, length)?;
    let b = build_profile(p2, n, length)?;
    let first_difference = a.alpha_sq.iter().zip(&b.alpha_sq).position(|(x, y)| x != y);
    Ok(EquivalenceWitness {
        identical_weights: first_difference.is_none(),
        first_difference,
        compared: a.alpha_sq.len(),
        norm_z_sq: vec![a.norm_z_sq, b.norm_z_sq],
    })
}
