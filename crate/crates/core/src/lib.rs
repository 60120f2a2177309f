//! Exact and certified checks of joint complete monotonicity for nets
//! `{1 / p(m, n)}` with `p(x, y) = b(x) + a(x) y`, where `a` and `b` are given
//! by a positive leading coefficient and positive root shifts.
//!
//! * [`ratpoly`]: exact rationals and factored polynomials
//! * [`cmnet`]: difference tables and window certificates
//! * [`decomp`]: partial fractions of `b / a`
//! * [`criteria`]: interlacing, necessary conditions, the `(2, 1)` classifier
//! * [`moments`]: quadrature checks of the moment representations
//! * [`counterex`]: the `(3, 1)` counterexample families and thresholds
//! * [`shifts`]: weighted shifts built from one slice of the net
//! * [`cli`]: job configuration, report output and the reproduction driver
//!
//! A window pass is evidence only; a violation is an exact certificate.

pub mod cli;
pub mod cmnet;
pub mod counterex;
pub mod criteria;
pub mod decomp;
pub mod error;
pub mod moments;
pub mod quad;
pub mod ratpoly;
pub mod sampling;
pub mod shifts;

pub use cmnet::{jcm_check, separate_cm_check, DifferenceCertificate, Verdict, Window};
pub use error::{Error, Result};
pub use ratpoly::{parse_rational, FactoredPoly, Rational, TwoVarPoly};
