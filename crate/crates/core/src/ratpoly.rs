//! Exact rationals and the factored polynomials `c * (x + r_1) ... (x + r_d)`
//! from which every net `1 / (b(m) + a(m) n)` is built.
//!
//! Roots are stored as *shifts*: a root value `r` stands for the factor
//! `(x + r)`, so a polynomial with positive shifts is positive on `[0, inf)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact arbitrary-precision rational; always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"`, an integer, or a finite decimal such as `"-4.94"` or
/// `"1.5e-3"` into an exact rational.
pub fn parse_rational(input: &str) -> Result<Rational> {
    let s = input.trim();
    let fail = |reason| Error::ParseRational {
        input: input.to_string(),
        reason,
    };
    if s.is_empty() {
        return Err(fail("empty string"));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| fail("bad numerator"))?;
        let den: BigInt = den.trim().parse().map_err(|_| fail("bad denominator"))?;
        if den.is_zero() {
            return Err(fail("zero denominator"));
        }
        return Ok(Rational::new(num, den));
    }

    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let exp: i32 = s[pos + 1..].parse().map_err(|_| fail("bad exponent"))?;
            (&s[..pos], exp)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(fail("no digits"));
    }
    if !whole
        .chars()
        .chain(frac.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(fail("not a finite decimal"));
    }
    let joined = format!("{whole}{frac}");
    let mut num: BigInt = if joined.is_empty() {
        BigInt::zero()
    } else {
        joined.parse().map_err(|_| fail("not a finite decimal"))?
    };
    if negative {
        num = -num;
    }
    let scale = exponent - frac.len() as i32;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        Rational::from_integer(num * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(num, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(value)
}

/// Canonical text form: `"p/q"`, or `"p"` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // to_f64 only fails on overflow of both parts; fall back on the sign.
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Serde adapters that write rationals as `"p/q"` strings.
pub mod serde_rational {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    /// Accepts `"p/q"`, decimal strings and bare JSON integers.
    #[derive(Deserialize)]
    #[serde(untagged)]
    pub(super) enum Raw {
        Text(String),
        Integer(i64),
    }

    impl Raw {
        pub(super) fn parse<E: serde::de::Error>(self) -> std::result::Result<Rational, E> {
            match self {
                Raw::Text(s) => parse_rational(&s).map_err(E::custom),
                Raw::Integer(v) => Ok(int(v)),
            }
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        Raw::deserialize(d)?.parse()
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(
            r: &Option<Rational>,
            s: S,
        ) -> std::result::Result<S::Ok, S::Error> {
            match r {
                Some(r) => s.serialize_some(&format_rational(r)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> std::result::Result<Option<Rational>, D::Error> {
            Option::<Raw>::deserialize(d)?.map(Raw::parse).transpose()
        }
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(
            v: &[Rational],
            s: S,
        ) -> std::result::Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&format_rational(r))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> std::result::Result<Vec<Rational>, D::Error> {
            Vec::<Raw>::deserialize(d)?
                .into_iter()
                .map(Raw::parse)
                .collect()
        }
    }

    pub mod option_vec {
        use super::*;

        pub fn serialize<S: Serializer>(
            v: &Option<Vec<Rational>>,
            s: S,
        ) -> std::result::Result<S::Ok, S::Error> {
            match v {
                Some(v) => {
                    let text: Vec<String> = v.iter().map(format_rational).collect();
                    s.serialize_some(&text)
                }
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> std::result::Result<Option<Vec<Rational>>, D::Error> {
            Option::<Vec<Raw>>::deserialize(d)?
                .map(|v| v.into_iter().map(Raw::parse).collect())
                .transpose()
        }
    }
}

/// `lead * prod (x + root)` with `lead > 0` and every root `> 0`.
///
/// Roots are kept sorted ascending; repeated roots are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawFactoredPoly", into = "RawFactoredPoly")]
pub struct FactoredPoly {
    lead: Rational,
    roots: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFactoredPoly {
    #[serde(with = "serde_rational")]
    lead: Rational,
    #[serde(with = "serde_rational::vec")]
    roots: Vec<Rational>,
}

impl TryFrom<RawFactoredPoly> for FactoredPoly {
    type Error = Error;

    fn try_from(raw: RawFactoredPoly) -> Result<Self> {
        FactoredPoly::new(raw.lead, raw.roots)
    }
}

impl From<FactoredPoly> for RawFactoredPoly {
    fn from(f: FactoredPoly) -> Self {
        RawFactoredPoly {
            lead: f.lead,
            roots: f.roots,
        }
    }
}

impl FactoredPoly {
    pub fn new(lead: Rational, mut roots: Vec<Rational>) -> Result<Self> {
        if !lead.is_positive() {
            return Err(Error::InvalidPolynomial(format!(
                "leading coefficient must be positive, got {}",
                format_rational(&lead)
            )));
        }
        if let Some(bad) = roots.iter().find(|r| !r.is_positive()) {
            return Err(Error::InvalidPolynomial(format!(
                "roots must be positive shifts, got {}",
                format_rational(bad)
            )));
        }
        roots.sort();
        Ok(FactoredPoly { lead, roots })
    }

    /// Monic polynomial with integer shifts; panics on non-positive input.
    pub fn monic_int(roots: &[i64]) -> Self {
        Self::new(Rational::one(), roots.iter().map(|&r| int(r)).collect())
            .expect("positive integer shifts")
    }

    pub fn constant(lead: Rational) -> Result<Self> {
        Self::new(lead, Vec::new())
    }

    pub fn lead(&self) -> &Rational {
        &self.lead
    }

    pub fn roots(&self) -> &[Rational] {
        &self.roots
    }

    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    pub fn has_simple_roots(&self) -> bool {
        self.repeated_root().is_none()
    }

    pub fn repeated_root(&self) -> Option<&Rational> {
        self.roots.windows(2).find(|w| w[0] == w[1]).map(|w| &w[0])
    }

    pub fn scaled(&self, factor: &Rational) -> Result<Self> {
        Self::new(&self.lead * factor, self.roots.clone())
    }

    /// `lead * prod (x + r_j)`, exactly.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.roots
            .iter()
            .fold(self.lead.clone(), |acc, r| acc * (x + r))
    }

    pub fn eval_int(&self, x: u64) -> Rational {
        self.eval(&Rational::from_integer(BigInt::from(x)))
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.roots
            .iter()
            .fold(to_f64(&self.lead), |acc, r| acc * (x + to_f64(r)))
    }

    /// Derivative by the product rule: `lead * sum_i prod_{j != i} (x + r_j)`.
    pub fn derivative_eval(&self, x: &Rational) -> Rational {
        let shifted: Vec<Rational> = self.roots.iter().map(|r| x + r).collect();
        let mut total = Rational::zero();
        for i in 0..shifted.len() {
            let term = shifted
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(Rational::one(), |acc, (_, v)| acc * v);
            total += term;
        }
        &self.lead * total
    }

    pub fn expand(&self) -> DensePoly {
        self.roots
            .iter()
            .fold(DensePoly::constant(self.lead.clone()), |acc, r| {
                acc.mul_linear(r)
            })
    }

    /// Expansion of the product with the factor `(x + root)` at `skip` left out.
    pub fn expand_without(&self, skip: usize) -> DensePoly {
        self.roots
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .fold(DensePoly::constant(self.lead.clone()), |acc, (_, r)| {
                acc.mul_linear(r)
            })
    }
}

impl fmt::Display for FactoredPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.lead.is_one() || self.roots.is_empty() {
            write!(f, "{}", format_rational(&self.lead))?;
        }
        for r in &self.roots {
            write!(f, "(x+{})", format_rational(r))?;
        }
        Ok(())
    }
}

/// Coefficient vector, index = power of x. Never carries trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DensePoly {
    coeffs: Vec<Rational>,
}

impl DensePoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        DensePoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        DensePoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^power`, zero past the degree.
    pub fn coeff(&self, power: usize) -> Rational {
        self.coeffs
            .get(power)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + to_f64(c))
    }

    /// Multiplies by `(x + r)`.
    pub fn mul_linear(&self, r: &Rational) -> Self {
        let mut out = vec![Rational::zero(); self.coeffs.len() + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c * r;
            out[i + 1] += c;
        }
        Self::new(out)
    }

    pub fn mul(&self, other: &DensePoly) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|v| v * c).collect())
    }

    pub fn add(&self, other: &DensePoly) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..len).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &DensePoly) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Long division; returns `(quotient, remainder)` with
    /// `deg remainder < deg divisor`. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &DensePoly) -> (DensePoly, DensePoly) {
        let d = divisor.degree().expect("division by the zero polynomial");
        let lead = &divisor.coeffs[d];
        let mut rem = self.coeffs.clone();
        let Some(n) = self.degree().filter(|&n| n >= d) else {
            return (Self::zero(), self.clone());
        };
        let mut quot = vec![Rational::zero(); n - d + 1];
        for shift in (0..=n - d).rev() {
            let q = &rem[shift + d] / lead;
            if !q.is_zero() {
                for (j, c) in divisor.coeffs.iter().enumerate() {
                    rem[shift + j] -= &q * c;
                }
            }
            quot[shift] = q;
        }
        rem.truncate(d);
        (Self::new(quot), Self::new(rem))
    }
}

impl fmt::Display for DensePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format_rational(c),
                1 => format!("{}*x", format_rational(c)),
                _ => format!("{}*x^{i}", format_rational(c)),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `p(x, y) = b(x) + a(x) y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwoVarPoly {
    pub b: FactoredPoly,
    pub a: FactoredPoly,
}

impl TwoVarPoly {
    /// Requires `deg a < deg b`.
    pub fn new(b: FactoredPoly, a: FactoredPoly) -> Result<Self> {
        if a.degree() >= b.degree() {
            return Err(Error::Degree(format!(
                "expected deg a < deg b, got deg a = {}, deg b = {}",
                a.degree(),
                b.degree()
            )));
        }
        Ok(TwoVarPoly { b, a })
    }

    /// No degree restriction; used for the equal-degree criteria and for
    /// probing the structural degree condition.
    pub fn new_relaxed(b: FactoredPoly, a: FactoredPoly) -> Self {
        TwoVarPoly { b, a }
    }

    /// Monic `b` and `a` with integer shifts.
    pub fn monic_int(b_roots: &[i64], a_roots: &[i64]) -> Self {
        Self::new_relaxed(
            FactoredPoly::monic_int(b_roots),
            FactoredPoly::monic_int(a_roots),
        )
    }

    /// `(k, l) = (deg b, deg a)`.
    pub fn degrees(&self) -> (usize, usize) {
        (self.b.degree(), self.a.degree())
    }

    pub fn eval(&self, m: u64, n: u64) -> Rational {
        let x = Rational::from_integer(BigInt::from(m));
        self.b.eval(&x) + self.a.eval(&x) * BigInt::from(n)
    }

    pub fn eval_f64(&self, m: f64, n: f64) -> f64 {
        self.b.eval_f64(m) + self.a.eval_f64(m) * n
    }

    /// Both factors multiplied by the same positive constant.
    pub fn scaled(&self, factor: &Rational) -> Result<Self> {
        Ok(Self::new_relaxed(
            self.b.scaled(factor)?,
            self.a.scaled(factor)?,
        ))
    }
}

impl fmt::Display for TwoVarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.a.roots().is_empty() {
            write!(f, "{} + {}y", self.b, self.a)
        } else {
            write!(f, "{} + {} y", self.b, self.a)
        }
    }
}

pub fn lcm_of<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, v| acc.lcm(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_factored_examples() {
        let f = FactoredPoly::monic_int(&[1, 3]);
        assert_eq!(f.eval(&int(2)), int(15));
        let one = FactoredPoly::constant(int(1)).unwrap();
        assert_eq!(one.eval(&int(7)), int(1));
        let g = FactoredPoly::new(int(2), vec![ratio(1, 2)]).unwrap();
        assert_eq!(g.eval(&ratio(1, 2)), int(2));
    }

    #[test]
    fn eval_p_examples() {
        let p = TwoVarPoly::monic_int(&[1, 3], &[2]);
        assert_eq!(p.eval(0, 1), int(5));
        assert_eq!(p.eval(0, 0), int(3));
        let q = TwoVarPoly::monic_int(&[9, 9, 9], &[1]);
        assert_eq!(q.eval(0, 1), int(730));
        // independent path: expand first, then evaluate
        let via_dense = q.b.expand().eval(&int(0)) + q.a.expand().eval(&int(0));
        assert_eq!(via_dense, int(730));
    }

    #[test]
    fn expand_examples() {
        assert_eq!(
            FactoredPoly::monic_int(&[1, 3]).expand(),
            DensePoly::from_ints(&[3, 4, 1])
        );
        let f = FactoredPoly::new(int(2), vec![int(1)]).unwrap();
        assert_eq!(f.expand(), DensePoly::from_ints(&[2, 2]));
        let cubic = FactoredPoly::monic_int(&[1, 2, 3]);
        let dense = cubic.expand();
        assert_eq!(dense, DensePoly::from_ints(&[6, 11, 6, 1]));
        for x in [int(-5), int(0), ratio(7, 3), int(11)] {
            assert_eq!(dense.eval(&x), cubic.eval(&x));
        }
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3/6").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("-4.94").unwrap(), ratio(-494, 100));
        assert_eq!(parse_rational("1.5e-3").unwrap(), ratio(3, 2000));
        assert_eq!(parse_rational("2e2").unwrap(), int(200));
        assert_eq!(parse_rational(".5").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.2.3").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("inf").is_err());
    }

    #[test]
    fn rejects_nonpositive() {
        assert!(FactoredPoly::new(int(0), vec![]).is_err());
        assert!(FactoredPoly::new(int(1), vec![int(-1)]).is_err());
        assert!(FactoredPoly::new(int(1), vec![int(0)]).is_err());
        let b = FactoredPoly::monic_int(&[1]);
        assert!(TwoVarPoly::new(b.clone(), b).is_err());
    }

    #[test]
    fn serde_literal() {
        let json = r#"{"lead": "1/2", "roots": ["3", "0.25"]}"#;
        let f: FactoredPoly = serde_json::from_str(json).unwrap();
        assert_eq!(f.roots(), &[ratio(1, 4), int(3)]);
        assert_eq!(
            serde_json::to_string(&f).unwrap(),
            r#"{"lead":"1/2","roots":["1/4","3"]}"#
        );
        assert!(serde_json::from_str::<FactoredPoly>(r#"{"lead":"1","roots":["-1"]}"#).is_err());
        assert!(serde_json::from_str::<FactoredPoly>(r#"{"lead":"1","roots":[],"x":1}"#).is_err());
    }

    #[test]
    fn derivative_matches_dense() {
        let f = FactoredPoly::new(ratio(3, 2), vec![int(1), ratio(5, 2), int(4)]).unwrap();
        let dense = f.expand();
        let deriv = DensePoly::new(
            dense
                .coeffs()
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        );
        for x in [int(0), ratio(1, 3), int(6)] {
            assert_eq!(f.derivative_eval(&x), deriv.eval(&x));
        }
    }

    #[test]
    fn long_division() {
        let b = FactoredPoly::monic_int(&[1, 2, 3]).expand();
        let a = FactoredPoly::monic_int(&[1]).expand();
        let (q, r) = b.div_rem(&a);
        assert_eq!(q, DensePoly::from_ints(&[6, 5, 1]));
        assert!(r.is_zero());
        let (q, r) = DensePoly::from_ints(&[1, 0, 1]).div_rem(&DensePoly::from_ints(&[1, 1]));
        assert_eq!(q, DensePoly::from_ints(&[-1, 1]));
        assert_eq!(r, DensePoly::from_ints(&[2]));
    }
}
