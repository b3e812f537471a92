//! Exact rational arithmetic for q-series: truncated Pochhammer products
//! with certified tail bounds, Euler-type expansions of prod (1 - u/q^r),
//! power sums of variable specializations, and truncated power series.
//!
//! The infinite Pochhammer product (x; q)_infinity = prod_{i>=0} (1 - x q^i)
//! converges for |q| < 1. Truncating after T factors leaves a relative error
//! controlled by R = |x| |q|^T / (1 - |q|): when R < 1 the remaining product
//! differs from 1 by at most R / (1 - R), so a truncated value V certifies
//! the true value to within |V| R / (1 - R).
//!
//! For |q| > 1 the products prod_{r>=1} (1 - u/q^r) and its reciprocal have
//! explicit u-expansions: the reciprocal has n-th coefficient
//! q^(n(n-1)/2) / ((q-1)(q^2-1)...(q^n-1)) and the product itself has n-th
//! coefficient (-1)^n / ((q-1)...(q^n-1)).
//!
//! log Pi(x; y; q, t) = sum_{n>=1} (1/n) (1-t^n)/(1-q^n) p_n(x) p_n(y) is
//! summed with a certified geometric tail whenever the power sums of the two
//! specializations decay geometrically.

use crate::error::{Error, Result};
use num::{BigInt, One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::str::FromStr;

/// Exact rational scalar used throughout the crate.
pub type Rational = num::BigRational;

/// Rational from an integer pair.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an integer.
pub fn rat_int(num: i64) -> Rational {
    Rational::from_integer(BigInt::from(num))
}

/// base^exp for a nonnegative integer exponent, with 0^0 = 1.
pub fn rat_pow(base: &Rational, mut exp: usize) -> Rational {
    let mut result = Rational::one();
    let mut b = base.clone();
    while exp > 0 {
        if exp & 1 == 1 {
            result *= &b;
        }
        exp >>= 1;
        if exp > 0 {
            b = &b * &b;
        }
    }
    result
}

/// Parses "3/4", "-7", or a plain decimal like "0.25" into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Some((n, d)) = t.split_once('/') {
        let num: BigInt = n
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in `{}`", s)))?;
        let den: BigInt = d
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in `{}`", s)))?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in `{}`", s)));
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        let num: BigInt = digits
            .parse()
            .map_err(|_| Error::Parse(format!("bad decimal `{}`", s)))?;
        let den = num::pow(BigInt::from(10), frac.len());
        let val = Rational::new(num, den);
        return Ok(if t.starts_with('-') { -val } else { val });
    }
    let num: BigInt = t
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational `{}`", s)))?;
    Ok(Rational::from_integer(num))
}

/// Nearest double, robust to numerators and denominators beyond f64 range.
pub fn rational_to_f64(r: &Rational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let num = r.numer();
    let den = r.denom();
    let shift = 64i64 - (num.bits() as i64 - den.bits() as i64);
    let q: BigInt = if shift >= 0 {
        (num << shift as usize) / den
    } else {
        num / (den << (-shift) as usize)
    };
    let qf = match num::ToPrimitive::to_f64(&q) {
        Some(v) => v,
        None => return f64::NAN,
    };
    let scale = 2.0f64.powi((-shift).clamp(i32::MIN as i64, i32::MAX as i64) as i32);
    qf * scale
}

/// Serde adapter storing a rational as its exact "num/den" string.
pub mod rational_string {
    use super::{parse_rational, Rational};
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    /// Serializes as "num/den" (or a bare integer when the denominator is 1).
    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    /// Parses the forms accepted by `parse_rational`.
    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }
}

/// Serde adapter for vectors of rationals as "num/den" strings.
pub mod rational_string_vec {
    use super::{parse_rational, Rational};
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    /// Serializes each entry as its exact string.
    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
            .serialize(s)
    }

    /// Parses each entry with `parse_rational`.
    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rational(s).map_err(D::Error::custom))
            .collect()
    }
}

/// A sequence of specialization values: an explicit finite list, or the
/// geometric sequence first, first*ratio, first*ratio^2, ...
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VariableSpec {
    /// Finitely many explicit values; entries beyond the list are zero.
    FiniteList {
        /// The values x_1, x_2, ..., x_k.
        #[serde(with = "rational_string_vec")]
        values: Vec<Rational>,
    },
    /// The infinite sequence first * ratio^(i-1) for i = 1, 2, ...
    Geometric {
        /// First value x_1.
        #[serde(with = "rational_string")]
        first: Rational,
        /// Common ratio; sums require |ratio| < 1.
        #[serde(with = "rational_string")]
        ratio: Rational,
    },
}

impl VariableSpec {
    /// Finite list constructor.
    pub fn finite(values: Vec<Rational>) -> Self {
        VariableSpec::FiniteList { values }
    }

    /// Geometric sequence constructor.
    pub fn geometric(first: Rational, ratio: Rational) -> Self {
        VariableSpec::Geometric { first, ratio }
    }

    /// The 1-indexed i-th value of the sequence.
    pub fn value_at(&self, i: usize) -> Rational {
        assert!(i >= 1, "specialization values are 1-indexed");
        match self {
            VariableSpec::FiniteList { values } => {
                values.get(i - 1).cloned().unwrap_or_else(Rational::zero)
            }
            VariableSpec::Geometric { first, ratio } => first * rat_pow(ratio, i - 1),
        }
    }

    /// The first n values as a vector.
    pub fn prefix(&self, n: usize) -> Vec<Rational> {
        (1..=n).map(|i| self.value_at(i)).collect()
    }

    /// Length of the finite list, if finite.
    pub fn finite_len(&self) -> Option<usize> {
        match self {
            VariableSpec::FiniteList { values } => Some(values.len()),
            VariableSpec::Geometric { first, .. } => {
                if first.is_zero() {
                    Some(0)
                } else {
                    None
                }
            }
        }
    }

    /// True when every value is zero.
    pub fn is_all_zero(&self) -> bool {
        match self {
            VariableSpec::FiniteList { values } => values.iter().all(|v| v.is_zero()),
            VariableSpec::Geometric { first, .. } => first.is_zero(),
        }
    }

    /// True when every value is nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        match self {
            VariableSpec::FiniteList { values } => values.iter().all(|v| !v.is_negative()),
            VariableSpec::Geometric { first, ratio } => {
                first.is_zero() || (!first.is_negative() && !ratio.is_negative())
            }
        }
    }

    /// Constants (C, rho) with |p_n| <= C rho^n for every n >= 1.
    pub fn power_sum_envelope(&self) -> Result<(Rational, Rational)> {
        match self {
            VariableSpec::FiniteList { values } => {
                let rho = values
                    .iter()
                    .map(|v| v.abs())
                    .max()
                    .unwrap_or_else(Rational::zero);
                Ok((rat_int(values.len() as i64), rho))
            }
            VariableSpec::Geometric { first, ratio } => {
                if first.is_zero() {
                    return Ok((Rational::zero(), Rational::zero()));
                }
                let r = ratio.abs();
                if r >= Rational::one() {
                    return Err(Error::DivergentSeries(
                        "geometric specialization needs |ratio| < 1".into(),
                    ));
                }
                let c = (Rational::one() - &r).recip();
                Ok((c, first.abs()))
            }
        }
    }

    /// sum_{i > m} |x_i|, the absolute mass beyond the first m values.
    pub fn abs_tail_after(&self, m: usize) -> Result<Rational> {
        match self {
            VariableSpec::FiniteList { values } => Ok(values
                .iter()
                .skip(m)
                .map(|v| v.abs())
                .fold(Rational::zero(), |a, b| a + b)),
            VariableSpec::Geometric { first, ratio } => {
                if first.is_zero() {
                    return Ok(Rational::zero());
                }
                let r = ratio.abs();
                if r >= Rational::one() {
                    return Err(Error::DivergentSeries(
                        "geometric specialization needs |ratio| < 1".into(),
                    ));
                }
                Ok(first.abs() * rat_pow(&r, m) / (Rational::one() - &r))
            }
        }
    }
}

/// p_n(spec) = sum_i x_i^n, exact; n must be at least 1.
pub fn power_sum(spec: &VariableSpec, n: usize) -> Result<Rational> {
    if n == 0 {
        return Err(Error::Domain("power sums need n >= 1".into()));
    }
    match spec {
        VariableSpec::FiniteList { values } => Ok(values
            .iter()
            .map(|v| rat_pow(v, n))
            .fold(Rational::zero(), |a, b| a + b)),
        VariableSpec::Geometric { first, ratio } => {
            if first.is_zero() {
                return Ok(Rational::zero());
            }
            if ratio.abs() >= Rational::one() {
                return Err(Error::DivergentSeries(
                    "geometric specialization needs |ratio| < 1".into(),
                ));
            }
            let rn = rat_pow(ratio, n);
            Ok(rat_pow(first, n) / (Rational::one() - rn))
        }
    }
}

/// An exact rational enclosure: the true value lies within tail_bound of
/// value. tail_bound = 0 means the value is exact.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExactProb {
    /// Center of the enclosure.
    #[serde(with = "rational_string")]
    pub value: Rational,
    /// Radius of the enclosure; always nonnegative.
    #[serde(with = "rational_string")]
    pub tail_bound: Rational,
}

impl ExactProb {
    /// An exactly known value.
    pub fn exact(value: Rational) -> Self {
        ExactProb {
            value,
            tail_bound: Rational::zero(),
        }
    }

    /// An enclosure with the given nonnegative radius.
    pub fn with_tail(value: Rational, tail_bound: Rational) -> Self {
        assert!(!tail_bound.is_negative(), "tail bound must be nonnegative");
        ExactProb { value, tail_bound }
    }

    /// True when the tail bound is zero.
    pub fn is_exact(&self) -> bool {
        self.tail_bound.is_zero()
    }

    /// Sum of enclosures; radii add.
    pub fn add(&self, other: &ExactProb) -> ExactProb {
        ExactProb {
            value: &self.value + &other.value,
            tail_bound: &self.tail_bound + &other.tail_bound,
        }
    }

    /// Difference of enclosures; radii add.
    pub fn sub(&self, other: &ExactProb) -> ExactProb {
        ExactProb {
            value: &self.value - &other.value,
            tail_bound: &self.tail_bound + &other.tail_bound,
        }
    }

    /// Product enclosure: radius |a| eb + |b| ea + ea eb.
    pub fn mul(&self, other: &ExactProb) -> ExactProb {
        let tail = self.value.abs() * &other.tail_bound
            + other.value.abs() * &self.tail_bound
            + &self.tail_bound * &other.tail_bound;
        ExactProb {
            value: &self.value * &other.value,
            tail_bound: tail,
        }
    }

    /// Scales by an exact rational.
    pub fn scale(&self, c: &Rational) -> ExactProb {
        ExactProb {
            value: &self.value * c,
            tail_bound: &self.tail_bound * c.abs(),
        }
    }

    /// Quotient enclosure; the divisor interval must exclude zero.
    pub fn div(&self, other: &ExactProb) -> Result<ExactProb> {
        let b = other.value.abs();
        if b <= other.tail_bound {
            return Err(Error::ZeroDenominator(
                "divisor enclosure contains zero".into(),
            ));
        }
        let tail = (&self.tail_bound * &b + self.value.abs() * &other.tail_bound)
            / (&b * (&b - &other.tail_bound));
        Ok(ExactProb {
            value: &self.value / &other.value,
            tail_bound: tail,
        })
    }

    /// 1 minus the value, same radius.
    pub fn complement(&self) -> ExactProb {
        ExactProb {
            value: Rational::one() - &self.value,
            tail_bound: self.tail_bound.clone(),
        }
    }

    /// k-fold product of the enclosure with itself.
    pub fn pow(&self, k: usize) -> ExactProb {
        let mut out = ExactProb::exact(Rational::one());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Lower and upper ends of the enclosure.
    pub fn bounds(&self) -> (Rational, Rational) {
        (
            &self.value - &self.tail_bound,
            &self.value + &self.tail_bound,
        )
    }

    /// Nearest double of the center.
    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.value)
    }
}

/// Truncated (x; q)_infinity with a certified tail: multiplies the first
/// `terms` factors (1 - x q^i) and bounds the rest by R/(1-R) relatively,
/// R = |x| |q|^terms / (1 - |q|). Needs |q| < 1 and R < 1.
pub fn pochhammer_trunc(x: &Rational, q: &Rational, terms: usize) -> Result<ExactProb> {
    if q.abs() >= Rational::one() {
        return Err(Error::Domain("pochhammer products need |q| < 1".into()));
    }
    if x.is_zero() {
        return Ok(ExactProb::exact(Rational::one()));
    }
    let mut value = Rational::one();
    let mut qi = Rational::one();
    for _ in 0..terms {
        value *= Rational::one() - x * &qi;
        qi *= q;
    }
    let r = x.abs() * qi.abs() / (Rational::one() - q.abs());
    if r >= Rational::one() {
        return Err(Error::TruncationTooShort(format!(
            "{} factors leave tail envelope {} >= 1",
            terms, r
        )));
    }
    let tail = value.abs() * &r / (Rational::one() - &r);
    Ok(ExactProb::with_tail(value, tail))
}

/// (x; q)_infinity truncated adaptively until the certified tail is at most
/// tol.
pub fn pochhammer_auto(x: &Rational, q: &Rational, tol: &Rational) -> Result<ExactProb> {
    if q.abs() >= Rational::one() {
        return Err(Error::Domain("pochhammer products need |q| < 1".into()));
    }
    if x.is_zero() {
        return Ok(ExactProb::exact(Rational::one()));
    }
    let mut value = Rational::one();
    let mut qi = Rational::one();
    let one_minus_q = Rational::one() - q.abs();
    for _ in 0..=100_000usize {
        let r = x.abs() * qi.abs() / &one_minus_q;
        if r < Rational::one() {
            let tail = value.abs() * &r / (Rational::one() - &r);
            if tail <= *tol {
                return Ok(ExactProb::with_tail(value, tail));
            }
        }
        value *= Rational::one() - x * &qi;
        qi *= q;
    }
    Err(Error::TruncationTooShort(
        "pochhammer tail did not reach tolerance within 100000 factors".into(),
    ))
}

/// A power series in u truncated after degree `coeffs.len() - 1`; all stored
/// coefficients are exact.
#[derive(Clone, Debug, PartialEq)]
pub struct USeries {
    coeffs: Vec<Rational>,
}

impl USeries {
    /// Series from explicit coefficients, constant term first.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series stores degree >= 0");
        USeries { coeffs }
    }

    /// The zero series truncated at the given degree.
    pub fn zero(degree: usize) -> Self {
        USeries {
            coeffs: vec![Rational::zero(); degree + 1],
        }
    }

    /// The constant 1 truncated at the given degree.
    pub fn one(degree: usize) -> Self {
        let mut s = USeries::zero(degree);
        s.coeffs[0] = Rational::one();
        s
    }

    /// c * u^k truncated at the given degree.
    pub fn monomial(k: usize, c: Rational, degree: usize) -> Self {
        assert!(k <= degree, "monomial degree exceeds truncation");
        let mut s = USeries::zero(degree);
        s.coeffs[k] = c;
        s
    }

    /// Truncation degree.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of u^n if within the truncation.
    pub fn coeff(&self, n: usize) -> Option<&Rational> {
        self.coeffs.get(n)
    }

    /// All stored coefficients.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Sum, truncated to the shorter of the two series.
    pub fn add(&self, other: &USeries) -> USeries {
        let d = self.degree().min(other.degree());
        USeries {
            coeffs: (0..=d)
                .map(|i| &self.coeffs[i] + &other.coeffs[i])
                .collect(),
        }
    }

    /// Product, truncated to the shorter of the two series.
    pub fn mul(&self, other: &USeries) -> USeries {
        let d = self.degree().min(other.degree());
        let mut coeffs = vec![Rational::zero(); d + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(d + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(d + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        USeries { coeffs }
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &Rational) -> USeries {
        USeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn inverse(&self) -> Result<USeries> {
        if self.coeffs[0].is_zero() {
            return Err(Error::ZeroDenominator(
                "series with zero constant term has no inverse".into(),
            ));
        }
        let d = self.degree();
        let a0 = self.coeffs[0].recip();
        let mut inv = vec![Rational::zero(); d + 1];
        inv[0] = a0.clone();
        for n in 1..=d {
            let mut acc = Rational::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &inv[n - k];
                }
            }
            inv[n] = -acc * &a0;
        }
        Ok(USeries { coeffs: inv })
    }

    /// Substitutes u -> u^m; knowledge through u^(m(d+1)-1) is preserved.
    pub fn substitute_power(&self, m: usize) -> USeries {
        assert!(m >= 1, "substitution exponent must be positive");
        let d = self.degree();
        let mut coeffs = vec![Rational::zero(); m * (d + 1)];
        for (i, a) in self.coeffs.iter().enumerate() {
            coeffs[m * i] = a.clone();
        }
        USeries { coeffs }
    }

    /// Shortens the truncation degree.
    pub fn truncate(&self, degree: usize) -> USeries {
        assert!(degree <= self.degree(), "cannot extend a truncated series");
        USeries {
            coeffs: self.coeffs[..=degree].to_vec(),
        }
    }

    /// k-th power by repeated multiplication.
    pub fn pow(&self, k: usize) -> USeries {
        let mut out = USeries::one(self.degree());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Partial-sum evaluation at a point.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for a in self.coeffs.iter().rev() {
            acc = acc * x + a;
        }
        acc
    }

    /// exp of a series with zero constant term: g_0 = 1 and
    /// n g_n = sum_{k=1}^{n} k f_k g_{n-k}.
    pub fn exp(&self) -> Result<USeries> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Domain(
                "series exp needs a zero constant term".into(),
            ));
        }
        let d = self.degree();
        let mut g = vec![Rational::zero(); d + 1];
        g[0] = Rational::one();
        for n in 1..=d {
            let mut acc = Rational::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += rat_int(k as i64) * &self.coeffs[k] * &g[n - k];
                }
            }
            g[n] = acc / rat_int(n as i64);
        }
        Ok(USeries { coeffs: g })
    }
}

/// Coefficient of u^n in a truncated series; errors if the truncation does
/// not reach degree n.
pub fn coefficient_partial_sum(f: &USeries, n: usize) -> Result<Rational> {
    f.coeff(n).cloned().ok_or_else(|| {
        Error::TruncationTooShort(format!(
            "coefficient {} requested from a series truncated at degree {}",
            n,
            f.degree()
        ))
    })
}

/// u-expansion of prod_{r>=1} (1 - u/q^r) for |q| > 1, or of its reciprocal
/// when inverse is true, truncated at the given degree.
pub fn euler_series(degree: usize, q: &Rational, inverse: bool) -> Result<USeries> {
    if q.abs() <= Rational::one() {
        return Err(Error::Domain("euler series needs |q| > 1".into()));
    }
    let mut coeffs = Vec::with_capacity(degree + 1);
    coeffs.push(Rational::one());
    let mut den = Rational::one();
    let mut qn = Rational::one();
    for n in 1..=degree {
        qn *= q;
        den *= &qn - Rational::one();
        let a = if inverse {
            rat_pow(q, n * (n - 1) / 2) / &den
        } else if n % 2 == 0 {
            den.recip()
        } else {
            -den.recip()
        };
        coeffs.push(a);
    }
    Ok(USeries { coeffs })
}

/// Certified partial sum of
/// log Pi = sum_{n>=1} (1/n) (1-t^n)/(1-q^n) p_n(x) p_n(y), stopping once the
/// geometric tail envelope drops below tol. Needs |q| < 1, |t| < 1, and
/// rho_x rho_y < 1 where rho bounds the decay of each power-sum sequence.
pub fn log_pi_sum(
    x: &VariableSpec,
    y: &VariableSpec,
    q: &Rational,
    t: &Rational,
    tol: &Rational,
) -> Result<ExactProb> {
    if q.abs() >= Rational::one() || t.abs() >= Rational::one() {
        return Err(Error::Domain("log Pi needs |q| < 1 and |t| < 1".into()));
    }
    let (cx, rx) = x.power_sum_envelope()?;
    let (cy, ry) = y.power_sum_envelope()?;
    if rx.is_zero() || ry.is_zero() || cx.is_zero() || cy.is_zero() {
        return Ok(ExactProb::exact(Rational::zero()));
    }
    let rho = &rx * &ry;
    if rho >= Rational::one() {
        return Err(Error::DivergentSeries(format!(
            "power sums decay like {} >= 1",
            rho
        )));
    }
    let big_b = &cx * &cy * (Rational::one() + t.abs()) / (Rational::one() - q.abs());
    let geom = (Rational::one() - &rho).recip();
    let mut sum = Rational::zero();
    let mut rho_n = Rational::one();
    for n in 1..=100_000usize {
        let tn = rat_pow(t, n);
        let qn = rat_pow(q, n);
        let term =
            (Rational::one() - tn) / (Rational::one() - qn) * power_sum(x, n)? * power_sum(y, n)?
                / rat_int(n as i64);
        sum += term;
        rho_n *= &rho;
        let tail = &big_b * &rho_n * &rho * &geom;
        if tail <= *tol {
            return Ok(ExactProb::with_tail(sum, tail));
        }
    }
    Err(Error::TruncationTooShort(
        "log Pi tail did not reach tolerance within 100000 terms".into(),
    ))
}

impl FromStr for VariableSpec {
    type Err = Error;

    /// Parses "geometric:first,ratio" or a comma/space list of rationals.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if let Some(rest) = t.strip_prefix("geometric:") {
            let parts: Vec<&str> = rest.split(',').collect();
            if parts.len() != 2 {
                return Err(Error::Parse(format!(
                    "geometric spec needs `geometric:first,ratio`, got `{}`",
                    s
                )));
            }
            return Ok(VariableSpec::geometric(
                parse_rational(parts[0])?,
                parse_rational(parts[1])?,
            ));
        }
        let values = t
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|tok| !tok.is_empty())
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        Ok(VariableSpec::finite(values))
    }
}
