//! Measures on partitions driven by the Macdonald kernel.
//!
//! A measure is specified by variable contents x, y and parameters (q, t).
//! The chance assigned to lambda after the first N growth intervals is
//!
//!   P^N(lambda) = b_lambda(q,t) P_lambda(x_1..x_N) P_lambda(y) / Pi_N
//!
//! where Pi_N = prod_{i<=N} prod_j (t x_i y_j; q)_inf / (x_i y_j; q)_inf
//! normalizes the total mass to 1. Two named parameter families get closed
//! forms:
//!
//! * hall_littlewood_gl(u, qf): q = 0, t = 1/qf, x_i = u/qf^i,
//!   y_j = 1/qf^(j-1). After N intervals,
//!   P^N(lambda) = u^|lambda| (u/qf)_N (1/qf)_N / (1/qf)_{N-r}
//!   times prod_i 1 / (qf^(c_i^2) (1/qf)_{m_i}), with r the row count,
//!   c_i the column lengths, m_i the part multiplicities, and
//!   (x)_N = prod_{k=0}^{N-1} (1 - x/qf^k). Dividing by u^n at |lambda| = n
//!   recovers the conjugacy class proportions of GL(n, qf).
//!
//! * schur_q_plancherel(u, qf): q = t = 1/qf with the same x, y. After N
//!   intervals, with T = 1/qf,
//!   P^N(lambda) = [prod_{r=1}^N (u T^r; T)_inf] u^|lambda| T^(|lambda|+2n(lambda))
//!   times prod_s (1 - T^(N+content)) / (1 - T^hook)^2.
//!
//! Conditioned on |lambda| = n, the schur_q_plancherel family assigns mass
//! proportional to j_lambda(qf), the square of the Kostka-Foulkes
//! polynomial of the conjugate shape; J_n sums j_lambda over partitions
//! of n, has degree n(n-1), palindromic coefficients, and J_n(1) = n!.
//!
//! Quantities needing an infinite product carry a certified tail bound via
//! ExactProb; everything else is an exact rational.

use crate::error::{Error, Result};
use crate::kernel::{
    b_weight, g_coefficients, macdonald_eval_finite, principal_specialization, QTParams,
};
use crate::partition::{partitions_of, PartitionShape};
use crate::qseries::{
    pochhammer_auto, rat_int, rat_pow, ExactProb, Rational, USeries, VariableSpec,
};
use crate::tableaux::kostka_foulkes;
use num::{BigInt, One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Default certified-tail tolerance, 2^-40.
pub fn default_tail_tol() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(2u32).pow(40))
}

/// A polynomial in q with integer coefficients.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct JPolynomial {
    coeffs: Vec<BigInt>,
}

impl JPolynomial {
    /// The zero polynomial.
    pub fn zero() -> Self {
        JPolynomial { coeffs: Vec::new() }
    }

    /// The constant 1.
    pub fn one() -> Self {
        JPolynomial::monomial(0)
    }

    /// The monomial q^k.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        JPolynomial { coeffs }
    }

    /// Builds from coefficients in increasing degree, trimming zeros.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        JPolynomial { coeffs }
    }

    /// [m] = 1 + q + ... + q^(m-1); zero when m = 0.
    pub fn q_integer(m: usize) -> Self {
        JPolynomial {
            coeffs: vec![BigInt::one(); m],
        }
    }

    /// [n]! = [1][2]...[n].
    pub fn q_factorial(n: usize) -> Self {
        let mut out = JPolynomial::one();
        for m in 1..=n {
            out = out.mul(&JPolynomial::q_integer(m));
        }
        out
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of q^k.
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Coefficients in increasing degree, highest nonzero.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Sum of two polynomials.
    pub fn add(&self, other: &JPolynomial) -> JPolynomial {
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len().max(other.coeffs.len())];
        for (k, c) in coeffs.iter_mut().enumerate() {
            *c = self.coeff(k) + other.coeff(k);
        }
        JPolynomial::from_coeffs(coeffs)
    }

    /// Product of two polynomials.
    pub fn mul(&self, other: &JPolynomial) -> JPolynomial {
        if self.is_zero() || other.is_zero() {
            return JPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        JPolynomial::from_coeffs(coeffs)
    }

    /// Exact quotient, or None when the division leaves a remainder.
    pub fn div_exact(&self, den: &JPolynomial) -> Option<JPolynomial> {
        if den.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(JPolynomial::zero());
        }
        if self.coeffs.len() < den.coeffs.len() {
            return None;
        }
        let dd = den.coeffs.len() - 1;
        let lead = &den.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let qd = rem.len() - den.coeffs.len();
        let mut quot = vec![BigInt::zero(); qd + 1];
        for k in (0..=qd).rev() {
            let (q, r) = num::Integer::div_rem(&rem[k + dd], lead);
            if !r.is_zero() {
                return None;
            }
            for (j, c) in den.coeffs.iter().enumerate() {
                let delta = &q * c;
                rem[k + j] -= delta;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(JPolynomial::from_coeffs(quot))
    }

    /// Horner evaluation at a rational point.
    pub fn eval(&self, q: &Rational) -> Rational {
        let mut out = Rational::zero();
        for c in self.coeffs.iter().rev() {
            out = out * q + Rational::from(c.clone());
        }
        out
    }

    /// True when coeff(k) = coeff(degree - k) for all k.
    pub fn is_palindromic(&self) -> bool {
        let n = self.coeffs.len();
        (0..n / 2).all(|k| self.coeffs[k] == self.coeffs[n - 1 - k])
    }
}

impl fmt::Display for JPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.magnitude();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let coeff_shown = !mag.is_one() || k == 0;
            if coeff_shown {
                write!(f, "{}", mag)?;
            }
            if k == 1 {
                write!(f, "q")?;
            } else if k > 1 {
                write!(f, "q^{}", k)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for JPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl TryFrom<Vec<String>> for JPolynomial {
    type Error = Error;
    fn try_from(v: Vec<String>) -> Result<Self> {
        let coeffs = v
            .iter()
            .map(|s| {
                s.parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad integer coefficient `{}`", s)))
            })
            .collect::<Result<Vec<BigInt>>>()?;
        Ok(JPolynomial::from_coeffs(coeffs))
    }
}

impl From<JPolynomial> for Vec<String> {
    fn from(p: JPolynomial) -> Self {
        p.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

/// A measure family on partitions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
#[allow(clippy::large_enum_variant)] // boxing the general variant would clutter every match
pub enum MeasureSpec {
    /// Explicit variable contents and parameters.
    General {
        /// Values substituted into the growing coordinate.
        x: VariableSpec,
        /// Values substituted into the fixed coordinate.
        y: VariableSpec,
        /// Kernel parameters.
        #[serde(flatten)]
        params: QTParams,
    },
    /// q = 0, t = 1/qf, x_i = u/qf^i, y_j = 1/qf^(j-1): the part sizes of a
    /// random polynomial of a uniform element of GL(n, qf), with n drawn
    /// with chance proportional to u^n.
    HallLittlewoodGl {
        /// Size parameter in (0, 1].
        #[serde(with = "crate::qseries::rational_string")]
        u: Rational,
        /// Prime power parameter, > 1.
        #[serde(with = "crate::qseries::rational_string")]
        qf: Rational,
    },
    /// q = t = 1/qf with the same principal variables.
    SchurQPlancherel {
        /// Size parameter in (0, 1].
        #[serde(with = "crate::qseries::rational_string")]
        u: Rational,
        /// Base parameter, > 1.
        #[serde(with = "crate::qseries::rational_string")]
        qf: Rational,
    },
}

impl MeasureSpec {
    /// Builds the Hall-Littlewood family over GL(n, qf).
    pub fn hall_littlewood_gl(u: Rational, qf: Rational) -> Self {
        MeasureSpec::HallLittlewoodGl { u, qf }
    }

    /// Builds the q-analogue of the Plancherel family.
    pub fn schur_q_plancherel(u: Rational, qf: Rational) -> Self {
        MeasureSpec::SchurQPlancherel { u, qf }
    }

    /// Checks parameter domains and the convergence condition.
    pub fn validate(&self) -> Result<()> {
        match self {
            MeasureSpec::General { x, y, params } => {
                if !params.in_measure_domain() {
                    return Err(Error::Domain(
                        "measure parameters need 0 <= q < 1 and 0 <= t < 1".into(),
                    ));
                }
                if !x.is_nonnegative() || !y.is_nonnegative() {
                    return Err(Error::Domain("variable values must be nonnegative".into()));
                }
                let (_, rho_x) = x.power_sum_envelope()?;
                let (_, rho_y) = y.power_sum_envelope()?;
                if rho_x * rho_y >= Rational::one() {
                    return Err(Error::DivergentSeries(
                        "the product of the largest x and y values must be below 1".into(),
                    ));
                }
                Ok(())
            }
            MeasureSpec::HallLittlewoodGl { u, qf } | MeasureSpec::SchurQPlancherel { u, qf } => {
                if u.is_negative() || *u > Rational::one() {
                    return Err(Error::Domain("u must lie in [0, 1]".into()));
                }
                if *qf <= Rational::one() {
                    return Err(Error::Domain("qf must exceed 1".into()));
                }
                Ok(())
            }
        }
    }

    /// Variable contents and parameters realizing this family.
    pub fn components(&self) -> (VariableSpec, VariableSpec, QTParams) {
        match self {
            MeasureSpec::General { x, y, params } => (x.clone(), y.clone(), params.clone()),
            MeasureSpec::HallLittlewoodGl { u, qf } => {
                let tv = qf.recip();
                (
                    VariableSpec::geometric(u * &tv, tv.clone()),
                    VariableSpec::geometric(Rational::one(), tv.clone()),
                    QTParams::hall_littlewood(tv),
                )
            }
            MeasureSpec::SchurQPlancherel { u, qf } => {
                let tv = qf.recip();
                (
                    VariableSpec::geometric(u * &tv, tv.clone()),
                    VariableSpec::geometric(Rational::one(), tv.clone()),
                    QTParams::schur_like(tv),
                )
            }
        }
    }

    /// The same measure written in the general form.
    pub fn to_general(&self) -> MeasureSpec {
        let (x, y, params) = self.components();
        MeasureSpec::General { x, y, params }
    }
}

/// P_shape(values) for a finite list, or the scaled principal value for a
/// geometric tower whose ratio equals t.
fn kernel_eval(shape: &PartitionShape, spec: &VariableSpec, p: &QTParams) -> Result<Rational> {
    match spec {
        VariableSpec::FiniteList { values } => macdonald_eval_finite(shape, values, p),
        VariableSpec::Geometric { first, ratio } => {
            if *ratio != p.t {
                return Err(Error::UnsupportedSpec(
                    "geometric variables are evaluated through the principal formula, \
                     which needs ratio = t"
                        .into(),
                ));
            }
            Ok(rat_pow(first, shape.size()) * principal_specialization(shape, None, p)?)
        }
    }
}

fn check_below_one(a: &Rational) -> Result<()> {
    if a.abs() >= Rational::one() {
        return Err(Error::DivergentSeries(format!(
            "|{}| >= 1 in a geometric factor",
            a
        )));
    }
    Ok(())
}

/// Certified value of G(x) = sum_k g_k x^k = prod_j (t x y_j; q)_inf /
/// (x y_j; q)_inf for a single interval value x; exact whenever the
/// product telescopes to a rational.
pub fn interval_normalizer(
    xv: &Rational,
    y: &VariableSpec,
    p: &QTParams,
    tol: &Rational,
) -> Result<ExactProb> {
    if xv.is_zero() {
        return Ok(ExactProb::exact(Rational::one()));
    }
    match y {
        VariableSpec::FiniteList { values } => {
            if p.q == p.t {
                let mut out = Rational::one();
                for yv in values {
                    let a = xv * yv;
                    check_below_one(&a)?;
                    out /= Rational::one() - a;
                }
                Ok(ExactProb::exact(out))
            } else if p.q.is_zero() {
                let mut out = Rational::one();
                for yv in values {
                    let a = xv * yv;
                    check_below_one(&a)?;
                    out *= (Rational::one() - &p.t * &a) / (Rational::one() - &a);
                }
                Ok(ExactProb::exact(out))
            } else {
                let each = tol / rat_int(4 * (values.len() as i64 + 1));
                let mut acc = ExactProb::exact(Rational::one());
                for yv in values {
                    let a = xv * yv;
                    check_below_one(&a)?;
                    let num = pochhammer_auto(&(&p.t * &a), &p.q, &each)?;
                    let den = pochhammer_auto(&a, &p.q, &each)?;
                    acc = acc.mul(&num.div(&den)?);
                }
                Ok(acc)
            }
        }
        VariableSpec::Geometric { first, ratio } => {
            let a = xv * first;
            check_below_one(&a)?;
            if *ratio == p.t {
                // the tower telescopes: G(x) = 1 / (x first; q)_inf
                let den = pochhammer_auto(&a, &p.q, tol)?;
                ExactProb::exact(Rational::one()).div(&den)
            } else if p.q == p.t {
                // each factor is 1/(1 - x y_j): G(x) = 1 / (x first; ratio)_inf
                let den = pochhammer_auto(&a, ratio, tol)?;
                ExactProb::exact(Rational::one()).div(&den)
            } else if p.q.is_zero() {
                let each = tol / rat_int(8);
                let num = pochhammer_auto(&(&p.t * &a), ratio, &each)?;
                let den = pochhammer_auto(&a, ratio, &each)?;
                num.div(&den)
            } else {
                Err(Error::UnsupportedSpec(
                    "a geometric y with ratio different from t is only supported at q = 0 \
                     or q = t"
                        .into(),
                ))
            }
        }
    }
}

fn hallgl_pmf_closed(
    u: &Rational,
    qf: &Rational,
    n_intervals: usize,
    shape: &PartitionShape,
) -> Rational {
    let rows = shape.rows();
    if rows > n_intervals {
        return Rational::zero();
    }
    let tv = qf.recip();
    let mut out = rat_pow(u, shape.size());
    for r in 1..=n_intervals {
        out *= Rational::one() - u * rat_pow(&tv, r);
    }
    for r in (n_intervals - rows + 1)..=n_intervals {
        out *= Rational::one() - rat_pow(&tv, r);
    }
    for i in 1..=shape.part(1) {
        let col = shape.col_len(i);
        out /= rat_pow(qf, col * col);
        for k in 1..=shape.multiplicity(i) {
            out /= Rational::one() - rat_pow(&tv, k);
        }
    }
    out
}

fn schur_pmf_closed(
    u: &Rational,
    qf: &Rational,
    n_intervals: usize,
    shape: &PartitionShape,
) -> Result<ExactProb> {
    let rows = shape.rows();
    if rows > n_intervals {
        return Ok(ExactProb::exact(Rational::zero()));
    }
    let tv = qf.recip();
    let each = default_tail_tol() / rat_int(2 * (n_intervals as i64 + 1));
    let mut acc = ExactProb::exact(Rational::one());
    for r in 1..=n_intervals {
        acc = acc.mul(&pochhammer_auto(&(u * rat_pow(&tv, r)), &tv, &each)?);
    }
    let mut exact = rat_pow(u, shape.size()) * rat_pow(&tv, shape.size() + 2 * shape.n_stat());
    for cell in shape.cells() {
        let st = shape.cell_stats(cell)?;
        let e = n_intervals as i64 + st.content;
        exact *= Rational::one() - rat_pow(&tv, usize::try_from(e).expect("content >= 1 - rows"));
        let h = Rational::one() - rat_pow(&tv, st.hook);
        exact /= &h * &h;
    }
    Ok(acc.scale(&exact))
}

fn general_pmf(
    x: &VariableSpec,
    y: &VariableSpec,
    p: &QTParams,
    n_intervals: usize,
    shape: &PartitionShape,
) -> Result<ExactProb> {
    if shape.rows() > n_intervals {
        return Ok(ExactProb::exact(Rational::zero()));
    }
    let xs = x.prefix(n_intervals);
    let weight =
        b_weight(shape, p)? * macdonald_eval_finite(shape, &xs, p)? * kernel_eval(shape, y, p)?;
    if weight.is_zero() {
        // the normalizer is a positive constant, so the mass is exactly zero
        return Ok(ExactProb::exact(weight));
    }
    let each = default_tail_tol() / rat_int(2 * (n_intervals as i64 + 1));
    let mut norm = ExactProb::exact(Rational::one());
    for xv in &xs {
        norm = norm.mul(&interval_normalizer(xv, y, p, &each)?);
    }
    ExactProb::exact(weight).div(&norm)
}

/// Mass the measure assigns to a shape after the first N growth intervals.
pub fn pmf_truncated(
    spec: &MeasureSpec,
    n_intervals: usize,
    shape: &PartitionShape,
) -> Result<ExactProb> {
    spec.validate()?;
    match spec {
        MeasureSpec::HallLittlewoodGl { u, qf } => Ok(ExactProb::exact(hallgl_pmf_closed(
            u,
            qf,
            n_intervals,
            shape,
        ))),
        MeasureSpec::SchurQPlancherel { u, qf } => schur_pmf_closed(u, qf, n_intervals, shape),
        MeasureSpec::General { x, y, params } => general_pmf(x, y, params, n_intervals, shape),
    }
}

/// Mass the untruncated measure assigns to a shape (named families only).
pub fn pmf_limit(spec: &MeasureSpec, shape: &PartitionShape) -> Result<ExactProb> {
    spec.validate()?;
    let tol = default_tail_tol();
    match spec {
        MeasureSpec::HallLittlewoodGl { u, qf } => {
            let tv = qf.recip();
            let poch = pochhammer_auto(&(u * &tv), &tv, &tol)?;
            let mut exact = rat_pow(u, shape.size());
            for i in 1..=shape.part(1) {
                let col = shape.col_len(i);
                exact /= rat_pow(qf, col * col);
                for k in 1..=shape.multiplicity(i) {
                    exact /= Rational::one() - rat_pow(&tv, k);
                }
            }
            Ok(poch.scale(&exact))
        }
        MeasureSpec::SchurQPlancherel { u, qf } => {
            let tv = qf.recip();
            // prod_{r>R} (u T^r; T)_inf lies in [1 - D, 1] with
            // D = u T^(R+1) / (1 - T)^2
            let mut r_cut = 1usize;
            let d_bound = loop {
                let d = u * rat_pow(&tv, r_cut + 1) / rat_pow(&(Rational::one() - &tv), 2);
                if &d * rat_int(2) <= tol || r_cut >= 10_000 {
                    break d;
                }
                r_cut += 1;
            };
            let each = &tol / rat_int(4 * (r_cut as i64 + 1));
            let mut acc = ExactProb::exact(Rational::one());
            for r in 1..=r_cut {
                acc = acc.mul(&pochhammer_auto(&(u * rat_pow(&tv, r)), &tv, &each)?);
            }
            acc = acc.mul(&ExactProb::with_tail(Rational::one(), d_bound));
            let mut exact =
                rat_pow(u, shape.size()) * rat_pow(&tv, shape.size() + 2 * shape.n_stat());
            for cell in shape.cells() {
                let h = Rational::one() - rat_pow(&tv, shape.cell_stats(cell)?.hook);
                exact /= &h * &h;
            }
            Ok(acc.scale(&exact))
        }
        MeasureSpec::General { .. } => Err(Error::UnsupportedSpec(
            "the untruncated law is available for the named families".into(),
        )),
    }
}

/// Exact ratio of untruncated masses top/bottom; the normalizer cancels.
pub fn pmf_ratio(
    spec: &MeasureSpec,
    top: &PartitionShape,
    bottom: &PartitionShape,
) -> Result<Rational> {
    spec.validate()?;
    let (x, y, p) = spec.components();
    let weight = |shape: &PartitionShape| -> Result<Rational> {
        Ok(b_weight(shape, &p)? * kernel_eval(shape, &x, &p)? * kernel_eval(shape, &y, &p)?)
    };
    let bottom_weight = weight(bottom)?;
    if bottom_weight.is_zero() {
        return Err(Error::ZeroDenominator(format!(
            "the measure assigns no mass to {}",
            bottom
        )));
    }
    Ok(weight(top)? / bottom_weight)
}

/// Generating function sum_k P^N(|lambda| = k) z^k through z^degree;
/// needs a regime whose interval normalizers are exact rationals.
pub fn size_pgf(spec: &MeasureSpec, n_intervals: usize, degree: usize) -> Result<USeries> {
    spec.validate()?;
    let (x, y, p) = spec.components();
    let g = g_coefficients(&y, &p, degree)?;
    let tol = default_tail_tol();
    let mut out = USeries::one(degree);
    for i in 1..=n_intervals {
        let xv = x.value_at(i);
        if xv.is_zero() {
            continue;
        }
        let norm = interval_normalizer(&xv, &y, &p, &tol)?;
        if !norm.is_exact() {
            return Err(Error::UnsupportedSpec(
                "the size generating function needs exact interval normalizers; \
                 this regime only certifies them"
                    .into(),
            ));
        }
        let mut coeffs = Vec::with_capacity(degree + 1);
        let mut xp = Rational::one();
        for gk in g.iter().take(degree + 1) {
            coeffs.push(gk * &xp / &norm.value);
            xp *= &xv;
        }
        out = out.mul(&USeries::from_coeffs(coeffs));
    }
    Ok(out)
}

/// j_lambda(q): the squared Kostka-Foulkes polynomial of the conjugate.
pub fn j_lambda(shape: &PartitionShape) -> JPolynomial {
    let k = kostka_foulkes(&shape.conjugate());
    k.mul(&k)
}

/// J_n(q) = sum of j_lambda over the partitions of n.
pub fn j_n(n: usize) -> JPolynomial {
    let mut out = JPolynomial::zero();
    for lam in partitions_of(n) {
        out = out.add(&j_lambda(&lam));
    }
    out
}

/// The conditional mass j_lambda / J_n as a pair of polynomials.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlancherelRatio {
    /// Numerator j_lambda.
    pub num: JPolynomial,
    /// Denominator J_n.
    pub den: JPolynomial,
}

impl PlancherelRatio {
    /// Evaluates the ratio at a rational point.
    pub fn eval(&self, qf: &Rational) -> Result<Rational> {
        let den = self.den.eval(qf);
        if den.is_zero() {
            return Err(Error::ZeroDenominator(format!(
                "the size-normalizing polynomial vanishes at {}",
                qf
            )));
        }
        Ok(self.num.eval(qf) / den)
    }
}

/// Mass of a shape under the measure conditioned on its size.
pub fn plancherel_conditional(shape: &PartitionShape) -> PlancherelRatio {
    PlancherelRatio {
        num: j_lambda(shape),
        den: j_n(shape.size()),
    }
}

fn binom_big(n: usize, k: usize) -> BigInt {
    let mut out = BigInt::one();
    for i in 0..k {
        out = out * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    out
}

/// Checks, for every n up to n_max, that s^(n^2) J_n(1/s) divided by
/// prod_{i<=n} (1 - s^i)^2 agrees through s^order with the coefficient of
/// u^n in prod_{m>=1} (1 - u s^m)^(-m); both sides are expanded
/// independently as exact power series in s.
#[allow(clippy::needless_range_loop)] // the index arithmetic reads better than iterator chains
pub fn j_series_identity_holds(n_max: usize, order: usize) -> bool {
    // Right side: build the u-coefficients of the double product by
    // multiplying in one factor (1 - u s^m)^(-m) at a time; factors with
    // m > order cannot touch coefficients of s^order or lower.
    let mut acc: Vec<USeries> = (0..=n_max)
        .map(|k| {
            if k == 0 {
                USeries::one(order)
            } else {
                USeries::zero(order)
            }
        })
        .collect();
    for m in 1..=order {
        let mut next = acc.clone();
        for k in 0..=n_max {
            for j in 0..k {
                let power = m * (k - j);
                if power > order {
                    continue;
                }
                let c = binom_big(m - 1 + (k - j), k - j);
                next[k] =
                    next[k].add(&acc[j].mul(&USeries::monomial(power, Rational::from(c), order)));
            }
        }
        acc = next;
    }
    for n in 0..=n_max {
        let jn = j_n(n);
        let mut lhs = USeries::zero(order);
        for (k, c) in jn.coeffs().iter().enumerate() {
            let e = n * n - k;
            if e <= order {
                lhs = lhs.add(&USeries::monomial(e, Rational::from(c.clone()), order));
            }
        }
        let mut den = USeries::one(order);
        for i in 1..=n {
            let factor = USeries::one(order).add(&USeries::monomial(i, rat_int(-1), order));
            den = den.mul(&factor).mul(&factor);
        }
        let inv = match den.inverse() {
            Ok(v) => v,
            Err(_) => return false,
        };
        lhs = lhs.mul(&inv);
        if lhs.coeffs() != acc[n].coeffs() {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::shape;
    use crate::qseries::rat;

    fn hl(u: (i64, i64), qf: i64) -> MeasureSpec {
        MeasureSpec::hall_littlewood_gl(rat(u.0, u.1), rat_int(qf))
    }

    fn sqp(u: (i64, i64), qf: i64) -> MeasureSpec {
        MeasureSpec::schur_q_plancherel(rat(u.0, u.1), rat_int(qf))
    }

    fn overlapping(a: &ExactProb, b: &ExactProb) -> bool {
        let (alo, ahi) = a.bounds();
        let (blo, bhi) = b.bounds();
        alo <= bhi && blo <= ahi
    }

    #[test]
    fn jpolynomial_arithmetic() {
        let p = JPolynomial::q_integer(3);
        let q = JPolynomial::q_integer(2);
        let prod = p.mul(&q);
        assert_eq!(prod.div_exact(&q), Some(p.clone()));
        assert_eq!(prod.div_exact(&p), Some(q.clone()));
        assert!(p.add(&JPolynomial::one()).div_exact(&q).is_none());
        assert_eq!(p.eval(&rat_int(2)), rat_int(7));
        assert!(p.is_palindromic());
        assert!(JPolynomial::q_factorial(4).is_palindromic());
        assert_eq!(
            JPolynomial::q_factorial(3).eval(&Rational::one()),
            rat_int(6)
        );
        assert_eq!(JPolynomial::zero().degree(), None);
        assert_eq!(prod.degree(), Some(3));
        assert_eq!(format!("{}", prod), "q^3 + 2q^2 + 2q + 1");
        let json = serde_json::to_string(&prod).unwrap();
        assert_eq!(json, "[\"1\",\"2\",\"2\",\"1\"]");
        assert_eq!(serde_json::from_str::<JPolynomial>(&json).unwrap(), prod);
    }

    #[test]
    fn hall_littlewood_closing_example() {
        // P^4((2,1,1)) = u^4 (u/q)_4 (1 - 1/q^3)(1 - 1/q^4)
        //                / (q^10 (1 - 1/q)^2)
        for (u, qf) in [(rat(1, 2), rat_int(2)), (rat(1, 3), rat_int(3))] {
            let tv = qf.recip();
            let mut want = rat_pow(&u, 4);
            for r in 1..=4 {
                want *= Rational::one() - &u * rat_pow(&tv, r);
            }
            want *= Rational::one() - rat_pow(&tv, 3);
            want *= Rational::one() - rat_pow(&tv, 4);
            want /= rat_pow(&qf, 10);
            want /= rat_pow(&(Rational::one() - &tv), 2);
            let spec = MeasureSpec::hall_littlewood_gl(u.clone(), qf.clone());
            let got = pmf_truncated(&spec, 4, &shape(&[2, 1, 1])).unwrap();
            assert!(got.is_exact());
            assert_eq!(got.value, want);
        }
    }

    #[test]
    fn hall_littlewood_point_masses() {
        let spec = hl((1, 2), 2);
        // no intervals: everything sits at the empty shape
        assert_eq!(
            pmf_truncated(&spec, 0, &PartitionShape::empty())
                .unwrap()
                .value,
            Rational::one()
        );
        assert_eq!(
            pmf_truncated(&spec, 0, &shape(&[1])).unwrap().value,
            Rational::zero()
        );
        // u = 0: same degeneracy at any truncation
        let dead = MeasureSpec::hall_littlewood_gl(Rational::zero(), rat_int(2));
        assert_eq!(
            pmf_truncated(&dead, 5, &PartitionShape::empty())
                .unwrap()
                .value,
            Rational::one()
        );
        assert_eq!(
            pmf_truncated(&dead, 5, &shape(&[2, 1])).unwrap().value,
            Rational::zero()
        );
    }

    #[test]
    fn named_hall_littlewood_matches_general_route() {
        // the closed form and the kernel-by-kernel construction are two
        // fully independent code paths and agree exactly
        let spec = hl((1, 2), 2);
        let general = spec.to_general();
        for n in 0..=4 {
            for lam in partitions_of(n) {
                for n_intervals in 0..=3 {
                    let a = pmf_truncated(&spec, n_intervals, &lam).unwrap();
                    let b = pmf_truncated(&general, n_intervals, &lam).unwrap();
                    assert!(a.is_exact() && b.is_exact(), "{} N={}", lam, n_intervals);
                    assert_eq!(a.value, b.value, "{} N={}", lam, n_intervals);
                }
            }
        }
    }

    #[test]
    fn named_schur_matches_general_route() {
        let spec = sqp((1, 2), 2);
        let general = spec.to_general();
        for n in 0..=4 {
            for lam in partitions_of(n) {
                for n_intervals in 1..=3 {
                    let a = pmf_truncated(&spec, n_intervals, &lam).unwrap();
                    let b = pmf_truncated(&general, n_intervals, &lam).unwrap();
                    assert!(
                        overlapping(&a, &b),
                        "{} N={}: {:?} vs {:?}",
                        lam,
                        n_intervals,
                        a.bounds(),
                        b.bounds()
                    );
                    assert!(a.tail_bound < default_tail_tol());
                }
            }
        }
    }

    #[test]
    fn truncated_mass_sums_match_size_pgf() {
        let spec = hl((1, 2), 2);
        for n_intervals in 0..=3 {
            let pgf = size_pgf(&spec, n_intervals, 6).unwrap();
            for k in 0..=6 {
                let mut total = Rational::zero();
                for lam in partitions_of(k) {
                    total += pmf_truncated(&spec, n_intervals, &lam).unwrap().value;
                }
                assert_eq!(&total, pgf.coeff(k).unwrap(), "k={} N={}", k, n_intervals);
            }
        }
    }

    #[test]
    fn size_pgf_handles_general_finite_regime() {
        let spec = MeasureSpec::General {
            x: VariableSpec::finite(vec![rat(1, 2), rat(1, 3)]),
            y: VariableSpec::finite(vec![rat(1, 2), rat(1, 4)]),
            params: QTParams::schur_like(rat(1, 2)),
        };
        let pgf = size_pgf(&spec, 2, 5).unwrap();
        for k in 0..=5 {
            let mut total = Rational::zero();
            for lam in partitions_of(k) {
                let mass = pmf_truncated(&spec, 2, &lam).unwrap();
                assert!(mass.is_exact());
                total += mass.value;
            }
            assert_eq!(&total, pgf.coeff(k).unwrap(), "k={}", k);
        }
        // a certified-only regime is refused
        assert!(matches!(
            size_pgf(&sqp((1, 2), 2), 2, 4),
            Err(Error::UnsupportedSpec(_))
        ));
    }

    #[test]
    fn ratio_examples() {
        // growing by one box from the empty shape costs u/(qf - 1)
        let spec = hl((1, 2), 2);
        assert_eq!(
            pmf_ratio(&spec, &shape(&[1]), &PartitionShape::empty()).unwrap(),
            rat(1, 2)
        );
        let spec3 = hl((1, 2), 3);
        assert_eq!(
            pmf_ratio(&spec3, &shape(&[1]), &PartitionShape::empty()).unwrap(),
            rat(1, 4)
        );
        // the row pair beats the column pair by qf^2
        let sq = sqp((1, 2), 2);
        assert_eq!(
            pmf_ratio(&sq, &shape(&[2]), &shape(&[1, 1])).unwrap(),
            rat_int(4)
        );
    }

    #[test]
    fn ratio_matches_truncated_masses_for_finite_x() {
        let spec = MeasureSpec::General {
            x: VariableSpec::finite(vec![rat(1, 2), rat(1, 3), rat(1, 5)]),
            y: VariableSpec::finite(vec![rat(1, 2), rat(1, 4)]),
            params: QTParams::new(rat(1, 3), rat(1, 2)),
        };
        for lam in partitions_of(3) {
            let top = pmf_truncated(&spec, 3, &lam).unwrap();
            let bot = pmf_truncated(&spec, 3, &shape(&[1])).unwrap();
            let want = pmf_ratio(&spec, &lam, &shape(&[1])).unwrap();
            // both masses carry certified tails; compare through intervals
            let got = top.div(&bot).unwrap();
            assert!(
                (got.value.clone() - &want).abs() <= got.tail_bound,
                "{}",
                lam
            );
        }
    }

    #[test]
    fn limit_agrees_with_deep_truncation() {
        let tol = rat(1, 1_000_000_000);
        for spec in [hl((1, 2), 2), sqp((1, 2), 2)] {
            for lam in [
                PartitionShape::empty(),
                shape(&[1]),
                shape(&[2, 1]),
                shape(&[3, 1, 1]),
            ] {
                let lim = pmf_limit(&spec, &lam).unwrap();
                let deep = pmf_truncated(&spec, 40, &lam).unwrap();
                let gap = (lim.value.clone() - &deep.value).abs();
                assert!(
                    gap <= &tol + &lim.tail_bound + &deep.tail_bound,
                    "{:?} {}",
                    spec,
                    lam
                );
            }
        }
        assert!(pmf_limit(&hl((1, 2), 2).to_general(), &shape(&[1])).is_err());
    }

    #[test]
    fn limit_mass_sums_stay_below_one() {
        let spec = hl((1, 2), 2);
        let mut total = Rational::zero();
        for n in 0..=8 {
            for lam in partitions_of(n) {
                let mass = pmf_limit(&spec, &lam).unwrap();
                assert!(mass.value > Rational::zero());
                total += mass.value;
            }
        }
        assert!(total < Rational::one());
        assert!(total > rat(99, 100));
    }

    #[test]
    fn j_polynomial_values() {
        assert_eq!(j_lambda(&shape(&[1])), JPolynomial::one());
        assert_eq!(j_lambda(&shape(&[2])), JPolynomial::monomial(2));
        assert_eq!(j_lambda(&shape(&[1, 1])), JPolynomial::one());
        // J_3 = q^6 + q^4 + 2q^3 + q^2 + 1
        let j3 = j_n(3);
        let want = JPolynomial::from_coeffs(
            [1i64, 0, 1, 2, 1, 0, 1]
                .iter()
                .map(|&c| BigInt::from(c))
                .collect(),
        );
        assert_eq!(j3, want);
    }

    #[test]
    fn j_matches_rational_product_formula() {
        // j_lambda(q) = q^(n^2 - n - 2 n(lambda)) ((1/q)_n)^2
        //               / prod_s (1 - q^(-hook))^2
        for qf in [rat_int(2), rat_int(3)] {
            let tv = qf.recip();
            for n in 0..=6 {
                for lam in partitions_of(n) {
                    let mut want = rat_pow(&qf, n * n) / rat_pow(&qf, n + 2 * lam.n_stat());
                    for m in 1..=n {
                        let f = Rational::one() - rat_pow(&tv, m);
                        want *= &f * &f;
                    }
                    for cell in lam.cells() {
                        let h = Rational::one() - rat_pow(&tv, lam.cell_stats(cell).unwrap().hook);
                        want /= &h * &h;
                    }
                    assert_eq!(j_lambda(&lam).eval(&qf), want, "{} at {}", lam, qf);
                }
            }
        }
    }

    #[test]
    fn j_n_shape_properties() {
        for n in 0..=7 {
            let j = j_n(n);
            let mut factorial = Rational::one();
            for k in 1..=n {
                factorial *= rat_int(k as i64);
            }
            assert_eq!(j.eval(&Rational::one()), factorial, "n={}", n);
            assert_eq!(j.degree(), Some(n * n.saturating_sub(1)), "n={}", n);
            assert!(j.is_palindromic(), "n={}", n);
        }
    }

    #[test]
    fn conditioned_measure_matches_j_ratios() {
        // conditioned on its size, the q-analogue of Plancherel measure
        // weights a shape by j_lambda
        for qf in [2, 3] {
            for u in [(1i64, 2i64), (1, 3)] {
                let spec = sqp(u, qf);
                let q = rat_int(qf);
                for n in 1..=5 {
                    let shapes = partitions_of(n);
                    let base = &shapes[0];
                    for lam in &shapes {
                        let want = j_lambda(lam).eval(&q) / j_lambda(base).eval(&q);
                        assert_eq!(
                            pmf_ratio(&spec, lam, base).unwrap(),
                            want,
                            "{} / {} at qf={} u={:?}",
                            lam,
                            base,
                            qf,
                            u
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn laurent_expansion_identity() {
        // s^(n^2) J_n(1/s) / prod_{i<=n} (1 - s^i)^2 equals the coefficient
        // of u^n in prod_m (1 - u s^m)^(-m), as a series in s
        assert!(j_series_identity_holds(3, 10));
    }

    #[test]
    fn conditional_ratio_struct() {
        let r = plancherel_conditional(&shape(&[2, 1]));
        assert_eq!(r.eval(&Rational::one()).unwrap(), rat(4, 6));
        assert_eq!(r.num, j_lambda(&shape(&[2, 1])));
        assert_eq!(r.den, j_n(3));
    }

    #[test]
    fn validation_rejects_bad_parameters() {
        assert!(hl((1, 2), 1).validate().is_err());
        assert!(MeasureSpec::hall_littlewood_gl(rat_int(2), rat_int(2))
            .validate()
            .is_err());
        assert!(MeasureSpec::hall_littlewood_gl(rat(-1, 2), rat_int(2))
            .validate()
            .is_err());
        let bad_qt = MeasureSpec::General {
            x: VariableSpec::finite(vec![rat(1, 2)]),
            y: VariableSpec::finite(vec![rat(1, 2)]),
            params: QTParams::new(rat_int(1), rat(1, 2)),
        };
        assert!(bad_qt.validate().is_err());
        let divergent = MeasureSpec::General {
            x: VariableSpec::finite(vec![rat_int(2)]),
            y: VariableSpec::finite(vec![rat(1, 2)]),
            params: QTParams::schur_like(rat(1, 2)),
        };
        assert!(divergent.validate().is_err());
        let negative = MeasureSpec::General {
            x: VariableSpec::finite(vec![rat(-1, 2)]),
            y: VariableSpec::finite(vec![rat(1, 2)]),
            params: QTParams::schur_like(rat(1, 2)),
        };
        assert!(negative.validate().is_err());
    }

    #[test]
    fn spec_serde_round_trip() {
        let specs = [
            hl((1, 2), 2),
            sqp((2, 3), 3),
            MeasureSpec::General {
                x: VariableSpec::finite(vec![rat(1, 2)]),
                y: VariableSpec::geometric(Rational::one(), rat(1, 3)),
                params: QTParams::new(rat(1, 5), rat(1, 3)),
            },
        ];
        for spec in specs {
            let json = serde_json::to_string(&spec).unwrap();
            let back: MeasureSpec = serde_json::from_str(&json).unwrap();
            assert_eq!(back, spec);
        }
        let json = serde_json::to_string(&hl((1, 2), 2)).unwrap();
        assert_eq!(
            json,
            "{\"family\":\"hall_littlewood_gl\",\"u\":\"1/2\",\"qf\":\"2\"}"
        );
    }
}
