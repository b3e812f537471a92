//! The Macdonald kernel: cell weights, horizontal-strip weights, one-variable
//! skew polynomials, principal specializations, interval-size coefficients,
//! and Pieri transition probabilities.
//!
//! For a cell s of lambda with arm a and leg l, the cell weight is
//! b_lambda(s) = (1 - q^a t^(l+1)) / (1 - q^(a+1) t^l), and b_lambda is the
//! product over all cells. When Lambda/lambda is a horizontal strip,
//! phi_{Lambda/lambda} is the product of b_Lambda(s)/b_lambda(s) over all
//! cells s of Lambda in columns that meet Lambda minus lambda, reading
//! b_mu(s) = 1 when s lies outside mu. The one-variable skew polynomial is
//! then P_{Lambda/lambda}(x) = (b_lambda / b_Lambda) phi_{Lambda/lambda}
//! x^(|Lambda| - |lambda|), and zero when the skew shape is not a horizontal
//! strip.
//!
//! The principal specialization in N variables 1, t, ..., t^(N-1) is
//! t^(n(lambda)) prod_s (1 - q^(coarm) t^(N - coleg)) / (1 - q^arm t^(leg+1)),
//! which vanishes exactly when lambda has more than N rows; with infinitely
//! many variables every numerator factor tends to 1.
//!
//! The interval-size coefficients g_k(y; q, t) are read off from
//! log sum_k g_k x^k = sum_{n>=1} (1/n) (1-t^n)/(1-q^n) p_n(y) x^n, and the
//! Pieri rule g_r(y) P_lambda(y) = sum_Lambda phi_{Lambda/lambda} P_Lambda(y)
//! makes phi_{Lambda/lambda} / g_r(y) * P_Lambda(y) / P_lambda(y) a
//! probability distribution over the horizontal strips of size r above
//! lambda.

use crate::error::{Error, Result};
use crate::partition::{Cell, PartitionShape};
use crate::qseries::{power_sum, rat_pow, Rational, USeries, VariableSpec};
use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// The (q, t) parameter pair of the Macdonald family.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QTParams {
    /// Macdonald q.
    #[serde(with = "crate::qseries::rational_string")]
    pub q: Rational,
    /// Macdonald t.
    #[serde(with = "crate::qseries::rational_string")]
    pub t: Rational,
}

impl QTParams {
    /// Generic (q, t).
    pub fn new(q: Rational, t: Rational) -> Self {
        QTParams { q, t }
    }

    /// Hall-Littlewood line q = 0.
    pub fn hall_littlewood(t: Rational) -> Self {
        QTParams {
            q: Rational::zero(),
            t,
        }
    }

    /// Schur line q = t.
    pub fn schur_like(v: Rational) -> Self {
        QTParams { q: v.clone(), t: v }
    }

    /// True when 0 <= q < 1 and 0 <= t < 1.
    pub fn in_measure_domain(&self) -> bool {
        !self.q.is_negative()
            && self.q < Rational::one()
            && !self.t.is_negative()
            && self.t < Rational::one()
    }
}

/// Numerator and denominator of b_lambda(s) for one cell inside lambda.
fn b_cell_parts(shape: &PartitionShape, cell: Cell, p: &QTParams) -> Result<(Rational, Rational)> {
    let st = shape.cell_stats(cell)?;
    let num = Rational::one() - rat_pow(&p.q, st.arm) * rat_pow(&p.t, st.leg + 1);
    let den = Rational::one() - rat_pow(&p.q, st.arm + 1) * rat_pow(&p.t, st.leg);
    Ok((num, den))
}

/// b_lambda = prod over cells of (1 - q^a t^(l+1)) / (1 - q^(a+1) t^l).
pub fn b_weight(shape: &PartitionShape, p: &QTParams) -> Result<Rational> {
    let mut num = Rational::one();
    let mut den = Rational::one();
    for cell in shape.cells() {
        let (n, d) = b_cell_parts(shape, cell, p)?;
        num *= n;
        den *= d;
    }
    if den.is_zero() {
        return Err(Error::SingularParameter(format!(
            "a b-denominator of {} vanished at q = {}, t = {}",
            shape, p.q, p.t
        )));
    }
    Ok(num / den)
}

/// phi_{big/small}: product of b_big(s)/b_small(s) over all cells of big in
/// columns meeting the strip, with b_mu(s) = 1 outside mu.
pub fn phi_weight(big: &PartitionShape, small: &PartitionShape, p: &QTParams) -> Result<Rational> {
    if !big.is_horizontal_strip_over(small) {
        return Err(Error::NotAStrip {
            upper: big.to_string(),
            lower: small.to_string(),
        });
    }
    let mut num = Rational::one();
    let mut den = Rational::one();
    for j in 1..=big.part(1) {
        if big.col_len(j) == small.col_len(j) {
            continue;
        }
        for i in 1..=big.col_len(j) {
            let cell = Cell::new(i, j);
            let (bn, bd) = b_cell_parts(big, cell, p)?;
            num *= bn;
            den *= bd;
            if small.contains_cell(cell) {
                let (sn, sd) = b_cell_parts(small, cell, p)?;
                num *= sd;
                den *= sn;
            }
        }
    }
    if den.is_zero() {
        return Err(Error::SingularParameter(format!(
            "phi denominator for {} over {} vanished at q = {}, t = {}",
            big, small, p.q, p.t
        )));
    }
    Ok(num / den)
}

/// One-variable skew Macdonald polynomial P_{big/small}(x), zero when the
/// skew shape is not a horizontal strip.
pub fn skew_one_var(
    big: &PartitionShape,
    small: &PartitionShape,
    x: &Rational,
    p: &QTParams,
) -> Result<Rational> {
    if !big.is_horizontal_strip_over(small) {
        return Ok(Rational::zero());
    }
    let b_small = b_weight(small, p)?;
    let b_big = b_weight(big, p)?;
    if b_big.is_zero() {
        return Err(Error::ZeroDenominator(format!(
            "b weight of {} vanished at q = {}, t = {}",
            big, p.q, p.t
        )));
    }
    let phi = phi_weight(big, small, p)?;
    let k = big.size() - small.size();
    Ok(b_small / b_big * phi * rat_pow(x, k))
}

/// P_lambda(1, t, ..., t^(N-1); q, t) for N variables, or the infinite
/// principal specialization when n_vars is None.
pub fn principal_specialization(
    shape: &PartitionShape,
    n_vars: Option<usize>,
    p: &QTParams,
) -> Result<Rational> {
    if let Some(n) = n_vars {
        if shape.col_len(1) > n {
            return Ok(Rational::zero());
        }
    }
    let mut num = Rational::one();
    let mut den = Rational::one();
    for cell in shape.cells() {
        let st = shape.cell_stats(cell)?;
        den *= Rational::one() - rat_pow(&p.q, st.arm) * rat_pow(&p.t, st.leg + 1);
        if let Some(n) = n_vars {
            num *= Rational::one() - rat_pow(&p.q, st.coarm) * rat_pow(&p.t, n - st.coleg);
        }
    }
    if den.is_zero() {
        return Err(Error::SingularParameter(format!(
            "principal specialization denominator of {} vanished at q = {}, t = {}",
            shape, p.q, p.t
        )));
    }
    Ok(rat_pow(&p.t, shape.n_stat()) * num / den)
}

/// g_0, ..., g_max_k where sum_k g_k x^k has logarithm
/// sum_{n>=1} (1/n) (1-t^n)/(1-q^n) p_n(y) x^n.
pub fn g_coefficients(y: &VariableSpec, p: &QTParams, max_k: usize) -> Result<Vec<Rational>> {
    if p.q.abs() >= Rational::one() {
        return Err(Error::Domain(
            "interval-size coefficients need |q| < 1".into(),
        ));
    }
    let mut log = vec![Rational::zero(); max_k + 1];
    for (n, slot) in log.iter_mut().enumerate().skip(1) {
        let tn = rat_pow(&p.t, n);
        let qn = rat_pow(&p.q, n);
        *slot = (Rational::one() - tn) / (Rational::one() - qn) * power_sum(y, n)?
            / crate::qseries::rat_int(n as i64);
    }
    Ok(USeries::from_coeffs(log).exp()?.coeffs().to_vec())
}

/// P_lambda(x_1, ..., x_m; q, t) evaluated by the branching rule
/// P_lambda(x_1..x_m) = sum_mu P_mu(x_1..x_{m-1}) P_{lambda/mu}(x_m).
pub fn macdonald_eval_finite(
    shape: &PartitionShape,
    xs: &[Rational],
    p: &QTParams,
) -> Result<Rational> {
    if shape.is_empty() {
        return Ok(Rational::one());
    }
    if shape.col_len(1) > xs.len() {
        return Ok(Rational::zero());
    }
    let mut level: HashMap<PartitionShape, Rational> = HashMap::new();
    level.insert(PartitionShape::empty(), Rational::one());
    for x in xs {
        let mut next: HashMap<PartitionShape, Rational> = HashMap::new();
        for (mu, val) in &level {
            let budget = shape.size() - mu.size();
            for k in 0..=budget {
                if k > 0 && x.is_zero() {
                    break;
                }
                for nu in mu.horizontal_strip_extensions(k, None) {
                    if !shape.contains(&nu) {
                        continue;
                    }
                    let w = if k == 0 {
                        Rational::one()
                    } else {
                        skew_one_var(&nu, mu, x, p)?
                    };
                    if w.is_zero() {
                        continue;
                    }
                    let entry = next.entry(nu).or_insert_with(Rational::zero);
                    *entry += val * w;
                }
            }
        }
        level = next;
    }
    Ok(level.get(shape).cloned().unwrap_or_else(Rational::zero))
}

/// Probability of moving from small to big, conditioned on adding a strip of
/// size |big| - |small|, under the y-side specialization:
/// phi_{big/small} / g_r(y) * P_big(y) / P_small(y).
pub fn pieri_transition(
    small: &PartitionShape,
    big: &PartitionShape,
    y: &VariableSpec,
    p: &QTParams,
) -> Result<Rational> {
    if !big.is_horizontal_strip_over(small) {
        return Err(Error::NotAStrip {
            upper: big.to_string(),
            lower: small.to_string(),
        });
    }
    let r = big.size() - small.size();
    let g = g_coefficients(y, p, r)?;
    let gr = &g[r];
    if gr.is_zero() {
        return Err(Error::ZeroDenominator(format!(
            "interval-size coefficient g_{} vanishes for this y",
            r
        )));
    }
    let (p_big, p_small) = match y {
        VariableSpec::FiniteList { values } => (
            macdonald_eval_finite(big, values, p)?,
            macdonald_eval_finite(small, values, p)?,
        ),
        VariableSpec::Geometric { first, ratio } => {
            if *ratio != p.t {
                return Err(Error::UnsupportedSpec(
                    "an infinite y sequence must be principal: ratio = t".into(),
                ));
            }
            if first.is_zero() {
                return Err(Error::ZeroDenominator("y is identically zero".into()));
            }
            // P is homogeneous: P(first * t^(i-1)) = first^|shape| * principal.
            (
                rat_pow(first, big.size()) * principal_specialization(big, None, p)?,
                rat_pow(first, small.size()) * principal_specialization(small, None, p)?,
            )
        }
    };
    if p_small.is_zero() {
        return Err(Error::ZeroDenominator(format!(
            "P_{}(y) = 0 under this specialization",
            small
        )));
    }
    let phi = phi_weight(big, small, p)?;
    Ok(phi / gr * p_big / p_small)
}
