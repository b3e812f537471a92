//! Conjugacy classes of the finite general linear groups GL(n, F_q).
//!
//! A class is indexed by attaching a partition lambda_phi to each monic
//! irreducible polynomial phi != z over F_q so that the degrees weighted by
//! partition sizes sum to n. The centralizer order factors over the
//! polynomials: the class size is |GL(n, q)| divided by the product of
//! B_{deg phi}(lambda_phi), where for an irreducible of degree m
//!
//!   B_m(lambda) = prod_i prod_{k=1}^{m_i(lambda)}
//!                   (q^(m d_i(lambda)) - q^(m (d_i(lambda) - k)))
//!
//! and d_i(lambda) = sum_{h<i} h m_h(lambda) + i (m_i + m_{i+1} + ...),
//! which also equals lambda'_1 + ... + lambda'_i.
//!
//! B_m(lambda) has the closed form
//! q^(m(|lambda| + 2 n(lambda))) prod_i prod_{k=1}^{m_i} (1 - q^(-km)),
//! which ties the class sizes to Hall-Littlewood principal specializations
//! and makes the per-polynomial marginal of a uniform class in GL(n, q),
//! with n geometric of parameter u, match the q = 0 Macdonald measure at
//! x_i = u^m / q^(im), y_i = 1 / q^((i-1)m), t = 1 / q^m.

use crate::error::{Error, Result};
use crate::partition::{partitions_of, PartitionShape};
use crate::qseries::{euler_series, rat_pow, Rational, USeries};
use num::{BigInt, One, Zero};
use serde::{Deserialize, Serialize};

/// |GL(n, q)| = q^(n(n-1)/2) (q - 1)(q^2 - 1)...(q^n - 1).
pub fn gl_order(n: usize, q: u64) -> BigInt {
    gl_order_big(n, &BigInt::from(q))
}

fn gl_order_big(n: usize, q: &BigInt) -> BigInt {
    let mut out = num::pow(q.clone(), n * n.saturating_sub(1) / 2);
    let mut qi = BigInt::one();
    for _ in 1..=n {
        qi *= q;
        out *= &qi - BigInt::one();
    }
    out
}

/// |GL(n, q)| with a rational q, used by tableau mass formulas.
pub fn gl_order_rat(n: usize, q: &Rational) -> Rational {
    let mut out = rat_pow(q, n * n.saturating_sub(1) / 2);
    let mut qi = Rational::one();
    for _ in 1..=n {
        qi *= q;
        out *= &qi - Rational::one();
    }
    out
}

fn mobius(mut m: usize) -> i64 {
    let mut mu = 1i64;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if m > 1 {
        mu = -mu;
    }
    mu
}

/// Number of monic irreducible polynomials of degree d over F_q:
/// (1/d) sum_{e | d} mu(e) q^(d/e).
pub fn irreducible_count(d: usize, q: u64) -> Result<BigInt> {
    if d == 0 {
        return Err(Error::Domain("irreducible degrees start at 1".into()));
    }
    let qb = BigInt::from(q);
    let mut sum = BigInt::zero();
    for e in 1..=d {
        if d.is_multiple_of(e) {
            sum += BigInt::from(mobius(e)) * num::pow(qb.clone(), d / e);
        }
    }
    let (quot, rem) = num::Integer::div_rem(&sum, &BigInt::from(d));
    assert!(rem.is_zero(), "necklace count was not an integer");
    Ok(quot)
}

/// Slots available at degree d: all monic irreducibles, except that degree 1
/// excludes z because invertible matrices have no zero eigenvalue.
pub fn slot_count(d: usize, q: u64) -> Result<BigInt> {
    let mut c = irreducible_count(d, q)?;
    if d == 1 {
        c -= BigInt::one();
    }
    Ok(c)
}

/// d_i(lambda) = sum_{h<i} h m_h + i (m_i + m_{i+1} + ...); equivalently the
/// sum of the first i conjugate parts.
pub fn d_stat(shape: &PartitionShape, i: usize) -> usize {
    let mut below = 0usize;
    let mut at_or_above = 0usize;
    for &part in shape.parts() {
        if part < i {
            below += part;
        } else {
            at_or_above += 1;
        }
    }
    below + i * at_or_above
}

/// B_m(lambda): the centralizer-order factor contributed by a partition
/// attached to an irreducible of degree m.
pub fn b_m_factor(m: usize, shape: &PartitionShape, q: u64) -> BigInt {
    let qb = BigInt::from(q);
    let mut out = BigInt::one();
    let mut i = 0usize;
    for &part in shape.parts() {
        if part == i {
            continue; // part sizes handled once each
        }
        i = part;
        let d = d_stat(shape, i);
        for k in 1..=shape.multiplicity(i) {
            out *= num::pow(qb.clone(), m * d) - num::pow(qb.clone(), m * (d - k));
        }
    }
    out
}

/// One irreducible-polynomial slot of a class datum together with its
/// attached nonempty partition.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClassFactor {
    /// Degree of the irreducible polynomial.
    pub degree: usize,
    /// Index of the polynomial among the slots of that degree, from 0.
    pub slot: usize,
    /// The nonempty partition attached to it.
    pub shape: PartitionShape,
}

/// A conjugacy class of GL(n, q): finitely many slots with nonempty
/// partitions whose degree-weighted sizes sum to n.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClassDatum {
    /// The slots carrying nonempty partitions, sorted by (degree, slot).
    pub factors: Vec<ClassFactor>,
}

impl ClassDatum {
    /// Builds a datum, sorting factors and validating basic structure.
    pub fn new(mut factors: Vec<ClassFactor>) -> Result<Self> {
        factors.sort();
        for f in &factors {
            if f.degree == 0 {
                return Err(Error::InvalidDatum("degree-0 slot".into()));
            }
            if f.shape.is_empty() {
                return Err(Error::InvalidDatum(
                    "slots with empty partitions must be omitted".into(),
                ));
            }
        }
        for w in factors.windows(2) {
            if (w[0].degree, w[0].slot) == (w[1].degree, w[1].slot) {
                return Err(Error::InvalidDatum(format!(
                    "slot ({}, {}) repeated",
                    w[0].degree, w[0].slot
                )));
            }
        }
        Ok(ClassDatum { factors })
    }

    /// sum over factors of degree * |shape|; the n of GL(n, q).
    pub fn total_size(&self) -> usize {
        self.factors.iter().map(|f| f.degree * f.shape.size()).sum()
    }

    /// Partition at a slot; empty when the slot carries none.
    pub fn shape_at(&self, degree: usize, slot: usize) -> PartitionShape {
        self.factors
            .iter()
            .find(|f| f.degree == degree && f.slot == slot)
            .map(|f| f.shape.clone())
            .unwrap_or_else(PartitionShape::empty)
    }
}

/// Size of the conjugacy class of GL(n, q) described by the datum:
/// |GL(n, q)| / prod B_{degree}(shape).
pub fn kung_class_size(n: usize, q: u64, datum: &ClassDatum) -> Result<BigInt> {
    if datum.total_size() != n {
        return Err(Error::InvalidDatum(format!(
            "datum fills {} of {} dimensions",
            datum.total_size(),
            n
        )));
    }
    let mut den = BigInt::one();
    for f in &datum.factors {
        let slots = slot_count(f.degree, q)?;
        if BigInt::from(f.slot) >= slots {
            return Err(Error::InvalidDatum(format!(
                "slot {} out of range for degree {} over F_{}",
                f.slot, f.degree, q
            )));
        }
        den *= b_m_factor(f.degree, &f.shape, q);
    }
    let (quot, rem) = num::Integer::div_rem(&gl_order(n, q), &den);
    assert!(
        rem.is_zero(),
        "centralizer order must divide the group order"
    );
    Ok(quot)
}

/// Multisets of nonempty partitions with total size exactly `total`, each
/// multiset listed in weakly decreasing order.
fn partition_multisets(total: usize) -> Vec<Vec<PartitionShape>> {
    let mut out = Vec::new();
    let mut acc: Vec<PartitionShape> = Vec::new();
    fn rec(
        remaining: usize,
        bound: Option<PartitionShape>,
        acc: &mut Vec<PartitionShape>,
        out: &mut Vec<Vec<PartitionShape>>,
    ) {
        if remaining == 0 {
            out.push(acc.clone());
            return;
        }
        for size in (1..=remaining).rev() {
            for p in partitions_of(size) {
                if let Some(b) = &bound {
                    if &p > b {
                        continue;
                    }
                }
                acc.push(p.clone());
                rec(remaining - size, Some(p), acc, out);
                acc.pop();
            }
        }
    }
    rec(total, None, &mut acc, &mut out);
    out
}

/// All ways to place a weakly decreasing multiset of partitions on distinct
/// slots 0..n_slots, as (slot, shape) lists.
fn slot_assignments(
    multiset: &[PartitionShape],
    n_slots: usize,
) -> Vec<Vec<(usize, PartitionShape)>> {
    // group equal partitions
    let mut groups: Vec<(PartitionShape, usize)> = Vec::new();
    for p in multiset {
        match groups.last_mut() {
            Some((g, c)) if g == p => *c += 1,
            _ => groups.push((p.clone(), 1)),
        }
    }
    let mut out = Vec::new();
    let mut chosen: Vec<(usize, PartitionShape)> = Vec::new();
    let available: Vec<usize> = (0..n_slots).collect();
    fn rec(
        groups: &[(PartitionShape, usize)],
        available: &[usize],
        chosen: &mut Vec<(usize, PartitionShape)>,
        out: &mut Vec<Vec<(usize, PartitionShape)>>,
    ) {
        let Some(((shape, count), rest)) = groups.split_first() else {
            out.push(chosen.clone());
            return;
        };
        // all index combinations of size count from available
        let mut combo: Vec<usize> = Vec::new();
        fn combos(
            from: &[usize],
            start: usize,
            need: usize,
            combo: &mut Vec<usize>,
            f: &mut dyn FnMut(&[usize]),
        ) {
            if need == 0 {
                f(combo);
                return;
            }
            for i in start..from.len() {
                if from.len() - i < need {
                    break;
                }
                combo.push(from[i]);
                combos(from, i + 1, need - 1, combo, f);
                combo.pop();
            }
        }
        combos(available, 0, *count, &mut combo, &mut |picked| {
            let picked_set: Vec<usize> = picked.to_vec();
            let mut next_avail: Vec<usize> = available.to_vec();
            next_avail.retain(|s| !picked_set.contains(s));
            let before = chosen.len();
            for &s in &picked_set {
                chosen.push((s, shape.clone()));
            }
            rec(rest, &next_avail, chosen, out);
            chosen.truncate(before);
        });
    }
    rec(&groups, &available, &mut chosen, &mut out);
    out
}

/// Every conjugacy class of GL(n, q) with its size, for n <= 5 and q in
/// {2, 3}; sorted by class datum.
pub fn enumerate_classes(n: usize, q: u64) -> Result<Vec<(ClassDatum, BigInt)>> {
    if n > 5 || !(q == 2 || q == 3) {
        return Err(Error::CapExceeded(format!(
            "class enumeration is capped at n <= 5 with q in {{2, 3}}; got n = {}, q = {}",
            n, q
        )));
    }
    let mut slot_counts = Vec::with_capacity(n + 1);
    slot_counts.push(0usize); // degree 0 unused
    for d in 1..=n {
        let c = slot_count(d, q)?;
        slot_counts.push(num::ToPrimitive::to_usize(&c).expect("slot count fits usize"));
    }
    let mut data: Vec<ClassDatum> = Vec::new();
    let mut acc: Vec<ClassFactor> = Vec::new();
    fn rec(
        degree: usize,
        budget: usize,
        slot_counts: &[usize],
        acc: &mut Vec<ClassFactor>,
        data: &mut Vec<ClassDatum>,
    ) {
        if degree == slot_counts.len() {
            if budget == 0 {
                data.push(ClassDatum {
                    factors: acc.clone(),
                });
            }
            return;
        }
        for boxes in 0..=budget / degree {
            for multiset in partition_multisets(boxes) {
                if multiset.len() > slot_counts[degree] {
                    continue;
                }
                for placement in slot_assignments(&multiset, slot_counts[degree]) {
                    let before = acc.len();
                    for (slot, shape) in placement {
                        acc.push(ClassFactor {
                            degree,
                            slot,
                            shape,
                        });
                    }
                    rec(degree + 1, budget - boxes * degree, slot_counts, acc, data);
                    acc.truncate(before);
                }
            }
        }
    }
    rec(1, n, &slot_counts, &mut acc, &mut data);
    let mut out = Vec::with_capacity(data.len());
    for datum in data {
        let datum = ClassDatum::new(datum.factors)?;
        let size = kung_class_size(n, q, &datum)?;
        out.push((datum, size));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// One degree of the group-side vs measure-side marginal comparison.
#[derive(Clone, Debug, Serialize)]
pub struct MarginalRow {
    /// Coefficient degree in u.
    pub n: usize,
    /// Group-side coefficient of u^n.
    #[serde(with = "crate::qseries::rational_string")]
    pub group: Rational,
    /// Measure-side coefficient of u^n.
    #[serde(with = "crate::qseries::rational_string")]
    pub measure: Rational,
    /// Exact equality of the two.
    pub matches: bool,
}

/// Report comparing, coefficient by coefficient in u, the chance that a
/// fixed degree-m slot carries the partition lambda.
#[derive(Clone, Debug, Serialize)]
pub struct MarginalReport {
    /// The fixed slot degree m.
    pub degree: usize,
    /// The partition whose marginal is compared.
    pub shape: PartitionShape,
    /// Field size.
    pub qf: u64,
    /// Per-degree comparisons through u^n_max.
    pub rows: Vec<MarginalRow>,
    /// True when every row matches.
    pub all_match: bool,
}

/// Compares (1 - u) sum_n u^n Prob_n(lambda at a fixed degree-m slot), built
/// from full class enumeration, against the u-expansion of the q = 0
/// Macdonald measure marginal
/// prod_{r>=1}(1 - u^m/q^(rm)) * u^(m |lambda|) / B_m(lambda).
pub fn marginal_vs_measure(
    shape: &PartitionShape,
    degree: usize,
    q: u64,
    n_max: usize,
) -> Result<MarginalReport> {
    if degree == 0 {
        return Err(Error::Domain("slot degree must be positive".into()));
    }
    if slot_count(degree, q)? < BigInt::one() {
        return Err(Error::Domain(format!(
            "no degree-{} slots over F_{}",
            degree, q
        )));
    }
    // group side: (1 - u) * sum_n Prob_n u^n
    let mut prob_coeffs = vec![Rational::zero(); n_max + 1];
    for (n, slot) in prob_coeffs.iter_mut().enumerate() {
        let classes = enumerate_classes(n, q)?;
        let mut hit = BigInt::zero();
        let mut total = BigInt::zero();
        for (datum, size) in &classes {
            total += size;
            if &datum.shape_at(degree, 0) == shape {
                hit += size;
            }
        }
        *slot = Rational::new(hit, total);
    }
    let mut omu = vec![Rational::zero(); n_max + 1];
    omu[0] = Rational::one();
    if n_max >= 1 {
        omu[1] = -Rational::one();
    }
    let group = USeries::from_coeffs(prob_coeffs).mul(&USeries::from_coeffs(omu));
    // measure side
    let qq = Rational::from_integer(BigInt::from(q));
    let big_q = rat_pow(&qq, degree);
    let euler = euler_series(n_max / degree, &big_q, false)?
        .substitute_power(degree)
        .truncate(n_max);
    let shift = degree * shape.size();
    let measure = if shift <= n_max {
        let c = Rational::from_integer(b_m_factor(degree, shape, q)).recip();
        euler.mul(&USeries::monomial(shift, c, n_max))
    } else {
        USeries::zero(n_max)
    };
    let mut rows = Vec::with_capacity(n_max + 1);
    let mut all_match = true;
    for n in 0..=n_max {
        let g = group.coeff(n).cloned().unwrap_or_else(Rational::zero);
        let m = measure.coeff(n).cloned().unwrap_or_else(Rational::zero);
        let matches = g == m;
        all_match &= matches;
        rows.push(MarginalRow {
            n,
            group: g,
            measure: m,
            matches,
        });
    }
    Ok(MarginalReport {
        degree,
        shape: shape.clone(),
        qf: q,
        rows,
        all_match,
    })
}
