//! Random-growth samplers for the partition measures: the general
//! interval-by-interval algorithm, its Hall-Littlewood simplification, the
//! column-selection algorithm whose history is a standard Young tableau, the
//! halting walk on the Young lattice, and the q-analogue of the hook walk.
//!
//! All randomness flows through RandomSource, a seeded ChaCha8 stream with
//! numbered substreams, so identical seeds reproduce identical traces across
//! runs and thread counts. Probabilities are exact rationals; each random
//! decision compares a 64-bit-resolution uniform draw against them, so any
//! single decision is within 2^-64 of its nominal probability and ties break
//! toward the smaller index.
//!
//! The growth algorithms conceptually flip infinitely many coins. Samplers
//! stop after a certified interval count M chosen so that the probability of
//! any later box is at most tail_tol, and report that bound as
//! truncation_bias on the returned trace; the walk and the hook walk
//! terminate on their own and report zero bias.

use num::{BigInt, One, Signed, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::{g_coefficients, pieri_transition, QTParams};
use crate::measures::{default_tail_tol, interval_normalizer, MeasureSpec};
use crate::partition::{Cell, PartitionShape};
use crate::qseries::{rat_int, rat_pow, rational_string, Rational, VariableSpec};
use crate::tableaux::StandardTableau;

/// Largest strip size the inverse-CDF size draw will consider.
const SIZE_DRAW_CAP: usize = 10_000;
/// Most refinements of a certified normalizer before giving up on a draw.
const MAX_REFINEMENTS: usize = 200;
/// Most intervals a stopping-rule search will examine.
const STOP_CAP: usize = 1_000_000;

/// A seeded uniform-variate stream with numbered independent substreams.
#[derive(Clone, Debug)]
pub struct RandomSource {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RandomSource {
    /// The root stream of the given seed.
    pub fn from_seed(seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(0);
        RandomSource { seed, rng }
    }

    /// Independent stream `index` of the same seed, e.g. one per sample.
    pub fn substream(&self, index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index.wrapping_add(1));
        RandomSource {
            seed: self.seed,
            rng,
        }
    }

    /// A uniform rational in [0, 1) with 64 bits of resolution.
    pub fn next_unit(&mut self) -> Rational {
        Rational::new(BigInt::from(self.rng.next_u64()), BigInt::from(1u128 << 64))
    }

    /// True with probability p, up to the 2^-64 draw resolution.
    pub fn bernoulli(&mut self, p: &Rational) -> bool {
        self.next_unit() < *p
    }
}

/// First index whose running mass total reaches u; zero-mass entries can
/// never be selected. None when u exceeds the total mass.
pub fn select_index(u: &Rational, masses: &[Rational]) -> Option<usize> {
    let mut total = Rational::zero();
    for (k, m) in masses.iter().enumerate() {
        debug_assert!(!m.is_negative(), "selection masses must be nonnegative");
        if m.is_zero() {
            continue;
        }
        total += m;
        if *u <= total {
            return Some(k);
        }
    }
    None
}

/// Boxes added during one interval or step, in placement order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthEvent {
    /// 1-indexed interval (or step) number.
    pub interval: usize,
    /// Cells added, each valid at the moment it was placed.
    pub cells: Vec<Cell>,
}

/// Full record of one sampler run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthTrace {
    /// Shape when the run stopped.
    pub final_shape: PartitionShape,
    /// The nonempty growth events in order; replaying them from the empty
    /// shape reproduces final_shape.
    pub events: Vec<GrowthEvent>,
    /// Boxes numbered in creation order.
    pub tableau: Option<StandardTableau>,
    /// Certified bound on P(the untruncated process adds a box after the
    /// last interval this run examined); zero for self-terminating runs.
    #[serde(with = "rational_string")]
    pub truncation_bias: Rational,
    /// Number of intervals (or steps) the run examined.
    pub intervals_used: usize,
}

fn finish_trace(
    final_shape: PartitionShape,
    events: Vec<GrowthEvent>,
    cells: &[Cell],
    truncation_bias: Rational,
    intervals_used: usize,
) -> Result<GrowthTrace> {
    let tableau = StandardTableau::from_growth_cells(cells)?;
    debug_assert_eq!(tableau.shape(), final_shape);
    Ok(GrowthTrace {
        final_shape,
        events,
        tableau: Some(tableau),
        truncation_bias,
        intervals_used,
    })
}

/// Shape with one box added at the given column, plus the cell it fills.
fn grow_at_column(shape: &PartitionShape, col: usize) -> Result<(PartitionShape, Cell)> {
    let row = shape.col_len(col) + 1;
    if shape.part(row) + 1 != col {
        return Err(Error::Domain(format!(
            "no addable box at column {} of {}",
            col, shape
        )));
    }
    let mut parts = shape.parts().to_vec();
    if row <= parts.len() {
        parts[row - 1] += 1;
    } else {
        parts.push(1);
    }
    Ok((PartitionShape::new(parts)?, Cell::new(row, col)))
}

/// Cells of big not in small, ordered by increasing column.
fn strip_cells(small: &PartitionShape, big: &PartitionShape) -> Vec<Cell> {
    let mut cells = Vec::new();
    for row in 1..=big.rows() {
        for col in small.part(row) + 1..=big.part(row) {
            cells.push(Cell::new(row, col));
        }
    }
    cells.sort_by_key(|c| c.col);
    cells
}

/// Smallest interval count M with certified residual activity at most
/// tail_tol, together with the activity bound at M. Uses the envelope
/// sum_{N>M} L(x_N) <= C_y rho_y / ((1-q)(1 - rho_y x_1)) * sum_{N>M} x_N,
/// where L is the log of the interval normalizer, so the bound dominates
/// P(any interval beyond M adds a box).
fn stopping_interval(
    x: &VariableSpec,
    y: &VariableSpec,
    p: &QTParams,
    tail_tol: &Rational,
) -> Result<(usize, Rational)> {
    if let Some(len) = x.finite_len() {
        return Ok((len, Rational::zero()));
    }
    let (c_y, rho_y) = y.power_sum_envelope()?;
    if c_y.is_zero() {
        return Ok((0, Rational::zero()));
    }
    let sigma1 = &rho_y * x.value_at(1).abs();
    if sigma1 >= Rational::one() {
        return Err(Error::DivergentSeries(
            "the activity bound needs rho_y * x_1 < 1".into(),
        ));
    }
    let damping = &c_y * &rho_y / ((Rational::one() - &p.q) * (Rational::one() - &sigma1));
    let mut m = 0usize;
    loop {
        let bias = &damping * x.abs_tail_after(m)?;
        if &bias <= tail_tol {
            return Ok((m, bias));
        }
        m += 1;
        if m > STOP_CAP {
            return Err(Error::TruncationTooShort(
                "no interval count reached the requested tail tolerance".into(),
            ));
        }
    }
}

/// Smallest M with sum_{N>M} x_N <= tail_tol, and that exact tail. Valid
/// for the coin-driven samplers, where interval N adds a box only if its
/// first coin lands heads, an event of probability exactly x_N.
fn coin_tail_stop(x: &VariableSpec, tail_tol: &Rational) -> Result<(usize, Rational)> {
    if let Some(len) = x.finite_len() {
        return Ok((len, Rational::zero()));
    }
    let mut m = 0usize;
    loop {
        let bias = x.abs_tail_after(m)?;
        if &bias <= tail_tol {
            return Ok((m, bias));
        }
        m += 1;
        if m > STOP_CAP {
            return Err(Error::TruncationTooShort(
                "no interval count reached the requested tail tolerance".into(),
            ));
        }
    }
}

/// Draws the interval strip size k with P(k) = g_k x^k / G(x) by inverse
/// CDF: the exact partial sums S_k are compared against u times a certified
/// enclosure of G, refining the enclosure whenever the comparison is
/// ambiguous.
fn draw_strip_size(
    xv: &Rational,
    y: &VariableSpec,
    p: &QTParams,
    g: &mut Vec<Rational>,
    rng: &mut RandomSource,
) -> Result<usize> {
    let u = rng.next_unit();
    let mut tol = default_tail_tol();
    let mut norm = interval_normalizer(xv, y, p, &tol)?;
    let mut refinements = 0usize;
    let mut partial = Rational::zero();
    let mut xp = Rational::one();
    for k in 0..=SIZE_DRAW_CAP {
        if k >= g.len() {
            *g = g_coefficients(y, p, (g.len() * 2).max(8))?;
        }
        debug_assert!(
            !g[k].is_negative(),
            "size-law coefficients must be nonnegative"
        );
        partial += &g[k] * &xp;
        loop {
            let (lo, hi) = norm.bounds();
            if &u * &hi <= partial {
                return Ok(k);
            }
            if &u * &lo > partial {
                break;
            }
            refinements += 1;
            if refinements > MAX_REFINEMENTS {
                return Err(Error::TruncationTooShort(
                    "could not certify the interval normalizer tightly enough to decide a draw"
                        .into(),
                ));
            }
            tol /= rat_int(2);
            norm = interval_normalizer(xv, y, p, &tol)?;
        }
        xp *= xv;
    }
    Err(Error::TruncationTooShort(
        "the strip-size draw exceeded the size cap".into(),
    ))
}

/// Samples one shape from the measure by the general growth algorithm:
/// interval N draws a strip size with P(k) proportional to g_k(y) x_N^k,
/// then picks the extension by the Pieri transition law. Stops after the
/// certified interval count and records the residual bound.
pub fn sample_general(
    spec: &MeasureSpec,
    rng: &mut RandomSource,
    tail_tol: &Rational,
) -> Result<GrowthTrace> {
    let (x, y, p) = spec.components();
    if !x.is_nonnegative() {
        return Err(Error::NonPositiveProbability(
            "coin probabilities require nonnegative x values".into(),
        ));
    }
    spec.validate()?;
    let (m_stop, bias) = stopping_interval(&x, &y, &p, tail_tol)?;
    let mut g: Vec<Rational> = Vec::new();
    let mut shape = PartitionShape::empty();
    let mut events = Vec::new();
    let mut all_cells = Vec::new();
    for interval in 1..=m_stop {
        let xv = x.value_at(interval);
        if xv.is_zero() {
            continue;
        }
        let k = draw_strip_size(&xv, &y, &p, &mut g, rng)?;
        if k == 0 {
            continue;
        }
        let candidates = shape.horizontal_strip_extensions(k, None);
        let masses = candidates
            .iter()
            .map(|c| pieri_transition(&shape, c, &y, &p))
            .collect::<Result<Vec<_>>>()?;
        let total: Rational = masses.iter().sum();
        assert!(
            total.is_one(),
            "strip transition masses must sum to 1, got {}",
            total
        );
        let u = rng.next_unit();
        let idx = select_index(&u, &masses).expect("total transition mass is 1");
        let next = candidates[idx].clone();
        let cells = strip_cells(&shape, &next);
        all_cells.extend(cells.iter().copied());
        events.push(GrowthEvent { interval, cells });
        shape = next;
    }
    finish_trace(shape, events, &all_cells, bias, m_stop)
}

/// Per-column masses of the simplified Hall-Littlewood head step from the
/// current shape, given the last column j incremented this interval (0 at
/// the first head). Entry s-1 is the mass of column s, for s = 1 ..
/// lambda_1 + 1; columns at most j carry mass zero.
fn hl_column_masses(shape: &PartitionShape, j: usize, t: &Rational) -> Vec<Rational> {
    let width = shape.part(1) + 1;
    let mut masses = vec![Rational::zero(); width];
    for s in j + 1..=width {
        masses[s - 1] = if s == j + 1 {
            rat_pow(t, shape.col_len(s))
        } else {
            rat_pow(t, shape.col_len(s)) - rat_pow(t, shape.col_len(s - 1))
        };
    }
    masses
}

/// Samples from the Hall-Littlewood measure (q = 0, y principal in t) by
/// the simplified algorithm: interval N flips a coin with heads chance x_N
/// until tails; each head after a head in column j picks its column S > j
/// with P(S = j+1) = t^(lambda'_{j+1}) and P(S = s) = t^(lambda'_s) -
/// t^(lambda'_{s-1}) otherwise. Interval boxes form a horizontal strip.
pub fn sample_hl_simplified(
    x: &VariableSpec,
    t: &Rational,
    rng: &mut RandomSource,
    tail_tol: &Rational,
) -> Result<GrowthTrace> {
    if t <= &Rational::zero() || t >= &Rational::one() {
        return Err(Error::Domain("t must lie strictly between 0 and 1".into()));
    }
    let (sum, all_in_range) = match x {
        VariableSpec::FiniteList { values } => (
            values.iter().sum::<Rational>(),
            values
                .iter()
                .all(|v| v > &Rational::zero() && v < &Rational::one()),
        ),
        VariableSpec::Geometric { first, ratio } => {
            if first <= &Rational::zero()
                || first >= &Rational::one()
                || ratio <= &Rational::zero()
                || ratio >= &Rational::one()
            {
                return Err(Error::Domain(
                    "a geometric x needs first and ratio strictly between 0 and 1".into(),
                ));
            }
            (first / (Rational::one() - ratio), true)
        }
    };
    if !all_in_range {
        return Err(Error::Domain(
            "every x value must lie strictly between 0 and 1".into(),
        ));
    }
    if sum >= Rational::one() {
        return Err(Error::Domain("the x values must sum below 1".into()));
    }
    let (m_stop, bias) = coin_tail_stop(x, tail_tol)?;
    let mut shape = PartitionShape::empty();
    let mut events = Vec::new();
    let mut all_cells = Vec::new();
    for interval in 1..=m_stop {
        let xv = x.value_at(interval);
        let start = shape.clone();
        let mut cells = Vec::new();
        let mut j = 0usize;
        while rng.bernoulli(&xv) {
            let masses = hl_column_masses(&shape, j, t);
            let u = rng.next_unit();
            let s = select_index(&u, &masses).expect("column masses sum to 1") + 1;
            let (grown, cell) = grow_at_column(&shape, s)?;
            shape = grown;
            cells.push(cell);
            j = s;
        }
        if !cells.is_empty() {
            assert!(
                shape.is_horizontal_strip_over(&start),
                "interval boxes must form a horizontal strip"
            );
            all_cells.extend(cells.iter().copied());
            events.push(GrowthEvent { interval, cells });
        }
    }
    finish_trace(shape, events, &all_cells, bias, m_stop)
}

/// Exact probability that one interval of the simplified algorithm grows
/// small into big, via the column-set product over the strip: a run-start
/// column a contributes t^(small'_a) - t^(small'_{a-1}) unless a = 1, and
/// every other strip column a contributes t^(small'_a).
pub fn hl_strip_probability(
    small: &PartitionShape,
    big: &PartitionShape,
    t: &Rational,
) -> Result<Rational> {
    if !big.is_horizontal_strip_over(small) {
        return Err(Error::NotAStrip {
            upper: big.to_string(),
            lower: small.to_string(),
        });
    }
    let mut out = Rational::one();
    let mut prev_hit = false;
    for a in 1..=big.part(1) {
        let hit = big.col_len(a) == small.col_len(a) + 1;
        if hit {
            if a == 1 || prev_hit {
                out *= rat_pow(t, small.col_len(a));
            } else {
                out *= rat_pow(t, small.col_len(a)) - rat_pow(t, small.col_len(a - 1));
            }
        }
        prev_hit = hit;
    }
    Ok(out)
}

/// Per-column masses of one head of the tableau algorithm at interval n,
/// from the current shape. Entry s-1 is the mass of column s, for s = 1 ..
/// lambda_1 + 1; the masses telescope to total exactly 1 and give column 1
/// mass zero as soon as the shape already has n rows.
fn tableau_column_masses(shape: &PartitionShape, n: usize, qf: &Rational) -> Vec<Rational> {
    let width = shape.part(1) + 1;
    let denom = rat_pow(qf, n) - Rational::one();
    let mut masses = Vec::with_capacity(width);
    for s in 1..=width {
        let num = if s == 1 {
            rat_pow(qf, n - shape.col_len(1)) - Rational::one()
        } else {
            rat_pow(qf, n - shape.col_len(s)) - rat_pow(qf, n - shape.col_len(s - 1))
        };
        masses.push(num / &denom);
    }
    masses
}

/// Samples from the Hall-Littlewood measure over GL(n, qf) by the algorithm
/// whose creation order is a standard Young tableau: interval N flips a
/// coin with heads chance u/qf^N until tails, and each head picks column s
/// with mass (q^(N-lambda'_s) - q^(N-lambda'_{s-1})) / (q^N - 1), reading
/// q^(N-lambda'_0) as 1. The shape never exceeds N rows during interval N.
pub fn sample_young_tableau_alg(
    u: &Rational,
    qf: &Rational,
    rng: &mut RandomSource,
    tail_tol: &Rational,
) -> Result<GrowthTrace> {
    if u <= &Rational::zero() || u >= &Rational::one() {
        return Err(Error::Domain("u must lie strictly between 0 and 1".into()));
    }
    if qf <= &Rational::one() {
        return Err(Error::Domain("qf must exceed 1".into()));
    }
    let x = VariableSpec::geometric(u / qf, qf.recip());
    let (m_stop, bias) = coin_tail_stop(&x, tail_tol)?;
    let mut shape = PartitionShape::empty();
    let mut events = Vec::new();
    let mut all_cells = Vec::new();
    for interval in 1..=m_stop {
        let xv = x.value_at(interval);
        let mut cells = Vec::new();
        while rng.bernoulli(&xv) {
            let masses = tableau_column_masses(&shape, interval, qf);
            let u_col = rng.next_unit();
            let s = select_index(&u_col, &masses).expect("column masses sum to 1") + 1;
            let (grown, cell) = grow_at_column(&shape, s)?;
            shape = grown;
            cells.push(cell);
            debug_assert!(shape.col_len(1) <= interval);
        }
        if !cells.is_empty() {
            all_cells.extend(cells.iter().copied());
            events.push(GrowthEvent { interval, cells });
        }
    }
    finish_trace(shape, events, &all_cells, bias, m_stop)
}

/// Signed substitutions available when evaluating path weights.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathWeightVariant {
    /// The weights as defined, with (u, qf) as given.
    Plain,
    /// Substitute (u, qf) -> (-u, -qf).
    NegatedUq,
    /// Substitute (u, qf) -> (u^2, qf^2).
    SquaredUq,
}

/// Weight of the single edge out of shape that adds a box in the given
/// column: u / (q^r (q^(r+1) - 1)) with r the number of rows for column 1,
/// u (q^(-lambda'_s) - q^(-lambda'_{s-1})) / (q^(lambda'_1) - 1) for a
/// column s > 1; zero when no box is addable there.
pub fn lattice_edge_weight(
    shape: &PartitionShape,
    col: usize,
    u: &Rational,
    qf: &Rational,
) -> Result<Rational> {
    if qf.abs() <= Rational::one() {
        return Err(Error::Domain("lattice edge weights need |qf| > 1".into()));
    }
    if col == 0 {
        return Err(Error::Domain("columns are 1-indexed".into()));
    }
    if col == 1 {
        let r = shape.col_len(1);
        return Ok(u / (rat_pow(qf, r) * (rat_pow(qf, r + 1) - Rational::one())));
    }
    let a = shape.col_len(col);
    let b = shape.col_len(col - 1);
    if a == b {
        return Ok(Rational::zero());
    }
    let qinv = qf.recip();
    Ok(u * (rat_pow(&qinv, a) - rat_pow(&qinv, b))
        / (rat_pow(qf, shape.col_len(1)) - Rational::one()))
}

/// Product of the lattice edge weights along the creation path of T, under
/// the chosen substitution; exact and possibly negative for the signed
/// variants.
pub fn weight_of_path(
    t: &StandardTableau,
    u: &Rational,
    qf: &Rational,
    variant: PathWeightVariant,
) -> Result<Rational> {
    if qf <= &Rational::one() {
        return Err(Error::Domain("path weights need qf > 1".into()));
    }
    let (uu, qq) = match variant {
        PathWeightVariant::Plain => (u.clone(), qf.clone()),
        PathWeightVariant::NegatedUq => (-u, -qf),
        PathWeightVariant::SquaredUq => (u * u, qf * qf),
    };
    let mut shape = PartitionShape::empty();
    let mut out = Rational::one();
    for cell in t.cells_in_entry_order() {
        out *= lattice_edge_weight(&shape, cell.col, &uu, &qq)?;
        let (grown, placed) = grow_at_column(&shape, cell.col)?;
        debug_assert_eq!(placed, cell);
        shape = grown;
    }
    Ok(out)
}

/// Runs the halting walk on the Young lattice: from the current shape, move
/// along each cover edge with its lattice weight and halt with the residual
/// probability 1 - uq/(q^(r+1) - 1), r the number of rows (1 - u/(q-1) at
/// the empty shape). The trace's tableau records the walk path; the walk
/// terminates on its own, so truncation_bias is zero and intervals_used
/// counts the draws made, including the final halting draw.
pub fn sample_lattice_weights(
    u: &Rational,
    qf: &Rational,
    signed: bool,
    rng: &mut RandomSource,
) -> Result<GrowthTrace> {
    if signed {
        return Err(Error::Domain(
            "signed weights can be negative and are evaluation-only; use weight_of_path".into(),
        ));
    }
    if u <= &Rational::zero() || u >= &Rational::one() {
        return Err(Error::Domain("u must lie strictly between 0 and 1".into()));
    }
    if qf <= &Rational::one() {
        return Err(Error::Domain("qf must exceed 1".into()));
    }
    if *u >= qf - Rational::one() {
        return Err(Error::Domain(
            "the walk needs u < qf - 1 so outgoing mass stays below 1".into(),
        ));
    }
    let mut shape = PartitionShape::empty();
    let mut events = Vec::new();
    let mut all_cells = Vec::new();
    let mut draws = 0usize;
    loop {
        draws += 1;
        let covers = shape.covers();
        let masses = covers
            .iter()
            .map(|(_, col)| lattice_edge_weight(&shape, *col, u, qf))
            .collect::<Result<Vec<_>>>()?;
        debug_assert_eq!(
            masses.iter().sum::<Rational>(),
            lattice_total_mass(&shape, u, qf)
        );
        let draw = rng.next_unit();
        match select_index(&draw, &masses) {
            None => break,
            Some(i) => {
                let (grown, cell) = grow_at_column(&shape, covers[i].1)?;
                debug_assert_eq!(grown, covers[i].0);
                shape = grown;
                all_cells.push(cell);
                events.push(GrowthEvent {
                    interval: draws,
                    cells: vec![cell],
                });
            }
        }
    }
    finish_trace(shape, events, &all_cells, Rational::zero(), draws)
}

/// Total outgoing lattice weight from a shape: u/(q-1) at the empty shape,
/// uq/(q^(r+1) - 1) with r rows otherwise.
pub fn lattice_total_mass(shape: &PartitionShape, u: &Rational, qf: &Rational) -> Rational {
    if shape.is_empty() {
        u / (qf - Rational::one())
    } else {
        let r = shape.rows();
        u * qf / (rat_pow(qf, r + 1) - Rational::one())
    }
}

/// [m] = 1 + q + ... + q^(m-1), evaluated exactly.
fn q_bracket(m: usize, qf: &Rational) -> Rational {
    let mut out = Rational::zero();
    let mut pw = Rational::one();
    for _ in 0..m {
        out += &pw;
        pw *= qf;
    }
    out
}

/// One-box q-hook-walk transition mass q^(n(big) - n(small)) times the
/// ratio of hook products prod_{s in small}[h(s)] / prod_{s in big}[h(s)].
pub fn kerov_transition(
    small: &PartitionShape,
    big: &PartitionShape,
    qf: &Rational,
) -> Result<Rational> {
    if qf <= &Rational::zero() {
        return Err(Error::Domain("the hook walk needs qf > 0".into()));
    }
    if big.size() != small.size() + 1 || !big.contains(small) {
        return Err(Error::Domain(format!(
            "{} does not cover {} in the Young lattice",
            big, small
        )));
    }
    let mut num = Rational::one();
    for cell in small.cells() {
        num *= q_bracket(small.cell_stats(cell)?.hook, qf);
    }
    let mut den = Rational::one();
    for cell in big.cells() {
        den *= q_bracket(big.cell_stats(cell)?.hook, qf);
    }
    Ok(rat_pow(qf, big.n_stat() - small.n_stat()) * num / den)
}

/// Runs n one-box steps of the q-hook walk from the empty shape; the
/// transition masses over covers sum to 1 exactly, so the walk always
/// reaches size n and reports zero truncation bias.
pub fn sample_kerov_walk(qf: &Rational, n: usize, rng: &mut RandomSource) -> Result<GrowthTrace> {
    if qf <= &Rational::zero() {
        return Err(Error::Domain("the hook walk needs qf > 0".into()));
    }
    let mut shape = PartitionShape::empty();
    let mut events = Vec::new();
    let mut all_cells = Vec::new();
    for step in 1..=n {
        let covers = shape.covers();
        let masses = covers
            .iter()
            .map(|(big, _)| kerov_transition(&shape, big, qf))
            .collect::<Result<Vec<_>>>()?;
        let total: Rational = masses.iter().sum();
        assert!(
            total.is_one(),
            "hook-walk masses must sum to 1, got {}",
            total
        );
        let u = rng.next_unit();
        let idx = select_index(&u, &masses).expect("total transition mass is 1");
        let (grown, cell) = grow_at_column(&shape, covers[idx].1)?;
        shape = grown;
        all_cells.push(cell);
        events.push(GrowthEvent {
            interval: step,
            cells: vec![cell],
        });
    }
    finish_trace(shape, events, &all_cells, Rational::zero(), n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{pmf_limit, pmf_truncated};
    use crate::partition::{partitions_of, shape};
    use crate::qseries::{rat, rational_to_f64, ExactProb};
    use crate::tableaux::{enumerate_syt, tableau_pmf_truncated};

    fn hl_gl_general(u: (i64, i64), qf: i64) -> MeasureSpec {
        MeasureSpec::hall_littlewood_gl(rat(u.0, u.1), rat_int(qf)).to_general()
    }

    fn replay(events: &[GrowthEvent]) -> PartitionShape {
        let mut s = PartitionShape::empty();
        for e in events {
            for c in &e.cells {
                let (grown, placed) = grow_at_column(&s, c.col).unwrap();
                assert_eq!(placed, *c);
                s = grown;
            }
        }
        s
    }

    #[test]
    fn unit_draws_are_in_range_and_reproducible() {
        let mut a = RandomSource::from_seed(7);
        let mut b = RandomSource::from_seed(7);
        for _ in 0..200 {
            let ua = a.next_unit();
            assert!(ua >= Rational::zero() && ua < Rational::one());
            assert_eq!(ua, b.next_unit());
        }
        let mut s0 = RandomSource::from_seed(7).substream(0);
        let mut s1 = RandomSource::from_seed(7).substream(1);
        let mut root = RandomSource::from_seed(7);
        let (d0, d1, dr) = (s0.next_unit(), s1.next_unit(), root.next_unit());
        assert_ne!(d0, d1);
        assert_ne!(d0, dr);
        assert_ne!(d1, dr);
        let mut s0_again = RandomSource::from_seed(7).substream(0);
        assert_eq!(d0, s0_again.next_unit());
    }

    #[test]
    fn select_index_skips_zero_masses_and_breaks_ties_low() {
        let masses = vec![Rational::zero(), rat(1, 2), Rational::zero(), rat(1, 2)];
        assert_eq!(select_index(&Rational::zero(), &masses), Some(1));
        assert_eq!(select_index(&rat(1, 2), &masses), Some(1));
        assert_eq!(
            select_index(&(rat(1, 2) + rat(1, 1 << 20)), &masses),
            Some(3)
        );
        assert_eq!(select_index(&Rational::one(), &masses), Some(3));
        assert_eq!(select_index(&rat(1, 2), &[rat(1, 4)]), None);
    }

    #[test]
    fn strip_probability_matches_pieri_and_normalizes() {
        for t in [rat(1, 2), rat(1, 3)] {
            let p = QTParams::hall_littlewood(t.clone());
            let y = VariableSpec::geometric(Rational::one(), t.clone());
            for n in 0..=4 {
                for lam in partitions_of(n) {
                    for k in 0..=3usize {
                        let exts = lam.horizontal_strip_extensions(k, None);
                        let mut total = Rational::zero();
                        for big in &exts {
                            let direct = hl_strip_probability(&lam, big, &t).unwrap();
                            let via_pieri = pieri_transition(&lam, big, &y, &p).unwrap();
                            assert_eq!(direct, via_pieri, "{} -> {}", lam, big);
                            total += direct;
                        }
                        assert!(total.is_one(), "strip masses from {} size {}", lam, k);
                    }
                }
            }
        }
    }

    #[test]
    fn strip_probability_example_and_rejection() {
        let t = rat(1, 2);
        let lam = shape(&[2, 1]);
        let big = shape(&[4, 1]);
        assert_eq!(hl_strip_probability(&lam, &big, &t).unwrap(), rat(1, 2));
        assert_eq!(
            hl_strip_probability(&lam, &lam, &t).unwrap(),
            Rational::one()
        );
        assert!(matches!(
            hl_strip_probability(&shape(&[1]), &shape(&[2, 2]), &t),
            Err(Error::NotAStrip { .. })
        ));
    }

    #[test]
    fn hl_head_masses_match_worked_example() {
        // From (4,2,1) with last column j = 1, columns 1..5 get masses
        // (0, t^2, t - t^2, 0, 1 - t).
        let t = rat(1, 2);
        let masses = hl_column_masses(&shape(&[4, 2, 1]), 1, &t);
        let t2 = &t * &t;
        assert_eq!(
            masses,
            vec![
                Rational::zero(),
                t2.clone(),
                &t - &t2,
                Rational::zero(),
                Rational::one() - &t,
            ]
        );
        assert!(masses.iter().sum::<Rational>().is_one());
    }

    #[test]
    fn tableau_head_masses_match_worked_example() {
        // From (4,2,1) at interval 4, columns 1..5 get masses
        // (q-1, q^2-q, q^3-q^2, 0, q^4-q^3) / (q^4-1).
        for qf in [rat_int(2), rat_int(3)] {
            let masses = tableau_column_masses(&shape(&[4, 2, 1]), 4, &qf);
            let denom = rat_pow(&qf, 4) - Rational::one();
            let expect = [
                &qf - Rational::one(),
                rat_pow(&qf, 2) - &qf,
                rat_pow(&qf, 3) - rat_pow(&qf, 2),
                Rational::zero(),
                rat_pow(&qf, 4) - rat_pow(&qf, 3),
            ];
            for (m, e) in masses.iter().zip(expect.iter()) {
                assert_eq!(m, &(e / &denom));
            }
            assert!(masses.iter().sum::<Rational>().is_one());
        }
    }

    #[test]
    fn tableau_head_masses_always_normalize() {
        for qf in [rat_int(2), rat_int(3)] {
            for n_boxes in 0..=6 {
                for lam in partitions_of(n_boxes) {
                    for n in lam.rows().max(1)..=6 {
                        let masses = tableau_column_masses(&lam, n, &qf);
                        assert!(masses.iter().all(|m| !m.is_negative()));
                        assert!(masses.iter().sum::<Rational>().is_one());
                        if lam.rows() == n {
                            assert!(masses[0].is_zero());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn general_sampler_zero_x_yields_empty() {
        let spec = MeasureSpec::General {
            x: VariableSpec::finite(vec![Rational::zero(), Rational::zero()]),
            y: VariableSpec::geometric(Rational::one(), rat(1, 2)),
            params: QTParams::hall_littlewood(rat(1, 2)),
        };
        let mut rng = RandomSource::from_seed(3);
        let trace = sample_general(&spec, &mut rng, &default_tail_tol()).unwrap();
        assert!(trace.final_shape.is_empty());
        assert!(trace.events.is_empty());
        assert!(trace.truncation_bias.is_zero());
        assert_eq!(trace.tableau.as_ref().unwrap().size(), 0);
    }

    #[test]
    fn general_sampler_rejects_negative_x() {
        let spec = MeasureSpec::General {
            x: VariableSpec::finite(vec![rat(-1, 2)]),
            y: VariableSpec::geometric(Rational::one(), rat(1, 2)),
            params: QTParams::hall_littlewood(rat(1, 2)),
        };
        let mut rng = RandomSource::from_seed(3);
        assert!(matches!(
            sample_general(&spec, &mut rng, &default_tail_tol()),
            Err(Error::NonPositiveProbability(_))
        ));
    }

    #[test]
    fn stopping_interval_values_are_frozen() {
        let (x, y, p) = hl_gl_general((1, 2), 2).components();
        let tol = default_tail_tol();
        let (m, bias) = stopping_interval(&x, &y, &p, &tol).unwrap();
        assert_eq!(m, 41);
        assert_eq!(bias, rat_int(4) / (rat_int(3) * rat_pow(&rat_int(2), 41)));
        assert!(bias <= tol);
        let finite = VariableSpec::finite(vec![rat(1, 2), rat(1, 4)]);
        assert_eq!(
            stopping_interval(&finite, &y, &p, &tol).unwrap(),
            (2, Rational::zero())
        );
    }

    #[test]
    fn general_sampler_is_reproducible_and_replayable() {
        let spec = hl_gl_general((1, 2), 2);
        let tol = default_tail_tol();
        let root = RandomSource::from_seed(11);
        for i in 0..6 {
            let t1 = sample_general(&spec, &mut root.substream(i), &tol).unwrap();
            let t2 = sample_general(&spec, &mut root.substream(i), &tol).unwrap();
            assert_eq!(t1, t2);
            assert_eq!(replay(&t1.events), t1.final_shape);
            assert_eq!(t1.tableau.as_ref().unwrap().shape(), t1.final_shape);
            assert_eq!(t1.intervals_used, 41);
        }
    }

    #[test]
    fn general_sampler_empirical_smoke_on_finite_spec() {
        // q = t makes this a Schur-weight measure with one x variable; the
        // law at truncation M = 1 is exactly pmf_truncated at 1.
        let spec = MeasureSpec::General {
            x: VariableSpec::finite(vec![rat(1, 2)]),
            y: VariableSpec::finite(vec![rat(1, 2), rat(1, 4)]),
            params: QTParams::schur_like(rat(1, 2)),
        };
        let tol = default_tail_tol();
        let root = RandomSource::from_seed(17);
        let n = 4000usize;
        let mut empty_hits = 0usize;
        for i in 0..n {
            let trace = sample_general(&spec, &mut root.substream(i as u64), &tol).unwrap();
            assert!(trace.truncation_bias.is_zero());
            if trace.final_shape.is_empty() {
                empty_hits += 1;
            }
        }
        let exact = pmf_truncated(&spec, 1, &PartitionShape::empty()).unwrap();
        assert!(exact.is_exact());
        let freq = empty_hits as f64 / n as f64;
        assert!((freq - rational_to_f64(&exact.value)).abs() < 0.05);
    }

    #[test]
    fn hl_sampler_rejects_bad_parameters() {
        let mut rng = RandomSource::from_seed(1);
        let tol = default_tail_tol();
        let good_x = VariableSpec::finite(vec![rat(1, 4)]);
        for bad_t in [Rational::zero(), Rational::one(), rat_int(2)] {
            assert!(sample_hl_simplified(&good_x, &bad_t, &mut rng, &tol).is_err());
        }
        let t = rat(1, 2);
        for bad_x in [
            VariableSpec::finite(vec![Rational::zero()]),
            VariableSpec::finite(vec![rat(1, 2), rat(1, 2)]),
            VariableSpec::geometric(rat(1, 2), Rational::one()),
            VariableSpec::geometric(Rational::zero(), rat(1, 2)),
        ] {
            assert!(sample_hl_simplified(&bad_x, &t, &mut rng, &tol).is_err());
        }
    }

    #[test]
    fn hl_sampler_trace_shape_and_bias() {
        let x = VariableSpec::geometric(rat(1, 4), rat(1, 2));
        let t = rat(1, 2);
        let tol = default_tail_tol();
        let root = RandomSource::from_seed(23);
        for i in 0..6 {
            let tr = sample_hl_simplified(&x, &t, &mut root.substream(i), &tol).unwrap();
            let again = sample_hl_simplified(&x, &t, &mut root.substream(i), &tol).unwrap();
            assert_eq!(tr, again);
            assert_eq!(tr.intervals_used, 39);
            assert_eq!(tr.truncation_bias, rat_int(1) / rat_pow(&rat_int(2), 40));
            assert_eq!(replay(&tr.events), tr.final_shape);
            for e in &tr.events {
                for pair in e.cells.windows(2) {
                    assert!(pair[0].col < pair[1].col);
                }
            }
        }
    }

    #[test]
    fn hl_sampler_empirical_smoke() {
        // x_i = (1/2) / 2^i with t = 1/2 realizes the u = 1/2, qf = 2
        // measure; compare the empty-shape frequency with the exact mass.
        let x = VariableSpec::geometric(rat(1, 4), rat(1, 2));
        let t = rat(1, 2);
        let tol = default_tail_tol();
        let spec = MeasureSpec::hall_littlewood_gl(rat(1, 2), rat_int(2));
        let exact = pmf_truncated(&spec, 39, &PartitionShape::empty()).unwrap();
        assert!(exact.is_exact());
        let root = RandomSource::from_seed(29);
        let n = 4000usize;
        let mut hits = 0usize;
        for i in 0..n {
            let tr = sample_hl_simplified(&x, &t, &mut root.substream(i as u64), &tol).unwrap();
            if tr.final_shape.is_empty() {
                hits += 1;
            }
        }
        let freq = hits as f64 / n as f64;
        assert!((freq - rational_to_f64(&exact.value)).abs() < 0.05);
    }

    #[test]
    fn young_tableau_sampler_basics() {
        let u = rat(1, 2);
        let qf = rat_int(2);
        let tol = default_tail_tol();
        let root = RandomSource::from_seed(31);
        for i in 0..6 {
            let tr = sample_young_tableau_alg(&u, &qf, &mut root.substream(i), &tol).unwrap();
            let again = sample_young_tableau_alg(&u, &qf, &mut root.substream(i), &tol).unwrap();
            assert_eq!(tr, again);
            assert_eq!(tr.intervals_used, 39);
            assert_eq!(tr.truncation_bias, rat_int(1) / rat_pow(&rat_int(2), 40));
            assert_eq!(replay(&tr.events), tr.final_shape);
            // Rows never outgrow the interval index.
            let mut s = PartitionShape::empty();
            for e in &tr.events {
                for c in &e.cells {
                    s = grow_at_column(&s, c.col).unwrap().0;
                }
                assert!(s.rows() <= e.interval);
            }
        }
        let mut rng = RandomSource::from_seed(1);
        assert!(sample_young_tableau_alg(&Rational::one(), &qf, &mut rng, &tol).is_err());
        assert!(sample_young_tableau_alg(&u, &Rational::one(), &mut rng, &tol).is_err());
    }

    #[test]
    fn young_tableau_sampler_empirical_smoke() {
        let u = rat(1, 2);
        let qf = rat_int(2);
        let tol = default_tail_tol();
        let spec = MeasureSpec::hall_littlewood_gl(u.clone(), qf.clone());
        let exact = pmf_truncated(&spec, 39, &PartitionShape::empty()).unwrap();
        let root = RandomSource::from_seed(37);
        let n = 4000usize;
        let mut hits = 0usize;
        for i in 0..n {
            let tr =
                sample_young_tableau_alg(&u, &qf, &mut root.substream(i as u64), &tol).unwrap();
            if tr.final_shape.is_empty() {
                hits += 1;
            }
        }
        let freq = hits as f64 / n as f64;
        assert!((freq - rational_to_f64(&exact.value)).abs() < 0.05);
    }

    #[test]
    fn lattice_total_mass_matches_edge_weights() {
        for (u, qf) in [(rat(1, 2), rat_int(2)), (rat(1, 3), rat_int(3))] {
            for n in 0..=6 {
                for lam in partitions_of(n) {
                    let total: Rational = lam
                        .covers()
                        .iter()
                        .map(|(_, col)| lattice_edge_weight(&lam, *col, &u, &qf).unwrap())
                        .sum();
                    assert_eq!(total, lattice_total_mass(&lam, &u, &qf), "{}", lam);
                    assert!(total < Rational::one());
                }
            }
        }
        assert_eq!(
            lattice_total_mass(&PartitionShape::empty(), &rat(1, 2), &rat_int(2)),
            rat(1, 2)
        );
    }

    #[test]
    fn lattice_walk_rejects_bad_parameters() {
        let mut rng = RandomSource::from_seed(1);
        assert!(sample_lattice_weights(&rat(1, 2), &rat_int(2), true, &mut rng).is_err());
        assert!(sample_lattice_weights(&Rational::zero(), &rat_int(2), false, &mut rng).is_err());
        assert!(sample_lattice_weights(&rat(1, 2), &Rational::one(), false, &mut rng).is_err());
        // qf in (1, 2) can push the outgoing mass to 1 or beyond.
        assert!(sample_lattice_weights(&rat(3, 4), &rat(3, 2), false, &mut rng).is_err());
    }

    #[test]
    fn lattice_walk_trace_and_empirical_halt() {
        let u = rat(1, 2);
        let qf = rat_int(2);
        let root = RandomSource::from_seed(41);
        let n = 4000usize;
        let mut empty_hits = 0usize;
        for i in 0..n {
            let tr = sample_lattice_weights(&u, &qf, false, &mut root.substream(i as u64)).unwrap();
            let again =
                sample_lattice_weights(&u, &qf, false, &mut root.substream(i as u64)).unwrap();
            assert_eq!(tr, again);
            assert!(tr.truncation_bias.is_zero());
            assert_eq!(tr.intervals_used, tr.final_shape.size() + 1);
            assert_eq!(replay(&tr.events), tr.final_shape);
            if tr.final_shape.is_empty() {
                empty_hits += 1;
            }
        }
        // Halting immediately from the empty shape has probability 1/2.
        let freq = empty_hits as f64 / n as f64;
        assert!((freq - 0.5).abs() < 0.04);
    }

    #[test]
    fn lattice_walk_is_conservative_over_short_paths() {
        // Summing (path weight) x (halt chance) over all paths of length at
        // most L, plus the weight of reaching length L + 1, gives exactly 1.
        let u = rat(1, 2);
        let qf = rat_int(2);
        let cap = 3usize;
        let mut total = Rational::zero();
        for n in 0..=cap {
            for lam in partitions_of(n) {
                let halt = Rational::one() - lattice_total_mass(&lam, &u, &qf);
                for t in enumerate_syt(&lam).unwrap() {
                    total += weight_of_path(&t, &u, &qf, PathWeightVariant::Plain).unwrap() * &halt;
                }
            }
        }
        for lam in partitions_of(cap + 1) {
            for t in enumerate_syt(&lam).unwrap() {
                total += weight_of_path(&t, &u, &qf, PathWeightVariant::Plain).unwrap();
            }
        }
        assert!(total.is_one());
    }

    #[test]
    fn path_weight_values_and_variants() {
        let u = rat(1, 2);
        let qf = rat_int(2);
        let empty = StandardTableau::empty();
        assert!(weight_of_path(&empty, &u, &qf, PathWeightVariant::Plain)
            .unwrap()
            .is_one());
        let one_box: StandardTableau = StandardTableau::from_rows(vec![vec![1]]).unwrap();
        assert_eq!(
            weight_of_path(&one_box, &u, &qf, PathWeightVariant::Plain).unwrap(),
            rat(1, 2)
        );
        assert_eq!(
            weight_of_path(&one_box, &u, &qf, PathWeightVariant::NegatedUq).unwrap(),
            rat(1, 6)
        );
        assert_eq!(
            weight_of_path(&one_box, &u, &qf, PathWeightVariant::SquaredUq).unwrap(),
            rat(1, 12)
        );
        assert!(weight_of_path(&one_box, &u, &Rational::one(), PathWeightVariant::Plain).is_err());
    }

    #[test]
    fn path_weight_times_normalizers_recovers_tableau_pmf() {
        // weight(T) x prod_{r<=N}(1 - u/q^r) x prod_{r=N-rows+1..N}(1 - 1/q^r)
        // equals the exact N-interval chance of the creation order T.
        for (u, qf) in [(rat(1, 2), rat_int(2)), (rat(1, 3), rat_int(3))] {
            for n in 0..=5 {
                for lam in partitions_of(n) {
                    for t in enumerate_syt(&lam).unwrap() {
                        let w = weight_of_path(&t, &u, &qf, PathWeightVariant::Plain).unwrap();
                        for big_n in lam.rows().max(1)..=6 {
                            let mut norm = Rational::one();
                            for r in 1..=big_n {
                                norm *= Rational::one() - &u / rat_pow(&qf, r);
                            }
                            for r in big_n - lam.rows() + 1..=big_n {
                                norm *= Rational::one() - rat_pow(&qf, r).recip();
                            }
                            let pmf = tableau_pmf_truncated(&t, &u, &qf, big_n).unwrap();
                            assert_eq!(&w * &norm, pmf, "{:?} at N = {}", t, big_n);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn path_weight_sums_approach_shape_mass() {
        // Summing weights over the standard tableaux of a shape and scaling
        // by prod_{r>=1}(1 - u/q^r) recovers the untruncated shape mass.
        let spec = MeasureSpec::hall_littlewood_gl(rat(1, 2), rat_int(2));
        let (u, qf) = (rat(1, 2), rat_int(2));
        let mut poch = ExactProb::exact(Rational::one());
        for r in 1..=60 {
            poch = poch.mul(&ExactProb::exact(Rational::one() - &u / rat_pow(&qf, r)));
        }
        // Remaining factors lie between 1 - u/(q^60 (q-1)) and 1.
        let slack = &u / (rat_pow(&qf, 60) * (&qf - Rational::one()));
        for n in 0..=4 {
            for lam in partitions_of(n) {
                let mut sum = Rational::zero();
                for t in enumerate_syt(&lam).unwrap() {
                    sum += weight_of_path(&t, &u, &qf, PathWeightVariant::Plain).unwrap();
                }
                let approx = rational_to_f64(&(&poch.value * &sum));
                let exact = pmf_limit(&spec, &lam).unwrap();
                let err = (approx - rational_to_f64(&exact.value)).abs();
                let budget = rational_to_f64(&(&slack + &exact.tail_bound)) + 1e-12;
                assert!(err <= budget, "{}: err {} budget {}", lam, err, budget);
            }
        }
    }

    #[test]
    fn kerov_transition_values() {
        let empty = PartitionShape::empty();
        for qf in [rat_int(2), rat_int(3), rat(1, 2)] {
            assert!(kerov_transition(&empty, &shape(&[1]), &qf)
                .unwrap()
                .is_one());
        }
        assert_eq!(
            kerov_transition(&shape(&[1]), &shape(&[2]), &rat_int(2)).unwrap(),
            rat(1, 3)
        );
        assert_eq!(
            kerov_transition(&shape(&[1]), &shape(&[2]), &rat_int(3)).unwrap(),
            rat(1, 4)
        );
        // At qf = 1 the walk is classical Plancherel growth.
        assert_eq!(
            kerov_transition(&shape(&[1]), &shape(&[2]), &Rational::one()).unwrap(),
            rat(1, 2)
        );
        assert!(kerov_transition(&shape(&[1]), &shape(&[3]), &rat_int(2)).is_err());
        assert!(kerov_transition(&empty, &shape(&[1]), &Rational::zero()).is_err());
    }

    #[test]
    fn kerov_transitions_normalize_and_match_pieri() {
        for qf in [rat_int(2), rat_int(3)] {
            for n in 0..=6 {
                for lam in partitions_of(n) {
                    let total: Rational = lam
                        .covers()
                        .iter()
                        .map(|(big, _)| kerov_transition(&lam, big, &qf).unwrap())
                        .sum();
                    assert!(total.is_one(), "{} at qf = {}", lam, qf);
                }
            }
        }
        for t in [rat(1, 2), rat(1, 3)] {
            let p = QTParams::schur_like(t.clone());
            let y = VariableSpec::geometric(Rational::one(), t.clone());
            for n in 0..=5 {
                for lam in partitions_of(n) {
                    for (big, _) in lam.covers() {
                        assert_eq!(
                            kerov_transition(&lam, &big, &t).unwrap(),
                            pieri_transition(&lam, &big, &y, &p).unwrap(),
                            "{} -> {}",
                            lam,
                            big
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn kerov_walk_runs_and_reproduces() {
        let qf = rat_int(2);
        let root = RandomSource::from_seed(43);
        for i in 0..6 {
            let tr = sample_kerov_walk(&qf, 5, &mut root.substream(i)).unwrap();
            let again = sample_kerov_walk(&qf, 5, &mut root.substream(i)).unwrap();
            assert_eq!(tr, again);
            assert_eq!(tr.final_shape.size(), 5);
            assert_eq!(tr.intervals_used, 5);
            assert!(tr.truncation_bias.is_zero());
            assert_eq!(replay(&tr.events), tr.final_shape);
        }
        let n = 3000usize;
        let mut rows = 0usize;
        for i in 0..n {
            let tr = sample_kerov_walk(&qf, 2, &mut root.substream(1000 + i as u64)).unwrap();
            if tr.final_shape == shape(&[2]) {
                rows += 1;
            }
        }
        let freq = rows as f64 / n as f64;
        assert!((freq - 1.0 / 3.0).abs() < 0.04);
    }

    #[test]
    fn geometric_interval_size_law_at_hall_littlewood() {
        // With q = 0 and y principal in t, the strip-size law per interval
        // is geometric: g_k = 1 for every k.
        for t in [rat(1, 2), rat(1, 3)] {
            let g = g_coefficients(
                &VariableSpec::geometric(Rational::one(), t.clone()),
                &QTParams::hall_littlewood(t.clone()),
                8,
            )
            .unwrap();
            assert!(g.iter().all(|c| c.is_one()));
        }
    }

    #[test]
    fn traces_serialize_to_json() {
        let mut rng = RandomSource::from_seed(5);
        let tr = sample_kerov_walk(&rat_int(2), 3, &mut rng).unwrap();
        let json = serde_json::to_string(&tr).unwrap();
        assert!(json.contains("final_shape"));
        assert!(json.contains("truncation_bias"));
    }
}
