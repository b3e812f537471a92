//! Monte Carlo experiment runner and exact-identity verification suites.
//!
//! run_experiment draws reproducible samples (one RNG substream per sample
//! index, so thread count never changes the outcome), tabulates final
//! shapes, and compares the empirical law against the sampler's exact law:
//! the interval-truncated measure for the growth samplers, the absorption
//! law of the halting walk, or the step-count distribution of the hook
//! walk. verify runs named suites of exact rational identities and returns
//! itemized results.

use std::collections::HashMap;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Error, Result};
use crate::gl::{enumerate_classes, gl_order, marginal_vs_measure};
use crate::kernel::{
    b_weight, g_coefficients, macdonald_eval_finite, phi_weight, pieri_transition,
    principal_specialization, QTParams,
};
use crate::measures::{
    default_tail_tol, j_lambda, j_n, j_series_identity_holds, pmf_ratio, pmf_truncated, size_pgf,
    MeasureSpec,
};
use crate::partition::{partitions_of, partitions_up_to, PartitionShape};
use crate::qseries::{
    euler_series, pochhammer_auto, pochhammer_trunc, power_sum, rat, rat_int, rat_pow,
    rational_string, ExactProb, Rational, USeries, VariableSpec,
};
use crate::samplers::{
    hl_strip_probability, kerov_transition, lattice_edge_weight, lattice_total_mass,
    sample_general, sample_hl_simplified, sample_kerov_walk, sample_lattice_weights,
    sample_young_tableau_alg, weight_of_path, GrowthTrace, PathWeightVariant, RandomSource,
};
use crate::tableaux::{
    all_permutations, enumerate_syt, hook_count, kostka_foulkes, rsk, tableau_pmf_truncated,
};
use num::{BigInt, One, Zero};

/// Largest step count for which the hook-walk law is compared exactly.
const KEROV_STEP_CAP: usize = 30;

/// Which sampler an experiment drives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SamplerKind {
    /// The interval growth algorithm for any supported spec.
    General,
    /// The simplified column-selection algorithm; needs q = 0 and a
    /// principal y.
    HlSimplified,
    /// The finite-field column-selection algorithm; needs the
    /// hall_littlewood_gl family.
    YoungTableau,
    /// The halting walk on the Young lattice; needs hall_littlewood_gl.
    LatticeWeights,
    /// The q-analogue of the hook walk; needs schur_q_plancherel and a
    /// step count.
    Kerov,
}

/// How a report should be written.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportFormat {
    /// Canonical structured output.
    Json,
    /// Flat projection of the per-shape rows.
    Csv,
}

/// Output destination carried inside a config file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputTarget {
    /// Serialization format.
    pub format: ReportFormat,
    /// Path to write to; stdout when absent.
    #[serde(default)]
    pub path: Option<String>,
}

fn default_max_tracked() -> usize {
    12
}

/// Full description of one reproducible sampling experiment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    /// The measure to sample from.
    pub spec: MeasureSpec,
    /// Which algorithm draws the samples.
    pub sampler: SamplerKind,
    /// Number of samples.
    pub n_samples: usize,
    /// Root seed; sample i uses substream i.
    pub seed: u64,
    /// Certified residual-activity tolerance for truncated samplers.
    #[serde(with = "rational_string", default = "default_tail_tol")]
    pub tail_tol: Rational,
    /// Shapes up to this size get their own comparison row.
    #[serde(default = "default_max_tracked")]
    pub max_tracked_size: usize,
    /// Step count for the fixed-length hook walk.
    #[serde(default)]
    pub steps: Option<usize>,
    /// Worker threads; defaults to the available parallelism.
    #[serde(default)]
    pub threads: Option<usize>,
    /// Optional output destination, used by the command-line driver.
    #[serde(default)]
    pub output: Option<OutputTarget>,
}

impl ExperimentConfig {
    /// Checks that the sampler fits the measure and all knobs are sane.
    pub fn validate(&self) -> Result<()> {
        self.spec.validate()?;
        if self.tail_tol <= Rational::zero() {
            return Err(Error::Config("tail_tol must be positive".into()));
        }
        match self.sampler {
            SamplerKind::General => Ok(()),
            SamplerKind::HlSimplified => {
                let (_, y, p) = self.spec.components();
                let principal = matches!(
                    &y,
                    VariableSpec::Geometric { first, ratio }
                        if first.is_one() && *ratio == p.t
                );
                if !p.q.is_zero() || !principal {
                    return Err(Error::Config(
                        "the simplified sampler needs q = 0 and y = (1, t, t^2, ...)".into(),
                    ));
                }
                Ok(())
            }
            SamplerKind::YoungTableau | SamplerKind::LatticeWeights => {
                if matches!(self.spec, MeasureSpec::HallLittlewoodGl { .. }) {
                    Ok(())
                } else {
                    Err(Error::Config(
                        "this sampler needs the hall_littlewood_gl family".into(),
                    ))
                }
            }
            SamplerKind::Kerov => {
                if !matches!(self.spec, MeasureSpec::SchurQPlancherel { .. }) {
                    return Err(Error::Config(
                        "the hook walk needs the schur_q_plancherel family".into(),
                    ));
                }
                match self.steps {
                    None => Err(Error::Config("the hook walk needs a step count".into())),
                    Some(s) if s > KEROV_STEP_CAP => Err(Error::Config(format!(
                        "step counts above {} make the exact comparison impractical",
                        KEROV_STEP_CAP
                    ))),
                    Some(_) => Ok(()),
                }
            }
        }
    }
}

/// One tracked shape's empirical-versus-exact row.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ShapeComparison {
    /// The shape.
    pub shape: PartitionShape,
    /// Samples that ended on this shape.
    pub count: u64,
    /// count / n_samples.
    pub empirical: f64,
    /// Exact probability under the sampler's true law.
    pub exact: ExactProb,
    /// Decimal rendering of the exact probability.
    pub exact_decimal: f64,
    /// |empirical - exact| / 2, this row's share of the distance.
    pub tv_contribution: f64,
}

/// Chi-square goodness-of-fit summary over pooled cells.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChiSquareSummary {
    /// Sum over cells of (observed - expected)^2 / expected.
    pub statistic: f64,
    /// Cells entering the statistic, including the pooled tail.
    pub cells: usize,
    /// cells - 1.
    pub dof: usize,
    /// Upper tail probability of the statistic.
    pub p_value: f64,
}

/// Outcome of one experiment.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComparisonReport {
    /// The config that produced this report.
    pub config: ExperimentConfig,
    /// Per-shape rows for every shape up to max_tracked_size, in size then
    /// lexicographic order.
    pub entries: Vec<ShapeComparison>,
    /// Samples that ended beyond the tracked sizes.
    pub untracked_count: u64,
    /// Exact mass of the untracked region.
    pub untracked_exact: ExactProb,
    /// Total variation distance between the empirical law and the exact
    /// law, with the untracked region lumped into one cell; absent when
    /// n_samples = 0.
    pub tv_distance: Option<f64>,
    /// Chi-square summary with every expected cell count pooled to at
    /// least 5; absent when too few samples leave a single cell.
    pub chi_square: Option<ChiSquareSummary>,
    /// Certified residual-activity bound shared by all samples.
    #[serde(with = "rational_string")]
    pub truncation_bias: Rational,
    /// Interval count used by the truncated samplers, when fixed.
    pub intervals_used: Option<usize>,
    /// Wall-clock seconds since the Unix epoch when the report was built;
    /// excluded from golden comparisons.
    pub generated_at_epoch_secs: u64,
}

fn run_one(cfg: &ExperimentConfig, root: &RandomSource, index: u64) -> Result<GrowthTrace> {
    let mut rng = root.substream(index);
    match cfg.sampler {
        SamplerKind::General => sample_general(&cfg.spec, &mut rng, &cfg.tail_tol),
        SamplerKind::HlSimplified => {
            let (x, _, p) = cfg.spec.components();
            sample_hl_simplified(&x, &p.t, &mut rng, &cfg.tail_tol)
        }
        SamplerKind::YoungTableau => match &cfg.spec {
            MeasureSpec::HallLittlewoodGl { u, qf } => {
                sample_young_tableau_alg(u, qf, &mut rng, &cfg.tail_tol)
            }
            _ => Err(Error::Config("sampler/spec mismatch".into())),
        },
        SamplerKind::LatticeWeights => match &cfg.spec {
            MeasureSpec::HallLittlewoodGl { u, qf } => {
                sample_lattice_weights(u, qf, false, &mut rng)
            }
            _ => Err(Error::Config("sampler/spec mismatch".into())),
        },
        SamplerKind::Kerov => match &cfg.spec {
            MeasureSpec::SchurQPlancherel { qf, .. } => {
                sample_kerov_walk(qf, cfg.steps.unwrap_or(0), &mut rng)
            }
            _ => Err(Error::Config("sampler/spec mismatch".into())),
        },
    }
}

/// Exact absorption probability of the halting walk at a shape: the halt
/// chance there times the total path weight into it.
fn lattice_absorption_mass(
    shape: &PartitionShape,
    u: &Rational,
    qf: &Rational,
) -> Result<Rational> {
    let halt = Rational::one() - lattice_total_mass(shape, u, qf);
    let mut inflow = Rational::zero();
    for t in enumerate_syt(shape)? {
        inflow += weight_of_path(&t, u, qf, PathWeightVariant::Plain)?;
    }
    Ok(halt * inflow)
}

/// Exact law of the hook walk after the given number of steps.
fn kerov_distribution(qf: &Rational, steps: usize) -> Result<HashMap<PartitionShape, Rational>> {
    let mut level: HashMap<PartitionShape, Rational> = HashMap::new();
    level.insert(PartitionShape::empty(), Rational::one());
    for _ in 0..steps {
        let mut next: HashMap<PartitionShape, Rational> = HashMap::new();
        for (lam, mass) in &level {
            for (big, _) in lam.covers() {
                let w = kerov_transition(lam, &big, qf)?;
                let entry = next.entry(big).or_insert_with(Rational::zero);
                *entry += mass * w;
            }
        }
        level = next;
    }
    Ok(level)
}

fn exact_law(
    cfg: &ExperimentConfig,
    intervals: Option<usize>,
    tracked: &[PartitionShape],
) -> Result<Vec<ExactProb>> {
    match cfg.sampler {
        SamplerKind::General | SamplerKind::HlSimplified | SamplerKind::YoungTableau => {
            let m = intervals.ok_or_else(|| {
                Error::Config("the truncated law needs the interval count".into())
            })?;
            tracked
                .iter()
                .map(|s| pmf_truncated(&cfg.spec, m, s))
                .collect()
        }
        SamplerKind::LatticeWeights => match &cfg.spec {
            MeasureSpec::HallLittlewoodGl { u, qf } => tracked
                .iter()
                .map(|s| Ok(ExactProb::exact(lattice_absorption_mass(s, u, qf)?)))
                .collect(),
            _ => Err(Error::Config("sampler/spec mismatch".into())),
        },
        SamplerKind::Kerov => match &cfg.spec {
            MeasureSpec::SchurQPlancherel { qf, .. } => {
                let law = kerov_distribution(qf, cfg.steps.unwrap_or(0))?;
                Ok(tracked
                    .iter()
                    .map(|s| ExactProb::exact(law.get(s).cloned().unwrap_or_else(Rational::zero)))
                    .collect())
            }
            _ => Err(Error::Config("sampler/spec mismatch".into())),
        },
    }
}

struct ChunkOut {
    counts: HashMap<PartitionShape, u64>,
    untracked: u64,
    first_meta: Option<(usize, Rational)>,
}

fn run_chunk(
    cfg: &ExperimentConfig,
    root: &RandomSource,
    lo: usize,
    hi: usize,
) -> Result<ChunkOut> {
    let mut out = ChunkOut {
        counts: HashMap::new(),
        untracked: 0,
        first_meta: None,
    };
    for i in lo..hi {
        let trace = run_one(cfg, root, i as u64)?;
        if out.first_meta.is_none() {
            out.first_meta = Some((trace.intervals_used, trace.truncation_bias.clone()));
        }
        if trace.final_shape.size() <= cfg.max_tracked_size {
            *out.counts.entry(trace.final_shape).or_insert(0) += 1;
        } else {
            out.untracked += 1;
        }
    }
    Ok(out)
}

fn epoch_secs() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

/// Draws cfg.n_samples samples on independent substreams, tabulates final
/// shapes up to cfg.max_tracked_size, and compares against the exact law.
/// Deterministic given the config; the thread count never changes counts.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ComparisonReport> {
    cfg.validate()?;
    let tracked = partitions_up_to(cfg.max_tracked_size);
    if cfg.n_samples == 0 {
        return Ok(ComparisonReport {
            config: cfg.clone(),
            entries: Vec::new(),
            untracked_count: 0,
            untracked_exact: ExactProb::exact(Rational::one()),
            tv_distance: None,
            chi_square: None,
            truncation_bias: Rational::zero(),
            intervals_used: None,
            generated_at_epoch_secs: epoch_secs(),
        });
    }
    let root = RandomSource::from_seed(cfg.seed);
    let threads = cfg
        .threads
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|p| p.get())
                .unwrap_or(1)
                .min(8)
        })
        .max(1)
        .min(cfg.n_samples);
    let chunk = cfg.n_samples.div_ceil(threads);
    let chunk_outs: Vec<Result<ChunkOut>> = std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for t in 0..threads {
            let lo = t * chunk;
            let hi = ((t + 1) * chunk).min(cfg.n_samples);
            let root_ref = &root;
            handles.push(scope.spawn(move || run_chunk(cfg, root_ref, lo, hi)));
        }
        handles
            .into_iter()
            .map(|h| h.join().expect("a sampling worker panicked"))
            .collect()
    });
    let mut counts: HashMap<PartitionShape, u64> = HashMap::new();
    let mut untracked_count = 0u64;
    let mut meta: Option<(usize, Rational)> = None;
    for out in chunk_outs {
        let out = out?;
        for (shape, c) in out.counts {
            *counts.entry(shape).or_insert(0) += c;
        }
        untracked_count += out.untracked;
        if meta.is_none() {
            meta = out.first_meta;
        }
    }
    let truncated_sampler = matches!(
        cfg.sampler,
        SamplerKind::General | SamplerKind::HlSimplified | SamplerKind::YoungTableau
    );
    let (intervals_used, truncation_bias) = match (&meta, truncated_sampler) {
        (Some((m, bias)), true) => (Some(*m), bias.clone()),
        _ => (None, Rational::zero()),
    };
    let exact = exact_law(cfg, intervals_used, &tracked)?;
    let n = cfg.n_samples as f64;
    let mut entries = Vec::with_capacity(tracked.len());
    let mut tracked_exact = ExactProb::exact(Rational::zero());
    let mut tv = 0.0f64;
    for (shape, ex) in tracked.iter().zip(exact.iter()) {
        let count = counts.get(shape).copied().unwrap_or(0);
        let empirical = count as f64 / n;
        let exact_decimal = ex.to_f64();
        let contribution = (empirical - exact_decimal).abs() / 2.0;
        tv += contribution;
        tracked_exact = tracked_exact.add(ex);
        entries.push(ShapeComparison {
            shape: shape.clone(),
            count,
            empirical,
            exact: ex.clone(),
            exact_decimal,
            tv_contribution: contribution,
        });
    }
    let untracked_exact = ExactProb::exact(Rational::one()).sub(&tracked_exact);
    let untracked_decimal = untracked_exact.to_f64();
    tv += (untracked_count as f64 / n - untracked_decimal).abs() / 2.0;
    let chi_square = chi_square_summary(&entries, untracked_count, untracked_decimal, n);
    Ok(ComparisonReport {
        config: cfg.clone(),
        entries,
        untracked_count,
        untracked_exact,
        tv_distance: Some(tv),
        chi_square,
        truncation_bias,
        intervals_used,
        generated_at_epoch_secs: epoch_secs(),
    })
}

/// Pools cells until every expected count is at least 5; the pooled tail
/// cell (untracked mass plus small cells) is always present.
fn chi_square_summary(
    entries: &[ShapeComparison],
    untracked_count: u64,
    untracked_exact: f64,
    n: f64,
) -> Option<ChiSquareSummary> {
    let mut statistic = 0.0f64;
    let mut standalone = 0usize;
    let mut pool_expected = untracked_exact * n;
    let mut pool_observed = untracked_count as f64;
    for e in entries {
        let expected = e.exact_decimal * n;
        if expected >= 5.0 {
            statistic += (e.count as f64 - expected).powi(2) / expected;
            standalone += 1;
        } else {
            pool_expected += expected;
            pool_observed += e.count as f64;
        }
    }
    if pool_expected > 0.0 {
        statistic += (pool_observed - pool_expected).powi(2) / pool_expected;
    } else if pool_observed > 0.0 {
        statistic = f64::INFINITY;
    }
    let cells = standalone + 1;
    if cells < 2 {
        return None;
    }
    let dof = cells - 1;
    let dist = ChiSquared::new(dof as f64).expect("positive degrees of freedom");
    Some(ChiSquareSummary {
        statistic,
        cells,
        dof,
        p_value: 1.0 - dist.cdf(statistic),
    })
}

/// Result of one named check inside a verification suite.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    /// Short identifier of the identity being checked.
    pub name: String,
    /// Whether it held.
    pub passed: bool,
    /// Scale or diagnostic notes.
    pub detail: String,
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> CheckResult {
    CheckResult {
        name: name.into(),
        passed,
        detail: detail.into(),
    }
}

/// The verification suite names accepted by verify.
pub const SUITES: [&str; 7] = [
    "partitions",
    "qseries",
    "kernel",
    "measures",
    "samplers",
    "tableaux",
    "gl",
];

/// Runs one named suite of exact identities and returns itemized results.
pub fn verify(suite: &str) -> Result<Vec<CheckResult>> {
    match suite {
        "partitions" => verify_partitions(),
        "qseries" => verify_qseries(),
        "kernel" => verify_kernel(),
        "measures" => verify_measures(),
        "samplers" => verify_samplers(),
        "tableaux" => verify_tableaux(),
        "gl" => verify_gl(),
        other => Err(Error::UnknownSuite(format!(
            "{:?}; expected one of {:?}",
            other, SUITES
        ))),
    }
}

fn verify_partitions() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let mut conj_ok = true;
    let mut hook_ok = true;
    for n in 0..=8 {
        for lam in partitions_of(n) {
            let c = lam.conjugate();
            if c.conjugate() != lam || c.size() != n {
                conj_ok = false;
            }
            let hooks: usize = lam
                .cells()
                .into_iter()
                .map(|cell| lam.cell_stats(cell).map(|s| s.hook))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .sum();
            if hooks != lam.n_stat() + c.n_stat() + n {
                hook_ok = false;
            }
        }
    }
    out.push(check("conjugate_involution", conj_ok, "all |lambda| <= 8"));
    out.push(check(
        "hook_sum_identity",
        hook_ok,
        "sum of hooks = n(lambda) + n(lambda') + |lambda|, |lambda| <= 8",
    ));
    let mut strips_ok = true;
    for n in 0..=6 {
        for lam in partitions_of(n) {
            for k in 0..=3usize {
                let mut exts = lam.horizontal_strip_extensions(k, None);
                let mut direct: Vec<PartitionShape> = partitions_of(n + k)
                    .into_iter()
                    .filter(|big| big.is_horizontal_strip_over(&lam))
                    .collect();
                exts.sort();
                direct.sort();
                if exts != direct {
                    strips_ok = false;
                }
            }
        }
    }
    out.push(check(
        "strip_extensions_match_direct_filter",
        strips_ok,
        "|lambda| <= 6, strip sizes <= 3",
    ));
    Ok(out)
}

fn verify_qseries() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let x = rat(1, 2);
    let q = rat(1, 2);
    let loose = pochhammer_auto(&x, &q, &rat(1, 1 << 20))?;
    let tight = pochhammer_trunc(&x, &q, 300)?;
    let (llo, lhi) = loose.bounds();
    let (tlo, thi) = tight.bounds();
    out.push(check(
        "pochhammer_enclosures_nest",
        llo <= tlo && thi <= lhi && tight.tail_bound <= loose.tail_bound,
        "deep truncation lands inside the certified enclosure",
    ));
    let q2 = rat_int(2);
    let fwd = euler_series(10, &q2, false)?;
    let inv = euler_series(10, &q2, true)?;
    let prod = fwd.mul(&inv);
    out.push(check(
        "euler_series_inverse_pair",
        prod.coeffs() == USeries::one(10).coeffs()
            && fwd.coeff(1) == Some(&rat_int(-1))
            && fwd.coeff(0) == Some(&Rational::one()),
        "product of the series and its reciprocal is 1 through degree 10",
    ));
    let mut one_minus_u = vec![Rational::zero(); 13];
    one_minus_u[0] = Rational::one();
    one_minus_u[1] = rat_int(-1);
    let geometric = USeries::from_coeffs(one_minus_u).inverse()?;
    out.push(check(
        "series_inverse_of_one_minus_u",
        geometric.coeffs().iter().all(|c| c.is_one()),
        "1/(1-u) has all-ones coefficients through degree 12",
    ));
    let t = rat(1, 2);
    let spec = VariableSpec::geometric(Rational::one(), t.clone());
    let mut psums_ok = true;
    for n in 1..=6usize {
        let direct = (Rational::one() - rat_pow(&t, n)).recip();
        if power_sum(&spec, n)? != direct {
            psums_ok = false;
        }
    }
    out.push(check(
        "geometric_power_sums",
        psums_ok,
        "p_n(1, t, t^2, ...) = 1/(1 - t^n), n <= 6",
    ));
    Ok(out)
}

fn verify_kernel() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let schur = QTParams::schur_like(rat(1, 2));
    let mut trivial_ok = true;
    for n in 0..=5 {
        for lam in partitions_of(n) {
            if !b_weight(&lam, &schur)?.is_one() {
                trivial_ok = false;
            }
            for k in 1..=2usize {
                for big in lam.horizontal_strip_extensions(k, None) {
                    if !phi_weight(&big, &lam, &schur)?.is_one() {
                        trivial_ok = false;
                    }
                }
            }
        }
    }
    out.push(check(
        "schur_case_weights_trivial",
        trivial_ok,
        "b and phi are 1 at q = t, |lambda| <= 5",
    ));
    let mut pieri_ok = true;
    for p in [
        QTParams::hall_littlewood(rat(1, 2)),
        QTParams::schur_like(rat(1, 3)),
    ] {
        let y = VariableSpec::geometric(Rational::one(), p.t.clone());
        for n in 0..=5 {
            for lam in partitions_of(n) {
                for k in 1..=2usize {
                    let total: Rational = lam
                        .horizontal_strip_extensions(k, None)
                        .iter()
                        .map(|big| pieri_transition(&lam, big, &y, &p))
                        .collect::<Result<Vec<_>>>()?
                        .into_iter()
                        .sum();
                    if !total.is_one() {
                        pieri_ok = false;
                    }
                }
            }
        }
    }
    out.push(check(
        "pieri_transitions_normalize",
        pieri_ok,
        "strip transitions sum to 1, |lambda| <= 5, sizes <= 2",
    ));
    let p = QTParams::new(rat(1, 2), rat(1, 3));
    let mut principal_ok = true;
    for n in 0..=4 {
        for lam in partitions_of(n) {
            for vars in 1..=4usize {
                let closed = principal_specialization(&lam, Some(vars), &p)?;
                let xs: Vec<Rational> = (0..vars).map(|i| rat_pow(&p.t, i)).collect();
                if closed != macdonald_eval_finite(&lam, &xs, &p)? {
                    principal_ok = false;
                }
            }
            if lam.rows() > 0
                && principal_specialization(&lam, Some(lam.rows() - 1), &p)? != Rational::zero()
            {
                principal_ok = false;
            }
        }
    }
    out.push(check(
        "principal_specialization_matches_branching",
        principal_ok,
        "closed product = branching evaluation at x_i = t^(i-1), |lambda| <= 4",
    ));
    let g = g_coefficients(
        &VariableSpec::geometric(Rational::one(), rat(1, 2)),
        &QTParams::hall_littlewood(rat(1, 2)),
        8,
    )?;
    out.push(check(
        "hall_littlewood_size_law_geometric",
        g.iter().all(|c| c.is_one()),
        "g_k = 1 for all k at q = 0, y principal",
    ));
    Ok(out)
}

fn verify_measures() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let mut named_ok = true;
    for (u, qf) in [(rat(1, 2), rat_int(2)), (rat(1, 3), rat_int(3))] {
        let named = MeasureSpec::hall_littlewood_gl(u, qf);
        let general = named.to_general();
        for n in 0..=4 {
            for lam in partitions_of(n) {
                for big_n in 1..=5usize {
                    let a = pmf_truncated(&named, big_n, &lam)?;
                    let b = pmf_truncated(&general, big_n, &lam)?;
                    if !a.is_exact() || !b.is_exact() || a.value != b.value {
                        named_ok = false;
                    }
                }
            }
        }
    }
    out.push(check(
        "closed_form_matches_general_route",
        named_ok,
        "two independent mass formulas agree exactly, |lambda| <= 4, N <= 5",
    ));
    let spec = MeasureSpec::hall_littlewood_gl(rat(1, 2), rat_int(2));
    let mut pgf_ok = true;
    for big_n in 1..=3usize {
        let pgf = size_pgf(&spec, big_n, 6)?;
        for k in 0..=6usize {
            let mut total = Rational::zero();
            for lam in partitions_of(k) {
                total += pmf_truncated(&spec, big_n, &lam)?.value;
            }
            if Some(&total) != pgf.coeff(k) {
                pgf_ok = false;
            }
        }
    }
    out.push(check(
        "mass_sums_match_size_series",
        pgf_ok,
        "size-k masses match the generating series, k <= 6, N <= 3",
    ));
    out.push(check(
        "j_series_identity",
        j_series_identity_holds(5, 20),
        "both series expansions agree through order 20 for n <= 5",
    ));
    let mut jn_ok = true;
    let mut factorial = BigInt::one();
    for n in 0..=7usize {
        if n > 0 {
            factorial *= BigInt::from(n);
        }
        let jn = j_n(n);
        if jn.eval(&Rational::one()) != Rational::from(factorial.clone()) {
            jn_ok = false;
        }
        if jn.degree() != Some(n * n.saturating_sub(1)) || !jn.is_palindromic() {
            jn_ok = false;
        }
    }
    out.push(check(
        "j_totals_properties",
        jn_ok,
        "J_n(1) = n!, degree n(n-1), palindromic, n <= 7",
    ));
    let schur = MeasureSpec::schur_q_plancherel(rat(1, 2), rat_int(2));
    let mut cond_ok = true;
    for n in 1..=4usize {
        let shapes = partitions_of(n);
        for a in &shapes {
            for b in &shapes {
                let ratio = pmf_ratio(&schur, a, b)?;
                let expect = j_lambda(a).eval(&rat_int(2)) / j_lambda(b).eval(&rat_int(2));
                if ratio != expect {
                    cond_ok = false;
                }
            }
        }
    }
    out.push(check(
        "conditioned_masses_are_j_ratios",
        cond_ok,
        "same-size mass ratios equal j ratios at qf = 2, n <= 4",
    ));
    Ok(out)
}

fn verify_samplers() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let mut strip_ok = true;
    for t in [rat(1, 2), rat(1, 3)] {
        let p = QTParams::hall_littlewood(t.clone());
        let y = VariableSpec::geometric(Rational::one(), t.clone());
        for n in 0..=5 {
            for lam in partitions_of(n) {
                for k in 0..=3usize {
                    for big in lam.horizontal_strip_extensions(k, None) {
                        if hl_strip_probability(&lam, &big, &t)?
                            != pieri_transition(&lam, &big, &y, &p)?
                        {
                            strip_ok = false;
                        }
                    }
                }
            }
        }
    }
    out.push(check(
        "column_formula_matches_pieri",
        strip_ok,
        "strip probabilities agree with transitions, |lambda| <= 5",
    ));
    let mut kerov_ok = true;
    for qf in [rat_int(2), rat_int(3)] {
        for n in 0..=6 {
            for lam in partitions_of(n) {
                let total: Rational = lam
                    .covers()
                    .iter()
                    .map(|(big, _)| kerov_transition(&lam, big, &qf))
                    .collect::<Result<Vec<_>>>()?
                    .into_iter()
                    .sum();
                if !total.is_one() {
                    kerov_ok = false;
                }
            }
        }
    }
    let t = rat(1, 2);
    let sp = QTParams::schur_like(t.clone());
    let y = VariableSpec::geometric(Rational::one(), t.clone());
    for n in 0..=4 {
        for lam in partitions_of(n) {
            for (big, _) in lam.covers() {
                if kerov_transition(&lam, &big, &t)? != pieri_transition(&lam, &big, &y, &sp)? {
                    kerov_ok = false;
                }
            }
        }
    }
    out.push(check(
        "hook_walk_normalizes_and_matches_pieri",
        kerov_ok,
        "cover masses sum to 1 (qf in {2,3}) and match one-box transitions at q = t",
    ));
    let (u, qf) = (rat(1, 2), rat_int(2));
    let mut lattice_ok = true;
    for n in 0..=6 {
        for lam in partitions_of(n) {
            let total: Rational = lam
                .covers()
                .iter()
                .map(|(_, col)| lattice_edge_weight(&lam, *col, &u, &qf))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .sum();
            if total != lattice_total_mass(&lam, &u, &qf) || total >= Rational::one() {
                lattice_ok = false;
            }
        }
    }
    out.push(check(
        "lattice_outgoing_mass_totals",
        lattice_ok,
        "edge weights total u q/(q^(r+1)-1) and stay below 1, |lambda| <= 6",
    ));
    let mut conserve = Rational::zero();
    let cap = 3usize;
    for n in 0..=cap {
        for lam in partitions_of(n) {
            let halt = Rational::one() - lattice_total_mass(&lam, &u, &qf);
            for t in enumerate_syt(&lam)? {
                conserve += weight_of_path(&t, &u, &qf, PathWeightVariant::Plain)? * &halt;
            }
        }
    }
    for lam in partitions_of(cap + 1) {
        for t in enumerate_syt(&lam)? {
            conserve += weight_of_path(&t, &u, &qf, PathWeightVariant::Plain)?;
        }
    }
    out.push(check(
        "walk_is_conservative",
        conserve.is_one(),
        "halting masses plus frontier weight total exactly 1 at depth 4",
    ));
    let mut weight_ok = true;
    for n in 0..=4 {
        for lam in partitions_of(n) {
            for t in enumerate_syt(&lam)? {
                let w = weight_of_path(&t, &u, &qf, PathWeightVariant::Plain)?;
                for big_n in lam.rows().max(1)..=5 {
                    let mut norm = Rational::one();
                    for r in 1..=big_n {
                        norm *= Rational::one() - &u / rat_pow(&qf, r);
                    }
                    for r in big_n - lam.rows() + 1..=big_n {
                        norm *= Rational::one() - rat_pow(&qf, r).recip();
                    }
                    if &w * &norm != tableau_pmf_truncated(&t, &u, &qf, big_n)? {
                        weight_ok = false;
                    }
                }
            }
        }
    }
    out.push(check(
        "path_weights_match_truncated_masses",
        weight_ok,
        "weight times normalizers equals the exact tableau mass, |T| <= 4, N <= 5",
    ));
    Ok(out)
}

fn verify_tableaux() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let mut count_ok = true;
    for n in 0..=7 {
        for lam in partitions_of(n) {
            if BigInt::from(enumerate_syt(&lam)?.len()) != hook_count(&lam) {
                count_ok = false;
            }
        }
    }
    out.push(check(
        "enumeration_matches_hook_counts",
        count_ok,
        "tableau counts equal n!/prod h, |lambda| <= 7",
    ));
    let mut kostka_ok = true;
    for n in 0..=6 {
        for lam in partitions_of(n) {
            let product_route = kostka_foulkes(&lam);
            let mut maj_route = crate::measures::JPolynomial::zero();
            for t in enumerate_syt(&lam)? {
                maj_route = maj_route.add(&crate::measures::JPolynomial::monomial(t.major_index()));
            }
            if product_route != maj_route {
                kostka_ok = false;
            }
            if product_route.eval(&Rational::one()) != Rational::from(hook_count(&lam)) {
                kostka_ok = false;
            }
        }
    }
    out.push(check(
        "kostka_foulkes_two_routes_agree",
        kostka_ok,
        "hook q-formula equals the maj generating function, |lambda| <= 6",
    ));
    let mut square_ok = true;
    for n in 0..=6 {
        for lam in partitions_of(n) {
            let k = kostka_foulkes(&lam.conjugate());
            if j_lambda(&lam) != k.mul(&k) {
                square_ok = false;
            }
        }
    }
    out.push(check(
        "j_is_square_of_conjugate_kostka",
        square_ok,
        "j_lambda = K(lambda')^2 as polynomials, |lambda| <= 6",
    ));
    let mut mass_ok = true;
    for (u, qf) in [(rat(1, 2), rat_int(2)), (rat(1, 3), rat_int(3))] {
        let spec = MeasureSpec::hall_littlewood_gl(u.clone(), qf.clone());
        for n in 0..=5 {
            for lam in partitions_of(n) {
                for big_n in 1..=4usize {
                    let mut total = Rational::zero();
                    for t in enumerate_syt(&lam)? {
                        total += tableau_pmf_truncated(&t, &u, &qf, big_n)?;
                    }
                    let direct = pmf_truncated(&spec, big_n, &lam)?;
                    if !direct.is_exact() || total != direct.value {
                        mass_ok = false;
                    }
                }
            }
        }
    }
    out.push(check(
        "tableau_masses_sum_to_shape_mass",
        mass_ok,
        "creation-order masses refine the shape masses, |lambda| <= 5, N <= 4",
    ));
    let mut rsk_ok = true;
    for perm in all_permutations(4)? {
        let (p, q) = rsk(&perm);
        if perm.major_index() != q.major_index() {
            rsk_ok = false;
        }
        let (pi, qi) = rsk(&perm.inverse());
        if pi != q || qi != p {
            rsk_ok = false;
        }
    }
    out.push(check(
        "correspondence_swaps_under_inverse",
        rsk_ok,
        "maj(pi) = maj(Q) and inverse swaps the pair, all of S_4",
    ));
    Ok(out)
}

fn verify_gl() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let mut sizes_ok = true;
    let mut detail = String::new();
    for n in 0..=4usize {
        let classes = enumerate_classes(n, 2)?;
        let total: BigInt = classes.iter().map(|(_, size)| size.clone()).sum();
        if total != gl_order(n, 2) {
            sizes_ok = false;
        }
        detail.push_str(&format!("n={}: {} classes; ", n, classes.len()));
    }
    out.push(check(
        "class_sizes_sum_to_group_order",
        sizes_ok,
        detail.trim_end_matches("; ").to_string(),
    ));
    let classes2 = enumerate_classes(2, 2)?;
    let mut sizes: Vec<BigInt> = classes2.iter().map(|(_, s)| s.clone()).collect();
    sizes.sort();
    out.push(check(
        "gl2_class_sizes",
        sizes == vec![BigInt::from(1), BigInt::from(2), BigInt::from(3)],
        "the three classes of the order-6 group have sizes 1, 2, 3",
    ));
    let one_box = PartitionShape::new(vec![1])?;
    let mut marginal_ok = true;
    for qf in [2u64, 3u64] {
        let report = marginal_vs_measure(&one_box, 1, qf, 3)?;
        if !report.all_match {
            marginal_ok = false;
        }
    }
    out.push(check(
        "class_marginal_matches_measure",
        marginal_ok,
        "degree-1 slot marginal matches the measure series through u^3, qf in {2,3}",
    ));
    Ok(out)
}
