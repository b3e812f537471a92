//! Command-line surface over the measure library: draw samples, print
//! exact truncated masses, run the verification suites, check conjugacy
//! class data, and run reproducible sampling experiments.
//!
//! Exit codes: 0 on success, 1 when a verification or comparison fails,
//! 2 on configuration, parse, or domain errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::One;
use serde::Serialize;

use macdonald::harness::{OutputTarget, ReportFormat};
use macdonald::measures::{default_tail_tol, pmf_truncated};
use macdonald::partition::partitions_up_to;
use macdonald::qseries::{parse_rational, rational_to_f64, Rational, VariableSpec};
use macdonald::samplers::{
    sample_general, sample_hl_simplified, sample_kerov_walk, sample_lattice_weights,
    sample_young_tableau_alg, RandomSource,
};
use macdonald::{
    gl, run_experiment, verify, ExperimentConfig, GrowthTrace, MeasureSpec, PartitionShape,
    QTParams, SamplerKind,
};

#[derive(Parser)]
#[command(
    name = "macd",
    version,
    about = "Exact partition measures, growth samplers, and verifiers"
)]
struct Cli {
    /// Root seed; sample i always uses substream i.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Certified residual-activity tolerance, e.g. 1/1099511627776.
    #[arg(long, global = true)]
    tail_tol: Option<String>,
    /// Write output to this path instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum SamplerName {
    General,
    HlSimplified,
    YoungTableau,
    LatticeWeights,
    Kerov,
}

impl From<SamplerName> for SamplerKind {
    fn from(s: SamplerName) -> SamplerKind {
        match s {
            SamplerName::General => SamplerKind::General,
            SamplerName::HlSimplified => SamplerKind::HlSimplified,
            SamplerName::YoungTableau => SamplerKind::YoungTableau,
            SamplerName::LatticeWeights => SamplerKind::LatticeWeights,
            SamplerName::Kerov => SamplerKind::Kerov,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum MeasureName {
    HallLittlewoodGl,
    SchurQPlancherel,
}

#[derive(Subcommand)]
enum Command {
    /// Draw samples; one record per sample.
    Sample(SampleArgs),
    /// Print exact truncated masses for every shape up to a size cap.
    Pmf(PmfArgs),
    /// Run exact-identity verification suites.
    Verify(VerifyArgs),
    /// Enumerate conjugacy classes and compare marginals to the measure.
    Glcheck(GlcheckArgs),
    /// Run a reproducible sampling experiment against the exact law.
    Experiment(ExperimentArgs),
}

#[derive(Args)]
struct SampleArgs {
    /// Sampling algorithm.
    #[arg(long, value_enum)]
    spec: SamplerName,
    /// Size parameter of the measure, in (0, 1).
    #[arg(long)]
    u: Option<String>,
    /// Base parameter, > 1.
    #[arg(long)]
    qf: Option<String>,
    /// Column-selection parameter override; defaults to 1/qf.
    #[arg(long)]
    t: Option<String>,
    /// Number of samples to draw.
    #[arg(long, default_value_t = 1)]
    n_samples: usize,
    /// Step count for the fixed-length hook walk.
    #[arg(long)]
    steps: Option<usize>,
}

#[derive(Args)]
struct PmfArgs {
    /// Measure family.
    #[arg(long, value_enum)]
    spec: MeasureName,
    /// Size parameter of the measure.
    #[arg(long)]
    u: String,
    /// Base parameter, > 1.
    #[arg(long)]
    qf: String,
    /// Interval count of the truncated process.
    #[arg(long)]
    n_intervals: usize,
    /// Include every shape with at most this many boxes.
    #[arg(long, default_value_t = 8)]
    max_size: usize,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suites to run; all seven when omitted.
    suites: Vec<String>,
}

#[derive(Args)]
struct GlcheckArgs {
    /// Matrix size.
    #[arg(long)]
    n: usize,
    /// Field size, a prime power.
    #[arg(long)]
    qf: u64,
    /// Compare the marginal law of this partition instead of listing classes.
    #[arg(long)]
    marginal: Option<String>,
    /// Polynomial degree of the slot whose marginal is compared.
    #[arg(long, default_value_t = 1)]
    deg: usize,
    /// Compare coefficients through this power of u; defaults to --n.
    #[arg(long)]
    n_max: Option<usize>,
}

#[derive(Args)]
struct ExperimentArgs {
    /// JSON experiment config; explicit flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Sampling algorithm.
    #[arg(long, value_enum)]
    sampler: Option<SamplerName>,
    /// Measure family.
    #[arg(long, value_enum)]
    spec: Option<MeasureName>,
    /// Size parameter of the measure.
    #[arg(long)]
    u: Option<String>,
    /// Base parameter, > 1.
    #[arg(long)]
    qf: Option<String>,
    /// Number of samples to draw.
    #[arg(long)]
    n_samples: Option<usize>,
    /// Shapes up to this size get their own comparison row.
    #[arg(long)]
    max_tracked_size: Option<usize>,
    /// Step count for the fixed-length hook walk.
    #[arg(long)]
    steps: Option<usize>,
    /// Worker threads.
    #[arg(long)]
    threads: Option<usize>,
}

/// A failure with its process exit code: 1 for verification failures,
/// 2 for configuration problems.
struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn config(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }

    fn verification(message: impl Into<String>) -> Self {
        CliError {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<macdonald::Error> for CliError {
    fn from(e: macdonald::Error) -> Self {
        CliError::config(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::config(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::config(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::config(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let sink = Sink {
        format: cli.format.unwrap_or(Format::Json),
        format_explicit: cli.format.is_some(),
        path: cli.out.clone(),
    };
    match &cli.command {
        Command::Sample(args) => cmd_sample(&cli, args, &sink),
        Command::Pmf(args) => cmd_pmf(args, &sink),
        Command::Verify(args) => cmd_verify(args, &sink),
        Command::Glcheck(args) => cmd_glcheck(args, &sink),
        Command::Experiment(args) => cmd_experiment(&cli, args, sink),
    }
}

/// Where and how output is written.
struct Sink {
    format: Format,
    format_explicit: bool,
    path: Option<PathBuf>,
}

impl Sink {
    fn write(&self, text: String) -> Result<(), CliError> {
        match &self.path {
            Some(p) => fs::write(p, text)?,
            None => print!("{}", text),
        }
        Ok(())
    }

    /// Serializes rows as a JSON array or a CSV table.
    fn emit_rows<T: Serialize>(&self, rows: &[T]) -> Result<(), CliError> {
        match self.format {
            Format::Json => {
                let mut text = serde_json::to_string_pretty(rows)?;
                text.push('\n');
                self.write(text)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                for row in rows {
                    w.serialize(row)?;
                }
                let bytes = w
                    .into_inner()
                    .map_err(|e| CliError::config(e.to_string()))?;
                self.write(String::from_utf8(bytes).expect("csv output is utf-8"))
            }
        }
    }

    /// Serializes one structured object as JSON, with rows as the CSV
    /// projection.
    fn emit_object<T: Serialize, R: Serialize>(
        &self,
        object: &T,
        csv_rows: &[R],
    ) -> Result<(), CliError> {
        match self.format {
            Format::Json => {
                let mut text = serde_json::to_string_pretty(object)?;
                text.push('\n');
                self.write(text)
            }
            Format::Csv => self.emit_rows(csv_rows),
        }
    }
}

fn parse_rat_flag(name: &str, value: &str) -> Result<Rational, CliError> {
    parse_rational(value).map_err(|e| CliError::config(format!("--{}: {}", name, e)))
}

fn require<'a>(name: &str, value: &'a Option<String>) -> Result<&'a str, CliError> {
    value
        .as_deref()
        .ok_or_else(|| CliError::config(format!("--{} is required for this sampler", name)))
}

fn rational_pair(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[derive(Serialize)]
struct SampleRecord {
    index: u64,
    partition: String,
    size: usize,
    intervals: usize,
    truncation_bias: String,
    truncation_bias_decimal: f64,
}

fn cmd_sample(cli: &Cli, args: &SampleArgs, sink: &Sink) -> Result<(), CliError> {
    let seed = cli.seed.unwrap_or(0);
    let tail_tol = match &cli.tail_tol {
        Some(s) => parse_rat_flag("tail-tol", s)?,
        None => default_tail_tol(),
    };
    let root = RandomSource::from_seed(seed);
    let draw = |index: u64| -> Result<GrowthTrace, macdonald::Error> {
        let mut rng = root.substream(index);
        match args.spec {
            SamplerName::General => {
                let u = parse_rational(require("u", &args.u).map_err(config_to_lib)?)?;
                let qf = parse_rational(require("qf", &args.qf).map_err(config_to_lib)?)?;
                let spec = match &args.t {
                    None => MeasureSpec::hall_littlewood_gl(u, qf),
                    Some(ts) => {
                        let t = parse_rational(ts)?;
                        MeasureSpec::General {
                            x: VariableSpec::geometric(&u * &t, t.clone()),
                            y: VariableSpec::geometric(Rational::one(), t.clone()),
                            params: QTParams::hall_littlewood(t),
                        }
                    }
                };
                sample_general(&spec, &mut rng, &tail_tol)
            }
            SamplerName::HlSimplified => {
                let u = parse_rational(require("u", &args.u).map_err(config_to_lib)?)?;
                let t = match (&args.t, &args.qf) {
                    (Some(ts), _) => parse_rational(ts)?,
                    (None, Some(qs)) => parse_rational(qs)?.recip(),
                    (None, None) => {
                        return Err(macdonald::Error::Config(
                            "--t or --qf is required for this sampler".into(),
                        ))
                    }
                };
                let x = VariableSpec::geometric(&u * &t, t.clone());
                sample_hl_simplified(&x, &t, &mut rng, &tail_tol)
            }
            SamplerName::YoungTableau => {
                let u = parse_rational(require("u", &args.u).map_err(config_to_lib)?)?;
                let qf = parse_rational(require("qf", &args.qf).map_err(config_to_lib)?)?;
                sample_young_tableau_alg(&u, &qf, &mut rng, &tail_tol)
            }
            SamplerName::LatticeWeights => {
                let u = parse_rational(require("u", &args.u).map_err(config_to_lib)?)?;
                let qf = parse_rational(require("qf", &args.qf).map_err(config_to_lib)?)?;
                sample_lattice_weights(&u, &qf, false, &mut rng)
            }
            SamplerName::Kerov => {
                let qf = parse_rational(require("qf", &args.qf).map_err(config_to_lib)?)?;
                let steps = args.steps.ok_or_else(|| {
                    macdonald::Error::Config("--steps is required for the hook walk".into())
                })?;
                sample_kerov_walk(&qf, steps, &mut rng)
            }
        }
    };
    let mut records = Vec::with_capacity(args.n_samples);
    for index in 0..args.n_samples as u64 {
        let trace = draw(index)?;
        records.push(SampleRecord {
            index,
            partition: trace.final_shape.to_string(),
            size: trace.final_shape.size(),
            intervals: trace.intervals_used,
            truncation_bias: rational_pair(&trace.truncation_bias),
            truncation_bias_decimal: rational_to_f64(&trace.truncation_bias),
        });
    }
    sink.emit_rows(&records)
}

fn config_to_lib(e: CliError) -> macdonald::Error {
    macdonald::Error::Config(e.message)
}

#[derive(Serialize)]
struct PmfRow {
    partition: String,
    size: usize,
    exact: String,
    exact_decimal: f64,
    tail_bound: String,
}

fn cmd_pmf(args: &PmfArgs, sink: &Sink) -> Result<(), CliError> {
    let u = parse_rat_flag("u", &args.u)?;
    let qf = parse_rat_flag("qf", &args.qf)?;
    let spec = match args.spec {
        MeasureName::HallLittlewoodGl => MeasureSpec::hall_littlewood_gl(u, qf),
        MeasureName::SchurQPlancherel => MeasureSpec::schur_q_plancherel(u, qf),
    };
    let mut rows = Vec::new();
    for shape in partitions_up_to(args.max_size) {
        let mass = pmf_truncated(&spec, args.n_intervals, &shape)?;
        rows.push(PmfRow {
            partition: shape.to_string(),
            size: shape.size(),
            exact: rational_pair(&mass.value),
            exact_decimal: mass.to_f64(),
            tail_bound: rational_pair(&mass.tail_bound),
        });
    }
    sink.emit_rows(&rows)
}

#[derive(Serialize)]
struct VerifyRow {
    suite: String,
    name: String,
    passed: bool,
    detail: String,
}

fn cmd_verify(args: &VerifyArgs, sink: &Sink) -> Result<(), CliError> {
    let suites: Vec<String> = if args.suites.is_empty() {
        macdonald::harness::SUITES
            .iter()
            .map(|s| s.to_string())
            .collect()
    } else {
        args.suites.clone()
    };
    let mut rows = Vec::new();
    let mut failures = 0usize;
    for suite in &suites {
        for check in verify(suite)? {
            if !check.passed {
                failures += 1;
            }
            rows.push(VerifyRow {
                suite: suite.clone(),
                name: check.name,
                passed: check.passed,
                detail: check.detail,
            });
        }
    }
    sink.emit_rows(&rows)?;
    if failures > 0 {
        return Err(CliError::verification(format!(
            "{} verification check(s) failed",
            failures
        )));
    }
    Ok(())
}

#[derive(Serialize)]
struct ClassRow {
    factors: String,
    size: String,
}

#[derive(Serialize)]
struct ClassTable {
    n: usize,
    qf: u64,
    group_order: String,
    class_count: usize,
    total_matches_order: bool,
    classes: Vec<ClassRow>,
}

fn cmd_glcheck(args: &GlcheckArgs, sink: &Sink) -> Result<(), CliError> {
    let n_max = args.n_max.unwrap_or(args.n);
    if let Some(text) = &args.marginal {
        let shape: PartitionShape = text
            .parse()
            .map_err(|e: macdonald::Error| CliError::config(format!("--marginal: {}", e)))?;
        let report = gl::marginal_vs_measure(&shape, args.deg, args.qf, n_max)?;
        let all_match = report.all_match;
        sink.emit_object(&report, &report.rows)?;
        if !all_match {
            return Err(CliError::verification(
                "marginal coefficients do not match the measure",
            ));
        }
        return Ok(());
    }
    let classes = gl::enumerate_classes(args.n, args.qf)?;
    let order = gl::gl_order(args.n, args.qf);
    let total: num::BigInt = classes.iter().map(|(_, size)| size.clone()).sum();
    let rows: Vec<ClassRow> = classes
        .iter()
        .map(|(datum, size)| ClassRow {
            factors: datum
                .factors
                .iter()
                .map(|f| format!("d{}.{}={}", f.degree, f.slot, f.shape))
                .collect::<Vec<_>>()
                .join(" "),
            size: size.to_string(),
        })
        .collect();
    let table = ClassTable {
        n: args.n,
        qf: args.qf,
        group_order: order.to_string(),
        class_count: rows.len(),
        total_matches_order: total == order,
        classes: rows,
    };
    let ok = table.total_matches_order;
    sink.emit_object(&table, &table.classes)?;
    if !ok {
        return Err(CliError::verification(
            "class sizes do not sum to the group order",
        ));
    }
    Ok(())
}

#[derive(Serialize)]
struct EntryRow {
    partition: String,
    count: u64,
    empirical: f64,
    exact: String,
    exact_decimal: f64,
    tv_contribution: f64,
}

fn cmd_experiment(cli: &Cli, args: &ExperimentArgs, mut sink: Sink) -> Result<(), CliError> {
    let mut cfg: ExperimentConfig = match &args.config {
        Some(path) => serde_json::from_str(&fs::read_to_string(path)?)?,
        None => {
            let sampler = args
                .sampler
                .ok_or_else(|| CliError::config("--sampler is required without --config"))?;
            let family = args
                .spec
                .ok_or_else(|| CliError::config("--spec is required without --config"))?;
            let u = parse_rat_flag("u", require("u", &args.u)?)?;
            let qf = parse_rat_flag("qf", require("qf", &args.qf)?)?;
            let spec = match family {
                MeasureName::HallLittlewoodGl => MeasureSpec::hall_littlewood_gl(u, qf),
                MeasureName::SchurQPlancherel => MeasureSpec::schur_q_plancherel(u, qf),
            };
            ExperimentConfig {
                spec,
                sampler: sampler.into(),
                n_samples: 1000,
                seed: 0,
                tail_tol: default_tail_tol(),
                max_tracked_size: 12,
                steps: None,
                threads: None,
                output: None,
            }
        }
    };
    // explicit flags override config-file fields
    if args.config.is_some() {
        if let Some(s) = args.sampler {
            cfg.sampler = s.into();
        }
        if args.spec.is_some() || args.u.is_some() || args.qf.is_some() {
            let family = match (&args.spec, &cfg.spec) {
                (Some(f), _) => *f,
                (None, MeasureSpec::HallLittlewoodGl { .. }) => MeasureName::HallLittlewoodGl,
                (None, MeasureSpec::SchurQPlancherel { .. }) => MeasureName::SchurQPlancherel,
                (None, MeasureSpec::General { .. }) => {
                    return Err(CliError::config(
                        "--u/--qf overrides need a named family; pass --spec too",
                    ))
                }
            };
            let (cfg_u, cfg_qf) = match &cfg.spec {
                MeasureSpec::HallLittlewoodGl { u, qf }
                | MeasureSpec::SchurQPlancherel { u, qf } => (u.clone(), qf.clone()),
                MeasureSpec::General { .. } => (Rational::one(), Rational::one()),
            };
            let u = match &args.u {
                Some(s) => parse_rat_flag("u", s)?,
                None => cfg_u,
            };
            let qf = match &args.qf {
                Some(s) => parse_rat_flag("qf", s)?,
                None => cfg_qf,
            };
            cfg.spec = match family {
                MeasureName::HallLittlewoodGl => MeasureSpec::hall_littlewood_gl(u, qf),
                MeasureName::SchurQPlancherel => MeasureSpec::schur_q_plancherel(u, qf),
            };
        }
    }
    if let Some(n) = args.n_samples {
        cfg.n_samples = n;
    }
    if let Some(m) = args.max_tracked_size {
        cfg.max_tracked_size = m;
    }
    if let Some(s) = args.steps {
        cfg.steps = Some(s);
    }
    if let Some(t) = args.threads {
        cfg.threads = Some(t);
    }
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(tol) = &cli.tail_tol {
        cfg.tail_tol = parse_rat_flag("tail-tol", tol)?;
    }
    // the config file may carry an output target; explicit flags win
    if let Some(target) = &cfg.output {
        if !sink.format_explicit {
            sink.format = match target.format {
                ReportFormat::Json => Format::Json,
                ReportFormat::Csv => Format::Csv,
            };
        }
        if sink.path.is_none() {
            sink.path = target.path.as_ref().map(PathBuf::from);
        }
    }
    cfg.output = Some(OutputTarget {
        format: match sink.format {
            Format::Json => ReportFormat::Json,
            Format::Csv => ReportFormat::Csv,
        },
        path: sink.path.as_ref().map(|p| p.display().to_string()),
    });
    let report = run_experiment(&cfg)?;
    let rows: Vec<EntryRow> = report
        .entries
        .iter()
        .map(|e| EntryRow {
            partition: e.shape.to_string(),
            count: e.count,
            empirical: e.empirical,
            exact: rational_pair(&e.exact.value),
            exact_decimal: e.exact_decimal,
            tv_contribution: e.tv_contribution,
        })
        .collect();
    sink.emit_object(&report, &rows)
}
