//! The `aod` command line.
//!
//! Exit codes: 0 on success, 1 when the input data cannot be read or
//! processed, 2 for invalid flags or candidates.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use aod_core::discovery::{DiscoveryWarning, OcAlgorithm};
use aod_core::validate::oracle::{brute_force_min_removal, holds_exactly, CandidateKind};
use aod_core::validate::{
    validate_aoc_iterative, validate_aoc_optimal, validate_aod_optimal, validate_aofd, validate_exact_oc,
};
use aod_core::{discover, rank, AttrSet, DiscoveryConfig, Epsilon, Factor, Partition, Relation, ValidationOutcome};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::candidate::{CandidateSpec, SpecKind};
use crate::csv_io::{load_csv_path, CsvOptions};
use crate::experiments::{self, Algorithm, TimingParams};
use crate::report::{self, DiscoveryDocument, OutputRecord, RecordKind, SCORE_MEASURE};

/// Command-line arguments.
#[derive(Debug, Parser)]
#[command(name = "aod", version, about = "Discover and validate approximate order dependencies")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Find all minimal approximate OCs and OFDs in a CSV file.
    Discover(DiscoverArgs),
    /// Validate one candidate dependency.
    Validate(ValidateArgs),
    /// Time validators on synthetic data.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
struct InputArgs {
    /// CSV file to read.
    #[arg(long)]
    input: PathBuf,
    /// Field delimiter.
    #[arg(long, default_value_t = ',')]
    delimiter: char,
    /// Cell text read as null.
    #[arg(long, default_value = "")]
    null_token: String,
    /// The first row is data, not column names.
    #[arg(long)]
    no_header: bool,
    /// Read 20K, 2.5M and 10% as numbers.
    #[arg(long)]
    normalize_suffixes: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DiscoverAlgorithm {
    Optimal,
    Iterative,
}

#[derive(Debug, Args)]
struct DiscoverArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Error threshold, as a decimal or `p/q`.
    #[arg(long, default_value = "0")]
    epsilon: Epsilon,
    /// Comma-separated attributes to search over (default: all).
    #[arg(long, value_delimiter = ',')]
    columns: Vec<String>,
    /// Largest lattice level to visit.
    #[arg(long)]
    max_level: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Validator for order compatibilities.
    #[arg(long, value_enum, default_value = "optimal")]
    algorithm: DiscoverAlgorithm,
    /// Worker threads (default: one per core).
    #[arg(long)]
    threads: Option<usize>,
    /// Validate every candidate instead of skipping non-minimal ones.
    #[arg(long)]
    no_pruning: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum ValidateAlgorithm {
    Optimal,
    Iterative,
    Exact,
    Oracle,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("candidate").required(true).args(["oc", "ofd", "od"]))]
struct ValidateArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Order compatibility `ctx|A~B`.
    #[arg(long)]
    oc: Option<String>,
    /// Order functional dependency `ctx|A`.
    #[arg(long)]
    ofd: Option<String>,
    /// Order dependency `ctx|A->B`.
    #[arg(long)]
    od: Option<String>,
    /// Error threshold, as a decimal or `p/q`.
    #[arg(long, default_value = "0")]
    epsilon: Epsilon,
    #[arg(long, value_enum, default_value = "optimal")]
    algorithm: ValidateAlgorithm,
    /// List the zero-based indices of removed rows.
    #[arg(long)]
    emit_removals: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum Experiment {
    ScalRows,
    EpsSweep,
    Overestimate,
    DiscoveryVsExact,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// Scripted experiment; without one, every row count is timed at every
    /// threshold.
    #[arg(long, value_enum)]
    experiment: Option<Experiment>,
    /// Comma-separated row counts.
    #[arg(long, value_delimiter = ',')]
    rows: Vec<usize>,
    /// Comma-separated validators.
    #[arg(long, value_delimiter = ',', default_value = "optimal,iterative")]
    algorithms: Vec<Algorithm>,
    /// Comma-separated thresholds to sweep.
    #[arg(long, value_delimiter = ',')]
    epsilon_sweep: Vec<Epsilon>,
    /// Threshold when not sweeping.
    #[arg(long, default_value = "1")]
    epsilon: Epsilon,
    /// Fraction of displaced values in the right-hand column.
    #[arg(long, default_value_t = 1.0)]
    swap_rate: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Timing rounds; the fastest is reported.
    #[arg(long, default_value_t = 3)]
    repeats: usize,
    /// Candidates for the overestimation study.
    #[arg(long, default_value_t = 1000)]
    candidates: usize,
    /// Attributes of the discovery relation.
    #[arg(long, default_value_t = 5)]
    columns: usize,
    /// Write the CSV report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (default: one per core).
    #[arg(long)]
    threads: Option<usize>,
}

/// Failure of a command.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad flags or candidate.
    #[error("{0}")]
    Usage(String),
    /// Unreadable or unusable data.
    #[error("{0}")]
    Data(String),
}

impl CliError {
    /// Process exit code.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Data(_) => 1,
        }
    }
}

fn data<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Data(e.to_string())
}

/// Parses the process arguments and runs the command.
pub fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("AOD_LOG")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match run(cli, &mut std::io::stdout().lock(), &mut std::io::stderr().lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

/// Runs a parsed command, writing results to `out` and summaries to `err`.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Discover(a) => cmd_discover(a, out, err),
        Command::Validate(a) => cmd_validate(a, out),
        Command::Bench(a) => cmd_bench(a, out, err),
    }
}

fn set_threads(threads: Option<usize>) -> Result<(), CliError> {
    if let Some(n) = threads {
        if n == 0 {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            log::warn!("thread pool already configured: {e}");
        }
    }
    Ok(())
}

fn load(input: &InputArgs) -> Result<Relation, CliError> {
    let delimiter = u8::try_from(input.delimiter)
        .map_err(|_| CliError::Usage(format!("delimiter `{}` is not a single byte", input.delimiter)))?;
    let opts = CsvOptions {
        delimiter,
        null_token: input.null_token.clone(),
        has_header: !input.no_header,
        normalize_suffixes: input.normalize_suffixes,
    };
    let r =
        load_csv_path(&input.input, &opts).map_err(|e| CliError::Data(format!("{}: {e}", input.input.display())))?;
    log::info!("loaded {} rows x {} columns from {}", r.row_count(), r.width(), input.input.display());
    Ok(r)
}

fn position(r: &Relation, name: &str) -> Result<usize, CliError> {
    r.position(name).map_err(|e| CliError::Usage(e.to_string()))
}

fn cmd_discover(a: DiscoverArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    set_threads(a.threads)?;
    let r = load(&a.input)?;
    let attributes = if a.columns.is_empty() {
        None
    } else {
        Some(a.columns.iter().map(|c| position(&r, c.trim())).collect::<Result<AttrSet, _>>()?)
    };
    let cfg = DiscoveryConfig {
        epsilon: a.epsilon,
        max_level: a.max_level,
        attributes,
        validator: match a.algorithm {
            DiscoverAlgorithm::Optimal => OcAlgorithm::Optimal,
            DiscoverAlgorithm::Iterative => OcAlgorithm::Iterative,
        },
        pruning: !a.no_pruning,
    };
    let start = Instant::now();
    let res = discover(&r, &cfg);
    let elapsed = start.elapsed();
    if res.warning == Some(DiscoveryWarning::EmptyRelation) {
        writeln!(err, "warning: the relation has no rows; nothing to discover").map_err(data)?;
    }
    let records: Vec<OutputRecord> =
        rank(&r, &res.dependencies).iter().map(|d| OutputRecord::from_ranked(&r, d)).collect();
    match a.format {
        Format::Json => {
            let doc =
                DiscoveryDocument { epsilon: a.epsilon.to_string(), score_measure: SCORE_MEASURE.into(), records };
            report::write_json(&doc, out).map_err(data)?;
        }
        Format::Csv => report::write_records_csv(&records, out).map_err(data)?,
    }

    let top = res.dependencies.iter().map(|d| d.lattice_level).max().unwrap_or(0);
    let levels: Vec<String> = (1..=top)
        .map(|l| format!("{l}:{}", res.dependencies.iter().filter(|d| d.lattice_level == l).count()))
        .collect();
    writeln!(
        err,
        "{} dependencies (per level {}); validated {} of {} candidates in {:.1} ms; score is a {SCORE_MEASURE}",
        res.dependencies.len(),
        if levels.is_empty() { "-".into() } else { levels.join(" ") },
        res.validated,
        res.generated,
        elapsed.as_secs_f64() * 1e3,
    )
    .map_err(data)
}

#[derive(Debug, Serialize)]
struct ValidateReport {
    record: Option<OutputRecord>,
    algorithm: ValidateAlgorithm,
    epsilon: String,
    valid: bool,
    elapsed_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    removed_rows: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<[u32; 2]>,
}

fn cmd_validate(a: ValidateArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let (text, kind) = match (&a.oc, &a.ofd, &a.od) {
        (Some(s), _, _) => (s, SpecKind::Oc),
        (_, Some(s), _) => (s, SpecKind::Ofd),
        (_, _, Some(s)) => (s, SpecKind::Od),
        _ => unreachable!("clap requires one candidate"),
    };
    let spec = CandidateSpec::parse(text, kind).map_err(CliError::Usage)?;
    let r = load(&a.input)?;
    let context: AttrSet = spec.context.iter().map(|c| position(&r, c)).collect::<Result<_, _>>()?;
    let lhs = spec.lhs.as_deref().map(|n| position(&r, n)).transpose()?;
    let rhs = position(&r, &spec.rhs)?;
    if context.contains(rhs) || lhs.is_some_and(|l| l == rhs || context.contains(l)) {
        return Err(CliError::Usage(format!("`{text}` holds trivially: an attribute repeats")));
    }
    let record_kind = match kind {
        SpecKind::Oc => RecordKind::Oc,
        SpecKind::Ofd => RecordKind::Ofd,
        SpecKind::Od => RecordKind::Od,
    };
    let b = lhs.unwrap_or(rhs);
    let p = Partition::by_attributes(&r, context);
    let eps = a.epsilon;
    let record = |f: Factor| Some(OutputRecord::new(&r, record_kind, context.iter(), lhs, rhs, f));
    let start = Instant::now();

    let mut rep = match a.algorithm {
        ValidateAlgorithm::Optimal | ValidateAlgorithm::Iterative => {
            let outcome: ValidationOutcome = match (a.algorithm, kind) {
                (ValidateAlgorithm::Optimal, SpecKind::Oc) => validate_aoc_optimal(&r, &p, b, rhs, eps),
                (ValidateAlgorithm::Optimal, SpecKind::Od) => validate_aod_optimal(&r, &p, b, rhs, eps),
                (ValidateAlgorithm::Optimal, SpecKind::Ofd) => validate_aofd(&r, &p, rhs, eps),
                (_, SpecKind::Oc) => validate_aoc_iterative(&r, &p, b, rhs, Epsilon::ONE),
                _ => return Err(CliError::Usage("the iterative validator only handles --oc".into())),
            };
            ValidateReport {
                record: record(outcome.factor()),
                algorithm: a.algorithm,
                epsilon: eps.to_string(),
                valid: outcome.factor().within(eps),
                elapsed_ms: 0.0,
                removed_rows: a.emit_removals.then(|| outcome.removal_set.iter().map(|t| t.0).collect()),
                witness: None,
            }
        }
        ValidateAlgorithm::Exact => {
            let (holds, witness) = match kind {
                SpecKind::Oc => {
                    let check = validate_exact_oc(&r, &p, b, rhs);
                    (check.holds, check.witness.map(|w| [w.s.0, w.t.0]))
                }
                SpecKind::Od => (holds_exactly(&r, &p, CandidateKind::Od, b, Some(rhs)), None),
                SpecKind::Ofd => (holds_exactly(&r, &p, CandidateKind::Ofd, rhs, None), None),
            };
            ValidateReport {
                record: holds.then(|| record(Factor::new(0, r.row_count() as u64))).flatten(),
                algorithm: a.algorithm,
                epsilon: eps.to_string(),
                valid: holds,
                elapsed_ms: 0.0,
                removed_rows: (a.emit_removals && holds).then(Vec::new),
                witness,
            }
        }
        ValidateAlgorithm::Oracle => {
            let ck = match kind {
                SpecKind::Oc => CandidateKind::Oc,
                SpecKind::Od => CandidateKind::Od,
                SpecKind::Ofd => CandidateKind::Ofd,
            };
            let (x, y) = if kind == SpecKind::Ofd { (rhs, None) } else { (b, Some(rhs)) };
            let removed = brute_force_min_removal(&r, &p.stripped(), ck, x, y).map_err(data)?;
            let f = Factor::new(removed, r.row_count() as u64);
            if a.emit_removals {
                log::warn!("the oracle reports removal counts only");
            }
            ValidateReport {
                record: record(f),
                algorithm: a.algorithm,
                epsilon: eps.to_string(),
                valid: f.within(eps),
                elapsed_ms: 0.0,
                removed_rows: None,
                witness: None,
            }
        }
    };
    rep.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    serde_json::to_writer_pretty(&mut *out, &rep).map_err(data)?;
    writeln!(out).map_err(data)
}

fn cmd_bench(a: BenchArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    set_threads(a.threads)?;
    if a.rows.contains(&0) {
        return Err(CliError::Usage("--rows values must be positive".into()));
    }
    if a.repeats == 0 {
        return Err(CliError::Usage("--repeats must be positive".into()));
    }
    if !(0.0..=1.0).contains(&a.swap_rate) {
        return Err(CliError::Usage("--swap-rate must be in [0, 1]".into()));
    }
    if a.algorithms.is_empty() {
        return Err(CliError::Usage("--algorithms is empty".into()));
    }
    let rows_or = |default: &[usize]| if a.rows.is_empty() { default.to_vec() } else { a.rows.clone() };
    let sweep = || {
        if a.epsilon_sweep.is_empty() {
            ["0", "0.05", "0.1", "0.15", "0.2", "0.25"].iter().map(|s| s.parse().unwrap()).collect()
        } else {
            a.epsilon_sweep.clone()
        }
    };
    let timing = |rows: Vec<usize>, epsilons: Vec<Epsilon>| TimingParams {
        rows,
        algorithms: a.algorithms.clone(),
        epsilons,
        swap_rate: a.swap_rate,
        seed: a.seed,
        repeats: a.repeats,
    };

    let mut csv_buf = Vec::new();
    let summary = match a.experiment {
        None => {
            let eps = if a.epsilon_sweep.is_empty() { vec![a.epsilon] } else { a.epsilon_sweep.clone() };
            let rows = experiments::timings(&timing(rows_or(&[1_000, 10_000, 100_000]), eps));
            experiments::write_timings(&rows, &mut csv_buf).map_err(data)?;
            format!("{} timings", rows.len())
        }
        Some(Experiment::ScalRows) => {
            let rows = experiments::scal_rows(&timing(rows_or(&[1_000, 10_000, 100_000]), vec![a.epsilon]));
            experiments::write_timings(&rows, &mut csv_buf).map_err(data)?;
            let fits: Vec<String> =
                experiments::exponents(&rows).iter().map(|(alg, e)| format!("{alg} exponent {e:.3}")).collect();
            fits.join(", ")
        }
        Some(Experiment::EpsSweep) => {
            let rows = experiments::eps_sweep(&timing(rows_or(&[20_000]), sweep()));
            experiments::write_timings(&rows, &mut csv_buf).map_err(data)?;
            let spreads: Vec<String> = a
                .algorithms
                .iter()
                .map(|&alg| format!("{alg} max/min-1 {:.3}", experiments::relative_spread(&rows, alg)))
                .collect();
            spreads.join(", ")
        }
        Some(Experiment::Overestimate) => {
            let report =
                experiments::overestimate(a.candidates, a.seed, a.epsilon_sweep.first().copied().unwrap_or(a.epsilon));
            report.write_csv(&mut csv_buf).map_err(data)?;
            report.summary()
        }
        Some(Experiment::DiscoveryVsExact) => {
            if !(2..=AttrSet::CAPACITY).contains(&a.columns) {
                return Err(CliError::Usage("--columns must be between 2 and 64".into()));
            }
            let n = rows_or(&[1_000])[0];
            let eps = if a.epsilon_sweep.is_empty() {
                ["0", "0.05", "0.1"].iter().map(|s| s.parse().unwrap()).collect()
            } else {
                a.epsilon_sweep.clone()
            };
            let rows = experiments::discovery_vs_exact(n, a.columns, &eps, a.seed);
            experiments::write_discovery(&rows, &mut csv_buf).map_err(data)?;
            format!("{} discovery runs on {n} rows", rows.len())
        }
    };
    match &a.out {
        Some(path) => std::fs::write(path, &csv_buf).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?,
        None => out.write_all(&csv_buf).map_err(data)?,
    }
    writeln!(err, "{summary}").map_err(data)
}
