//! The `pasp` command line: `estimate`, `exact`, `compare` and `bounds`.
//!
//! Exit codes: 0 success, 1 distance mismatches found by `compare`, 2 bad
//! flags, 3 invalid or unreadable input, 4 internal invariant failure,
//! 5 graph too large for the exact oracle.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgAction, Args, Parser, Subcommand};

use crate::bounds::{self, BoundInputs, BoundsSummary, DiamMode};
use crate::engine::{self, Mode, RunConfig};
use crate::error::Error;
use crate::graph::{parse_edge_list, Graph};
use crate::io::{self, EstimateReport};
use crate::oracle::{self, DEFAULT_ORACLE_MAX_N};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;
pub const EXIT_TOO_LARGE: i32 = 5;

/// Environment variable overriding the exact oracle's vertex limit.
pub const ORACLE_MAX_N_VAR: &str = "ORACLE_MAX_N";

#[derive(Debug, Parser)]
#[command(
    name = "pasp",
    version,
    about = "Shortest paths and shortest-path centrality by progressive sampling"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sample canonical trees until the accuracy target is certified.
    Estimate(EstimateArgs),
    /// Exact distances and centralities of every pair (small graphs only).
    Exact(ExactArgs),
    /// Check an estimate table against an exact table.
    Compare(CompareArgs),
    /// Print the sample-size bounds for a graph or for given n and diameter.
    Bounds(BoundsArgs),
}

fn unit_interval(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|_| format!("'{s}' is not a number"))?;
    if x > 0.0 && x < 1.0 {
        Ok(x)
    } else {
        Err(format!("{x} is outside (0, 1)"))
    }
}

fn unit_interval_closed(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|_| format!("'{s}' is not a number"))?;
    if x > 0.0 && x <= 1.0 {
        Ok(x)
    } else {
        Err(format!("{x} is outside (0, 1]"))
    }
}

fn positive(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|_| format!("'{s}' is not a number"))?;
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(format!("{x} is not positive"))
    }
}

fn above_one(s: &str) -> Result<f64, String> {
    let x = positive(s)?;
    if x > 1.0 {
        Ok(x)
    } else {
        Err(format!("{x} must exceed 1"))
    }
}

#[derive(Debug, Args)]
struct EstimateArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_parser = unit_interval)]
    epsilon: f64,
    #[arg(long, value_parser = unit_interval)]
    delta: f64,
    #[arg(long, default_value = "distances")]
    mode: Mode,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1.5, value_parser = above_one)]
    multiplier: f64,
    #[arg(long = "c-univ", default_value_t = bounds::DEFAULT_C_UNIV, value_parser = positive)]
    c_univ: f64,
    /// `exact`, `trivial`, or an integer bound on the vertex diameter.
    #[arg(long, default_value = "exact")]
    diam: DiamMode,
    #[arg(long = "include-zero", default_value_t = true, action = ArgAction::Set)]
    include_zero: bool,
    /// Append a reconstructed shortest path to every row.
    #[arg(long)]
    paths: bool,
    /// Pair table destination; standard output when absent.
    #[arg(long)]
    output: Option<PathBuf>,
    /// JSON run report destination.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ExactArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CompareArgs {
    #[arg(long)]
    estimate: PathBuf,
    #[arg(long)]
    exact: PathBuf,
    #[arg(long, value_parser = unit_interval_closed)]
    epsilon: f64,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BoundsArgs {
    #[arg(long, conflicts_with = "n")]
    input: Option<PathBuf>,
    #[arg(long, requires = "diam")]
    n: Option<usize>,
    /// With --n, the vertex-diameter bound; with --input, `exact`,
    /// `trivial` or an integer.
    #[arg(long)]
    diam: Option<String>,
    #[arg(long, value_parser = unit_interval)]
    epsilon: f64,
    #[arg(long, value_parser = unit_interval)]
    delta: f64,
    #[arg(long = "c-univ", default_value_t = bounds::DEFAULT_C_UNIV, value_parser = positive)]
    c_univ: f64,
    #[arg(long)]
    output: Option<PathBuf>,
}

/// A failure carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Graph(_) | Error::Disconnected { .. } | Error::GraphMismatch { .. } => {
                EXIT_INPUT
            }
            Error::InvalidConfig(_)
            | Error::DiameterLimit { .. }
            | Error::RootOutOfRange { .. } => EXIT_USAGE,
            Error::OracleLimit { .. } => EXIT_TOO_LARGE,
            Error::MaxIterations(_)
            | Error::Invariant(_)
            | Error::SelfPair(_)
            | Error::PairAbsent { .. } => EXIT_INTERNAL,
        };
        Failure::new(code, e.to_string())
    }
}

type CmdResult = Result<i32, Failure>;

/// Runs the command line with `args` (program name first) and returns the
/// exit code. Output not sent to a file goes to `stdout`; diagnostics go to
/// `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let result = match cli.command {
        Command::Estimate(a) => cmd_estimate(a, stdout, stderr),
        Command::Exact(a) => cmd_exact(a, stdout),
        Command::Compare(a) => cmd_compare(a, stdout),
        Command::Bounds(a) => cmd_bounds(a, stdout),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "pasp: {}", f.message);
            f.code
        }
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_INPUT, format!("cannot read {}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let text = read_text(path)?;
    parse_edge_list(&text).map_err(|e| Failure::new(EXIT_INPUT, format!("{}: {e}", path.display())))
}

fn emit(path: Option<&Path>, contents: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, contents)
            .map_err(|e| Failure::new(EXIT_INPUT, format!("cannot write {}: {e}", p.display()))),
        None => stdout
            .write_all(contents.as_bytes())
            .map_err(|e| Failure::new(EXIT_INPUT, format!("cannot write output: {e}"))),
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn cmd_estimate(a: EstimateArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CmdResult {
    let g = read_graph(&a.input)?;
    let cfg = RunConfig {
        epsilon: a.epsilon,
        delta: a.delta,
        mode: a.mode,
        seed: a.seed,
        schedule_multiplier: a.multiplier,
        c_univ: a.c_univ,
        diam_mode: a.diam,
        include_zero: a.include_zero,
        ..RunConfig::new(a.epsilon, a.delta)
    };
    let est = engine::run(&g, &cfg)?;
    let tsv = io::write_estimate_tsv(&est, a.paths)?;
    emit(a.output.as_deref(), &tsv, stdout)?;
    if let Some(path) = &a.report {
        emit(
            Some(path),
            &to_json(&EstimateReport::new(&cfg, &est.report)),
            stdout,
        )?;
    }
    let elapsed: f64 = est
        .report
        .iterations
        .iter()
        .map(|i| i.elapsed.as_secs_f64())
        .sum();
    let _ = writeln!(
        stderr,
        "pasp: {} trees, {} pairs, stop: {:?}, {:.3}s",
        est.sample_size(),
        est.pairs.len(),
        est.report.stop_reason,
        elapsed
    );
    Ok(EXIT_OK)
}

fn oracle_limit() -> Result<usize, Failure> {
    match std::env::var(ORACLE_MAX_N_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| {
            Failure::new(
                EXIT_USAGE,
                format!("{ORACLE_MAX_N_VAR} must be an integer, got '{v}'"),
            )
        }),
        Err(_) => Ok(DEFAULT_ORACLE_MAX_N),
    }
}

fn cmd_exact(a: ExactArgs, stdout: &mut dyn Write) -> CmdResult {
    let g = read_graph(&a.input)?;
    let exact = oracle::exact_centrality_with_limit(&g, oracle_limit()?)?;
    emit(a.output.as_deref(), &io::write_exact_tsv(&exact), stdout)?;
    Ok(EXIT_OK)
}

fn cmd_compare(a: CompareArgs, stdout: &mut dyn Write) -> CmdResult {
    let input = |e: Error| Failure::new(EXIT_INPUT, e.to_string());
    let rows = io::read_estimate_tsv(&read_text(&a.estimate)?).map_err(input)?;
    let exact = io::read_exact_tsv(&read_text(&a.exact)?).map_err(input)?;
    let records: Vec<_> = rows.iter().map(|r| r.record).collect();
    let report =
        oracle::compare_records(&records, &exact, a.epsilon, io::TSV_ROUNDING).map_err(input)?;
    emit(a.output.as_deref(), &to_json(&report), stdout)?;
    Ok(if report.distance_mismatch_count == 0 {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    })
}

fn cmd_bounds(a: BoundsArgs, stdout: &mut dyn Write) -> CmdResult {
    let (n, diam_v) = match (&a.input, a.n) {
        (Some(path), _) => {
            let g = read_graph(path)?;
            if let Some(unreached) = g.first_unreached() {
                return Err(Error::Disconnected { unreached }.into());
            }
            let mode: DiamMode = a
                .diam
                .as_deref()
                .unwrap_or("exact")
                .parse()
                .map_err(|e: String| Failure::new(EXIT_USAGE, format!("--diam: {e}")))?;
            (g.n(), bounds::vertex_diameter_bound(&g, mode)?)
        }
        (None, Some(n)) => {
            let diam = a.diam.as_deref().unwrap_or_default();
            let diam_v = diam.parse().map_err(|_| {
                Failure::new(
                    EXIT_USAGE,
                    format!("--diam: expected an integer, got '{diam}'"),
                )
            })?;
            (n, diam_v)
        }
        (None, None) => {
            return Err(Failure::new(
                EXIT_USAGE,
                "either --input or --n with --diam is required",
            ))
        }
    };
    let summary = BoundsSummary::compute(&BoundInputs {
        n,
        diam_v,
        epsilon: a.epsilon,
        delta: a.delta,
        c_univ: a.c_univ,
    })?;
    emit(a.output.as_deref(), &to_json(&summary), stdout)?;
    Ok(EXIT_OK)
}
