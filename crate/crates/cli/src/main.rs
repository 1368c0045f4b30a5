//! mkcs: a laboratory for minimum-description-complexity recovery of inputs
//! to underdetermined integer linear systems.
//!
//! One binary, one subcommand per experiment. JSON reports embed the full
//! run configuration and provenance; CSV is a row-oriented projection for
//! plotting. Sampled experiments draw sample i from ChaCha8 substream i of
//! the master seed, so any worker count yields byte-identical reports.
//!
//! Environment:
//! - `MKCS_WORKERS`: fixes the worker-pool size (default: all cores).
//! - `MKCS_OUT_DIR`: directory that relative `--out` paths land in.
//!
//! Exit status: 0 when the report's asserted bounds all pass (or the query
//! found its witness), 1 when a bound fails or a search comes back empty,
//! 2 on usage or computation errors.

mod output;
mod selftest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use mkcs_core::census::{
    lemma2_sweep, theorem1_nullspace_census, theorem1_nullspace_census_exhaustive,
    theorem1_recovery_census, theorem2_table,
};
use mkcs_core::lang::{kd, Language};
use mkcs_core::linalg::{IntVector, SmallMatrix};
use mkcs_core::solver::{kstar, mkcs};
use mkcs_core::walsh::{theorem3_census, FamilyMemberRow, TripleCensusReport, WalshSystem};
use output::{emit, render_json, resolve_out, Format, RunConfig};

#[derive(Parser)]
#[command(name = "mkcs", version, about, disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Shortest-program complexity of an integer vector.
    Kd(KdArgs),
    /// Minimum-complexity recovery of x from an observation y = Ax.
    Recover(RecoverArgs),
    /// Recovery threshold K* of a matrix.
    Kstar(KstarArgs),
    /// Statistical and exhaustive censuses.
    #[command(subcommand)]
    Census(CensusCmd),
    /// Walsh systems and the Walsh-family triple census.
    #[command(subcommand)]
    Walsh(WalshCmd),
    /// Fast invariant checks, printed as a pass/fail table.
    Selftest,
}

/// Output options shared by all report-producing subcommands.
#[derive(Args)]
struct OutOpts {
    /// Report format. JSON is canonical; CSV projects the report rows.
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Output path; stdout when omitted. Relative paths land in
    /// MKCS_OUT_DIR when that is set.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct KdArgs {
    /// Ambient dimension.
    #[arg(long)]
    n: usize,
    /// Vector entries, space separated, e.g. "1 -1 0".
    #[arg(long)]
    x: String,
    /// Enumeration budget in bits.
    #[arg(long)]
    lmax: usize,
    #[command(flatten)]
    out: OutOpts,
}

#[derive(Args)]
struct RecoverArgs {
    /// Matrix file: header "d n kind", then d rows of n integers.
    #[arg(long)]
    matrix: PathBuf,
    /// Observation entries, space separated.
    #[arg(long)]
    y: String,
    /// Enumeration budget in bits.
    #[arg(long)]
    lmax: usize,
    #[command(flatten)]
    out: OutOpts,
}

#[derive(Args)]
struct KstarArgs {
    /// Matrix file: header "d n kind", then d rows of n integers.
    #[arg(long)]
    matrix: PathBuf,
    /// Enumeration budget in bits.
    #[arg(long)]
    lmax: usize,
    #[command(flatten)]
    out: OutOpts,
}

#[derive(Subcommand)]
enum CensusCmd {
    /// Fraction of matrices with a simple nonzero null vector, per level.
    Nullspace(NullspaceArgs),
    /// End-to-end recovery and its pairwise guarantee over random matrices.
    Recovery(RecoveryArgs),
    /// Exhaustive output table of binary matrices against binary inputs.
    Table(TableArgs),
    /// Exhaustive sweep of the annihilator-count bound over a small grid.
    Lemma2(Lemma2Args),
}

#[derive(Args)]
struct NullspaceArgs {
    /// Observation dimension (matrix rows).
    #[arg(long)]
    d: usize,
    /// Ambient dimension (matrix columns).
    #[arg(long)]
    n: usize,
    /// Enumeration budget in bits.
    #[arg(long)]
    lmax: usize,
    /// Sampled matrices (ignored with --exhaustive).
    #[arg(long, default_value_t = 1000)]
    samples: u64,
    /// Master seed (ignored with --exhaustive).
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Visit all 2^(dn) binary matrices instead of sampling.
    #[arg(long)]
    exhaustive: bool,
    #[command(flatten)]
    out: OutOpts,
}

#[derive(Args)]
struct RecoveryArgs {
    /// Observation dimension (matrix rows).
    #[arg(long)]
    d: usize,
    /// Ambient dimension (matrix columns).
    #[arg(long)]
    n: usize,
    /// Complexity level K at which recovery is checked.
    #[arg(long)]
    level: usize,
    /// Sampled matrices.
    #[arg(long, default_value_t = 200)]
    samples: u64,
    /// Master seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Enumeration budget in bits (raised to the probe budget 2K + 9 when
    /// smaller).
    #[arg(long)]
    lmax: usize,
    /// Record the full recovery threshold of every sampled matrix.
    #[arg(long)]
    record_kstar: bool,
    #[command(flatten)]
    out: OutOpts,
}

#[derive(Args)]
struct TableArgs {
    /// Observation dimension (matrix rows).
    #[arg(long)]
    d: usize,
    /// Ambient dimension (matrix columns).
    #[arg(long)]
    n: usize,
    /// Staleness threshold, strictly between 0 and 1.
    #[arg(long)]
    alpha: f64,
    #[command(flatten)]
    out: OutOpts,
}

#[derive(Args)]
struct Lemma2Args {
    /// Ambient dimension, 2 to 4.
    #[arg(long)]
    n: usize,
    /// Grid bound, 1 or 2.
    #[arg(long = "B")]
    b_grid: i64,
    #[command(flatten)]
    out: OutOpts,
}

#[derive(Subcommand)]
enum WalshCmd {
    /// Emit the sequency-ordered Walsh system of order 2^k as matrix text.
    Gen(GenArgs),
    /// Exhaustive triple census over the Walsh family.
    Census(WalshCensusArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Order exponent: the system has 2^k rows.
    #[arg(long)]
    k: u32,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct WalshCensusArgs {
    /// Ambient dimension, a power of two up to 16.
    #[arg(long)]
    n: usize,
    /// Walsh rows per family matrix.
    #[arg(long)]
    d: usize,
    /// Complexity level K bounding the census inputs.
    #[arg(long)]
    level: usize,
    /// Enumeration budget in bits.
    #[arg(long)]
    lmax: usize,
    #[command(flatten)]
    out: OutOpts,
}

/// Walsh census JSON payload: the summary plus its per-matrix rows.
#[derive(Serialize)]
struct TripleCensusPayload {
    #[serde(flatten)]
    report: TripleCensusReport,
    family: Vec<FamilyMemberRow>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn init_workers() -> Result<(), String> {
    if let Ok(raw) = std::env::var("MKCS_WORKERS") {
        let workers: usize = raw.parse().ok().filter(|&w| w > 0).ok_or(format!(
            "MKCS_WORKERS must be a positive integer, got `{raw}`"
        ))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global()
            .map_err(|e| format!("worker pool: {e}"))?;
    }
    Ok(())
}

fn run(command: Command) -> Result<bool, String> {
    init_workers()?;
    let out_dir = std::env::var("MKCS_OUT_DIR").ok();

    match command {
        Command::Kd(args) => {
            let out = resolve_out(args.out.out, out_dir.as_deref());
            let config = RunConfig {
                subcommand: "kd".into(),
                n: Some(args.n),
                lmax: Some(args.lmax),
                x: Some(args.x.clone()),
                format: args.out.format.as_str().into(),
                out: path_string(&out),
                ..RunConfig::default()
            };
            json_only(args.out.format, "kd")?;
            let lang = Language::new(args.n).map_err(|e| e.to_string())?;
            let x = IntVector::parse_line(&args.x).map_err(|e| e.to_string())?;
            let result = kd(&lang, &x, args.lmax).map_err(|e| e.to_string())?;
            let pass = result.found.is_some();
            emit(&out, &render_json(&config, result)?)?;
            Ok(pass)
        }
        Command::Recover(args) => {
            let out = resolve_out(args.out.out, out_dir.as_deref());
            let config = RunConfig {
                subcommand: "recover".into(),
                lmax: Some(args.lmax),
                y: Some(args.y.clone()),
                matrix: Some(args.matrix.display().to_string()),
                format: args.out.format.as_str().into(),
                out: path_string(&out),
                ..RunConfig::default()
            };
            json_only(args.out.format, "recover")?;
            let a = read_matrix(&args.matrix)?;
            let y = IntVector::parse_line(&args.y).map_err(|e| e.to_string())?;
            let lang = Language::new(a.n()).map_err(|e| e.to_string())?;
            let result = mkcs(&lang, &a, &y, args.lmax).map_err(|e| e.to_string())?;
            let pass = result.found.is_some();
            emit(&out, &render_json(&config, result)?)?;
            Ok(pass)
        }
        Command::Kstar(args) => {
            let out = resolve_out(args.out.out, out_dir.as_deref());
            let config = RunConfig {
                subcommand: "kstar".into(),
                lmax: Some(args.lmax),
                matrix: Some(args.matrix.display().to_string()),
                format: args.out.format.as_str().into(),
                out: path_string(&out),
                ..RunConfig::default()
            };
            json_only(args.out.format, "kstar")?;
            let a = read_matrix(&args.matrix)?;
            let lang = Language::new(a.n()).map_err(|e| e.to_string())?;
            let result = kstar(&lang, &a, args.lmax).map_err(|e| e.to_string())?;
            emit(&out, &render_json(&config, result)?)?;
            Ok(true)
        }
        Command::Census(CensusCmd::Nullspace(args)) => {
            let out = resolve_out(args.out.out, out_dir.as_deref());
            let sampled = !args.exhaustive;
            let config = RunConfig {
                subcommand: "census nullspace".into(),
                d: Some(args.d),
                n: Some(args.n),
                samples: sampled.then_some(args.samples),
                seed: sampled.then_some(args.seed),
                lmax: Some(args.lmax),
                format: args.out.format.as_str().into(),
                out: path_string(&out),
                mode: Some(if sampled { "sampled" } else { "exhaustive" }.into()),
                ..RunConfig::default()
            };
            let report = if sampled {
                theorem1_nullspace_census(args.d, args.n, args.lmax, args.samples, args.seed)
            } else {
                theorem1_nullspace_census_exhaustive(args.d, args.n, args.lmax)
            }
            .map_err(|e| e.to_string())?;
            let pass = report.all_pass;
            match args.out.format {
                Format::Json => emit(&out, &render_json(&config, report)?)?,
                Format::Csv => emit(&out, &report.to_csv().map_err(|e| e.to_string())?)?,
            }
            Ok(pass)
        }
        Command::Census(CensusCmd::Recovery(args)) => {
            let out = resolve_out(args.out.out, out_dir.as_deref());
            let config = RunConfig {
                subcommand: "census recovery".into(),
                d: Some(args.d),
                n: Some(args.n),
                level: Some(args.level),
                samples: Some(args.samples),
                seed: Some(args.seed),
                lmax: Some(args.lmax),
                record_kstar: Some(args.record_kstar),
                format: args.out.format.as_str().into(),
                out: path_string(&out),
                mode: Some("sampled".into()),
                ..RunConfig::default()
            };
            let report = theorem1_recovery_census(
                args.d,
                args.n,
                args.level,
                args.samples,
                args.seed,
                args.lmax,
                args.record_kstar,
            )
            .map_err(|e| e.to_string())?;
            let pass = report.pass;
            match args.out.format {
                Format::Json => emit(&out, &render_json(&config, report)?)?,
                Format::Csv => emit(&out, &report.to_csv().map_err(|e| e.to_string())?)?,
            }
            Ok(pass)
        }
        Command::Census(CensusCmd::Table(args)) => {
            let out = resolve_out(args.out.out, out_dir.as_deref());
            let config = RunConfig {
                subcommand: "census table".into(),
                d: Some(args.d),
                n: Some(args.n),
                alpha: Some(args.alpha),
                format: args.out.format.as_str().into(),
                out: path_string(&out),
                mode: Some("exhaustive".into()),
                ..RunConfig::default()
            };
            let (_, report) =
                theorem2_table(args.d, args.n, args.alpha).map_err(|e| e.to_string())?;
            let pass = report.pass;
            match args.out.format {
                Format::Json => emit(&out, &render_json(&config, report)?)?,
                Format::Csv => emit(&out, &report.to_csv().map_err(|e| e.to_string())?)?,
            }
            Ok(pass)
        }
        Command::Census(CensusCmd::Lemma2(args)) => {
            let out = resolve_out(args.out.out, out_dir.as_deref());
            let config = RunConfig {
                subcommand: "census lemma2".into(),
                n: Some(args.n),
                b_grid: Some(args.b_grid),
                format: args.out.format.as_str().into(),
                out: path_string(&out),
                mode: Some("exhaustive".into()),
                ..RunConfig::default()
            };
            let report = lemma2_sweep(args.n, args.b_grid).map_err(|e| e.to_string())?;
            let pass = report.pass;
            match args.out.format {
                Format::Json => emit(&out, &render_json(&config, report)?)?,
                Format::Csv => emit(&out, &report.to_csv().map_err(|e| e.to_string())?)?,
            }
            Ok(pass)
        }
        Command::Walsh(WalshCmd::Gen(args)) => {
            let out = resolve_out(args.out, out_dir.as_deref());
            let system = WalshSystem::of_order(
                1usize
                    .checked_shl(args.k)
                    .ok_or(format!("order 2^{} overflows", args.k))?,
            )
            .map_err(|e| e.to_string())?;
            emit(&out, &system.matrix().to_text())?;
            Ok(true)
        }
        Command::Walsh(WalshCmd::Census(args)) => {
            let out = resolve_out(args.out.out, out_dir.as_deref());
            let config = RunConfig {
                subcommand: "walsh census".into(),
                d: Some(args.d),
                n: Some(args.n),
                level: Some(args.level),
                lmax: Some(args.lmax),
                format: args.out.format.as_str().into(),
                out: path_string(&out),
                mode: Some("exhaustive".into()),
                ..RunConfig::default()
            };
            let (family, report) = theorem3_census(args.n, args.d, args.level, args.lmax)
                .map_err(|e| e.to_string())?;
            let pass = report.pass;
            match args.out.format {
                Format::Json => {
                    let payload = TripleCensusPayload { report, family };
                    emit(&out, &render_json(&config, payload)?)?;
                }
                Format::Csv => emit(&out, &report.to_csv(&family).map_err(|e| e.to_string())?)?,
            }
            Ok(pass)
        }
        Command::Selftest => Ok(selftest::run()),
    }
}

fn read_matrix(path: &PathBuf) -> Result<SmallMatrix, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    SmallMatrix::parse_text(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn path_string(out: &Option<PathBuf>) -> Option<String> {
    out.as_ref().map(|p| p.display().to_string())
}

fn json_only(format: Format, subcommand: &str) -> Result<(), String> {
    match format {
        Format::Json => Ok(()),
        Format::Csv => Err(format!(
            "`{subcommand}` reports have no row structure; use --format json"
        )),
    }
}
