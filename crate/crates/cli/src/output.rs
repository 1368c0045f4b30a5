//! Report envelopes, output formats, and atomic file writes.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use mkcs_core::report::Provenance;
use serde::Serialize;

/// Output format of a report. JSON is canonical and embeds the run
/// configuration; CSV is a lossy projection of the report rows for plotting
/// tools.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    pub fn as_str(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

/// The full configuration of a run, embedded in every JSON report so that
/// re-running the embedded configuration reproduces the report.
#[derive(Debug, Clone, Default, Serialize)]
pub struct RunConfig {
    pub subcommand: String,
    pub d: Option<usize>,
    pub n: Option<usize>,
    pub level: Option<usize>,
    pub samples: Option<u64>,
    pub seed: Option<u64>,
    pub lmax: Option<usize>,
    pub alpha: Option<f64>,
    pub b_grid: Option<i64>,
    pub k: Option<u32>,
    pub x: Option<String>,
    pub y: Option<String>,
    pub matrix: Option<String>,
    pub record_kstar: Option<bool>,
    pub format: String,
    pub out: Option<String>,
    pub mode: Option<String>,
}

/// A report wrapped with its configuration and provenance.
#[derive(Serialize)]
struct Envelope<'c, T: Serialize> {
    config: &'c RunConfig,
    provenance: Provenance,
    report: T,
}

fn timestamped_provenance() -> Provenance {
    let mut p = Provenance::library();
    p.timestamp = Some(
        SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0)
            .to_string(),
    );
    p
}

/// Renders a report as canonical JSON under its envelope.
pub fn render_json<T: Serialize>(config: &RunConfig, report: T) -> Result<String, String> {
    let envelope = Envelope {
        config,
        provenance: timestamped_provenance(),
        report,
    };
    mkcs_core::report::to_json_pretty(&envelope).map_err(|e| e.to_string())
}

/// Writes `content` to `--out` (atomically, via a temporary file in the
/// destination directory) or to stdout when no path was given.
pub fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), String> {
    match out {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(path) => write_atomic(path, content),
    }
}

fn write_atomic(path: &Path, content: &str) -> Result<(), String> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(&dir)
        .map_err(|e| format!("cannot create temporary file in {}: {e}", dir.display()))?;
    tmp.write_all(content.as_bytes())
        .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    tmp.persist(path)
        .map_err(|e| format!("cannot persist {}: {e}", path.display()))?;
    Ok(())
}

/// Resolves `--out` against the output-directory override: a relative path
/// lands inside the override directory when one is set.
pub fn resolve_out(out: Option<PathBuf>, out_dir: Option<&str>) -> Option<PathBuf> {
    out.map(|p| match out_dir {
        Some(dir) if p.is_relative() => Path::new(dir).join(p),
        _ => p,
    })
}
