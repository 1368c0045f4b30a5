//! Shared report plumbing: provenance, the documented RNG substream rule,
//! and JSON/CSV serialization helpers.
//!
//! JSON is the canonical format (nested, self-describing, stable field
//! order); CSV is a lossy projection with one row per level, sample, or
//! column. Reports built by library calls carry no timestamp so that equal
//! inputs produce byte-identical payloads; binaries may stamp them.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// Identifies the code that produced a report. `timestamp` stays `None` in
/// library-built reports (determinism) and is filled by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    pub timestamp: Option<String>,
}

impl Provenance {
    pub fn library() -> Self {
        Provenance {
            tool: "mkcs".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: None,
        }
    }
}

/// The normative random-number contract embedded in every sampled report:
/// generator, master seed, and the substream derivation rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RngSpec {
    pub algorithm: String,
    pub seed: u64,
    pub substream_rule: String,
}

impl RngSpec {
    pub fn chacha8(seed: u64) -> Self {
        RngSpec {
            algorithm: "ChaCha8".to_string(),
            seed,
            substream_rule: "substream(i) = ChaCha8Rng::seed_from_u64(seed).set_stream(i)"
                .to_string(),
        }
    }
}

/// Independent generator for work item `index`: one master seed, one stream
/// per item, identical results for any worker count or schedule.
pub fn substream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Canonical JSON: pretty-printed with a trailing newline.
pub fn to_json_pretty<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)
        .map_err(|e| Error::InvalidParam(format!("JSON serialization failed: {e}")))?;
    s.push('\n');
    Ok(s)
}

/// Builds a CSV document from a header and rows of string fields.
pub fn to_csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record(header)
        .map_err(|e| Error::InvalidParam(format!("CSV write failed: {e}")))?;
    for row in rows {
        writer
            .write_record(&row)
            .map_err(|e| Error::InvalidParam(format!("CSV write failed: {e}")))?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| Error::InvalidParam(format!("CSV write failed: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::InvalidParam(format!("CSV not UTF-8: {e}")))
}

/// Binomial standard deviation for a proportion `p` over `n` trials.
pub fn binomial_sigma(p: f64, n: u64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    (p * (1.0 - p) / n as f64).sqrt()
}
