//! Statistical and exhaustive censuses behind the main quantitative claims.
//!
//! Three experiment families live here:
//! - a sweep of the annihilator-count bound over small integer grids,
//! - null-vector and end-to-end recovery censuses over random or exhaustive
//!   binary matrices, and
//! - the full output table of every binary matrix against every binary
//!   input, with its staleness accounting.
//!
//! Sampled censuses draw matrix i from an independent ChaCha8 substream, so
//! results depend only on (seed, i) and never on worker count or scheduling.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lang::{KdTable, Language};
use crate::linalg::{annihilator_count, IntVector, SmallMatrix};
use crate::report::{binomial_sigma, substream, to_csv, Provenance, RngSpec};
use crate::solver::{
    guarantee_probe_budget, kstar_with_table, recovery_check_with_table,
    recovery_guarantee_with_table, simplest_null_vector_with_table, KstarEstimate, KstarFailure,
};

/// Largest ambient dimension for the grid sweep of the annihilator bound.
pub const SWEEP_N_MAX: usize = 4;
/// Largest grid bound for the sweep.
pub const SWEEP_GRID_MAX: i64 = 2;
/// Cell-count cap for the exhaustive output table: 2^(dn) matrices times
/// 2^n inputs.
pub const OUTPUT_TABLE_LOG2_CELLS_MAX: usize = 24;
/// Matrix-count cap for the exhaustive nullspace census.
pub const EXHAUSTIVE_LOG2_MATRICES_MAX: usize = 16;

/// How a census chose its matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CensusMode {
    Sampled,
    Exhaustive,
}

// ---------------------------------------------------------------------------
// Grid sweep of the annihilator bound
// ---------------------------------------------------------------------------

/// A grid vector attaining the maximum annihilator count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepWitness {
    pub vector: IntVector,
    pub annihilators: u64,
}

/// Exhaustive sweep of annihilator counts over a small integer grid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub n: usize,
    pub grid_bound: i64,
    /// Number of nonzero grid vectors examined.
    pub domain_size: u64,
    /// 2^(n-1): no nonzero vector is annihilated by more binary rows.
    pub bound: u64,
    pub max_annihilators: u64,
    pub bound_attained: bool,
    /// Every vector attaining the maximum, in grid order.
    pub witnesses: Vec<SweepWitness>,
    /// True when every count stayed within the bound.
    pub pass: bool,
    pub provenance: Provenance,
}

impl SweepReport {
    pub fn to_csv(&self) -> Result<String> {
        let rows = self.witnesses.iter().map(|w| {
            vec![
                self.n.to_string(),
                self.grid_bound.to_string(),
                format_entries(&w.vector),
                w.annihilators.to_string(),
            ]
        });
        to_csv(&["n", "grid_bound", "vector", "annihilators"], rows)
    }
}

/// Sweeps every nonzero vector of the grid {-grid_bound..grid_bound}^n,
/// checking the annihilator count of each against the 2^(n-1) bound and
/// collecting all maximizers.
pub fn lemma2_sweep(n: usize, grid_bound: i64) -> Result<SweepReport> {
    if !(2..=SWEEP_N_MAX).contains(&n) {
        return Err(Error::GuardViolated {
            guard: "annihilator sweep order",
            requirement: "2 <= n <= 4",
            got: format!("n = {n}"),
        });
    }
    if grid_bound == 0 {
        return Err(Error::EmptyDomain);
    }
    if !(1..=SWEEP_GRID_MAX).contains(&grid_bound) {
        return Err(Error::GuardViolated {
            guard: "annihilator sweep grid",
            requirement: "1 <= grid bound <= 2",
            got: format!("grid bound = {grid_bound}"),
        });
    }

    let side = (2 * grid_bound + 1) as u64;
    let total = side.pow(n as u32);
    let bound = 1u64 << (n - 1);
    let mut max_annihilators = 0u64;
    let mut witnesses: Vec<SweepWitness> = Vec::new();
    let mut pass = true;
    for index in 0..total {
        let mut rest = index;
        let mut entries = vec![0i64; n];
        for e in entries.iter_mut().rev() {
            *e = (rest % side) as i64 - grid_bound;
            rest /= side;
        }
        if entries.iter().all(|&e| e == 0) {
            continue;
        }
        let x = IntVector::new(entries)?;
        let count = annihilator_count(&x)?;
        if count > bound {
            pass = false;
        }
        if count > max_annihilators {
            max_annihilators = count;
            witnesses.clear();
        }
        if count == max_annihilators {
            witnesses.push(SweepWitness {
                vector: x,
                annihilators: count,
            });
        }
    }
    Ok(SweepReport {
        n,
        grid_bound,
        domain_size: total - 1,
        bound,
        max_annihilators,
        bound_attained: max_annihilators == bound,
        witnesses,
        pass,
        provenance: Provenance::library(),
    })
}

// ---------------------------------------------------------------------------
// Null-vector census
// ---------------------------------------------------------------------------

/// One complexity level of the null-vector census. Counts are cumulative:
/// a matrix is counted at level l when its simplest nonzero null vector has
/// complexity at most l.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NullspaceLevelRow {
    pub level: usize,
    pub count: u64,
    pub fraction: f64,
    /// min(1, 2^(l+1-d)): union bound over programs of length at most l.
    pub bound: f64,
    /// Binomial deviation of the bound at this sample size (zero when
    /// exhaustive).
    pub sigma: f64,
    pub pass: bool,
}

/// Census of the simplest-null-vector complexity over binary matrices.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NullspaceReport {
    pub d: usize,
    pub n: usize,
    pub budget: usize,
    pub mode: CensusMode,
    pub sample_size: u64,
    pub rng: Option<RngSpec>,
    pub rows: Vec<NullspaceLevelRow>,
    pub all_pass: bool,
    pub provenance: Provenance,
}

impl NullspaceReport {
    pub fn to_csv(&self) -> Result<String> {
        let mode = match self.mode {
            CensusMode::Sampled => "sampled",
            CensusMode::Exhaustive => "exhaustive",
        };
        let rows = self.rows.iter().map(|r| {
            vec![
                self.d.to_string(),
                self.n.to_string(),
                mode.to_string(),
                self.sample_size.to_string(),
                r.level.to_string(),
                r.count.to_string(),
                r.fraction.to_string(),
                r.bound.to_string(),
                r.sigma.to_string(),
                r.pass.to_string(),
            ]
        });
        to_csv(
            &[
                "d", "n", "mode", "samples", "level", "count", "fraction", "bound", "sigma", "pass",
            ],
            rows,
        )
    }
}

fn nullspace_rows_from_minima(
    d: usize,
    budget: usize,
    minima: &[Option<usize>],
    sampled: bool,
) -> Vec<NullspaceLevelRow> {
    let total = minima.len() as u64;
    (3..=budget)
        .map(|level| {
            let count = minima
                .iter()
                .filter(|m| m.is_some_and(|k| k <= level))
                .count() as u64;
            let fraction = count as f64 / total as f64;
            let bound = (2f64.powi(level as i32 + 1 - d as i32)).min(1.0);
            let sigma = if sampled {
                binomial_sigma(bound, total)
            } else {
                0.0
            };
            NullspaceLevelRow {
                level,
                count,
                fraction,
                bound,
                sigma,
                pass: fraction <= bound + 3.0 * sigma,
            }
        })
        .collect()
}

fn nullspace_report(
    d: usize,
    n: usize,
    budget: usize,
    mode: CensusMode,
    rng: Option<RngSpec>,
    minima: Vec<Option<usize>>,
) -> NullspaceReport {
    let rows = nullspace_rows_from_minima(d, budget, &minima, rng.is_some());
    let all_pass = rows.iter().all(|r| r.pass);
    NullspaceReport {
        d,
        n,
        budget,
        mode,
        sample_size: minima.len() as u64,
        rng,
        rows,
        all_pass,
        provenance: Provenance::library(),
    }
}

/// Samples random binary matrices and records, per complexity level l, the
/// fraction whose nullspace contains a nonzero vector of complexity at most
/// l, against the union bound min(1, 2^(l+1-d)) plus three binomial sigmas.
pub fn theorem1_nullspace_census(
    d: usize,
    n: usize,
    l_max: usize,
    sample_size: u64,
    seed: u64,
) -> Result<NullspaceReport> {
    if sample_size == 0 {
        return Err(Error::InvalidParam("sample_size must be positive".into()));
    }
    let lang = Language::new(n)?;
    let table = KdTable::build(&lang, l_max)?;
    let minima: Vec<Option<usize>> = (0..sample_size)
        .into_par_iter()
        .map(|i| -> Result<Option<usize>> {
            let mut rng = substream(seed, i);
            let a = SmallMatrix::random_binary(d, n, &mut rng)?;
            Ok(simplest_null_vector_with_table(&table, &a)?
                .found
                .map(|w| w.kd_bits))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(nullspace_report(
        d,
        n,
        l_max,
        CensusMode::Sampled,
        Some(RngSpec::chacha8(seed)),
        minima,
    ))
}

/// Exhaustive variant over all 2^(dn) binary matrices; the bound is checked
/// without a sampling allowance.
pub fn theorem1_nullspace_census_exhaustive(
    d: usize,
    n: usize,
    l_max: usize,
) -> Result<NullspaceReport> {
    let bits = d
        .checked_mul(n)
        .filter(|&b| b <= EXHAUSTIVE_LOG2_MATRICES_MAX)
        .ok_or(Error::GuardViolated {
            guard: "exhaustive nullspace census",
            requirement: "d*n <= 16",
            got: format!("d = {d}, n = {n}"),
        })?;
    let lang = Language::new(n)?;
    let table = KdTable::build(&lang, l_max)?;
    let total = 1u64 << bits;
    let minima: Vec<Option<usize>> = (0..total)
        .into_par_iter()
        .map(|index| -> Result<Option<usize>> {
            let a = SmallMatrix::binary_from_index(d, n, index)?;
            Ok(simplest_null_vector_with_table(&table, &a)?
                .found
                .map(|w| w.kd_bits))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(nullspace_report(
        d,
        n,
        l_max,
        CensusMode::Exhaustive,
        None,
        minima,
    ))
}

// ---------------------------------------------------------------------------
// End-to-end recovery census
// ---------------------------------------------------------------------------

/// One sampled matrix of the recovery census.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecoverySampleRow {
    pub index: u64,
    /// Complexity of the simplest nonzero null vector within the table
    /// budget, when one exists.
    pub null_kd: Option<usize>,
    /// Whether the nullspace probe up to 2K + 9 bits came back empty.
    pub guaranteed: bool,
    /// Whether every input of complexity at most K recovered uniquely to
    /// itself.
    pub pass: bool,
    pub first_failure: Option<KstarFailure>,
    pub kstar: Option<KstarEstimate>,
}

/// Census of end-to-end recovery at complexity level K over random binary
/// matrices.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecoveryReport {
    pub d: usize,
    pub n: usize,
    pub k_bits: usize,
    pub probe_budget: usize,
    /// Table budget: at least the probe budget, and at least the requested
    /// enumeration budget.
    pub budget: usize,
    pub mode: CensusMode,
    pub sample_size: u64,
    pub rng: RngSpec,
    pub rows: Vec<RecoverySampleRow>,
    /// Matrices that carried the guarantee yet failed recovery. Soundness
    /// demands exactly zero.
    pub guarantee_violations: u64,
    pub guaranteed_count: u64,
    pub fail_count: u64,
    pub fail_fraction: f64,
    /// min(1, 2^(2K+10-d)): union bound on a nonzero null vector within the
    /// probe budget.
    pub fail_bound: f64,
    pub fail_sigma: f64,
    pub fail_within_bound: bool,
    /// Distribution of the recovery threshold across samples, when recorded.
    /// Finite thresholds key by their level; right-censored scans key as
    /// "at_least_budget".
    pub kstar_histogram: Option<BTreeMap<String, u64>>,
    pub pass: bool,
    pub provenance: Provenance,
}

impl RecoveryReport {
    pub fn to_csv(&self) -> Result<String> {
        let rows = self.rows.iter().map(|r| {
            vec![
                r.index.to_string(),
                r.null_kd.map(|k| k.to_string()).unwrap_or_default(),
                r.guaranteed.to_string(),
                r.pass.to_string(),
                match &r.kstar {
                    None => String::new(),
                    Some(KstarEstimate::Bits { bits }) => bits.to_string(),
                    Some(KstarEstimate::AtLeastBudget) => "at_least_budget".to_string(),
                },
            ]
        });
        to_csv(&["index", "null_kd", "guaranteed", "pass", "kstar"], rows)
    }
}

/// Samples random binary matrices and checks, for each, the pairwise
/// recovery guarantee at level K against the observed recovery of every
/// input of complexity at most K. A guaranteed matrix failing recovery is a
/// soundness violation; the failure rate is also held to the union bound.
pub fn theorem1_recovery_census(
    d: usize,
    n: usize,
    k_bits: usize,
    sample_size: u64,
    seed: u64,
    l_max: usize,
    record_kstar: bool,
) -> Result<RecoveryReport> {
    if sample_size == 0 {
        return Err(Error::InvalidParam("sample_size must be positive".into()));
    }
    let probe_budget = guarantee_probe_budget(k_bits);
    let budget = l_max.max(probe_budget);
    let lang = Language::new(n)?;
    let table = KdTable::build(&lang, budget)?;
    let rows: Vec<RecoverySampleRow> = (0..sample_size)
        .into_par_iter()
        .map(|index| -> Result<RecoverySampleRow> {
            let mut rng = substream(seed, index);
            let a = SmallMatrix::random_binary(d, n, &mut rng)?;
            let guarantee = recovery_guarantee_with_table(&table, &a, k_bits)?;
            let check = recovery_check_with_table(&table, &a, k_bits)?;
            let null_kd = simplest_null_vector_with_table(&table, &a)?
                .found
                .map(|w| w.kd_bits);
            let kstar = if record_kstar {
                Some(kstar_with_table(&table, &a)?.kstar)
            } else {
                None
            };
            Ok(RecoverySampleRow {
                index,
                null_kd,
                guaranteed: guarantee.guaranteed,
                pass: check.pass,
                first_failure: check.first_failure,
                kstar,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let guarantee_violations = rows.iter().filter(|r| r.guaranteed && !r.pass).count() as u64;
    let guaranteed_count = rows.iter().filter(|r| r.guaranteed).count() as u64;
    let fail_count = rows.iter().filter(|r| !r.pass).count() as u64;
    let fail_fraction = fail_count as f64 / sample_size as f64;
    let fail_bound = (2f64.powi(2 * k_bits as i32 + 10 - d as i32)).min(1.0);
    let fail_sigma = binomial_sigma(fail_bound, sample_size);
    let fail_within_bound = fail_fraction <= fail_bound + 3.0 * fail_sigma;
    let kstar_histogram = record_kstar.then(|| {
        let mut hist = BTreeMap::new();
        for row in &rows {
            let key = match &row.kstar {
                Some(KstarEstimate::Bits { bits }) => bits.to_string(),
                Some(KstarEstimate::AtLeastBudget) => "at_least_budget".to_string(),
                None => unreachable!("kstar recorded for every row"),
            };
            *hist.entry(key).or_insert(0) += 1;
        }
        hist
    });
    Ok(RecoveryReport {
        d,
        n,
        k_bits,
        probe_budget,
        budget,
        mode: CensusMode::Sampled,
        sample_size,
        rng: RngSpec::chacha8(seed),
        rows,
        guarantee_violations,
        guaranteed_count,
        fail_count,
        fail_fraction,
        fail_bound,
        fail_sigma,
        fail_within_bound,
        kstar_histogram,
        pass: guarantee_violations == 0 && fail_within_bound,
        provenance: Provenance::library(),
    })
}

// ---------------------------------------------------------------------------
// Exhaustive output table
// ---------------------------------------------------------------------------

/// The full observation table: one row per binary matrix (by index), one
/// column per binary input (by index), each cell the observation A·x packed
/// base n+1, most significant coordinate first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputTable {
    d: usize,
    n: usize,
    cells: Vec<u64>,
}

impl OutputTable {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of matrices (rows).
    pub fn matrices(&self) -> usize {
        self.cells.len() >> self.n
    }

    /// Number of inputs (columns).
    pub fn inputs(&self) -> usize {
        1 << self.n
    }

    /// Packed observation for matrix i against input j.
    pub fn value_at(&self, i: usize, j: usize) -> u64 {
        self.cells[(i << self.n) | j]
    }

    fn row(&self, i: usize) -> &[u64] {
        let w = self.inputs();
        &self.cells[i * w..(i + 1) * w]
    }

    /// Unpacks the observation for matrix i against input j.
    pub fn decode_cell(&self, i: usize, j: usize) -> Result<IntVector> {
        let mut packed = self.value_at(i, j);
        let base = self.n as u64 + 1;
        let mut entries = vec![0i64; self.d];
        for e in entries.iter_mut().rev() {
            *e = (packed % base) as i64;
            packed /= base;
        }
        IntVector::new(entries)
    }

    /// The binary input vector of column j, most significant bit first.
    pub fn input(&self, j: usize) -> Result<IntVector> {
        let n = self.n;
        IntVector::new((0..n).map(|k| ((j >> (n - 1 - k)) & 1) as i64).collect())
    }
}

/// One input column of the output table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ColumnRow {
    pub column: usize,
    pub input: IntVector,
    /// Matrices whose observation of this input already appeared for an
    /// earlier input.
    pub stale_count: u64,
    pub stale_fraction: f64,
    /// Matrices for which this column is a first occurrence.
    pub marks: u64,
    pub in_q_alpha: bool,
}

/// Staleness accounting of the exhaustive output table at threshold alpha.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Theorem2Report {
    pub d: usize,
    pub n: usize,
    pub alpha: f64,
    pub matrix_count: u64,
    pub input_count: u64,
    /// Distinct observations across the whole table.
    pub distinct_outputs: u64,
    /// (n+1)^d: each observation coordinate lies in 0..=n.
    pub distinct_bound: u64,
    pub distinct_within_bound: bool,
    /// Largest number of distinct observations in any single matrix row.
    pub row_distinct_max: u64,
    pub row_distinct_within_bound: bool,
    /// Columns with stale fraction strictly below alpha.
    pub q_alpha_size: u64,
    /// distinct_outputs / (1 - alpha): the counting ceiling on Q_alpha.
    pub q_alpha_bound: f64,
    pub q_alpha_within_bound: bool,
    /// First occurrences summed over the Q_alpha columns.
    pub marks_in_q_alpha: u64,
    /// ceil((1-alpha)·M)·|Q_alpha|: forced mark mass over Q_alpha.
    pub marks_floor: u64,
    pub marks_above_floor: bool,
    /// Largest per-matrix count of first occurrences within Q_alpha.
    pub max_row_marks_in_q_alpha: u64,
    /// (1-alpha)·|Q_alpha|: forced on some single matrix by averaging.
    pub max_row_marks_floor: f64,
    pub max_row_marks_above_floor: bool,
    pub first_stale_column: Option<usize>,
    pub columns: Vec<ColumnRow>,
    pub pass: bool,
    pub provenance: Provenance,
}

impl Theorem2Report {
    pub fn to_csv(&self) -> Result<String> {
        let rows = self.columns.iter().map(|c| {
            vec![
                c.column.to_string(),
                format_entries(&c.input),
                c.stale_count.to_string(),
                c.stale_fraction.to_string(),
                c.marks.to_string(),
                c.in_q_alpha.to_string(),
            ]
        });
        to_csv(
            &[
                "column",
                "input",
                "stale_count",
                "stale_fraction",
                "marks",
                "in_q_alpha",
            ],
            rows,
        )
    }
}

/// Builds the exhaustive output table of every d×n binary matrix against
/// every binary input (inputs ordered by their index, most significant bit
/// first, so column 0 is the zero input) and audits staleness: a cell is
/// stale when its observation already appeared in the same matrix row for an
/// earlier column, and a first occurrence is a mark. Columns mostly fresh at
/// threshold alpha form Q_alpha, whose size the distinct-observation count
/// caps.
pub fn theorem2_table(d: usize, n: usize, alpha: f64) -> Result<(OutputTable, Theorem2Report)> {
    if !(alpha.is_finite() && 0.0 < alpha && alpha < 1.0) {
        return Err(Error::InvalidParam(format!(
            "alpha must lie strictly between 0 and 1, got {alpha}"
        )));
    }
    if d.checked_mul(n)
        .and_then(|dn| dn.checked_add(n))
        .is_none_or(|b| b > OUTPUT_TABLE_LOG2_CELLS_MAX)
    {
        return Err(Error::GuardViolated {
            guard: "output table size",
            requirement: "d*n + n <= 24",
            got: format!("d = {d}, n = {n}"),
        });
    }
    let width = 1usize << n;
    let matrices = 1usize << (d * n);

    let inputs: Vec<IntVector> = (0..width)
        .map(|j| IntVector::new((0..n).map(|k| ((j >> (n - 1 - k)) & 1) as i64).collect()))
        .collect::<Result<Vec<_>>>()?;

    let mut cells = vec![0u64; matrices * width];
    cells
        .par_chunks_mut(width)
        .enumerate()
        .try_for_each(|(i, row)| -> Result<()> {
            let a = SmallMatrix::binary_from_index(d, n, i as u64)?;
            let base = n as u64 + 1;
            for (cell, x) in row.iter_mut().zip(&inputs) {
                let y = a.matvec(x)?;
                let mut packed = 0u64;
                for &e in y.entries() {
                    packed = packed * base + e as u64;
                }
                *cell = packed;
            }
            Ok(())
        })?;
    let table = OutputTable { d, n, cells };

    // Per-column stale counts, per-row distinct counts, global distinct set.
    let (stale_counts, row_distinct_max, distinct) = (0..matrices)
        .into_par_iter()
        .map(|i| {
            let row = table.row(i);
            let mut seen = HashSet::with_capacity(width);
            let mut stale = vec![0u64; width];
            for (j, &v) in row.iter().enumerate() {
                if !seen.insert(v) {
                    stale[j] = 1;
                }
            }
            let distinct: BTreeSet<u64> = seen.into_iter().collect();
            (stale, distinct.len() as u64, distinct)
        })
        .reduce(
            || (vec![0u64; width], 0u64, BTreeSet::new()),
            |(mut sa, ma, mut da), (sb, mb, db)| {
                for (a, b) in sa.iter_mut().zip(&sb) {
                    *a += b;
                }
                da.extend(db);
                (sa, ma.max(mb), da)
            },
        );

    let m = matrices as u64;
    let columns: Vec<ColumnRow> = (0..width)
        .map(|j| {
            let stale_count = stale_counts[j];
            let stale_fraction = stale_count as f64 / m as f64;
            ColumnRow {
                column: j,
                input: inputs[j].clone(),
                stale_count,
                stale_fraction,
                marks: m - stale_count,
                in_q_alpha: stale_fraction < alpha,
            }
        })
        .collect();

    let q_alpha: Vec<bool> = columns.iter().map(|c| c.in_q_alpha).collect();
    let q_alpha_size = q_alpha.iter().filter(|&&q| q).count() as u64;
    let marks_in_q_alpha: u64 = columns
        .iter()
        .filter(|c| c.in_q_alpha)
        .map(|c| c.marks)
        .sum();
    let max_row_marks_in_q_alpha = (0..matrices)
        .into_par_iter()
        .map(|i| {
            let row = table.row(i);
            let mut seen = HashSet::with_capacity(width);
            let mut marks = 0u64;
            for (j, &v) in row.iter().enumerate() {
                if seen.insert(v) && q_alpha[j] {
                    marks += 1;
                }
            }
            marks
        })
        .max()
        .unwrap_or(0);

    let distinct_outputs = distinct.len() as u64;
    let distinct_bound = (n as u64 + 1)
        .checked_pow(d as u32)
        .ok_or(Error::Overflow)?;
    let marks_floor = ((1.0 - alpha) * m as f64).ceil() as u64 * q_alpha_size;
    let max_row_marks_floor = (1.0 - alpha) * q_alpha_size as f64;
    let distinct_within_bound = distinct_outputs <= distinct_bound;
    let row_distinct_within_bound = row_distinct_max <= distinct_bound;
    let q_alpha_within_bound = q_alpha_size as f64 * (1.0 - alpha) <= distinct_outputs as f64;
    let marks_above_floor = marks_in_q_alpha >= marks_floor;
    let max_row_marks_above_floor = max_row_marks_in_q_alpha as f64 >= max_row_marks_floor;
    let first_stale_column = columns.iter().find(|c| c.stale_count > 0).map(|c| c.column);
    let pass = distinct_within_bound
        && row_distinct_within_bound
        && q_alpha_within_bound
        && marks_above_floor
        && max_row_marks_above_floor;

    let report = Theorem2Report {
        d,
        n,
        alpha,
        matrix_count: m,
        input_count: width as u64,
        distinct_outputs,
        distinct_bound,
        distinct_within_bound,
        row_distinct_max,
        row_distinct_within_bound,
        q_alpha_size,
        q_alpha_bound: distinct_outputs as f64 / (1.0 - alpha),
        q_alpha_within_bound,
        marks_in_q_alpha,
        marks_floor,
        marks_above_floor,
        max_row_marks_in_q_alpha,
        max_row_marks_floor,
        max_row_marks_above_floor,
        first_stale_column,
        columns,
        pass,
        provenance: Provenance::library(),
    };
    Ok((table, report))
}

fn format_entries(x: &IntVector) -> String {
    x.entries()
        .iter()
        .map(i64::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}
