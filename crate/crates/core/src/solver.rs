//! Recovery of inputs to underdetermined systems y = A·x by minimum
//! description complexity.
//!
//! The recovery rule walks programs in code order and returns the value of
//! the first one solving A·z = y; its length is then exactly the complexity
//! of the recovered vector. A same-length, different-vector solution makes
//! the outcome ambiguous, which is reported rather than hidden.
//!
//! The threshold scan classifies every vector (at its own complexity level)
//! by whether the rule gives it back from its observation alone, and reports
//! the last fully clean occupied level. Sums witness a simple relation
//! between this threshold and the complexity of the sparsest-description
//! nullspace vector: two solutions of complexity at most k differ by a
//! nullspace vector of complexity at most 2k + 9 (sum of one with the
//! negation of the other costs 9 extra bits), so an absence of nullspace
//! vectors up to 2k + 9 guarantees recovery of everything up to complexity k.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, HashSet};
use std::ops::ControlFlow;

use serde::Serialize;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::lang::{enumerate, KdTable, Language, Program};
use crate::linalg::{IntVector, SmallMatrix};

/// Overhead in bits of combining two programs into one for their
/// difference: sum(p, scale(-1, q)) costs 3 + 3 + 3 extra bits.
pub const DIFFERENCE_OVERHEAD_BITS: usize = 9;

/// Budget that must be free of nonzero nullspace vectors to guarantee
/// recovery of every input of complexity at most `k_bits`.
pub fn guarantee_probe_budget(k_bits: usize) -> usize {
    2 * k_bits + DIFFERENCE_OVERHEAD_BITS
}

/// Lower bound on the recovery threshold implied by a simplest nullspace
/// vector of complexity `s_bits`: failures require 2k + 9 >= s.
pub fn kstar_floor_from_null(s_bits: usize) -> usize {
    (s_bits.saturating_sub(DIFFERENCE_OVERHEAD_BITS) / 2).saturating_sub(1)
}

/// The recovered vector for one observation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecoveredSolution {
    pub xhat: IntVector,
    pub kd_bits: usize,
    pub program: Program,
    pub bits: Bits,
    /// True when a different vector of the same complexity also solves the
    /// system, so the minimizer is not unique.
    pub ambiguous: bool,
}

/// Outcome of one bounded recovery.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecoveryResult {
    pub budget: usize,
    pub found: Option<RecoveredSolution>,
}

/// A nonzero nullspace vector together with its shortest program.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NullWitness {
    pub vector: IntVector,
    pub kd_bits: usize,
    pub program: Program,
    pub bits: Bits,
}

/// Outcome of a bounded search for the simplest nonzero nullspace vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NullVectorResult {
    pub budget: usize,
    pub found: Option<NullWitness>,
}

/// Recovery threshold of a matrix, as certified by a bounded scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum KstarEstimate {
    /// Some input fails; every occupied level up to `bits` recovers cleanly.
    Bits { bits: usize },
    /// No failure within the budget, so the threshold is at least the budget.
    AtLeastBudget,
}

/// The first input (in enumeration order) the recovery rule does not give
/// back.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KstarFailure {
    pub x: IntVector,
    pub x_kd_bits: usize,
    pub xhat: IntVector,
    pub xhat_kd_bits: usize,
    pub ambiguous: bool,
}

/// Outcome of the threshold scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThresholdResult {
    pub budget: usize,
    pub kstar: KstarEstimate,
    pub first_failure: Option<KstarFailure>,
}

/// Whether recovery of all inputs up to a complexity is guaranteed by the
/// absence of cheap nullspace vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GuaranteeResult {
    pub k_bits: usize,
    pub probe_budget: usize,
    pub guaranteed: bool,
    /// The nullspace vector that voids the guarantee, when one exists.
    pub blocking: Option<NullWitness>,
}

fn check_system(lang_n: usize, a: &SmallMatrix, y: &IntVector) -> Result<()> {
    if a.n() != lang_n {
        return Err(Error::DimensionMismatch {
            expected: lang_n,
            got: a.n(),
            context: "matrix columns",
        });
    }
    if y.n() != a.d() {
        return Err(Error::DimensionMismatch {
            expected: a.d(),
            got: y.n(),
            context: "observation",
        });
    }
    Ok(())
}

/// Recovers the simplest solution of y = A·z within a length budget by
/// direct enumeration.
pub fn mkcs(
    lang: &Language,
    a: &SmallMatrix,
    y: &IntVector,
    lmax: usize,
) -> Result<RecoveryResult> {
    check_system(lang.n(), a, y)?;
    let mut found: Option<RecoveredSolution> = None;
    enumerate(lang, lmax, |item| {
        if let Some(sol) = &mut found {
            if item.len() > sol.kd_bits {
                return Ok(ControlFlow::Break(()));
            }
            if item.vector != sol.xhat && a.matvec_equals(&item.vector, y)? {
                sol.ambiguous = true;
                return Ok(ControlFlow::Break(()));
            }
            return Ok(ControlFlow::Continue(()));
        }
        if a.matvec_equals(&item.vector, y)? {
            found = Some(RecoveredSolution {
                xhat: item.vector.clone(),
                kd_bits: item.len(),
                program: item.program.clone(),
                bits: item.bits.clone(),
                ambiguous: false,
            });
        }
        Ok(ControlFlow::Continue(()))
    })?;
    Ok(RecoveryResult {
        budget: lmax,
        found,
    })
}

/// Recovery against a precomputed table; equivalent to [`mkcs`] with the
/// table's own budget. A repeated vector can never be the first solution or
/// a distinct same-level solution, so scanning first occurrences suffices.
pub fn mkcs_with_table(table: &KdTable, a: &SmallMatrix, y: &IntVector) -> Result<RecoveryResult> {
    check_system(table.n(), a, y)?;
    let mut found: Option<RecoveredSolution> = None;
    for entry in table.iter() {
        if let Some(sol) = &mut found {
            if entry.kd_bits > sol.kd_bits {
                break;
            }
            if entry.vector != sol.xhat && a.matvec_equals(&entry.vector, y)? {
                sol.ambiguous = true;
                break;
            }
            continue;
        }
        if a.matvec_equals(&entry.vector, y)? {
            found = Some(RecoveredSolution {
                xhat: entry.vector.clone(),
                kd_bits: entry.kd_bits,
                program: entry.program.clone(),
                bits: entry.bits.clone(),
                ambiguous: false,
            });
        }
    }
    Ok(RecoveryResult {
        budget: table.lmax(),
        found,
    })
}

/// The simplest nonzero nullspace vector of A within a budget.
pub fn simplest_null_vector(
    lang: &Language,
    a: &SmallMatrix,
    lmax: usize,
) -> Result<NullVectorResult> {
    if a.n() != lang.n() {
        return Err(Error::DimensionMismatch {
            expected: lang.n(),
            got: a.n(),
            context: "matrix columns",
        });
    }
    let mut found: Option<NullWitness> = None;
    enumerate(lang, lmax, |item| {
        if !item.vector.is_zero() && a.in_nullspace(&item.vector)? {
            found = Some(NullWitness {
                vector: item.vector.clone(),
                kd_bits: item.len(),
                program: item.program.clone(),
                bits: item.bits.clone(),
            });
            return Ok(ControlFlow::Break(()));
        }
        Ok(ControlFlow::Continue(()))
    })?;
    Ok(NullVectorResult {
        budget: lmax,
        found,
    })
}

/// Table-backed variant of [`simplest_null_vector`].
pub fn simplest_null_vector_with_table(
    table: &KdTable,
    a: &SmallMatrix,
) -> Result<NullVectorResult> {
    if a.n() != table.n() {
        return Err(Error::DimensionMismatch {
            expected: table.n(),
            got: a.n(),
            context: "matrix columns",
        });
    }
    let mut found: Option<NullWitness> = None;
    for entry in table.iter() {
        if !entry.vector.is_zero() && a.in_nullspace(&entry.vector)? {
            found = Some(NullWitness {
                vector: entry.vector.clone(),
                kd_bits: entry.kd_bits,
                program: entry.program.clone(),
                bits: entry.bits.clone(),
            });
            break;
        }
    }
    Ok(NullVectorResult {
        budget: table.lmax(),
        found,
    })
}

/// How one input fared in the threshold scan.
enum ScanOutcome {
    /// This vector became the recovery for its observation.
    NewEntry { y_key: Vec<i64> },
    /// A simpler or equal recovery already owns the observation.
    Mismatch {
        xhat: IntVector,
        xhat_kd_bits: usize,
        ambiguous: bool,
    },
}

struct YEntry {
    xhat: IntVector,
    kd_bits: usize,
    ambiguous: bool,
}

/// Level-by-level threshold scan fed with first-occurrence vectors in
/// (complexity, code) order.
struct KstarScan<'m> {
    a: &'m SmallMatrix,
    xhat_by_y: HashMap<Vec<i64>, YEntry>,
    current_level: usize,
    level_inputs: Vec<(IntVector, ScanOutcome)>,
    last_good_occupied: usize,
    failure: Option<KstarFailure>,
}

impl<'m> KstarScan<'m> {
    fn new(a: &'m SmallMatrix) -> Self {
        KstarScan {
            a,
            xhat_by_y: HashMap::new(),
            current_level: 0,
            level_inputs: Vec::new(),
            last_good_occupied: 0,
            failure: None,
        }
    }

    /// Feeds the next first-occurrence vector; returns Break once a failing
    /// level has been fully classified.
    fn push(&mut self, vector: &IntVector, kd_bits: usize) -> Result<ControlFlow<()>> {
        if kd_bits != self.current_level {
            self.finalize_level();
            if self.failure.is_some() {
                return Ok(ControlFlow::Break(()));
            }
            self.current_level = kd_bits;
        }
        let y = self.a.matvec(vector)?;
        let outcome = match self.xhat_by_y.entry(y.entries().to_vec()) {
            Entry::Vacant(slot) => {
                let y_key = slot.key().clone();
                slot.insert(YEntry {
                    xhat: vector.clone(),
                    kd_bits,
                    ambiguous: false,
                });
                ScanOutcome::NewEntry { y_key }
            }
            Entry::Occupied(mut slot) => {
                let e = slot.get_mut();
                if e.kd_bits == kd_bits {
                    // a second same-level solution: the standing recovery
                    // for this observation is no longer unique
                    e.ambiguous = true;
                }
                ScanOutcome::Mismatch {
                    xhat: e.xhat.clone(),
                    xhat_kd_bits: e.kd_bits,
                    ambiguous: e.ambiguous,
                }
            }
        };
        self.level_inputs.push((vector.clone(), outcome));
        Ok(ControlFlow::Continue(()))
    }

    /// Classifies the inputs of the level just completed. An input fails if
    /// its observation recovers to a different vector, or recovers to itself
    /// only ambiguously.
    fn finalize_level(&mut self) {
        if self.level_inputs.is_empty() {
            return;
        }
        let level = self.current_level;
        for (x, outcome) in self.level_inputs.drain(..) {
            let failure = match outcome {
                ScanOutcome::NewEntry { y_key } => {
                    let entry = &self.xhat_by_y[&y_key];
                    entry.ambiguous.then(|| KstarFailure {
                        x: x.clone(),
                        x_kd_bits: level,
                        xhat: x.clone(),
                        xhat_kd_bits: level,
                        ambiguous: true,
                    })
                }
                ScanOutcome::Mismatch {
                    xhat,
                    xhat_kd_bits,
                    ambiguous,
                } => Some(KstarFailure {
                    x,
                    x_kd_bits: level,
                    xhat,
                    xhat_kd_bits,
                    ambiguous,
                }),
            };
            if let Some(f) = failure {
                self.failure = Some(f);
                break;
            }
        }
        self.level_inputs.clear();
        if self.failure.is_none() {
            self.last_good_occupied = level;
        }
    }

    fn finish(mut self, budget: usize) -> ThresholdResult {
        self.finalize_level();
        match self.failure {
            Some(f) => ThresholdResult {
                budget,
                kstar: KstarEstimate::Bits {
                    bits: self.last_good_occupied,
                },
                first_failure: Some(f),
            },
            None => ThresholdResult {
                budget,
                kstar: KstarEstimate::AtLeastBudget,
                first_failure: None,
            },
        }
    }
}

/// Scans every vector at its own complexity level and reports the last
/// occupied level whose inputs all recover uniquely to themselves.
pub fn kstar(lang: &Language, a: &SmallMatrix, lmax: usize) -> Result<ThresholdResult> {
    if a.n() != lang.n() {
        return Err(Error::DimensionMismatch {
            expected: lang.n(),
            got: a.n(),
            context: "matrix columns",
        });
    }
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut scan = KstarScan::new(a);
    enumerate(lang, lmax, |item| {
        if !seen.insert(item.vector.entries().to_vec()) {
            return Ok(ControlFlow::Continue(()));
        }
        scan.push(&item.vector, item.len())
    })?;
    Ok(scan.finish(lmax))
}

/// Table-backed variant of [`kstar`]; equivalent at the table's budget.
pub fn kstar_with_table(table: &KdTable, a: &SmallMatrix) -> Result<ThresholdResult> {
    if a.n() != table.n() {
        return Err(Error::DimensionMismatch {
            expected: table.n(),
            got: a.n(),
            context: "matrix columns",
        });
    }
    let mut scan = KstarScan::new(a);
    for entry in table.iter() {
        if let ControlFlow::Break(()) = scan.push(&entry.vector, entry.kd_bits)? {
            break;
        }
    }
    Ok(scan.finish(table.lmax()))
}

/// Verdict of checking every input up to a complexity level against one
/// matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecoveryCheck {
    pub k_bits: usize,
    /// True when every vector of complexity <= k recovers uniquely to
    /// itself from its own observation.
    pub pass: bool,
    pub first_failure: Option<KstarFailure>,
}

/// Checks that every vector with complexity at most `k_bits` recovers to
/// itself, unambiguously. The table must cover `k_bits`.
pub fn recovery_check_with_table(
    table: &KdTable,
    a: &SmallMatrix,
    k_bits: usize,
) -> Result<RecoveryCheck> {
    if a.n() != table.n() {
        return Err(Error::DimensionMismatch {
            expected: table.n(),
            got: a.n(),
            context: "matrix columns",
        });
    }
    if table.lmax() < k_bits {
        return Err(Error::GuardViolated {
            guard: "recovery check budget",
            requirement: "table budget >= k",
            got: format!("table budget {}, need {k_bits}", table.lmax()),
        });
    }
    let mut scan = KstarScan::new(a);
    for entry in table.iter() {
        if entry.kd_bits > k_bits {
            break;
        }
        if let ControlFlow::Break(()) = scan.push(&entry.vector, entry.kd_bits)? {
            break;
        }
    }
    let outcome = scan.finish(k_bits);
    Ok(RecoveryCheck {
        k_bits,
        pass: outcome.first_failure.is_none(),
        first_failure: outcome.first_failure,
    })
}

/// Decides the recovery guarantee for complexity `k_bits` by probing the
/// nullspace up to 2k + 9 bits.
pub fn recovery_guarantee(
    lang: &Language,
    a: &SmallMatrix,
    k_bits: usize,
) -> Result<GuaranteeResult> {
    let probe_budget = guarantee_probe_budget(k_bits);
    let probe = simplest_null_vector(lang, a, probe_budget)?;
    Ok(GuaranteeResult {
        k_bits,
        probe_budget,
        guaranteed: probe.found.is_none(),
        blocking: probe.found,
    })
}

/// Table-backed variant of [`recovery_guarantee`]; the table must cover the
/// probe budget.
pub fn recovery_guarantee_with_table(
    table: &KdTable,
    a: &SmallMatrix,
    k_bits: usize,
) -> Result<GuaranteeResult> {
    let probe_budget = guarantee_probe_budget(k_bits);
    if table.lmax() < probe_budget {
        return Err(Error::GuardViolated {
            guard: "guarantee probe budget",
            requirement: "table budget >= 2k + 9",
            got: format!("table budget {}, need {probe_budget}", table.lmax()),
        });
    }
    let mut blocking: Option<NullWitness> = None;
    for entry in table.iter() {
        if entry.kd_bits > probe_budget {
            break;
        }
        if !entry.vector.is_zero() && a.in_nullspace(&entry.vector)? {
            blocking = Some(NullWitness {
                vector: entry.vector.clone(),
                kd_bits: entry.kd_bits,
                program: entry.program.clone(),
                bits: entry.bits.clone(),
            });
            break;
        }
    }
    Ok(GuaranteeResult {
        k_bits,
        probe_budget,
        guaranteed: blocking.is_none(),
        blocking,
    })
}
