//! Sylvester Hadamard matrices and sequency-ordered Walsh functions.
//!
//! Sequency is the number of sign changes along a row; sorting the Sylvester
//! rows by sequency gives the Walsh functions w_0..w_{n-1}, indexed from zero
//! so that the index equals the sign-change count.

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lang::{KdTable, KdTableEntry, Language};
use crate::linalg::{IntVector, MatrixKind, SmallMatrix};
use crate::report::{to_csv, Provenance};
use crate::solver::mkcs_with_table;

pub const HADAMARD_ORDER_MAX: usize = 64;

/// Sylvester Hadamard matrix of order 2^k via the block doubling
/// [H H; H -H]. Exact integer entries, H·Hᵀ = n·I.
pub fn hadamard(k: u32) -> Result<SmallMatrix> {
    let order = 1usize
        .checked_shl(k)
        .filter(|&o| o <= HADAMARD_ORDER_MAX)
        .ok_or(Error::GuardViolated {
            guard: "hadamard order",
            requirement: "2^k <= 64",
            got: format!("k = {k}"),
        })?;
    let mut rows: Vec<Vec<i64>> = vec![vec![1]];
    while rows.len() < order {
        let mut next = Vec::with_capacity(rows.len() * 2);
        for row in &rows {
            let mut top = row.clone();
            top.extend_from_slice(row);
            next.push(top);
        }
        for row in &rows {
            let mut bottom = row.clone();
            bottom.extend(row.iter().map(|&e| -e));
            next.push(bottom);
        }
        rows = next;
    }
    SmallMatrix::from_rows(MatrixKind::Sign, &rows)
}

fn sign_changes(row: &[i64]) -> usize {
    row.windows(2).filter(|w| w[0] != w[1]).count()
}

fn is_hadamard(h: &SmallMatrix) -> bool {
    if h.d() != h.n() || h.kind() != MatrixKind::Sign {
        return false;
    }
    let n = h.n() as i64;
    for i in 0..h.d() {
        for j in i..h.d() {
            let dot: i64 = h.row(i).iter().zip(h.row(j)).map(|(&a, &b)| a * b).sum();
            if dot != if i == j { n } else { 0 } {
                return false;
            }
        }
    }
    true
}

/// The n Walsh functions of order n (a power of two), rows in ascending
/// sequency. Row i has exactly i sign changes and w_0 is the all-ones row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalshSystem {
    n: usize,
    rows: Vec<Vec<i64>>,
}

impl WalshSystem {
    /// Builds the system for a given order directly from the Sylvester
    /// construction.
    pub fn of_order(n: usize) -> Result<Self> {
        if !n.is_power_of_two() || n > HADAMARD_ORDER_MAX {
            return Err(Error::GuardViolated {
                guard: "walsh order",
                requirement: "n a power of two <= 64",
                got: format!("n = {n}"),
            });
        }
        sequency_order(&hadamard(n.trailing_zeros())?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> Result<&[i64]> {
        self.rows
            .get(i)
            .map(Vec::as_slice)
            .ok_or(Error::IndexOutOfRange {
                index: i,
                n: self.n,
            })
    }

    pub fn rows(&self) -> impl Iterator<Item = &[i64]> {
        self.rows.iter().map(Vec::as_slice)
    }

    pub fn matrix(&self) -> SmallMatrix {
        SmallMatrix::from_rows(MatrixKind::Sign, &self.rows)
            .expect("walsh rows are a valid sign matrix")
    }
}

/// Sorts the rows of a Hadamard matrix into ascending sequency. The counts
/// must come out as exactly 0..n-1; anything else (a tie or a gap) signals a
/// non-Sylvester input and is an error.
pub fn sequency_order(h: &SmallMatrix) -> Result<WalshSystem> {
    if !is_hadamard(h) {
        return Err(Error::NotHadamard);
    }
    let n = h.n();
    let mut rows: Vec<Vec<i64>> = h.rows().map(<[i64]>::to_vec).collect();
    rows.sort_by_key(|r| sign_changes(r));
    for (i, row) in rows.iter().enumerate() {
        if sign_changes(row) != i {
            return Err(Error::SequencyTie);
        }
    }
    Ok(WalshSystem { n, rows })
}

/// The d-subsets of 0..n in lexicographic order, each paired with the sign
/// matrix of the corresponding Walsh rows in ascending sequency.
pub(crate) fn walsh_family_indexed(
    n: usize,
    d: usize,
) -> Result<impl Iterator<Item = (Vec<usize>, SmallMatrix)>> {
    if d == 0 || d >= n {
        return Err(Error::InvalidParam(format!(
            "walsh family needs 1 <= d < n, got d = {d}, n = {n}"
        )));
    }
    let system = WalshSystem::of_order(n)?;
    Ok((0..n).combinations(d).map(move |indices| {
        let rows: Vec<Vec<i64>> = indices
            .iter()
            .map(|&i| system.row(i).unwrap().to_vec())
            .collect();
        let matrix = SmallMatrix::from_rows(MatrixKind::Sign, &rows)
            .expect("walsh subset rows are a valid sign matrix");
        (indices, matrix)
    }))
}

/// All C(n,d) matrices whose rows are d distinct Walsh functions in ascending
/// sequency, yielded in lexicographic order of the index subsets.
pub fn walsh_family(n: usize, d: usize) -> Result<impl Iterator<Item = SmallMatrix>> {
    Ok(walsh_family_indexed(n, d)?.map(|(_, m)| m))
}

/// Per-matrix tallies of the triple census.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyMemberRow {
    /// Sequency indices of the d Walsh rows.
    pub indices: Vec<usize>,
    /// Number of census inputs this matrix maps to the zero observation.
    pub zero_output_inputs: u64,
    /// Number of census inputs this matrix fails to recover.
    pub failures: u64,
}

/// Exhaustive census over all (matrix, input, observation) triples with the
/// matrices drawn from the Walsh family and the inputs from the full set of
/// vectors of complexity at most K.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TripleCensusReport {
    pub n: usize,
    pub d: usize,
    pub k_bits: usize,
    pub budget: usize,
    /// C(n,d), the number of family matrices.
    pub family_size: u64,
    /// Number of vectors with complexity <= K.
    pub input_count: u64,
    pub triple_count: u64,
    pub zero_output_triples: u64,
    /// Census inputs of the form c·w_i with c != 0.
    pub walsh_multiple_inputs: u64,
    /// C(n-1,d): how many family matrices annihilate each Walsh multiple.
    pub annihilators_per_multiple: u64,
    /// True when every Walsh multiple hit exactly that count.
    pub annihilator_counts_exact: bool,
    /// True when C(n-1,d)·n == C(n,d)·(n-d), the exact form of the
    /// annihilation ratio 1 - d/n.
    pub ratio_identity_exact: bool,
    pub annihilation_ratio: f64,
    /// Triples whose recovered vector differs from the input.
    pub failure_count: u64,
    /// Triples recovered correctly but not uniquely.
    pub ambiguous_recovered: u64,
    /// Failures where the recovered vector is strictly simpler than the
    /// input.
    pub failures_strictly_simpler: u64,
    pub eta_numerator: u64,
    pub eta_denominator: u64,
    /// Failure fraction over all triples.
    pub eta: f64,
    /// Sum over matrices of (zero-output inputs - 1): every matrix recovers
    /// at most one input from the zero observation.
    pub pigeonhole_floor: u64,
    pub pigeonhole_ok: bool,
    /// Whether a positive failure fraction is forced at this K (the first
    /// Walsh function enters at 3 + ceil(log2 n) bits).
    pub eta_positive_expected: bool,
    pub pass: bool,
    pub provenance: Provenance,
}

impl TripleCensusReport {
    /// One CSV row per family matrix.
    pub fn to_csv(&self, family: &[FamilyMemberRow]) -> Result<String> {
        let rows = family.iter().map(|row| {
            vec![
                self.n.to_string(),
                self.d.to_string(),
                self.k_bits.to_string(),
                row.indices.iter().map(usize::to_string).join(" "),
                row.zero_output_inputs.to_string(),
                row.failures.to_string(),
            ]
        });
        to_csv(
            &[
                "n",
                "d",
                "k_bits",
                "row_indices",
                "zero_output_inputs",
                "failures",
            ],
            rows,
        )
    }
}

/// Runs the exhaustive triple census at complexity level `k_bits` under
/// budget `l_max`, returning the per-matrix rows alongside the report.
pub fn theorem3_census(
    n: usize,
    d: usize,
    k_bits: usize,
    l_max: usize,
) -> Result<(Vec<FamilyMemberRow>, TripleCensusReport)> {
    if !n.is_power_of_two() || n > 16 {
        return Err(Error::GuardViolated {
            guard: "triple census order",
            requirement: "n a power of two <= 16",
            got: format!("n = {n}"),
        });
    }
    if d == 0 || d >= n {
        return Err(Error::InvalidParam(format!(
            "triple census needs 1 <= d < n, got d = {d}, n = {n}"
        )));
    }
    if k_bits > l_max {
        return Err(Error::GuardViolated {
            guard: "triple census level",
            requirement: "K <= budget",
            got: format!("K = {k_bits}, budget = {l_max}"),
        });
    }
    let lang = Language::new(n)?;
    let table = KdTable::build(&lang, l_max)?;
    let inputs: Vec<&KdTableEntry> = table.iter().take_while(|e| e.kd_bits <= k_bits).collect();
    let system = WalshSystem::of_order(n)?;

    // classify each input: is it c·w_i for some c != 0?
    let multiple_flags: Vec<bool> = inputs
        .iter()
        .map(|e| walsh_multiple_index(&system, &e.vector).is_some())
        .collect();

    let family: Vec<(Vec<usize>, SmallMatrix)> = walsh_family_indexed(n, d)?.collect();

    struct MemberTally {
        row: FamilyMemberRow,
        ambiguous_recovered: u64,
        strictly_simpler: u64,
        annihilated_multiples: Vec<usize>,
    }

    let tallies: Vec<MemberTally> = family
        .par_iter()
        .map(|(indices, a)| -> Result<MemberTally> {
            let mut zero_output = 0u64;
            let mut failures = 0u64;
            let mut ambiguous_recovered = 0u64;
            let mut strictly_simpler = 0u64;
            let mut annihilated = Vec::new();
            for (pos, entry) in inputs.iter().enumerate() {
                let y = a.matvec(&entry.vector)?;
                if y.is_zero() {
                    zero_output += 1;
                    if multiple_flags[pos] {
                        annihilated.push(pos);
                    }
                }
                let sol = mkcs_with_table(&table, a, &y)?
                    .found
                    .expect("the census input itself solves within the budget");
                if sol.xhat != entry.vector {
                    failures += 1;
                    if sol.kd_bits < entry.kd_bits {
                        strictly_simpler += 1;
                    }
                } else if sol.ambiguous {
                    ambiguous_recovered += 1;
                }
            }
            Ok(MemberTally {
                row: FamilyMemberRow {
                    indices: indices.clone(),
                    zero_output_inputs: zero_output,
                    failures,
                },
                ambiguous_recovered,
                strictly_simpler,
                annihilated_multiples: annihilated,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let family_size = binomial(n as u64, d as u64) as u64;
    let input_count = inputs.len() as u64;
    let triple_count = family_size * input_count;
    let zero_output_triples: u64 = tallies.iter().map(|t| t.row.zero_output_inputs).sum();
    let failure_count: u64 = tallies.iter().map(|t| t.row.failures).sum();
    let ambiguous_recovered: u64 = tallies.iter().map(|t| t.ambiguous_recovered).sum();
    let failures_strictly_simpler: u64 = tallies.iter().map(|t| t.strictly_simpler).sum();
    let pigeonhole_floor: u64 = tallies
        .iter()
        .map(|t| t.row.zero_output_inputs.saturating_sub(1))
        .sum();

    // exact per-multiple annihilator counts
    let annihilators_per_multiple = binomial(n as u64 - 1, d as u64) as u64;
    let mut per_multiple = vec![0u64; inputs.len()];
    for tally in &tallies {
        for &pos in &tally.annihilated_multiples {
            per_multiple[pos] += 1;
        }
    }
    let annihilator_counts_exact = multiple_flags
        .iter()
        .zip(&per_multiple)
        .all(|(&is_multiple, &count)| !is_multiple || count == annihilators_per_multiple);
    let walsh_multiple_inputs = multiple_flags.iter().filter(|&&f| f).count() as u64;

    let ratio_identity_exact = binomial(n as u64 - 1, d as u64) * n as u128
        == binomial(n as u64, d as u64) * (n - d) as u128;
    let eta = if triple_count == 0 {
        0.0
    } else {
        failure_count as f64 / triple_count as f64
    };
    let eta_positive_expected = k_bits >= 3 + ceil_log2_usize(n);
    let pigeonhole_ok = failure_count >= pigeonhole_floor;
    let pass = annihilator_counts_exact
        && ratio_identity_exact
        && pigeonhole_ok
        && (!eta_positive_expected || failure_count > 0);

    let report = TripleCensusReport {
        n,
        d,
        k_bits,
        budget: l_max,
        family_size,
        input_count,
        triple_count,
        zero_output_triples,
        walsh_multiple_inputs,
        annihilators_per_multiple,
        annihilator_counts_exact,
        ratio_identity_exact,
        annihilation_ratio: 1.0 - d as f64 / n as f64,
        failure_count,
        ambiguous_recovered,
        failures_strictly_simpler,
        eta_numerator: failure_count,
        eta_denominator: triple_count,
        eta,
        pigeonhole_floor,
        pigeonhole_ok,
        eta_positive_expected,
        pass,
        provenance: Provenance::library(),
    };
    Ok((tallies.into_iter().map(|t| t.row).collect(), report))
}

/// If x = c·w_i for some c != 0, returns (i, c).
fn walsh_multiple_index(system: &WalshSystem, x: &IntVector) -> Option<(usize, i64)> {
    let c = x.entries()[0];
    if c == 0 {
        return None;
    }
    for (i, row) in system.rows().enumerate() {
        if row
            .iter()
            .zip(x.entries())
            .all(|(&w, &e)| w.checked_mul(c) == Some(e))
        {
            return Some((i, c));
        }
    }
    None
}

fn ceil_log2_usize(n: usize) -> usize {
    n.next_power_of_two().trailing_zeros() as usize
}

pub(crate) fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hadamard_base_case() {
        let h = hadamard(0).unwrap();
        assert_eq!(h.d(), 1);
        assert_eq!(h.row(0), &[1]);
    }

    #[test]
    fn hadamard_order_two() {
        let h = hadamard(1).unwrap();
        assert_eq!(h.row(0), &[1, 1]);
        assert_eq!(h.row(1), &[1, -1]);
    }

    #[test]
    fn hadamard_order_four_is_sylvester_not_sequency() {
        let h = hadamard(2).unwrap();
        assert_eq!(h.row(0), &[1, 1, 1, 1]);
        assert_eq!(h.row(1), &[1, -1, 1, -1]);
        assert_eq!(h.row(2), &[1, 1, -1, -1]);
        assert_eq!(h.row(3), &[1, -1, -1, 1]);
    }

    #[test]
    fn hadamard_orthogonality_up_to_64() {
        for k in 0..=6 {
            let h = hadamard(k).unwrap();
            assert!(is_hadamard(&h), "H·Hᵀ = n·I failed at order {}", 1 << k);
        }
        assert!(hadamard(7).is_err());
    }

    #[test]
    fn sequency_order_of_order_four() {
        let w = WalshSystem::of_order(4).unwrap();
        assert_eq!(w.row(0).unwrap(), &[1, 1, 1, 1]);
        assert_eq!(w.row(1).unwrap(), &[1, 1, -1, -1]);
        assert_eq!(w.row(2).unwrap(), &[1, -1, -1, 1]);
        assert_eq!(w.row(3).unwrap(), &[1, -1, 1, -1]);
    }

    #[test]
    fn sequency_order_small_orders() {
        let w = WalshSystem::of_order(2).unwrap();
        assert_eq!(w.row(0).unwrap(), &[1, 1]);
        assert_eq!(w.row(1).unwrap(), &[1, -1]);
        let w = WalshSystem::of_order(1).unwrap();
        assert_eq!(w.row(0).unwrap(), &[1]);
    }

    #[test]
    fn sequency_counts_are_exactly_zero_to_n_minus_one() {
        for k in 0..=6 {
            let w = sequency_order(&hadamard(k).unwrap()).unwrap();
            for (i, row) in w.rows().enumerate() {
                assert_eq!(sign_changes(row), i);
            }
        }
    }

    #[test]
    fn sequency_rejects_non_hadamard() {
        let m = SmallMatrix::from_rows(MatrixKind::Sign, &[vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(sequency_order(&m), Err(Error::NotHadamard));
    }

    #[test]
    fn walsh_family_counts() {
        assert_eq!(walsh_family(4, 3).unwrap().count(), 4);
        assert_eq!(walsh_family(8, 3).unwrap().count(), 56);
    }

    #[test]
    fn walsh_family_first_subset_is_prefix() {
        let first = walsh_family(8, 3).unwrap().next().unwrap();
        let w = WalshSystem::of_order(8).unwrap();
        for i in 0..3 {
            assert_eq!(first.row(i), w.row(i).unwrap());
        }
    }

    #[test]
    fn walsh_family_is_lexicographic_and_distinct() {
        let family: Vec<SmallMatrix> = walsh_family(4, 2).unwrap().collect();
        assert_eq!(family.len(), 6);
        let w = WalshSystem::of_order(4).unwrap();
        let expected_order = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        for (m, &(a, b)) in family.iter().zip(&expected_order) {
            assert_eq!(m.row(0), w.row(a).unwrap());
            assert_eq!(m.row(1), w.row(b).unwrap());
        }
    }

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(8, 3), 56);
        assert_eq!(binomial(7, 3), 35);
        assert_eq!(binomial(4, 3), 4);
        assert_eq!(binomial(3, 5), 0);
    }

    #[test]
    fn triple_census_order_eight_matches_hand_count() {
        // At K = 6 the census inputs are the zero vector, ±w_0 (the constant
        // ±1 vectors) and w_1..w_7: ten in total. Every annihilated nonzero
        // input collapses to the zero vector, and nothing else fails.
        let (family, report) = theorem3_census(8, 3, 6, 12).unwrap();
        assert_eq!(report.family_size, 56);
        assert_eq!(report.input_count, 10);
        assert_eq!(report.triple_count, 560);
        assert_eq!(report.walsh_multiple_inputs, 9);
        assert_eq!(report.annihilators_per_multiple, 35);
        assert!(report.annihilator_counts_exact);
        assert!(report.ratio_identity_exact);
        assert_eq!(report.annihilation_ratio, 0.625);
        assert_eq!(report.zero_output_triples, 371);
        assert_eq!(report.failure_count, 315);
        assert_eq!(report.failures_strictly_simpler, 315);
        assert_eq!(report.ambiguous_recovered, 0);
        assert_eq!(report.pigeonhole_floor, 315);
        assert!(report.pigeonhole_ok);
        assert_eq!(report.eta_numerator, 315);
        assert_eq!(report.eta_denominator, 560);
        assert_eq!(report.eta, 0.5625);
        assert!(report.eta_positive_expected);
        assert!(report.pass);

        assert_eq!(family.len(), 56);
        assert_eq!(family[0].indices, vec![0, 1, 2]);
        let zero_sum: u64 = family.iter().map(|r| r.zero_output_inputs).sum();
        let fail_sum: u64 = family.iter().map(|r| r.failures).sum();
        assert_eq!(zero_sum, report.zero_output_triples);
        assert_eq!(fail_sum, report.failure_count);
        // Here every failure is a zero-output collision beyond the one input
        // each matrix can recover from the zero observation.
        for row in &family {
            assert_eq!(row.failures, row.zero_output_inputs - 1);
        }

        let csv = report.to_csv(&family).unwrap();
        assert_eq!(csv.lines().count(), 57);
        assert!(csv.starts_with("n,d,k_bits,row_indices,zero_output_inputs,failures\n"));
        assert!(csv.contains("8,3,6,0 1 2,"));
    }

    #[test]
    fn triple_census_order_four_single_row() {
        // n = 4, d = 1, K = 5: inputs are the zero vector and w_0..w_3. Each
        // single-row matrix annihilates the three other Walsh functions.
        let (_, report) = theorem3_census(4, 1, 5, 10).unwrap();
        assert_eq!(report.input_count, 5);
        assert_eq!(report.triple_count, 20);
        assert_eq!(report.annihilators_per_multiple, 3);
        assert_eq!(report.failure_count, 12);
        assert_eq!(report.eta, 0.6);
        assert!(report.eta_positive_expected);
        assert!(report.pass);

        // Below the first Walsh level only the zero vector is in play, so a
        // zero failure fraction is expected and accepted.
        let (_, thin) = theorem3_census(4, 1, 4, 10).unwrap();
        assert_eq!(thin.input_count, 1);
        assert_eq!(thin.failure_count, 0);
        assert_eq!(thin.eta, 0.0);
        assert!(!thin.eta_positive_expected);
        assert!(thin.pass);
    }

    #[test]
    fn triple_census_ties_appear_with_unit_vectors() {
        // Unit vectors enter at 9 bits for n = 8 and share observations
        // whenever two columns of a family matrix agree, so ties show up:
        // some inputs recover correctly but ambiguously, and some fail to an
        // equally complex vector.
        let (_, report) = theorem3_census(8, 3, 9, 12).unwrap();
        assert!(report.ambiguous_recovered > 0);
        assert!(report.failures_strictly_simpler < report.failure_count);
        assert!(report.pigeonhole_ok);
        assert!(report.pass);
    }

    #[test]
    fn triple_census_complexity_of_multiples_is_bounded_by_program_length() {
        // K_D(c·w_i) can never exceed the explicit scale-of-walsh program.
        let lang = Language::new(4).unwrap();
        let w = WalshSystem::of_order(4).unwrap();
        for i in 0..4 {
            let walsh_prog = crate::lang::Program::Walsh(i);
            for c in [-3i64, -2, -1, 1, 2, 3] {
                let prog = if c == 1 {
                    walsh_prog.clone()
                } else {
                    crate::lang::Program::Scale(c, Box::new(walsh_prog.clone()))
                };
                let bound = lang.code_len(&prog).unwrap();
                let x = IntVector::new(w.row(i).unwrap().iter().map(|&e| e * c).collect()).unwrap();
                let found = crate::lang::kd(&lang, &x, 20).unwrap().found.unwrap();
                assert!(
                    found.kd_bits <= bound,
                    "kd({x}) = {} exceeds program bound {bound}",
                    found.kd_bits
                );
            }
        }
    }

    #[test]
    fn triple_census_rejects_bad_parameters() {
        assert!(matches!(
            theorem3_census(6, 2, 6, 12),
            Err(Error::GuardViolated { .. })
        ));
        assert!(matches!(
            theorem3_census(32, 2, 6, 12),
            Err(Error::GuardViolated { .. })
        ));
        assert!(matches!(
            theorem3_census(8, 0, 6, 12),
            Err(Error::InvalidParam(_))
        ));
        assert!(matches!(
            theorem3_census(8, 8, 6, 12),
            Err(Error::InvalidParam(_))
        ));
        assert!(matches!(
            theorem3_census(8, 3, 13, 12),
            Err(Error::GuardViolated { .. })
        ));
    }
}
