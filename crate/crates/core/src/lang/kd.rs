//! Description complexity of integer vectors.
//!
//! The complexity of x is the length of the shortest program evaluating to
//! x, found by walking the enumeration in code order; the first hit is both
//! the minimal length and the lexicographically least witness at that
//! length. A [`KdTable`] precomputes the same data for every vector
//! reachable within a budget, for workloads that query many vectors against
//! one language.

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::ops::ControlFlow;

use serde::Serialize;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::lang::enumerate::enumerate;
use crate::lang::{Language, Program};
use crate::linalg::IntVector;

/// A shortest program found for a queried vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KdWitness {
    pub kd_bits: usize,
    pub program: Program,
    pub bits: Bits,
}

/// Outcome of a bounded complexity query.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexityResult {
    /// The length budget the search ran with.
    pub budget: usize,
    /// The witness, or None if no program within the budget evaluates to x.
    pub found: Option<KdWitness>,
}

/// Complexity of `x` within a length budget, by direct enumeration.
pub fn kd(lang: &Language, x: &IntVector, lmax: usize) -> Result<ComplexityResult> {
    if x.n() != lang.n() {
        return Err(Error::DimensionMismatch {
            expected: lang.n(),
            got: x.n(),
            context: "complexity query",
        });
    }
    let mut found = None;
    enumerate(lang, lmax, |item| {
        if item.vector == *x {
            found = Some(KdWitness {
                kd_bits: item.len(),
                program: item.program.clone(),
                bits: item.bits.clone(),
            });
            Ok(ControlFlow::Break(()))
        } else {
            Ok(ControlFlow::Continue(()))
        }
    })?;
    Ok(ComplexityResult {
        budget: lmax,
        found,
    })
}

/// One row of a [`KdTable`]: a reachable vector with its complexity and the
/// first witness in enumeration order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KdTableEntry {
    pub vector: IntVector,
    pub kd_bits: usize,
    pub program: Program,
    pub bits: Bits,
}

/// Every vector reachable by a program of length <= lmax, keyed for O(1)
/// lookup and kept in first-reached (complexity, code) order.
#[derive(Debug, Clone)]
pub struct KdTable {
    n: usize,
    lmax: usize,
    entries: Vec<KdTableEntry>,
    index: HashMap<Vec<i64>, usize>,
}

impl KdTable {
    pub fn build(lang: &Language, lmax: usize) -> Result<Self> {
        let mut entries: Vec<KdTableEntry> = Vec::new();
        let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
        enumerate(lang, lmax, |item| {
            let key = item.vector.entries().to_vec();
            if let Entry::Vacant(slot) = index.entry(key) {
                slot.insert(entries.len());
                entries.push(KdTableEntry {
                    vector: item.vector.clone(),
                    kd_bits: item.len(),
                    program: item.program.clone(),
                    bits: item.bits.clone(),
                });
            }
            Ok(ControlFlow::Continue(()))
        })?;
        Ok(KdTable {
            n: lang.n(),
            lmax,
            entries,
            index,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The length budget the table was built with.
    pub fn lmax(&self) -> usize {
        self.lmax
    }

    /// Number of distinct reachable vectors.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The table row for `x`, if x is reachable within the table's budget.
    pub fn lookup(&self, x: &IntVector) -> Option<&KdTableEntry> {
        self.index.get(x.entries()).map(|&i| &self.entries[i])
    }

    /// Rows in ascending (complexity, code) order.
    pub fn iter(&self) -> impl Iterator<Item = &KdTableEntry> {
        self.entries.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lang(n: usize) -> Language {
        Language::new(n).unwrap()
    }

    fn vec_of(entries: &[i64]) -> IntVector {
        IntVector::new(entries.to_vec()).unwrap()
    }

    #[test]
    fn zero_vector_costs_three_bits() {
        for n in [2, 3, 4, 14] {
            let l = lang(n);
            let r = kd(&l, &IntVector::zeros(n).unwrap(), 8).unwrap();
            let w = r.found.unwrap();
            assert_eq!(w.kd_bits, 3);
            assert_eq!(w.program, Program::Zero);
        }
    }

    #[test]
    fn all_ones_at_power_of_two_uses_walsh() {
        let l = lang(4);
        let r = kd(&l, &vec_of(&[1, 1, 1, 1]), 8).unwrap();
        let w = r.found.unwrap();
        assert_eq!(w.kd_bits, 5);
        assert_eq!(w.program, Program::Walsh(0));
        assert_eq!(w.bits.to_string(), "11000");
    }

    #[test]
    fn cheapest_nonzero_without_walsh_is_const() {
        let l = lang(3);
        for c in [1i64, -1] {
            let r = kd(&l, &vec_of(&[c, c, c]), 8).unwrap();
            let w = r.found.unwrap();
            assert_eq!(w.kd_bits, 6, "const {c}");
            assert_eq!(w.program, Program::Const(c));
        }
    }

    #[test]
    fn unit_vectors_at_n_fourteen_cost_ten_bits() {
        let l = lang(14);
        for i in [0usize, 7, 13] {
            for c in [1i64, -1] {
                let x = IntVector::unit(14, i, c).unwrap();
                let r = kd(&l, &x, 12).unwrap();
                assert_eq!(r.found.unwrap().kd_bits, 10, "unit({i}, {c})");
            }
        }
    }

    #[test]
    fn budget_exhaustion_reports_none() {
        let l = lang(3);
        let r = kd(&l, &vec_of(&[5, -7, 11]), 10).unwrap();
        assert_eq!(r.budget, 10);
        assert!(r.found.is_none());
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let l = lang(3);
        let x = vec_of(&[1, 2]);
        assert!(matches!(
            kd(&l, &x, 8),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn grid_n3_max_complexity_is_eighteen() {
        let l = lang(3);
        let mut max_bits = 0;
        for a in -2i64..=2 {
            for b in -2i64..=2 {
                for c in -2i64..=2 {
                    let r = kd(&l, &vec_of(&[a, b, c]), 18).unwrap();
                    let w = r
                        .found
                        .unwrap_or_else(|| panic!("({a},{b},{c}) not reachable within 18 bits"));
                    max_bits = max_bits.max(w.kd_bits);
                }
            }
        }
        assert_eq!(max_bits, 18);
    }

    #[test]
    fn table_agrees_with_streaming_kd() {
        let l = lang(4);
        let table = KdTable::build(&l, 12).unwrap();
        assert!(!table.is_empty());
        for entry in table.iter() {
            let r = kd(&l, &entry.vector, 12).unwrap();
            let w = r.found.unwrap();
            assert_eq!(w.kd_bits, entry.kd_bits);
            assert_eq!(w.program, entry.program);
            assert_eq!(w.bits, entry.bits);
        }
    }

    #[test]
    fn table_order_is_by_complexity_then_code() {
        let l = lang(3);
        let table = KdTable::build(&l, 11).unwrap();
        for pair in table.entries.windows(2) {
            let a = &pair[0];
            let b = &pair[1];
            assert!(a.kd_bits < b.kd_bits || (a.kd_bits == b.kd_bits && a.bits < b.bits));
        }
    }

    #[test]
    fn table_lookup_misses_unreachable_vectors() {
        let l = lang(3);
        let table = KdTable::build(&l, 8).unwrap();
        assert!(table.lookup(&vec_of(&[9, -9, 42])).is_none());
        assert!(table.lookup(&IntVector::zeros(3).unwrap()).is_some());
    }
}
