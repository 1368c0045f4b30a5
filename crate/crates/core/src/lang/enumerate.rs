//! Exhaustive enumeration of programs in code order.
//!
//! Programs are visited by increasing code length and, within one length,
//! in lexicographic order of their code words. Because the code is
//! prefix-free this order is a total order on programs, and by Kraft's
//! inequality at most 2^L programs have length exactly L.
//!
//! Levels are generated structurally rather than by trial decoding: a level
//! is assembled from leaf opcodes plus sums and scalings of already-built
//! lower levels. A sum at length L draws its operands from levels at most
//! L - 6 and a scaling from levels at most L - 4, so only levels up to
//! `lmax - 4` need to stay cached.

use std::ops::ControlFlow;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::lang::codec::{ints_of_len, OP_WIDTH};
use crate::lang::{Language, Program};
use crate::linalg::IntVector;

/// Hard cap on the enumeration budget; 2^64 code words is out of reach
/// regardless.
pub const ENUMERATION_LMAX_MAX: usize = 64;

/// One enumerated program together with its code and its value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumItem {
    pub bits: Bits,
    pub program: Program,
    pub vector: IntVector,
}

impl EnumItem {
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }
}

/// Visits every program of code length at most `lmax` in (length, code)
/// order. The visitor returns `ControlFlow::Break(())` to stop early; errors
/// from the visitor abort the walk.
pub fn enumerate<F>(lang: &Language, lmax: usize, mut f: F) -> Result<()>
where
    F: FnMut(&EnumItem) -> Result<ControlFlow<()>>,
{
    if lmax > ENUMERATION_LMAX_MAX {
        return Err(Error::GuardViolated {
            guard: "enumeration budget",
            requirement: "lmax <= 64",
            got: format!("lmax = {lmax}"),
        });
    }
    let cache_top = lmax.saturating_sub(4);
    let mut cache: Vec<Vec<EnumItem>> = Vec::with_capacity(cache_top + 1);
    for level in 0..=lmax {
        let items = level_items(lang, level, &cache)?;
        for item in &items {
            if let ControlFlow::Break(()) = f(item)? {
                return Ok(());
            }
        }
        if level <= cache_top {
            cache.push(items);
        }
    }
    Ok(())
}

/// Collects the full enumeration up to `lmax`, in order.
pub fn collect_up_to(lang: &Language, lmax: usize) -> Result<Vec<EnumItem>> {
    let mut out = Vec::new();
    enumerate(lang, lmax, |item| {
        out.push(item.clone());
        Ok(ControlFlow::Continue(()))
    })?;
    Ok(out)
}

/// All programs whose code is exactly `level` bits, sorted by code word.
/// `cache[l]` must hold the items of every level l <= level - 4.
fn level_items(lang: &Language, level: usize, cache: &[Vec<EnumItem>]) -> Result<Vec<EnumItem>> {
    let op = OP_WIDTH as usize;
    let mut items: Vec<EnumItem> = Vec::new();
    if level < op {
        return Ok(items);
    }
    let payload = level - op;
    let w = lang.index_width() as usize;
    let n = lang.n();

    let push = |items: &mut Vec<EnumItem>, program: Program, vector: IntVector| -> Result<()> {
        let bits = lang.encode(&program)?;
        debug_assert_eq!(bits.len(), level);
        items.push(EnumItem {
            bits,
            program,
            vector,
        });
        Ok(())
    };

    if payload == 0 {
        push(&mut items, Program::Zero, IntVector::zeros(n)?)?;
    }

    for c in ints_of_len(payload) {
        push(&mut items, Program::Const(c), IntVector::new(vec![c; n])?)?;
    }

    if payload > w {
        for index in 0..n {
            for value in ints_of_len(payload - w) {
                push(
                    &mut items,
                    Program::Unit { index, value },
                    IntVector::unit(n, index, value)?,
                )?;
            }
        }
    }

    lit_items(lang, payload, &mut |values| {
        push(
            &mut items,
            Program::Lit(values.to_vec()),
            IntVector::new(values.to_vec())?,
        )
    })?;

    // sums: payload splits into two operand codes of length >= 3 each
    for l1 in op..=payload.saturating_sub(op) {
        let l2 = payload - l1;
        for a in &cache[l1] {
            for b in &cache[l2] {
                let vector = a.vector.checked_add(&b.vector)?;
                let program =
                    Program::Sum(Box::new(a.program.clone()), Box::new(b.program.clone()));
                push(&mut items, program, vector)?;
            }
        }
    }

    // scalings: an integer code (odd length) followed by an operand code
    for int_len in (1..=payload.saturating_sub(op)).step_by(2) {
        let lp = payload - int_len;
        for c in ints_of_len(int_len) {
            for a in &cache[lp] {
                let vector = a.vector.checked_scale(c)?;
                let program = Program::Scale(c, Box::new(a.program.clone()));
                push(&mut items, program, vector)?;
            }
        }
    }

    if lang.walsh().is_some() && payload == w {
        for i in 0..n {
            let vector = lang.eval(&Program::Walsh(i))?;
            push(&mut items, Program::Walsh(i), vector)?;
        }
    }

    items.sort_by(|a, b| a.bits.cmp(&b.bits));
    Ok(items)
}

/// Calls `emit` with every length-n integer tuple whose concatenated integer
/// codes total exactly `payload` bits. Integer codes have odd length, so a
/// feasible split into n parts needs payload >= n and payload ≡ n (mod 2).
fn lit_items(
    lang: &Language,
    payload: usize,
    emit: &mut impl FnMut(&[i64]) -> Result<()>,
) -> Result<()> {
    let n = lang.n();
    if payload < n || payload % 2 != n % 2 {
        return Ok(());
    }
    let mut values = vec![0i64; n];
    lit_rec(0, payload, n, &mut values, emit)
}

fn lit_rec(
    part: usize,
    remaining: usize,
    n: usize,
    values: &mut Vec<i64>,
    emit: &mut impl FnMut(&[i64]) -> Result<()>,
) -> Result<()> {
    if part == n - 1 {
        for v in ints_of_len(remaining) {
            values[part] = v;
            emit(values)?;
        }
        return Ok(());
    }
    let parts_left = n - 1 - part;
    let mut int_len = 1;
    // leave at least one bit per remaining part, matching parity
    while int_len + parts_left <= remaining {
        if (remaining - int_len) % 2 == parts_left % 2 {
            for v in ints_of_len(int_len) {
                values[part] = v;
                lit_rec(part + 1, remaining - int_len, n, values, emit)?;
            }
        }
        int_len += 2;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn lang(n: usize) -> Language {
        Language::new(n).unwrap()
    }

    /// Independent oracle: the set of valid code words of length <= lmax,
    /// found by decoding every bit string of each length.
    fn brute_force_codes(lang: &Language, lmax: usize) -> Vec<Bits> {
        let mut out = Vec::new();
        for len in 0..=lmax {
            for raw in 0u64..(1u64 << len) {
                let bits = Bits::from_value(raw, len as u32);
                if lang.decode_exact(&bits).is_ok() {
                    out.push(bits);
                }
            }
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    #[test]
    fn matches_brute_force_decoding() {
        for n in [2, 3, 4] {
            let l = lang(n);
            let lmax = 12;
            let expected = brute_force_codes(&l, lmax);
            let got: Vec<Bits> = collect_up_to(&l, lmax)
                .unwrap()
                .into_iter()
                .map(|item| item.bits)
                .collect();
            assert_eq!(got, expected, "enumeration mismatch at n = {n}");
        }
    }

    #[test]
    fn items_decode_to_their_own_programs() {
        let l = lang(4);
        for item in collect_up_to(&l, 11).unwrap() {
            assert_eq!(l.decode_exact(&item.bits).unwrap(), item.program);
            assert_eq!(l.eval(&item.program).unwrap(), item.vector);
        }
    }

    #[test]
    fn order_is_strictly_increasing() {
        let l = lang(3);
        let items = collect_up_to(&l, 14).unwrap();
        assert!(!items.is_empty());
        for pair in items.windows(2) {
            let a = pair[0].bits.len();
            let b = pair[1].bits.len();
            assert!(a < b || (a == b && pair[0].bits < pair[1].bits));
        }
    }

    #[test]
    fn prefix_free_up_to_fourteen_bits() {
        let l = lang(4);
        let mut codes: Vec<Bits> = collect_up_to(&l, 14)
            .unwrap()
            .into_iter()
            .map(|item| item.bits)
            .collect();
        codes.sort();
        for pair in codes.windows(2) {
            assert!(
                !pair[0].is_proper_prefix_of(&pair[1]),
                "{} is a prefix of {}",
                pair[0],
                pair[1]
            );
        }
    }

    #[test]
    fn first_items_in_order() {
        let l = lang(2);
        let items = collect_up_to(&l, 4).unwrap();
        let codes: Vec<String> = items.iter().map(|i| i.bits.to_string()).collect();
        // length 3: zero; length 4: const 0, walsh 0, walsh 1
        assert_eq!(codes, vec!["000", "0011", "1100", "1101"]);
        assert_eq!(items[0].vector, IntVector::zeros(2).unwrap());
        assert_eq!(items[2].vector.entries(), &[1, 1]);
        assert_eq!(items[3].vector.entries(), &[1, -1]);
    }

    #[test]
    fn level_counts_respect_kraft() {
        let l = lang(4);
        let mut per_level = [0usize; 21];
        enumerate(&l, 20, |item| {
            per_level[item.len()] += 1;
            Ok(ControlFlow::Continue(()))
        })
        .unwrap();
        let mut kraft_num = 0u128; // sum of 2^(20 - len), must stay <= 2^20
        for (len, &count) in per_level.iter().enumerate() {
            if count > 0 {
                assert!(count <= 1 << len, "level {len} exceeds 2^len");
                kraft_num += (count as u128) << (20 - len);
            }
        }
        assert!(kraft_num <= 1 << 20);
    }

    #[test]
    fn distinct_vector_count_is_bounded() {
        let l = lang(4);
        let lmax = 14;
        let mut distinct: BTreeSet<Vec<i64>> = BTreeSet::new();
        enumerate(&l, lmax, |item| {
            distinct.insert(item.vector.entries().to_vec());
            Ok(ControlFlow::Continue(()))
        })
        .unwrap();
        assert!(!distinct.is_empty());
        assert!((distinct.len() as u128) < 1u128 << (lmax + 1));
    }

    #[test]
    fn early_stop_works() {
        let l = lang(3);
        let mut seen = 0;
        enumerate(&l, 20, |_| {
            seen += 1;
            Ok(if seen == 5 {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            })
        })
        .unwrap();
        assert_eq!(seen, 5);
    }

    #[test]
    fn visitor_errors_abort() {
        let l = lang(3);
        let r = enumerate(&l, 20, |_| Err(Error::ZeroVector));
        assert_eq!(r, Err(Error::ZeroVector));
    }

    #[test]
    fn budget_guard() {
        let l = lang(3);
        assert!(matches!(
            enumerate(&l, 65, |_| Ok(ControlFlow::Continue(()))),
            Err(Error::GuardViolated { .. })
        ));
    }

    #[test]
    fn lit_split_lengths_are_odd_and_total() {
        let l = lang(3);
        let mut count = 0;
        lit_items(&l, 9, &mut |values| {
            count += 1;
            assert_eq!(values.len(), 3);
            Ok(())
        })
        .unwrap();
        // payload 9 into 3 odd parts: (1,1,7):8, (1,7,1):8, (7,1,1):8,
        // (1,3,5):2*4=8, permutations of {1,3,5}: 6 orders * (1*2*4) = 48,
        // (3,3,3): 2*2*2 = 8. Total 3*8 + 48 + 8 = 80.
        assert_eq!(count, 80);
    }
}
