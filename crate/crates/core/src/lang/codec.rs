//! Bit-level primitives of the description code.
//!
//! Every program starts with a 3-bit opcode. Signed integers are written as
//! the Elias gamma code of `zigzag(v) + 1`, where `zigzag` maps
//! 0, -1, 1, -2, 2, ... to 0, 1, 2, 3, 4, ...; the gamma code of m >= 1 is
//! floor(log2 m) zeros followed by m in binary, so every integer code has odd
//! length. Coordinate indices are plain big-endian fields of width
//! ceil(log2 n).

use crate::bits::{BitReader, Bits};
use crate::error::{Error, Result};

pub(crate) const OP_WIDTH: u32 = 3;
pub(crate) const OP_ZERO: u64 = 0b000;
pub(crate) const OP_CONST: u64 = 0b001;
pub(crate) const OP_UNIT: u64 = 0b010;
pub(crate) const OP_LIT: u64 = 0b011;
pub(crate) const OP_SUM: u64 = 0b100;
pub(crate) const OP_SCALE: u64 = 0b101;
pub(crate) const OP_WALSH: u64 = 0b110;

pub(crate) fn ceil_log2(n: usize) -> u32 {
    n.next_power_of_two().trailing_zeros()
}

pub(crate) fn zigzag(v: i64) -> Result<u64> {
    if v >= 0 {
        Ok((v as u64) << 1)
    } else if v == i64::MIN {
        // zigzag(i64::MIN) + 1 does not fit in 64 bits
        Err(Error::IntTooWide)
    } else {
        Ok((((-v) as u64) << 1) - 1)
    }
}

pub(crate) fn unzigzag(z: u64) -> i64 {
    if z & 1 == 0 {
        (z >> 1) as i64
    } else {
        -(((z >> 1) + 1) as i64)
    }
}

/// Number of bits `push_int` would write: 2*floor(log2(zigzag(v)+1)) + 1.
pub(crate) fn int_code_len(v: i64) -> Result<usize> {
    let m = zigzag(v)? + 1;
    let k = 63 - m.leading_zeros();
    Ok(2 * k as usize + 1)
}

pub(crate) fn push_int(bits: &mut Bits, v: i64) -> Result<()> {
    let m = zigzag(v)? + 1;
    let k = 63 - m.leading_zeros();
    for _ in 0..k {
        bits.push(false);
    }
    bits.push_fixed(m, k + 1);
    Ok(())
}

pub(crate) fn read_int(r: &mut BitReader) -> Result<i64> {
    let mut k = 0u32;
    while !r.read_bit()? {
        k += 1;
        if k > 63 {
            return Err(Error::IntTooWide);
        }
    }
    let mut m: u64 = 1;
    for _ in 0..k {
        m = (m << 1) | u64::from(r.read_bit()?);
    }
    let z = m - 1;
    Ok(unzigzag(z))
}

/// Signed integers whose code is exactly `len` bits, in ascending code order
/// (lexicographic order of the code words).
pub(crate) fn ints_of_len(len: usize) -> impl Iterator<Item = i64> {
    let k = (len.saturating_sub(1) / 2) as u32;
    let range = if len % 2 == 1 && len >= 1 && k <= 62 {
        (1u64 << k)..(1u64 << (k + 1))
    } else {
        1..1 // even or oversized lengths encode nothing
    };
    range.map(|m| unzigzag(m - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_bits(v: i64) -> String {
        let mut b = Bits::new();
        push_int(&mut b, v).unwrap();
        b.to_string()
    }

    #[test]
    fn zigzag_interleaves_signs() {
        let pairs = [(0, 0), (-1, 1), (1, 2), (-2, 3), (2, 4), (-3, 5), (3, 6)];
        for (v, z) in pairs {
            assert_eq!(zigzag(v).unwrap(), z);
            assert_eq!(unzigzag(z), v);
        }
    }

    #[test]
    fn zigzag_rejects_i64_min_only() {
        assert_eq!(zigzag(i64::MIN), Err(Error::IntTooWide));
        assert!(zigzag(i64::MIN + 1).is_ok());
        assert!(zigzag(i64::MAX).is_ok());
    }

    #[test]
    fn int_code_golden_values() {
        assert_eq!(int_bits(0), "1");
        assert_eq!(int_bits(-1), "010");
        assert_eq!(int_bits(1), "011");
        assert_eq!(int_bits(-2), "00100");
        assert_eq!(int_bits(2), "00101");
        assert_eq!(int_bits(-3), "00110");
        assert_eq!(int_bits(3), "00111");
        assert_eq!(int_bits(4), "0001001");
    }

    #[test]
    fn int_code_lengths_are_odd_and_match() {
        for v in -100..=100 {
            let mut b = Bits::new();
            push_int(&mut b, v).unwrap();
            assert_eq!(b.len() % 2, 1);
            assert_eq!(b.len(), int_code_len(v).unwrap());
        }
    }

    #[test]
    fn int_round_trip_small_and_extreme() {
        let mut values: Vec<i64> = (-1000..=1000).collect();
        values.extend([i64::MIN + 1, i64::MAX, 1 << 40, -(1 << 40)]);
        for v in values {
            let mut b = Bits::new();
            push_int(&mut b, v).unwrap();
            let mut r = BitReader::new(&b);
            assert_eq!(read_int(&mut r).unwrap(), v);
            assert_eq!(r.pos(), b.len());
        }
    }

    #[test]
    fn read_int_truncated() {
        let b: Bits = "00".parse().unwrap();
        let mut r = BitReader::new(&b);
        assert_eq!(read_int(&mut r), Err(Error::Truncated));
    }

    #[test]
    fn ints_of_len_enumerates_exactly_that_length() {
        for len in 0..=11 {
            let vs: Vec<i64> = ints_of_len(len).collect();
            if len % 2 == 0 {
                assert!(vs.is_empty());
            } else {
                let k = (len - 1) / 2;
                assert_eq!(vs.len(), 1 << k);
                for &v in &vs {
                    assert_eq!(int_code_len(v).unwrap(), len);
                }
            }
        }
        assert_eq!(ints_of_len(1).collect::<Vec<_>>(), vec![0]);
        assert_eq!(ints_of_len(3).collect::<Vec<_>>(), vec![-1, 1]);
        assert_eq!(ints_of_len(5).collect::<Vec<_>>(), vec![-2, 2, -3, 3]);
    }

    #[test]
    fn ints_of_len_is_in_code_lex_order() {
        for len in [1usize, 3, 5, 7, 9] {
            let codes: Vec<String> = ints_of_len(len)
                .map(|v| {
                    let mut b = Bits::new();
                    push_int(&mut b, v).unwrap();
                    b.to_string()
                })
                .collect();
            let mut sorted = codes.clone();
            sorted.sort();
            assert_eq!(codes, sorted);
        }
    }

    #[test]
    fn ceil_log2_values() {
        assert_eq!(ceil_log2(2), 1);
        assert_eq!(ceil_log2(3), 2);
        assert_eq!(ceil_log2(4), 2);
        assert_eq!(ceil_log2(8), 3);
        assert_eq!(ceil_log2(14), 4);
        assert_eq!(ceil_log2(64), 6);
    }
}
