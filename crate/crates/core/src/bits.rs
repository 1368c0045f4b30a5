use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A variable-length bit string. Ordering is lexicographic bit-by-bit, which
/// for equal lengths is exactly the tie-break order of the program stream.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bits(Vec<bool>);

impl Bits {
    pub fn new() -> Self {
        Bits(Vec::new())
    }

    pub fn with_capacity(cap: usize) -> Self {
        Bits(Vec::with_capacity(cap))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, bit: bool) {
        self.0.push(bit);
    }

    pub fn extend(&mut self, other: &Bits) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn bit(&self, i: usize) -> Option<bool> {
        self.0.get(i).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        self.0.iter().copied()
    }

    /// Pushes `width` bits of `value`, most significant first.
    pub fn push_fixed(&mut self, value: u64, width: u32) {
        for shift in (0..width).rev() {
            self.0.push((value >> shift) & 1 == 1);
        }
    }

    /// True when `self` is a proper prefix of `other`.
    pub fn is_proper_prefix_of(&self, other: &Bits) -> bool {
        self.len() < other.len() && other.0[..self.len()] == self.0[..]
    }

    /// The `len`-bit string whose big-endian value is `value` (test helper
    /// for exhaustive decode sweeps).
    pub fn from_value(value: u64, len: u32) -> Self {
        let mut b = Bits::with_capacity(len as usize);
        b.push_fixed(value, len);
        b
    }
}

impl Serialize for Bits {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Bits {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut bits = Bits::with_capacity(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => {
                    return Err(Error::Parse {
                        line: 1,
                        message: format!("bit string has non-binary character at position {i}"),
                    })
                }
            }
        }
        Ok(bits)
    }
}

/// Read cursor over a bit string; every decode consumes from the front.
pub(crate) struct BitReader<'a> {
    bits: &'a Bits,
    pos: usize,
}

impl<'a> BitReader<'a> {
    pub(crate) fn new(bits: &'a Bits) -> Self {
        BitReader { bits, pos: 0 }
    }

    pub(crate) fn pos(&self) -> usize {
        self.pos
    }

    pub(crate) fn read_bit(&mut self) -> Result<bool> {
        let b = self.bits.bit(self.pos).ok_or(Error::Truncated)?;
        self.pos += 1;
        Ok(b)
    }

    pub(crate) fn read_fixed(&mut self, width: u32) -> Result<u64> {
        let mut v = 0u64;
        for _ in 0..width {
            v = (v << 1) | u64::from(self.read_bit()?);
        }
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_parse_round_trip() {
        let b: Bits = "001011".parse().unwrap();
        assert_eq!(b.len(), 6);
        assert_eq!(b.to_string(), "001011");
    }

    #[test]
    fn push_fixed_is_big_endian() {
        let mut b = Bits::new();
        b.push_fixed(0b110, 3);
        assert_eq!(b.to_string(), "110");
        b.push_fixed(2, 2);
        assert_eq!(b.to_string(), "11010");
    }

    #[test]
    fn lexicographic_order_within_length() {
        let a: Bits = "001010".parse().unwrap();
        let b: Bits = "001011".parse().unwrap();
        assert!(a < b);
    }

    #[test]
    fn proper_prefix_detection() {
        let a: Bits = "001".parse().unwrap();
        let b: Bits = "0010".parse().unwrap();
        assert!(a.is_proper_prefix_of(&b));
        assert!(!b.is_proper_prefix_of(&a));
        assert!(!a.is_proper_prefix_of(&a));
    }

    #[test]
    fn reader_reports_truncation() {
        let b: Bits = "01".parse().unwrap();
        let mut r = BitReader::new(&b);
        assert_eq!(r.read_fixed(2).unwrap(), 0b01);
        assert_eq!(r.read_bit(), Err(Error::Truncated));
    }
}
