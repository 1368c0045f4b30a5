//! Exact integer vectors and small dense matrices.
//!
//! Everything here is exact: all sums and products go through checked i64
//! arithmetic and overflow is a hard error, never a wrap. Matrices carry a
//! `kind` restricting entries to {0,1} or {-1,+1}; the kind is enforced at
//! construction so downstream census code can rely on it.

use std::fmt;

use num_bigint::BigUint;
use rand::RngCore;
use serde::Serialize;

use crate::error::{Error, Result};

/// Default bound on the absolute value of input-vector entries. Operations
/// that enumerate or accept input vectors check against a grid bound; vectors
/// produced by arithmetic (matrix products, program evaluation) may exceed it.
pub const DEFAULT_GRID_BOUND: i64 = 8;

/// Hard cap for exhaustive iteration over binary n-tuples.
pub const ANNIHILATOR_N_MAX: usize = 30;

fn checked_add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Overflow)
}

fn checked_mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

/// An integer tuple. Plays every vector role: inputs x, candidate solutions z,
/// null-space elements, and products y (which may be shorter than the ambient
/// dimension, down to length 1 for single-row matrices).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntVector {
    entries: Vec<i64>,
}

impl IntVector {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::VectorTooShort(0));
        }
        Ok(IntVector { entries })
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::new(vec![0; n])
    }

    /// c at position i, zero elsewhere.
    pub fn unit(n: usize, i: usize, c: i64) -> Result<Self> {
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
        let mut entries = vec![0; n];
        entries[i] = c;
        Self::new(entries)
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> Option<i64> {
        self.entries.get(i).copied()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn checked_add(&self, other: &IntVector) -> Result<IntVector> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                got: other.n(),
                context: "vector addition",
            });
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| checked_add(a, b))
            .collect::<Result<Vec<_>>>()?;
        IntVector::new(entries)
    }

    pub fn checked_sub(&self, other: &IntVector) -> Result<IntVector> {
        self.checked_add(&other.checked_scale(-1)?)
    }

    pub fn checked_scale(&self, c: i64) -> Result<IntVector> {
        let entries = self
            .entries
            .iter()
            .map(|&a| checked_mul(a, c))
            .collect::<Result<Vec<_>>>()?;
        IntVector::new(entries)
    }

    /// Errors when any entry falls outside [-bound, bound].
    pub fn check_grid(&self, bound: i64) -> Result<()> {
        for &e in &self.entries {
            if e.abs() > bound {
                return Err(Error::GridBoundExceeded { value: e, bound });
            }
        }
        Ok(())
    }

    /// Parses a single line of space-separated integers.
    pub fn parse_line(line: &str) -> Result<Self> {
        let entries = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<i64>().map_err(|_| Error::Parse {
                    line: 1,
                    message: format!("`{tok}` is not an integer"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        IntVector::new(entries)
    }

    /// Parses the single-line vector file format; rejects trailing garbage.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (_, first) = lines.next().ok_or(Error::VectorTooShort(0))?;
        if lines.next().is_some() {
            return Err(Error::TrailingGarbage {
                context: "vector line",
            });
        }
        Self::parse_line(first)
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for e in &self.entries {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
            first = false;
        }
        Ok(())
    }
}

impl Serialize for IntVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(&self.entries)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MatrixKind {
    Binary,
    Sign,
}

impl MatrixKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MatrixKind::Binary => "binary",
            MatrixKind::Sign => "sign",
        }
    }

    fn admits(self, value: i64) -> bool {
        match self {
            MatrixKind::Binary => value == 0 || value == 1,
            MatrixKind::Sign => value == -1 || value == 1,
        }
    }
}

impl fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A d×n matrix with row-major storage and entries restricted by `kind`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SmallMatrix {
    d: usize,
    n: usize,
    kind: MatrixKind,
    entries: Vec<i64>,
}

impl SmallMatrix {
    pub fn new(d: usize, n: usize, kind: MatrixKind, entries: Vec<i64>) -> Result<Self> {
        if d == 0 {
            return Err(Error::EmptyMatrix);
        }
        if n == 0 {
            return Err(Error::VectorTooShort(0));
        }
        if entries.len() != d * n {
            return Err(Error::DimensionMismatch {
                expected: d * n,
                got: entries.len(),
                context: "matrix entry count",
            });
        }
        for (idx, &value) in entries.iter().enumerate() {
            if !kind.admits(value) {
                return Err(Error::EntryOutsideDomain {
                    value,
                    row: idx / n,
                    col: idx % n,
                    kind: kind.as_str(),
                });
            }
        }
        Ok(SmallMatrix {
            d,
            n,
            kind,
            entries,
        })
    }

    pub fn from_rows(kind: MatrixKind, rows: &[Vec<i64>]) -> Result<Self> {
        let d = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                    context: "ragged matrix rows",
                });
            }
        }
        Self::new(d, n, kind, rows.concat())
    }

    pub fn zeros(d: usize, n: usize) -> Result<Self> {
        Self::new(d, n, MatrixKind::Binary, vec![0; d * n])
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> MatrixKind {
        self.kind
    }

    pub fn at(&self, r: usize, c: usize) -> i64 {
        self.entries[r * self.n + c]
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.entries[r * self.n..(r + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[i64]> {
        self.entries.chunks_exact(self.n)
    }

    fn check_x(&self, x: &IntVector, context: &'static str) -> Result<()> {
        if x.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: x.n(),
                context,
            });
        }
        Ok(())
    }

    /// Exact product y = Ax.
    pub fn matvec(&self, x: &IntVector) -> Result<IntVector> {
        self.check_x(x, "matvec input length")?;
        let mut out = Vec::with_capacity(self.d);
        for row in self.rows() {
            out.push(dot(row, x.entries())?);
        }
        IntVector::new(out)
    }

    /// True iff Ax equals y, with early exit on the first differing row.
    pub fn matvec_equals(&self, x: &IntVector, y: &IntVector) -> Result<bool> {
        self.check_x(x, "matvec input length")?;
        if y.n() != self.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                got: y.n(),
                context: "matvec output length",
            });
        }
        for (r, row) in self.rows().enumerate() {
            if dot(row, x.entries())? != y.get(r).unwrap() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True iff z lies in the null space of A.
    pub fn in_nullspace(&self, z: &IntVector) -> Result<bool> {
        self.check_x(z, "null-space membership input length")?;
        for row in self.rows() {
            if dot(row, z.entries())? != 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The binary matrix whose row-major entry string is the big-endian
    /// binary expansion of `index` (dn bits). Index order is the exhaustive
    /// enumeration order of the binary family.
    pub fn binary_from_index(d: usize, n: usize, index: u64) -> Result<Self> {
        let bits = d
            .checked_mul(n)
            .filter(|&dn| dn <= 63)
            .ok_or(Error::GuardViolated {
                guard: "exhaustive matrix index",
                requirement: "d*n <= 63",
                got: format!("d*n = {}", d * n),
            })?;
        if index >= 1u64 << bits {
            return Err(Error::IndexOutOfRange {
                index: index as usize,
                n: 1usize << bits,
            });
        }
        let entries = (0..bits)
            .map(|pos| ((index >> (bits - 1 - pos)) & 1) as i64)
            .collect();
        Self::new(d, n, MatrixKind::Binary, entries)
    }

    /// A uniformly random binary matrix: entries are independent fair bits
    /// drawn row-major from the generator's 64-bit output words, least
    /// significant bit first within each word.
    pub fn random_binary<R: RngCore>(d: usize, n: usize, rng: &mut R) -> Result<Self> {
        let mut entries = Vec::with_capacity(d * n);
        let mut word = 0u64;
        let mut left = 0u32;
        for _ in 0..d * n {
            if left == 0 {
                word = rng.next_u64();
                left = 64;
            }
            entries.push((word & 1) as i64);
            word >>= 1;
            left -= 1;
        }
        Self::new(d, n, MatrixKind::Binary, entries)
    }

    /// Parses the matrix text format: header "d n kind", then d rows of n
    /// space-separated integers. Rejects trailing garbage.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (header_no, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "empty matrix file".into(),
        })?;
        let tokens: Vec<&str> = header.split_whitespace().collect();
        if tokens.len() != 3 {
            return Err(Error::Parse {
                line: header_no + 1,
                message: "header must be `d n kind`".into(),
            });
        }
        let parse_dim = |tok: &str, what: &str, line: usize| -> Result<usize> {
            tok.parse::<usize>().map_err(|_| Error::Parse {
                line,
                message: format!("{what} `{tok}` is not a positive integer"),
            })
        };
        let d = parse_dim(tokens[0], "row count", header_no + 1)?;
        let n = parse_dim(tokens[1], "column count", header_no + 1)?;
        let kind = match tokens[2] {
            "binary" => MatrixKind::Binary,
            "sign" => MatrixKind::Sign,
            other => {
                return Err(Error::Parse {
                    line: header_no + 1,
                    message: format!("kind `{other}` is not one of binary, sign"),
                })
            }
        };
        let mut rows = Vec::with_capacity(d);
        for _ in 0..d {
            let (no, line) = lines.next().ok_or(Error::Parse {
                line: header_no + 1,
                message: format!("expected {d} rows"),
            })?;
            let row = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<i64>().map_err(|_| Error::Parse {
                        line: no + 1,
                        message: format!("`{tok}` is not an integer"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            if row.len() != n {
                return Err(Error::Parse {
                    line: no + 1,
                    message: format!("expected {n} entries, got {}", row.len()),
                });
            }
            rows.push(row);
        }
        if lines.next().is_some() {
            return Err(Error::TrailingGarbage {
                context: "matrix rows",
            });
        }
        Self::from_rows(kind, &rows)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.d, self.n, self.kind);
        for row in self.rows() {
            let mut first = true;
            for e in row {
                if !first {
                    out.push(' ');
                }
                out.push_str(&e.to_string());
                first = false;
            }
            out.push('\n');
        }
        out
    }
}

fn dot(row: &[i64], x: &[i64]) -> Result<i64> {
    let mut acc = 0i64;
    for (&a, &b) in row.iter().zip(x) {
        acc = checked_add(acc, checked_mul(a, b)?)?;
    }
    Ok(acc)
}

/// |B_x| — the number of binary n-tuples b with b·x = 0, by exhaustion over
/// the n-bit integer order 0..2^n-1 (bit j of the counter is coordinate j).
pub fn annihilator_count(x: &IntVector) -> Result<u64> {
    if x.is_zero() {
        return Err(Error::ZeroVector);
    }
    let n = x.n();
    if n > ANNIHILATOR_N_MAX {
        return Err(Error::GuardViolated {
            guard: "annihilator exhaustion",
            requirement: "n <= 30",
            got: format!("n = {n}"),
        });
    }
    let mut count = 0u64;
    for b in 0u64..1 << n {
        let mut acc = 0i64;
        for (j, &xj) in x.entries().iter().enumerate() {
            if (b >> j) & 1 == 1 {
                acc = checked_add(acc, xj)?;
            }
        }
        if acc == 0 {
            count += 1;
        }
    }
    Ok(count)
}

/// |M_x| — the number of d×n binary matrices annihilating x. Rows are chosen
/// independently, so this is annihilator_count(x) raised to the d-th power.
pub fn annihilating_matrix_count(x: &IntVector, d: usize) -> Result<BigUint> {
    if d == 0 {
        return Err(Error::InvalidParam("d must be at least 1".into()));
    }
    let per_row = annihilator_count(x)?;
    let d = u32::try_from(d).map_err(|_| Error::InvalidParam("d too large".into()))?;
    Ok(BigUint::from(per_row).pow(d))
}
