//! The description language: programs, their prefix-free binary code, and
//! exact evaluation to integer vectors of a fixed dimension n.
//!
//! A [`Language`] fixes the dimension n (2..=64). The code assigns each
//! program a unique bit string no program's code is a prefix of another's,
//! so program length is a well-defined description complexity and the number
//! of programs of length at most L is below 2^(L+1).

mod codec;
mod enumerate;
mod kd;

pub use enumerate::{collect_up_to, enumerate, EnumItem};
pub use kd::{kd, ComplexityResult, KdTable, KdTableEntry, KdWitness};

use std::fmt;

use serde::ser::Serializer;
use serde::Serialize;

use crate::bits::{BitReader, Bits};
use crate::error::{Error, Result};
use crate::linalg::IntVector;
use crate::walsh::WalshSystem;

use codec::{
    ceil_log2, int_code_len, push_int, read_int, OP_CONST, OP_LIT, OP_SCALE, OP_SUM, OP_UNIT,
    OP_WALSH, OP_WIDTH, OP_ZERO,
};

/// Maximum nesting depth accepted by encode, decode, and eval. Enumerated
/// programs stay far below this; the guard protects the recursive walkers
/// from adversarial inputs.
pub const MAX_PROGRAM_DEPTH: usize = 512;

/// Largest dimension a [`Language`] supports.
pub const LANGUAGE_N_MAX: usize = 64;

/// An expression denoting an integer vector of the language's dimension n.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Program {
    /// The zero vector.
    Zero,
    /// The constant vector (c, c, ..., c).
    Const(i64),
    /// `value` at coordinate `index`, zero elsewhere.
    Unit { index: usize, value: i64 },
    /// An explicit list of all n entries.
    Lit(Vec<i64>),
    /// Entrywise sum of two subprograms.
    Sum(Box<Program>, Box<Program>),
    /// Scalar multiple of a subprogram.
    Scale(i64, Box<Program>),
    /// The Walsh function of the given sequency (power-of-two n only).
    Walsh(usize),
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Program::Zero => write!(f, "(zero)"),
            Program::Const(c) => write!(f, "(const {c})"),
            Program::Unit { index, value } => write!(f, "(unit {index} {value})"),
            Program::Lit(vs) => {
                write!(f, "(lit")?;
                for v in vs {
                    write!(f, " {v}")?;
                }
                write!(f, ")")
            }
            Program::Sum(p, q) => write!(f, "(sum {p} {q})"),
            Program::Scale(c, p) => write!(f, "(scale {c} {p})"),
            Program::Walsh(i) => write!(f, "(walsh {i})"),
        }
    }
}

impl Serialize for Program {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// The description language at a fixed dimension n.
#[derive(Debug, Clone)]
pub struct Language {
    n: usize,
    index_width: u32,
    walsh: Option<WalshSystem>,
}

impl Language {
    /// A language for vectors of dimension n, 2 <= n <= 64. The Walsh opcode
    /// is available exactly when n is a power of two.
    pub fn new(n: usize) -> Result<Self> {
        if !(2..=LANGUAGE_N_MAX).contains(&n) {
            return Err(Error::GuardViolated {
                guard: "language dimension",
                requirement: "2 <= n <= 64",
                got: format!("n = {n}"),
            });
        }
        let walsh = if n.is_power_of_two() {
            Some(WalshSystem::of_order(n)?)
        } else {
            None
        };
        Ok(Language {
            n,
            index_width: ceil_log2(n),
            walsh,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Width in bits of a coordinate index field: ceil(log2 n).
    pub fn index_width(&self) -> u32 {
        self.index_width
    }

    pub fn walsh(&self) -> Option<&WalshSystem> {
        self.walsh.as_ref()
    }

    /// Checks that a program only uses indices below n, literals of length n,
    /// the Walsh opcode only when available, and nesting within bounds.
    pub fn validate(&self, p: &Program) -> Result<()> {
        self.validate_depth(p, 0)
    }

    fn validate_depth(&self, p: &Program, depth: usize) -> Result<()> {
        if depth > MAX_PROGRAM_DEPTH {
            return Err(Error::NestingTooDeep);
        }
        match p {
            Program::Zero | Program::Const(_) => Ok(()),
            Program::Unit { index, .. } => self.check_index(*index),
            Program::Lit(vs) => {
                if vs.len() != self.n {
                    return Err(Error::DimensionMismatch {
                        expected: self.n,
                        got: vs.len(),
                        context: "literal program",
                    });
                }
                Ok(())
            }
            Program::Sum(p1, p2) => {
                self.validate_depth(p1, depth + 1)?;
                self.validate_depth(p2, depth + 1)
            }
            Program::Scale(_, p1) => self.validate_depth(p1, depth + 1),
            Program::Walsh(i) => {
                if self.walsh.is_none() {
                    return Err(Error::WalshUnavailable { n: self.n });
                }
                self.check_index(*i)
            }
        }
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index >= self.n {
            return Err(Error::IndexOutOfRange { index, n: self.n });
        }
        Ok(())
    }

    /// The prefix-free code of a program.
    pub fn encode(&self, p: &Program) -> Result<Bits> {
        self.validate(p)?;
        let mut bits = Bits::with_capacity(self.code_len(p)?);
        self.encode_into(p, &mut bits)?;
        Ok(bits)
    }

    fn encode_into(&self, p: &Program, bits: &mut Bits) -> Result<()> {
        match p {
            Program::Zero => bits.push_fixed(OP_ZERO, OP_WIDTH),
            Program::Const(c) => {
                bits.push_fixed(OP_CONST, OP_WIDTH);
                push_int(bits, *c)?;
            }
            Program::Unit { index, value } => {
                bits.push_fixed(OP_UNIT, OP_WIDTH);
                bits.push_fixed(*index as u64, self.index_width);
                push_int(bits, *value)?;
            }
            Program::Lit(vs) => {
                bits.push_fixed(OP_LIT, OP_WIDTH);
                for &v in vs {
                    push_int(bits, v)?;
                }
            }
            Program::Sum(p1, p2) => {
                bits.push_fixed(OP_SUM, OP_WIDTH);
                self.encode_into(p1, bits)?;
                self.encode_into(p2, bits)?;
            }
            Program::Scale(c, p1) => {
                bits.push_fixed(OP_SCALE, OP_WIDTH);
                push_int(bits, *c)?;
                self.encode_into(p1, bits)?;
            }
            Program::Walsh(i) => {
                bits.push_fixed(OP_WALSH, OP_WIDTH);
                bits.push_fixed(*i as u64, self.index_width);
            }
        }
        Ok(())
    }

    /// Code length in bits without materializing the code.
    pub fn code_len(&self, p: &Program) -> Result<usize> {
        self.validate(p)?;
        self.code_len_unchecked(p)
    }

    fn code_len_unchecked(&self, p: &Program) -> Result<usize> {
        let w = OP_WIDTH as usize;
        Ok(match p {
            Program::Zero => w,
            Program::Const(c) => w + int_code_len(*c)?,
            Program::Unit { value, .. } => w + self.index_width as usize + int_code_len(*value)?,
            Program::Lit(vs) => {
                let mut total = w;
                for &v in vs {
                    total += int_code_len(v)?;
                }
                total
            }
            Program::Sum(p1, p2) => {
                w + self.code_len_unchecked(p1)? + self.code_len_unchecked(p2)?
            }
            Program::Scale(c, p1) => w + int_code_len(*c)? + self.code_len_unchecked(p1)?,
            Program::Walsh(_) => w + self.index_width as usize,
        })
    }

    /// Decodes one program from the front of `bits`, returning it together
    /// with the number of bits consumed.
    pub fn decode(&self, bits: &Bits) -> Result<(Program, usize)> {
        let mut r = BitReader::new(bits);
        let p = self.decode_from(&mut r, 0)?;
        Ok((p, r.pos()))
    }

    /// Decodes a program that must occupy the whole of `bits`.
    pub fn decode_exact(&self, bits: &Bits) -> Result<Program> {
        let (p, used) = self.decode(bits)?;
        if used != bits.len() {
            return Err(Error::TrailingGarbage {
                context: "program code",
            });
        }
        Ok(p)
    }

    fn decode_from(&self, r: &mut BitReader<'_>, depth: usize) -> Result<Program> {
        if depth > MAX_PROGRAM_DEPTH {
            return Err(Error::NestingTooDeep);
        }
        let op = r.read_fixed(OP_WIDTH)?;
        match op {
            OP_ZERO => Ok(Program::Zero),
            OP_CONST => Ok(Program::Const(read_int(r)?)),
            OP_UNIT => {
                let index = r.read_fixed(self.index_width)? as usize;
                self.check_index(index)?;
                let value = read_int(r)?;
                Ok(Program::Unit { index, value })
            }
            OP_LIT => {
                let mut vs = Vec::with_capacity(self.n);
                for _ in 0..self.n {
                    vs.push(read_int(r)?);
                }
                Ok(Program::Lit(vs))
            }
            OP_SUM => {
                let p1 = self.decode_from(r, depth + 1)?;
                let p2 = self.decode_from(r, depth + 1)?;
                Ok(Program::Sum(Box::new(p1), Box::new(p2)))
            }
            OP_SCALE => {
                let c = read_int(r)?;
                let p1 = self.decode_from(r, depth + 1)?;
                Ok(Program::Scale(c, Box::new(p1)))
            }
            OP_WALSH => {
                if self.walsh.is_none() {
                    return Err(Error::WalshUnavailable { n: self.n });
                }
                let index = r.read_fixed(self.index_width)? as usize;
                self.check_index(index)?;
                Ok(Program::Walsh(index))
            }
            _ => Err(Error::InvalidOpcode),
        }
    }

    /// Evaluates a program to its vector with exact (checked) arithmetic.
    pub fn eval(&self, p: &Program) -> Result<IntVector> {
        self.validate(p)?;
        self.eval_unchecked(p)
    }

    fn eval_unchecked(&self, p: &Program) -> Result<IntVector> {
        match p {
            Program::Zero => IntVector::zeros(self.n),
            Program::Const(c) => IntVector::new(vec![*c; self.n]),
            Program::Unit { index, value } => IntVector::unit(self.n, *index, *value),
            Program::Lit(vs) => IntVector::new(vs.clone()),
            Program::Sum(p1, p2) => {
                let a = self.eval_unchecked(p1)?;
                let b = self.eval_unchecked(p2)?;
                a.checked_add(&b)
            }
            Program::Scale(c, p1) => self.eval_unchecked(p1)?.checked_scale(*c),
            Program::Walsh(i) => {
                let system = self
                    .walsh
                    .as_ref()
                    .ok_or(Error::WalshUnavailable { n: self.n })?;
                IntVector::new(system.row(*i)?.to_vec())
            }
        }
    }
}
