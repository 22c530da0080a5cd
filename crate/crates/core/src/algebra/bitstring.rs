use std::fmt;
use std::str::FromStr;

use super::Semiring;
use crate::error::{mismatch, Error, Result};

/// A fixed-length bit vector of at most 64 bits under OR (`⊕`) and AND (`⊗`).
///
/// Position `i` of the textual form is bit `i` of the word, so `"10"` has
/// bit 0 set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BitString {
    bits: u64,
    len: u32,
}

pub const MAX_BITS: u32 = 64;

impl BitString {
    pub fn new(bits: u64, len: u32) -> Result<Self> {
        if len == 0 || len > MAX_BITS {
            return Err(Error::Unsupported(format!("bit length {len} outside 1..=64")));
        }
        if len < 64 && bits >> len != 0 {
            return Err(mismatch(format!("bits {bits:#x} do not fit in length {len}")));
        }
        Ok(BitString { bits, len })
    }

    pub fn zeros(len: u32) -> Self {
        BitString::new(0, len).expect("valid length")
    }

    pub fn ones(len: u32) -> Self {
        BitString::new(mask(len), len).expect("valid length")
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> u32 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn get(&self, i: u32) -> bool {
        self.bits >> i & 1 == 1
    }
}

pub(crate) fn mask(len: u32) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut bits = 0u64;
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' if i < 64 => bits |= 1 << i,
                '1' => {}
                _ => return Err(Error::InvalidParameter(format!("bad bit {c:?} in {s:?}"))),
            }
        }
        BitString::new(bits, s.chars().count() as u32)
    }
}

impl Semiring for BitString {
    type Params = u32;

    fn params(&self) -> u32 {
        self.len
    }

    fn zero(len: &u32) -> Self {
        BitString::zeros(*len)
    }

    /// The all-ones string is the AND identity.
    fn one(len: &u32) -> Self {
        BitString::ones(*len)
    }

    fn add(&self, rhs: &Self) -> Self {
        BitString { bits: self.bits | rhs.bits, len: self.len }
    }

    fn mul(&self, rhs: &Self) -> Self {
        BitString { bits: self.bits & rhs.bits, len: self.len }
    }

    fn is_zero(&self) -> bool {
        self.bits == 0
    }
}
