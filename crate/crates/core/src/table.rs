//! Bit-packed truth tables.
//!
//! The table bit at index `e` holds `f(x)` where `e = sum_i x_i * 2^(i-1)`
//! over 1-based variable indices, i.e. variable 1 is the least significant
//! bit of the index.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact bit-packed representation of a Boolean function on `arity` inputs.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DenseTruthTable {
    arity: usize,
    words: Vec<u64>,
}

impl std::fmt::Debug for DenseTruthTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "DenseTruthTable(arity={}, hex={})", self.arity, self.to_hex())
    }
}

fn words_for(arity: usize) -> usize {
    let bits = 1usize << arity;
    bits.div_ceil(64)
}

impl DenseTruthTable {
    /// Builds a table by evaluating `f` on every point, in index order.
    pub fn from_fn<F: FnMut(usize) -> bool>(arity: usize, mut f: F) -> Self {
        let mut words = vec![0u64; words_for(arity)];
        for e in 0..(1usize << arity) {
            if f(e) {
                words[e >> 6] |= 1u64 << (e & 63);
            }
        }
        DenseTruthTable { arity, words }
    }

    /// Constant function.
    pub fn constant(arity: usize, value: bool) -> Self {
        Self::from_fn(arity, |_| value)
    }

    pub fn from_bits(arity: usize, bits: &[bool]) -> Result<Self> {
        if bits.len() != 1usize << arity {
            return Err(Error::ShapeMismatch {
                expected: 1usize << arity,
                got: bits.len(),
            });
        }
        Ok(Self::from_fn(arity, |e| bits[e]))
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Number of points in the domain, `2^arity`.
    pub fn len(&self) -> usize {
        1usize << self.arity
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn get(&self, index: usize) -> bool {
        debug_assert!(index < self.len());
        (self.words[index >> 6] >> (index & 63)) & 1 == 1
    }

    pub fn set(&mut self, index: usize, value: bool) {
        let mask = 1u64 << (index & 63);
        if value {
            self.words[index >> 6] |= mask;
        } else {
            self.words[index >> 6] &= !mask;
        }
    }

    /// Number of accepting inputs.
    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// Classifies the function as constant 0, constant 1 or neither.
    pub fn constancy(&self) -> Constancy {
        let ones = self.count_ones();
        if ones == 0 {
            Constancy::Constant0
        } else if ones == self.len() as u64 {
            Constancy::Constant1
        } else {
            Constancy::NonConstant
        }
    }

    /// Applies a permutation of the input variables: variable `i` of the
    /// result reads variable `perm[i]` of the original (0-based).
    pub fn permute_inputs(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.arity {
            return Err(Error::ShapeMismatch {
                expected: self.arity,
                got: perm.len(),
            });
        }
        Ok(Self::from_fn(self.arity, |e| {
            let mut src = 0usize;
            for (i, &p) in perm.iter().enumerate() {
                if (e >> i) & 1 == 1 {
                    src |= 1 << p;
                }
            }
            self.get(src)
        }))
    }

    /// Lowercase hexadecimal rendering of the table bits, most significant
    /// nibble first, padded to `ceil(2^arity / 4)` digits.
    pub fn to_hex(&self) -> String {
        let digits = self.len().div_ceil(4);
        let mut out = String::with_capacity(digits);
        for d in (0..digits).rev() {
            let mut nibble = 0u8;
            for bit in 0..4 {
                let idx = d * 4 + bit;
                if idx < self.len() && self.get(idx) {
                    nibble |= 1 << bit;
                }
            }
            out.push(std::char::from_digit(nibble as u32, 16).unwrap());
        }
        out
    }

    /// Serializes to the text table format:
    /// line 1 `arity: <n>`, line 2 the hex digits of the table.
    pub fn to_text(&self) -> String {
        format!("arity: {}\n{}\n", self.arity, self.to_hex())
    }

    /// Parses the text table format produced by [`DenseTruthTable::to_text`].
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty table file".into()))?;
        let arity: usize = header
            .strip_prefix("arity:")
            .map(str::trim)
            .ok_or_else(|| Error::Parse(format!("expected 'arity: <n>' header, got {header:?}")))?
            .parse()
            .map_err(|e| Error::Parse(format!("bad arity: {e}")))?;
        let hex = lines
            .next()
            .map(str::trim)
            .ok_or_else(|| Error::Parse("missing table line".into()))?;
        let digits = (1usize << arity).div_ceil(4);
        if hex.len() != digits {
            return Err(Error::Parse(format!(
                "expected {digits} hex digits for arity {arity}, got {}",
                hex.len()
            )));
        }
        let mut table = DenseTruthTable::constant(arity, false);
        for (pos, ch) in hex.chars().enumerate() {
            let nibble = ch
                .to_digit(16)
                .ok_or_else(|| Error::Parse(format!("invalid hex digit {ch:?}")))?
                as usize;
            let d = digits - 1 - pos;
            for bit in 0..4 {
                let idx = d * 4 + bit;
                if idx < table.len() && (nibble >> bit) & 1 == 1 {
                    table.set(idx, true);
                }
            }
        }
        Ok(table)
    }

    /// Uniformly random function.
    pub fn random<R: Rng>(arity: usize, rng: &mut R) -> Self {
        let mut t = Self::constant(arity, false);
        for e in 0..t.len() {
            if rng.gen::<bool>() {
                t.set(e, true);
            }
        }
        t
    }

    /// Random monotone function: a random function closed upward, so that
    /// flipping any input bit from 0 to 1 never decreases the value.
    pub fn random_monotone<R: Rng>(arity: usize, rng: &mut R) -> Self {
        let mut t = Self::random(arity, rng);
        for i in 0..arity {
            let bit = 1usize << i;
            for e in 0..t.len() {
                if e & bit != 0 && t.get(e ^ bit) {
                    t.set(e, true);
                }
            }
        }
        t
    }
}

/// Result of a constancy test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Constancy {
    Constant0,
    Constant1,
    NonConstant,
}

impl Constancy {
    pub fn is_constant(self) -> bool {
        !matches!(self, Constancy::NonConstant)
    }
}

/// Decodes a point index into an input vector, least significant bit first.
pub fn index_to_bits(index: usize, arity: usize) -> Vec<bool> {
    (0..arity).map(|i| (index >> i) & 1 == 1).collect()
}

/// Encodes an input vector into its point index.
pub fn bits_to_index(bits: &[bool]) -> usize {
    bits.iter()
        .enumerate()
        .fold(0usize, |acc, (i, &b)| acc | ((b as usize) << i))
}
