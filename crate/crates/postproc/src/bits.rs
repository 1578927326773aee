//! Packed bit strings.
//!
//! Bits are stored LSB-first in 64-bit words; bit `i` lives at word `i / 64`,
//! position `i % 64`. Unused high bits of the last word are kept zero, so
//! word-level operations (XOR, popcount, windowed reads) need no masking.
//! Out-of-range indexing panics; it is never silently truncated.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{PostprocError, PostprocResult};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitString {
    words: Vec<u64>,
    len: usize,
}

impl BitString {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut out = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            out.set(i, b);
        }
        out
    }

    /// Uniformly random bits drawn word-wise from `rng`.
    pub fn random(len: usize, rng: &mut impl Rng) -> Self {
        let mut words: Vec<u64> = (0..len.div_ceil(64)).map(|_| rng.next_u64()).collect();
        if let Some(last) = words.last_mut() {
            let used = len % 64;
            if used != 0 {
                *last &= (1u64 << used) - 1;
            }
        }
        Self { words, len }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(
            i < self.len,
            "bit index {i} out of range for length {}",
            self.len
        );
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn try_get(&self, i: usize) -> Option<bool> {
        (i < self.len).then(|| self.get(i))
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: bool) {
        assert!(
            i < self.len,
            "bit index {i} out of range for length {}",
            self.len
        );
        let mask = 1u64 << (i % 64);
        if v {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(
            i < self.len,
            "bit index {i} out of range for length {}",
            self.len
        );
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn push(&mut self, v: bool) {
        if self.len.is_multiple_of(64) {
            self.words.push(0);
        }
        self.len += 1;
        if v {
            self.set(self.len - 1, true);
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn parity(&self) -> bool {
        self.words.iter().fold(0u64, |acc, w| acc ^ w).count_ones() % 2 == 1
    }

    pub fn xor(&self, other: &Self) -> PostprocResult<Self> {
        if self.len != other.len {
            return Err(PostprocError::LengthMismatch(format!(
                "xor of lengths {} and {}",
                self.len, other.len
            )));
        }
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a ^ b)
            .collect();
        Ok(Self {
            words,
            len: self.len,
        })
    }

    pub fn hamming_distance(&self, other: &Self) -> PostprocResult<usize> {
        Ok(self.xor(other)?.count_ones())
    }

    /// Copy of bits `[start, end)`.
    pub fn slice(&self, start: usize, end: usize) -> PostprocResult<Self> {
        if start > end || end > self.len {
            return Err(PostprocError::OutOfDomain(format!(
                "slice [{start}, {end}) out of range for length {}",
                self.len
            )));
        }
        let mut out = Self::zeros(end - start);
        for i in start..end {
            if self.get(i) {
                out.set(i - start, true);
            }
        }
        Ok(out)
    }

    pub fn extend_from(&mut self, other: &Self) {
        for b in other.iter() {
            self.push(b);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// 64 bits starting at `offset`, zero-padded past the end.
    pub(crate) fn window(&self, offset: usize) -> u64 {
        let w = offset / 64;
        let shift = offset % 64;
        let lo = self.words.get(w).copied().unwrap_or(0);
        if shift == 0 {
            lo
        } else {
            let hi = self.words.get(w + 1).copied().unwrap_or(0);
            (lo >> shift) | (hi << (64 - shift))
        }
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            write!(f, "{}", if b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len <= 64 {
            write!(f, "BitString({})", self)
        } else {
            write!(
                f,
                "BitString(len={}, weight={})",
                self.len,
                self.count_ones()
            )
        }
    }
}

impl FromStr for BitString {
    type Err = PostprocError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut out = Self::zeros(s.len());
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => out.set(i, true),
                other => {
                    return Err(PostprocError::OutOfDomain(format!(
                        "invalid bit character `{other}` at position {i}"
                    )));
                }
            }
        }
        Ok(out)
    }
}
