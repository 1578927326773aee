//! Pre-shared secret-key accounting.
//!
//! The ledger holds actual key material: an append-only pool of bits and a
//! cursor separating consumed pad bits from the spendable balance. Pad bits
//! are issued in cursor order and never reissued, so the consumed spans in
//! the log are disjoint by construction. Every movement is logged with a
//! signed delta; replaying the log reconstructs the balance exactly.

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::bits::BitString;
use crate::error::{PostprocError, PostprocResult};

/// One logged ledger movement. Negative `delta` is a debit, positive a
/// deposit; `pad_span` records the consumed pool positions `[start, end)`
/// for debits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LedgerEntry {
    pub round: u64,
    pub purpose: String,
    pub delta: i64,
    pub pad_span: Option<(usize, usize)>,
}

#[derive(Debug, Clone)]
pub struct KeyLedger {
    pool: BitString,
    cursor: usize,
    initial_balance: usize,
    log: Vec<LedgerEntry>,
}

impl KeyLedger {
    /// Ledger seeded with pre-distributed key material.
    pub fn from_pool(pool: BitString) -> Self {
        let initial_balance = pool.len();
        Self {
            pool,
            cursor: 0,
            initial_balance,
            log: Vec::new(),
        }
    }

    /// Ledger holding `bits` random pre-distributed bits.
    pub fn with_random_pool(bits: usize, seed: u64) -> Self {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        Self::from_pool(BitString::random(bits, &mut rng))
    }

    /// Unconsumed secret bits.
    pub fn balance(&self) -> usize {
        self.pool.len() - self.cursor
    }

    pub fn initial_balance(&self) -> usize {
        self.initial_balance
    }

    pub fn log(&self) -> &[LedgerEntry] {
        &self.log
    }

    /// Issues the next `nbits` pad bits. Fails atomically when the balance
    /// is insufficient: no bits are consumed and nothing is logged.
    pub fn take_pad(
        &mut self,
        nbits: usize,
        round: u64,
        purpose: &str,
    ) -> PostprocResult<BitString> {
        if nbits > self.balance() {
            return Err(PostprocError::InsufficientKey {
                requested: nbits,
                available: self.balance(),
            });
        }
        let start = self.cursor;
        let pad = self.pool.slice(start, start + nbits)?;
        self.cursor += nbits;
        self.log.push(LedgerEntry {
            round,
            purpose: purpose.to_string(),
            delta: -(nbits as i64),
            pad_span: Some((start, start + nbits)),
        });
        Ok(pad)
    }

    /// Deposits freshly distilled key material.
    pub fn deposit(&mut self, bits: &BitString, round: u64, purpose: &str) {
        self.pool.extend_from(bits);
        self.log.push(LedgerEntry {
            round,
            purpose: purpose.to_string(),
            delta: bits.len() as i64,
            pad_span: None,
        });
    }

    /// Balance reconstructed from the log alone.
    pub fn replayed_balance(&self) -> i64 {
        self.initial_balance as i64 + self.log.iter().map(|e| e.delta).sum::<i64>()
    }
}
