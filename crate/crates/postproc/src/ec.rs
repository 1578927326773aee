//! Error-correction strategies behind a common interface.
//!
//! Each reconciliation scheme implements [`ErrorCorrector`] and is registered
//! by name in [`EcRegistry`]; rounds select one at runtime from their
//! configuration. The interface normalizes what the round loop needs: the
//! corrected string and the exact bit stream Alice disclosed (the payload
//! that encrypted reconciliation protects).

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::bits::BitString;
use crate::cascade::cascade_correct;
use crate::error::{PostprocError, PostprocResult};
use crate::syndrome::{BinaryMatrix, syndrome_correct};

/// Per-round inputs shared by every scheme.
#[derive(Debug, Clone, Copy)]
pub struct EcContext {
    /// Error-rate estimate from parameter estimation.
    pub q_estimate: f64,
    /// Seed for any scheme-internal randomness (shuffles).
    pub seed: u64,
}

/// Result of one reconciliation run.
#[derive(Debug, Clone)]
pub struct EcRun {
    pub corrected: BitString,
    /// Alice's disclosed bits in transmission order; its length is the leak.
    pub disclosed: BitString,
}

impl EcRun {
    pub fn leak_bits(&self) -> usize {
        self.disclosed.len()
    }
}

pub trait ErrorCorrector: Send + Sync {
    fn name(&self) -> &'static str;

    fn correct(&self, alice: &BitString, bob: &BitString, ctx: &EcContext)
    -> PostprocResult<EcRun>;
}

/// Cascade with the standard four-pass doubling schedule.
pub struct CascadeCorrector;

impl ErrorCorrector for CascadeCorrector {
    fn name(&self) -> &'static str {
        "cascade"
    }

    fn correct(
        &self,
        alice: &BitString,
        bob: &BitString,
        ctx: &EcContext,
    ) -> PostprocResult<EcRun> {
        let (corrected, transcript) = cascade_correct(alice, bob, ctx.q_estimate, ctx.seed)?;
        Ok(EcRun {
            corrected,
            disclosed: transcript.parity_bits(),
        })
    }
}

/// Hamming(7,4) syndrome decoding tiled over the key. Each full 7-bit block
/// contributes its 3 syndrome bits; the (at most 6) remainder bits are
/// disclosed verbatim. Blocks with two or more errors decode wrongly and are
/// caught by the round-level verification.
pub struct SyndromeCorrector;

impl ErrorCorrector for SyndromeCorrector {
    fn name(&self) -> &'static str {
        "syndrome"
    }

    fn correct(
        &self,
        alice: &BitString,
        bob: &BitString,
        _ctx: &EcContext,
    ) -> PostprocResult<EcRun> {
        if alice.len() != bob.len() {
            return Err(PostprocError::LengthMismatch(format!(
                "syndrome inputs of lengths {} and {}",
                alice.len(),
                bob.len()
            )));
        }
        let h = BinaryMatrix::hamming_7_4();
        let n = alice.len();
        let full = n / 7;
        let mut corrected = BitString::zeros(0);
        let mut disclosed = BitString::zeros(0);
        for b in 0..full {
            let (start, end) = (b * 7, b * 7 + 7);
            let ab = alice.slice(start, end)?;
            let bb = bob.slice(start, end)?;
            disclosed.extend_from(&h.syndrome(&ab)?);
            let (fixed, _) = syndrome_correct(&ab, &bb, &h, 1)?;
            corrected.extend_from(&fixed);
        }
        for i in full * 7..n {
            let bit = alice.get(i);
            disclosed.push(bit);
            corrected.push(bit);
        }
        Ok(EcRun {
            corrected,
            disclosed,
        })
    }
}

/// Error-correction schemes registered by name and selected at runtime.
pub struct EcRegistry {
    schemes: BTreeMap<&'static str, Arc<dyn ErrorCorrector>>,
}

impl EcRegistry {
    pub fn new() -> Self {
        Self {
            schemes: BTreeMap::new(),
        }
    }

    pub fn with_builtins() -> Self {
        let mut reg = Self::new();
        reg.register(Arc::new(CascadeCorrector));
        reg.register(Arc::new(SyndromeCorrector));
        reg
    }

    pub fn register(&mut self, scheme: Arc<dyn ErrorCorrector>) {
        self.schemes.insert(scheme.name(), scheme);
    }

    pub fn get(&self, name: &str) -> PostprocResult<Arc<dyn ErrorCorrector>> {
        self.schemes
            .get(name)
            .cloned()
            .ok_or_else(|| PostprocError::UnknownScheme(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.schemes.keys().copied()
    }
}

impl Default for EcRegistry {
    fn default() -> Self {
        Self::with_builtins()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sift::simulate_sifted;

    #[test]
    fn registry_resolves_builtin_schemes() {
        let reg = EcRegistry::with_builtins();
        assert_eq!(reg.names().collect::<Vec<_>>(), vec!["cascade", "syndrome"]);
        assert!(reg.get("cascade").is_ok());
        assert!(matches!(
            reg.get("ldpc"),
            Err(PostprocError::UnknownScheme(_))
        ));
    }

    #[test]
    fn cascade_strategy_matches_direct_call() {
        let (alice, bob) = simulate_sifted(512, 0.05, 77).unwrap();
        let ctx = EcContext {
            q_estimate: 0.05,
            seed: 78,
        };
        let run = CascadeCorrector.correct(&alice, &bob, &ctx).unwrap();
        let (corrected, transcript) = cascade_correct(&alice, &bob, 0.05, 78).unwrap();
        assert_eq!(run.corrected, corrected);
        assert_eq!(run.leak_bits(), transcript.total_leak_bits);
    }

    #[test]
    fn syndrome_strategy_fixes_sparse_errors() {
        let (alice, _) = simulate_sifted(100, 0.0, 5).unwrap();
        let mut bob = alice.clone();
        bob.flip(10);
        bob.flip(45);
        bob.flip(98); // remainder region, disclosed verbatim
        let ctx = EcContext {
            q_estimate: 0.01,
            seed: 0,
        };
        let run = SyndromeCorrector.correct(&alice, &bob, &ctx).unwrap();
        assert_eq!(run.corrected, alice);
        // 14 full blocks at 3 syndrome bits each + 2 remainder bits.
        assert_eq!(run.leak_bits(), 14 * 3 + 2);
    }

    #[test]
    fn syndrome_strategy_leaves_dense_blocks_wrong() {
        let (alice, _) = simulate_sifted(70, 0.0, 6).unwrap();
        let mut bob = alice.clone();
        bob.flip(0);
        bob.flip(1);
        let ctx = EcContext {
            q_estimate: 0.01,
            seed: 0,
        };
        let run = SyndromeCorrector.correct(&alice, &bob, &ctx).unwrap();
        assert_ne!(run.corrected, alice);
    }
}
