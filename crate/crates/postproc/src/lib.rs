//! Bit-level QKD post-processing pipeline.
//!
//! Sifted-key simulation, random permutation, Cascade and syndrome error
//! correction behind a strategy registry, one-time-pad encryption of the
//! reconciliation traffic against a pre-shared key ledger, Toeplitz privacy
//! amplification, and round/campaign drivers comparing conventional and
//! encrypted-reconciliation key economics.

pub mod bits;
pub mod cascade;
pub mod ec;
pub mod error;
pub mod ledger;
pub mod otp;
pub mod round;
pub mod sift;
pub mod syndrome;
pub mod toeplitz;

pub use bits::BitString;
pub use cascade::{CASCADE_PASSES, CascadeTranscript, ParityMessage, cascade_correct};
pub use ec::{CascadeCorrector, EcContext, EcRegistry, EcRun, ErrorCorrector, SyndromeCorrector};
pub use error::{PostprocError, PostprocResult};
pub use ledger::{KeyLedger, LedgerEntry};
pub use otp::otp_encrypt;
pub use round::{
    CampaignResult, CampaignStatus, Mode, RoundConfig, RoundReport, run_campaign, run_round,
};
pub use sift::{apply_permutation, random_bits, simulate_sifted};
pub use syndrome::{BinaryMatrix, syndrome_correct};
pub use toeplitz::toeplitz_hash;
