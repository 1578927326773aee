//! One distillation round and multi-round campaigns.
//!
//! A round runs sifting, permutation, error correction and Toeplitz privacy
//! amplification against a declared attack model, in one of two modes:
//!
//! - `conventional`: reconciliation parities are public. The final key
//!   length is `max(0, floor(n·(1 - χ) - ecLeak))` and the ledger is only
//!   touched by the authentication constant and the deposit.
//! - `encrypted-ec`: every disclosed parity is one-time-pad encrypted,
//!   debiting exactly the leak from the pre-shared ledger. The eavesdropper
//!   is then held to her accessible information, so the final key length is
//!   `max(0, floor(n·(1 - I_acc)))`. The privacy-amplification seed is
//!   assumed protected by a computational cipher at zero ledger cost, which
//!   the configuration must acknowledge via `pa_cipher_assumed`.
//!
//! Key-length formulas are asymptotic (no finite-key terms). A round whose
//! corrected string still differs from Alice's deposits nothing and its
//! ledger spend is burned: the transmitted ciphertext is public either way.

use qkdsim_core::{AttackModel, derive_seed, holevo_quantity};

use crate::ec::{EcContext, EcRegistry};
use crate::error::{PostprocError, PostprocResult};
use crate::ledger::KeyLedger;
use crate::otp::otp_encrypt;
use crate::sift::{apply_permutation, random_bits, simulate_sifted};
use crate::toeplitz::toeplitz_hash;

/// Reconciliation-privacy mode of a round.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Conventional,
    EncryptedEc,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Conventional => "conventional",
            Mode::EncryptedEc => "encrypted-ec",
        }
    }

    pub fn parse(s: &str) -> PostprocResult<Self> {
        match s {
            "conventional" => Ok(Mode::Conventional),
            "encrypted-ec" => Ok(Mode::EncryptedEc),
            other => Err(PostprocError::InvalidConfig(format!(
                "unknown mode `{other}` (expected `conventional` or `encrypted-ec`)"
            ))),
        }
    }
}

/// Static configuration of a round.
#[derive(Debug, Clone)]
pub struct RoundConfig {
    /// Sifted-key length.
    pub n: usize,
    /// Channel error rate used for the simulation and the EC estimate.
    pub qber: f64,
    pub mode: Mode,
    /// Stage-4' assumption: privacy-amplification communication is protected
    /// by a computational cipher. Required in encrypted mode.
    pub pa_cipher_assumed: bool,
    /// Error-correction scheme name, resolved through the [`EcRegistry`].
    pub ec_scheme: String,
    /// Fixed authentication cost per round, debited from the ledger.
    pub auth_cost_bits: usize,
    pub seed: u64,
}

impl RoundConfig {
    fn validate(&self) -> PostprocResult<()> {
        if self.n < 1 {
            return Err(PostprocError::InvalidConfig(
                "key length must be at least 1".into(),
            ));
        }
        if !(0.0..=0.5).contains(&self.qber) {
            return Err(PostprocError::InvalidConfig(format!(
                "qber {} outside [0, 0.5]",
                self.qber
            )));
        }
        if self.mode == Mode::EncryptedEc && !self.pa_cipher_assumed {
            return Err(PostprocError::InvalidConfig(
                "encrypted-ec mode requires the pa_cipher_assumed flag".into(),
            ));
        }
        Ok(())
    }
}

/// Outcome of one round.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoundReport {
    pub empirical_qber: f64,
    pub ec_leak_bits: usize,
    pub ledger_spent_bits: usize,
    pub final_key_bits: usize,
    /// `final_key_bits - ledger_spent_bits`; negative when a round consumed
    /// more than it produced.
    pub net_new_key_bits: i64,
    pub residual_errors: usize,
}

// Sub-stream indices under a round seed.
const STREAM_SIFT: u64 = 0;
const STREAM_PERMUTE: u64 = 1;
const STREAM_EC: u64 = 2;
const STREAM_PA: u64 = 3;

/// Runs one round against a shared ledger.
///
/// In encrypted mode the ledger must hold at least `n + auth_cost_bits`
/// spendable bits up front (one pad bit per potentially disclosed parity,
/// capped at one per key bit); the check happens before any simulation so an
/// underfunded round leaves the ledger untouched.
pub fn run_round(
    cfg: &RoundConfig,
    ledger: &mut KeyLedger,
    attack: &AttackModel,
    round_id: u64,
    registry: &EcRegistry,
) -> PostprocResult<RoundReport> {
    cfg.validate()?;
    let corrector = registry.get(&cfg.ec_scheme)?;

    let budget = cfg.auth_cost_bits
        + if cfg.mode == Mode::EncryptedEc {
            cfg.n
        } else {
            0
        };
    if ledger.balance() < budget {
        return Err(PostprocError::InsufficientKey {
            requested: budget,
            available: ledger.balance(),
        });
    }

    let n = cfg.n;
    let (alice, bob) = simulate_sifted(n, cfg.qber, derive_seed(cfg.seed, STREAM_SIFT))?;
    let empirical_qber = alice.hamming_distance(&bob)? as f64 / n as f64;

    let perm_seed = derive_seed(cfg.seed, STREAM_PERMUTE);
    let alice = apply_permutation(&alice, perm_seed);
    let bob = apply_permutation(&bob, perm_seed);

    let mut spent = 0usize;
    if cfg.auth_cost_bits > 0 {
        ledger.take_pad(cfg.auth_cost_bits, round_id, "authentication")?;
        spent += cfg.auth_cost_bits;
    }

    // Cascade needs a strictly positive estimate even on clean channels.
    let q_estimate = cfg.qber.clamp(1e-3, 0.499);
    let ctx = EcContext {
        q_estimate,
        seed: derive_seed(cfg.seed, STREAM_EC),
    };
    let run = corrector.correct(&alice, &bob, &ctx)?;
    let ec_leak_bits = run.leak_bits();

    if cfg.mode == Mode::EncryptedEc {
        otp_encrypt(&run.disclosed, ledger, round_id, "error-correction")?;
        spent += ec_leak_bits;
    }

    let residual_errors = run.corrected.hamming_distance(&alice)?;
    if residual_errors > 0 {
        return Ok(RoundReport {
            empirical_qber,
            ec_leak_bits,
            ledger_spent_bits: spent,
            final_key_bits: 0,
            net_new_key_bits: -(spent as i64),
            residual_errors,
        });
    }

    let nf = n as f64;
    let target = match cfg.mode {
        Mode::Conventional => {
            let chi = holevo_quantity(attack.eve_ensemble());
            (nf * (1.0 - chi) - ec_leak_bits as f64).floor()
        }
        Mode::EncryptedEc => (nf * (1.0 - attack.accessible_info())).floor(),
    };
    let final_key_bits = target.max(0.0) as usize;

    if final_key_bits > 0 {
        let pa_seed = random_bits(n + final_key_bits - 1, derive_seed(cfg.seed, STREAM_PA));
        let key = toeplitz_hash(&run.corrected, &pa_seed, final_key_bits)?;
        ledger.deposit(&key, round_id, "distilled-key");
    }

    Ok(RoundReport {
        empirical_qber,
        ec_leak_bits,
        ledger_spent_bits: spent,
        final_key_bits,
        net_new_key_bits: final_key_bits as i64 - spent as i64,
        residual_errors: 0,
    })
}

/// Why a campaign stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CampaignStatus {
    Completed,
    /// The ledger could not fund the round with this index; no further
    /// rounds ran.
    HaltedInsufficientBalance {
        round: usize,
    },
}

#[derive(Debug)]
pub struct CampaignResult {
    pub reports: Vec<RoundReport>,
    pub status: CampaignStatus,
    pub ledger: KeyLedger,
}

// Campaign stream indices: 0 funds the initial pool, round i uses 1 + i.
const STREAM_CAMPAIGN_POOL: u64 = 0;

/// Runs sequential rounds sharing one ledger seeded with `initial_balance`
/// random pre-distributed bits. Rounds that fail error correction burn their
/// spend and the campaign continues; a round the ledger cannot fund halts it
/// with a documented status.
pub fn run_campaign(
    cfg: &RoundConfig,
    rounds: usize,
    initial_balance: usize,
    attack: &AttackModel,
    registry: &EcRegistry,
) -> PostprocResult<CampaignResult> {
    if rounds < 1 {
        return Err(PostprocError::InvalidConfig(
            "campaign needs at least one round".into(),
        ));
    }
    cfg.validate()?;
    let mut ledger =
        KeyLedger::with_random_pool(initial_balance, derive_seed(cfg.seed, STREAM_CAMPAIGN_POOL));
    let mut reports = Vec::with_capacity(rounds);
    let mut status = CampaignStatus::Completed;
    for i in 0..rounds {
        let round_cfg = RoundConfig {
            seed: derive_seed(cfg.seed, 1 + i as u64),
            ..cfg.clone()
        };
        match run_round(&round_cfg, &mut ledger, attack, i as u64, registry) {
            Ok(report) => reports.push(report),
            Err(PostprocError::InsufficientKey { .. }) => {
                status = CampaignStatus::HaltedInsufficientBalance { round: i };
                break;
            }
            Err(other) => return Err(other),
        }
    }
    Ok(CampaignResult {
        reports,
        status,
        ledger,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use qkdsim_core::eve_ensemble_bb84;

    fn base_cfg(n: usize, qber: f64, mode: Mode, seed: u64) -> RoundConfig {
        RoundConfig {
            n,
            qber,
            mode,
            pa_cipher_assumed: mode == Mode::EncryptedEc,
            ec_scheme: "cascade".into(),
            auth_cost_bits: 0,
            seed,
        }
    }

    #[test]
    fn noiseless_conventional_round() {
        let cfg = base_cfg(4096, 0.0, Mode::Conventional, 5);
        let attack = eve_ensemble_bb84(0.0).unwrap();
        let mut ledger = KeyLedger::with_random_pool(0, 1);
        let registry = EcRegistry::with_builtins();
        let report = run_round(&cfg, &mut ledger, &attack, 0, &registry).unwrap();
        assert_eq!(report.residual_errors, 0);
        assert_eq!(report.empirical_qber, 0.0);
        // χ = 0, so the key shrinks only by the pass parities.
        assert_eq!(report.final_key_bits, 4096 - report.ec_leak_bits);
        assert!(report.net_new_key_bits > 0);
        assert_eq!(report.ledger_spent_bits, 0);
        assert_eq!(ledger.balance(), report.final_key_bits);
    }

    #[test]
    fn encrypted_round_debits_exactly_the_leak() {
        let cfg = base_cfg(2048, 0.05, Mode::EncryptedEc, 9);
        let attack = eve_ensemble_bb84(0.05).unwrap();
        let mut ledger = KeyLedger::with_random_pool(4096, 2);
        let registry = EcRegistry::with_builtins();
        let report = run_round(&cfg, &mut ledger, &attack, 0, &registry).unwrap();
        assert_eq!(report.residual_errors, 0);
        assert_eq!(report.ledger_spent_bits, report.ec_leak_bits);
        assert_eq!(ledger.balance() as i64, 4096 + report.net_new_key_bits,);
        assert_eq!(ledger.replayed_balance(), ledger.balance() as i64);
    }

    #[test]
    fn encrypted_mode_requires_cipher_flag() {
        let mut cfg = base_cfg(512, 0.05, Mode::EncryptedEc, 9);
        cfg.pa_cipher_assumed = false;
        let attack = eve_ensemble_bb84(0.05).unwrap();
        let mut ledger = KeyLedger::with_random_pool(4096, 2);
        let registry = EcRegistry::with_builtins();
        assert!(matches!(
            run_round(&cfg, &mut ledger, &attack, 0, &registry),
            Err(PostprocError::InvalidConfig(_))
        ));
    }

    #[test]
    fn underfunded_encrypted_round_aborts_before_simulation() {
        let cfg = base_cfg(2048, 0.05, Mode::EncryptedEc, 9);
        let attack = eve_ensemble_bb84(0.05).unwrap();
        let mut ledger = KeyLedger::with_random_pool(100, 2);
        let registry = EcRegistry::with_builtins();
        let err = run_round(&cfg, &mut ledger, &attack, 0, &registry);
        assert!(matches!(
            err,
            Err(PostprocError::InsufficientKey {
                requested: 2048,
                ..
            })
        ));
        assert_eq!(ledger.balance(), 100);
        assert!(ledger.log().is_empty());
    }

    #[test]
    fn failed_correction_burns_the_spend() {
        // Syndrome decoding at this error rate leaves wrong blocks almost
        // surely; the round must burn its pad spend and deposit nothing.
        let mut cfg = base_cfg(4096, 0.05, Mode::EncryptedEc, 31);
        cfg.ec_scheme = "syndrome".into();
        let attack = eve_ensemble_bb84(0.05).unwrap();
        let mut ledger = KeyLedger::with_random_pool(8192, 2);
        let registry = EcRegistry::with_builtins();
        let report = run_round(&cfg, &mut ledger, &attack, 0, &registry).unwrap();
        assert!(report.residual_errors > 0);
        assert_eq!(report.final_key_bits, 0);
        assert_eq!(report.net_new_key_bits, -(report.ledger_spent_bits as i64));
        assert_eq!(ledger.balance(), 8192 - report.ledger_spent_bits);
    }

    #[test]
    fn unknown_scheme_is_rejected() {
        let mut cfg = base_cfg(512, 0.05, Mode::Conventional, 9);
        cfg.ec_scheme = "ldpc".into();
        let attack = eve_ensemble_bb84(0.05).unwrap();
        let mut ledger = KeyLedger::with_random_pool(0, 2);
        let registry = EcRegistry::with_builtins();
        assert!(matches!(
            run_round(&cfg, &mut ledger, &attack, 0, &registry),
            Err(PostprocError::UnknownScheme(_))
        ));
    }

    #[test]
    fn single_round_campaign_matches_run_round() {
        let cfg = base_cfg(2048, 0.05, Mode::EncryptedEc, 13);
        let attack = eve_ensemble_bb84(0.05).unwrap();
        let registry = EcRegistry::with_builtins();
        let campaign = run_campaign(&cfg, 1, 4096, &attack, &registry).unwrap();
        assert_eq!(campaign.status, CampaignStatus::Completed);
        assert_eq!(campaign.reports.len(), 1);

        let mut ledger = KeyLedger::with_random_pool(4096, derive_seed(13, 0));
        let round_cfg = RoundConfig {
            seed: derive_seed(13, 1),
            ..cfg
        };
        let direct = run_round(&round_cfg, &mut ledger, &attack, 0, &registry).unwrap();
        assert_eq!(campaign.reports[0], direct);
        assert_eq!(campaign.ledger.balance(), ledger.balance());
    }

    #[test]
    fn low_noise_campaign_expands_the_key() {
        let cfg = base_cfg(2048, 0.02, Mode::EncryptedEc, 21);
        let attack = eve_ensemble_bb84(0.02).unwrap();
        let registry = EcRegistry::with_builtins();
        let campaign = run_campaign(&cfg, 10, 4096, &attack, &registry).unwrap();
        assert_eq!(campaign.status, CampaignStatus::Completed);
        assert_eq!(campaign.reports.len(), 10);
        // Strictly increasing balance trajectory.
        let mut balance = 4096i64;
        for report in &campaign.reports {
            assert_eq!(report.residual_errors, 0);
            assert!(report.net_new_key_bits > 0);
            balance += report.net_new_key_bits;
        }
        assert_eq!(campaign.ledger.balance() as i64, balance);
        assert_eq!(campaign.ledger.replayed_balance(), balance);
    }

    #[test]
    fn lossy_campaign_drains_and_halts() {
        // Beyond the accessible-information threshold every round is net
        // negative; the ledger drains until a round cannot be funded.
        let cfg = base_cfg(2048, 0.2, Mode::EncryptedEc, 23);
        let attack = eve_ensemble_bb84(0.2).unwrap();
        let registry = EcRegistry::with_builtins();
        let campaign = run_campaign(&cfg, 50, 6000, &attack, &registry).unwrap();
        let halted_at = match campaign.status {
            CampaignStatus::HaltedInsufficientBalance { round } => round,
            other => panic!("expected halt, got {other:?}"),
        };
        assert_eq!(campaign.reports.len(), halted_at);
        for report in &campaign.reports {
            assert!(report.net_new_key_bits < 0);
        }
        // The halt is exactly where the balance arithmetic says it is.
        let mut balance = 6000i64;
        for report in &campaign.reports {
            balance += report.net_new_key_bits;
        }
        assert!(balance < 2048);
        assert_eq!(campaign.ledger.balance() as i64, balance);
    }
}
