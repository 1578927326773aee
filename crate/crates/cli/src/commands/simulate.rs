use qkdsim_core::{AttackRegistry, OptimizerConfig};
use qkdsim_postproc::{CampaignStatus, EcRegistry, Mode, RoundConfig, RoundReport, run_campaign};

use crate::config::{CommandParams, RunConfig};
use crate::error::{CliError, CliResult};
use crate::output::fmt_float;

use super::CliCommand;

/// Multi-round post-processing simulation; JSON lines, one round report per
/// line, then a final ledger summary line.
pub struct SimulateCommand;

impl CliCommand for SimulateCommand {
    fn name(&self) -> &'static str {
        "simulate"
    }

    fn render(&self, cfg: &RunConfig) -> CliResult<Vec<u8>> {
        let CommandParams::Simulate(p) = &cfg.params else {
            return Err(CliError::Config(
                "simulate invoked with mismatched parameters".into(),
            ));
        };
        let attack_registry = AttackRegistry::with_builtins();
        let family = attack_registry
            .get(&p.model)
            .ok_or_else(|| CliError::Config(format!("unknown attack model `{}`", p.model)))?;
        let opt = OptimizerConfig {
            seed: cfg.seed,
            restarts: p.restarts,
            max_iterations: p.max_iters,
            elements: None,
        };
        let attack = family.build(p.qber, &opt)?;

        let round_cfg = RoundConfig {
            n: p.n,
            qber: p.qber,
            mode: Mode::parse(&p.mode)?,
            pa_cipher_assumed: p.pa_cipher_assumed,
            ec_scheme: p.ec_scheme.clone(),
            auth_cost_bits: p.auth_cost,
            seed: cfg.seed,
        };
        let registry = EcRegistry::with_builtins();
        let campaign = run_campaign(&round_cfg, p.rounds, p.initial_balance, &attack, &registry)?;

        let mut out = String::new();
        for (i, report) in campaign.reports.iter().enumerate() {
            out.push_str(&round_line(i, report));
        }
        let (status, halted) = match campaign.status {
            CampaignStatus::Completed => ("completed", "null".to_string()),
            CampaignStatus::HaltedInsufficientBalance { round } => {
                ("halted-insufficient-balance", round.to_string())
            }
        };
        out.push_str(&format!(
            "{{\"summary\":{{\"status\":\"{status}\",\"attack_model\":\"{}\",\"rounds_requested\":{},\"rounds_run\":{},\"halted_at_round\":{halted},\"initial_balance\":{},\"final_balance\":{},\"replayed_balance\":{},\"ledger_log_entries\":{}}}}}\n",
            p.model,
            p.rounds,
            campaign.reports.len(),
            campaign.ledger.initial_balance(),
            campaign.ledger.balance(),
            campaign.ledger.replayed_balance(),
            campaign.ledger.log().len(),
        ));
        Ok(out.into_bytes())
    }
}

fn round_line(index: usize, r: &RoundReport) -> String {
    format!(
        "{{\"round\":{index},\"empirical_qber\":{},\"ec_leak_bits\":{},\"ledger_spent_bits\":{},\"final_key_bits\":{},\"net_new_key_bits\":{},\"residual_errors\":{}}}\n",
        fmt_float(r.empirical_qber),
        r.ec_leak_bits,
        r.ledger_spent_bits,
        r.final_key_bits,
        r.net_new_key_bits,
        r.residual_errors,
    )
}
