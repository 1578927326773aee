use qkdsim_core::{AttackRegistry, OptimizerConfig, rate_curve};

use crate::config::{CommandParams, RunConfig, linspace};
use crate::error::{CliError, CliResult};
use crate::output::{csv_line, fmt_float};

use super::CliCommand;

pub struct RateCurveCommand;

impl CliCommand for RateCurveCommand {
    fn name(&self) -> &'static str {
        "rate-curve"
    }

    fn render(&self, cfg: &RunConfig) -> CliResult<Vec<u8>> {
        let CommandParams::RateCurve(p) = &cfg.params else {
            return Err(CliError::Config(
                "rate-curve invoked with mismatched parameters".into(),
            ));
        };
        let registry = AttackRegistry::with_builtins();
        let family = registry
            .get(&p.model)
            .ok_or_else(|| CliError::Config(format!("unknown attack model `{}`", p.model)))?;
        let opt = OptimizerConfig {
            seed: cfg.seed,
            restarts: p.restarts,
            max_iterations: p.max_iters,
            elements: None,
        };
        let grid = linspace(p.q_min, p.q_max, p.q_count);
        let points = rate_curve(&grid, &opt, family.as_ref())?;

        let mut out = String::from("qber,ixy,chi,iacc,rate_dw,rate_acc\n");
        for pt in points {
            out.push_str(&csv_line(&[
                fmt_float(pt.qber),
                fmt_float(pt.ixy),
                fmt_float(pt.chi),
                fmt_float(pt.iacc),
                fmt_float(pt.rate_dw),
                fmt_float(pt.rate_acc),
            ]));
        }
        Ok(out.into_bytes())
    }
}
