use qkdsim_core::{
    Ensemble, OptimizerConfig, PureState, acc_info_two_pure_equiprob, pure_to_density,
    seesaw_acc_info,
};

use crate::config::{CommandParams, RunConfig, linspace};
use crate::error::{CliError, CliResult};
use crate::output::{csv_line, fmt_float};

use super::CliCommand;

/// Closed-form accessible information of an equiprobable pure pair versus
/// the see-saw lower bound, across an overlap grid.
pub struct AccInfoCommand;

impl CliCommand for AccInfoCommand {
    fn name(&self) -> &'static str {
        "acc-info"
    }

    fn render(&self, cfg: &RunConfig) -> CliResult<Vec<u8>> {
        let CommandParams::AccInfo(p) = &cfg.params else {
            return Err(CliError::Config(
                "acc-info invoked with mismatched parameters".into(),
            ));
        };
        let opt = OptimizerConfig {
            seed: cfg.seed,
            restarts: p.restarts,
            max_iterations: p.max_iters,
            elements: None,
        };

        let mut out =
            String::from("overlap,i_closed_form,i_seesaw,seesaw_iterations,seesaw_converged\n");
        for c in linspace(p.overlap_min, p.overlap_max, p.overlap_count) {
            let beta = 0.5 * c.clamp(0.0, 1.0).acos();
            let ensemble = Ensemble::equiprobable(vec![
                pure_to_density(&PureState::real_qubit(beta)),
                pure_to_density(&PureState::real_qubit(-beta)),
            ])?;
            let closed = acc_info_two_pure_equiprob(c)?;
            let result = seesaw_acc_info(&ensemble, &opt)?;
            out.push_str(&csv_line(&[
                fmt_float(c),
                fmt_float(closed),
                fmt_float(result.value),
                result.iterations.to_string(),
                result.converged.to_string(),
            ]));
        }
        Ok(out.into_bytes())
    }
}
