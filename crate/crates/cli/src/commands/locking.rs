use qkdsim_core::{OptimizerConfig, locking_sweep};

use crate::config::{CommandParams, RunConfig, linspace};
use crate::error::{CliError, CliResult};
use crate::output::{csv_line, fmt_float};

use super::CliCommand;

pub struct LockingDemoCommand;

impl CliCommand for LockingDemoCommand {
    fn name(&self) -> &'static str {
        "locking-demo"
    }

    fn render(&self, cfg: &RunConfig) -> CliResult<Vec<u8>> {
        let CommandParams::LockingDemo(p) = &cfg.params else {
            return Err(CliError::Config(
                "locking-demo invoked with mismatched parameters".into(),
            ));
        };
        let opt = OptimizerConfig {
            seed: cfg.seed,
            restarts: p.restarts,
            max_iterations: p.max_iters,
            elements: None,
        };
        let grid = linspace(p.alpha_min, p.alpha_max, p.alpha_count);
        let points = locking_sweep(&grid, &opt, p.separable_grid)?;

        let mut out = String::from("alpha,i_product_local,i_bell,i_separable_best,i_seesaw\n");
        for pt in points {
            out.push_str(&csv_line(&[
                fmt_float(pt.alpha),
                fmt_float(pt.i_product_local),
                fmt_float(pt.i_bell),
                fmt_float(pt.i_separable_best),
                fmt_float(pt.i_seesaw),
            ]));
        }
        Ok(out.into_bytes())
    }
}
