//! CLI commands behind a common interface, registered by name.
//!
//! Each command renders its complete output into a byte buffer; the caller
//! writes it atomically. Rendering is a pure function of the configuration,
//! which is what makes double runs byte-identical.

mod acc_info;
mod locking;
mod rate_curve;
mod simulate;

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};

pub use acc_info::AccInfoCommand;
pub use locking::LockingDemoCommand;
pub use rate_curve::RateCurveCommand;
pub use simulate::SimulateCommand;

pub trait CliCommand: Send + Sync {
    fn name(&self) -> &'static str;

    /// Renders the complete output file for this configuration.
    fn render(&self, cfg: &RunConfig) -> CliResult<Vec<u8>>;
}

pub struct CommandRegistry {
    commands: BTreeMap<&'static str, Arc<dyn CliCommand>>,
}

impl CommandRegistry {
    pub fn with_builtins() -> Self {
        let mut commands: BTreeMap<&'static str, Arc<dyn CliCommand>> = BTreeMap::new();
        for cmd in [
            Arc::new(RateCurveCommand) as Arc<dyn CliCommand>,
            Arc::new(AccInfoCommand),
            Arc::new(LockingDemoCommand),
            Arc::new(SimulateCommand),
        ] {
            commands.insert(cmd.name(), cmd);
        }
        Self { commands }
    }

    pub fn get(&self, name: &str) -> CliResult<Arc<dyn CliCommand>> {
        self.commands
            .get(name)
            .cloned()
            .ok_or_else(|| CliError::Config(format!("unknown command `{name}`")))
    }
}
