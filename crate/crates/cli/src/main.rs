//! `qkdsim`: deterministic QKD post-processing simulator and analyzer.

use std::path::PathBuf;
use std::process::ExitCode;

use qkdsim_cli::commands::CommandRegistry;
use qkdsim_cli::config::{help_text, parse_config};
use qkdsim_cli::error::{CliError, CliResult};
use qkdsim_cli::output::write_atomic;

struct Flags {
    config: Option<PathBuf>,
    output: Option<String>,
    seed: Option<u64>,
    help: bool,
    version: bool,
}

fn parse_flags(args: &[String]) -> CliResult<Flags> {
    let mut flags = Flags {
        config: None,
        output: None,
        seed: None,
        help: false,
        version: false,
    };
    let mut it = args.iter();
    while let Some(arg) = it.next() {
        match arg.as_str() {
            "--help" | "-h" => flags.help = true,
            "--version" | "-V" => flags.version = true,
            "--config" => {
                let v = it
                    .next()
                    .ok_or_else(|| CliError::Config("--config needs a path".into()))?;
                flags.config = Some(PathBuf::from(v));
            }
            "--output" => {
                let v = it
                    .next()
                    .ok_or_else(|| CliError::Config("--output needs a path".into()))?;
                flags.output = Some(v.clone());
            }
            "--seed" => {
                let v = it
                    .next()
                    .ok_or_else(|| CliError::Config("--seed needs a value".into()))?;
                let seed = v.parse::<u64>().map_err(|_| {
                    CliError::Config(format!(
                        "--seed expects an unsigned 64-bit integer, got `{v}`"
                    ))
                })?;
                flags.seed = Some(seed);
            }
            other => {
                return Err(CliError::Config(format!(
                    "unknown flag `{other}` (see --help)"
                )));
            }
        }
    }
    Ok(flags)
}

fn run(args: &[String]) -> CliResult<()> {
    let flags = parse_flags(args)?;
    if flags.help {
        print!("{}", help_text());
        return Ok(());
    }
    if flags.version {
        println!("qkdsim {}", env!("CARGO_PKG_VERSION"));
        return Ok(());
    }
    let Some(config_path) = flags.config else {
        return Err(CliError::Config(
            "missing --config <path> (see --help)".into(),
        ));
    };

    let text = std::fs::read_to_string(&config_path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", config_path.display())))?;
    let mut cfg = parse_config(&text)?;
    if let Some(seed) = flags.seed {
        cfg.seed = seed;
    }
    if let Some(out) = flags.output {
        cfg.output = out;
    }

    let registry = CommandRegistry::with_builtins();
    let command = registry.get(&cfg.command)?;
    let bytes = command.render(&cfg)?;
    write_atomic(PathBuf::from(&cfg.output).as_path(), &bytes)?;
    Ok(())
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qkdsim: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
