//! Run configuration: a flat `key = value` file with `#` comments.
//!
//! Parsing is strict: unknown keys, duplicate keys, type mismatches and
//! domain violations are all errors that name the offending key and line.
//! Every key has a documented default (see `--help`), and a parsed
//! configuration serializes back to canonical text whose re-parse is a
//! fixpoint.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_4;

use qkdsim_core::AttackRegistry;
use qkdsim_postproc::{EcRegistry, Mode};

use crate::error::{CliError, CliResult};

pub const DEFAULT_SEED: u64 = 1;

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: String,
    pub seed: u64,
    pub output: String,
    pub params: CommandParams,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CommandParams {
    RateCurve(RateCurveParams),
    AccInfo(AccInfoParams),
    LockingDemo(LockingParams),
    Simulate(SimulateParams),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RateCurveParams {
    pub q_min: f64,
    pub q_max: f64,
    pub q_count: usize,
    pub restarts: usize,
    pub max_iters: usize,
    pub model: String,
}

impl Default for RateCurveParams {
    fn default() -> Self {
        Self {
            q_min: 0.0,
            q_max: 0.15,
            q_count: 31,
            restarts: 4,
            max_iters: 200,
            model: "pure-pair".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AccInfoParams {
    pub overlap_min: f64,
    pub overlap_max: f64,
    pub overlap_count: usize,
    pub restarts: usize,
    pub max_iters: usize,
}

impl Default for AccInfoParams {
    fn default() -> Self {
        Self {
            overlap_min: 0.0,
            overlap_max: 1.0,
            overlap_count: 11,
            restarts: 8,
            max_iters: 400,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LockingParams {
    pub alpha_min: f64,
    pub alpha_max: f64,
    pub alpha_count: usize,
    pub separable_grid: usize,
    pub restarts: usize,
    pub max_iters: usize,
}

impl Default for LockingParams {
    fn default() -> Self {
        Self {
            alpha_min: 0.0,
            alpha_max: FRAC_PI_4,
            alpha_count: 25,
            separable_grid: 48,
            restarts: 6,
            max_iters: 400,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulateParams {
    pub n: usize,
    pub qber: f64,
    pub rounds: usize,
    pub initial_balance: usize,
    pub mode: String,
    pub ec_scheme: String,
    pub pa_cipher_assumed: bool,
    pub auth_cost: usize,
    pub model: String,
    /// Optimizer budget for attack families that evaluate Eve's accessible
    /// information numerically; the built-in pure-pair family has a closed
    /// form and ignores it.
    pub restarts: usize,
    pub max_iters: usize,
}

impl Default for SimulateParams {
    fn default() -> Self {
        Self {
            n: 10_000,
            qber: 0.05,
            rounds: 1,
            initial_balance: 20_000,
            mode: "conventional".into(),
            ec_scheme: "cascade".into(),
            pa_cipher_assumed: false,
            auth_cost: 0,
            model: "pure-pair".into(),
            restarts: 8,
            max_iters: 400,
        }
    }
}

fn default_output(command: &str) -> String {
    match command {
        "simulate" => "simulate.jsonl".into(),
        other => format!("{}.csv", other.replace('-', "_")),
    }
}

/// Raw `key = value` entries with their line numbers; consumption is
/// tracked so leftovers can be reported as unknown keys.
struct Entries {
    map: BTreeMap<String, (String, usize)>,
}

impl Entries {
    fn parse(text: &str) -> CliResult<Self> {
        let mut map = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let stripped = raw.split('#').next().unwrap_or("").trim();
            if stripped.is_empty() {
                continue;
            }
            let Some((key, value)) = stripped.split_once('=') else {
                return Err(CliError::Config(format!(
                    "line {line}: expected `key = value`, got `{stripped}`"
                )));
            };
            let key = key.trim().to_string();
            let value = value.trim().to_string();
            if key.is_empty() || value.is_empty() {
                return Err(CliError::Config(format!("line {line}: empty key or value")));
            }
            if let Some((_, first)) = map.get(&key) {
                return Err(CliError::Config(format!(
                    "line {line}: duplicate key `{key}` (first set on line {first})"
                )));
            }
            map.insert(key, (value, line));
        }
        Ok(Self { map })
    }

    fn take(&mut self, key: &str) -> Option<(String, usize)> {
        self.map.remove(key)
    }

    fn finish(self) -> CliResult<()> {
        if let Some((key, (_, line))) = self.map.into_iter().next() {
            return Err(CliError::Config(format!(
                "line {line}: unknown key `{key}`"
            )));
        }
        Ok(())
    }
}

fn parse_typed<T: std::str::FromStr>(
    key: &str,
    value: &str,
    line: usize,
    ty: &str,
) -> CliResult<T> {
    value.parse().map_err(|_| {
        CliError::Config(format!(
            "line {line}: key `{key}` expects {ty}, got `{value}`"
        ))
    })
}

fn take_f64(e: &mut Entries, key: &str, default: f64) -> CliResult<f64> {
    match e.take(key) {
        Some((v, line)) => parse_typed(key, &v, line, "a real number"),
        None => Ok(default),
    }
}

fn take_usize(e: &mut Entries, key: &str, default: usize) -> CliResult<usize> {
    match e.take(key) {
        Some((v, line)) => parse_typed(key, &v, line, "a non-negative integer"),
        None => Ok(default),
    }
}

fn take_u64(e: &mut Entries, key: &str, default: u64) -> CliResult<u64> {
    match e.take(key) {
        Some((v, line)) => parse_typed(key, &v, line, "an unsigned 64-bit integer"),
        None => Ok(default),
    }
}

fn take_bool(e: &mut Entries, key: &str, default: bool) -> CliResult<bool> {
    match e.take(key) {
        Some((v, line)) => match v.as_str() {
            "true" => Ok(true),
            "false" => Ok(false),
            _ => Err(CliError::Config(format!(
                "line {line}: key `{key}` expects `true` or `false`, got `{v}`"
            ))),
        },
        None => Ok(default),
    }
}

fn take_string(e: &mut Entries, key: &str, default: &str) -> (String, Option<usize>) {
    match e.take(key) {
        Some((v, line)) => (v, Some(line)),
        None => (default.to_string(), None),
    }
}

fn domain_err(key: &str, line: Option<usize>, msg: &str) -> CliError {
    match line {
        Some(l) => CliError::Config(format!("line {l}: key `{key}` {msg}")),
        None => CliError::Config(format!("key `{key}` {msg}")),
    }
}

fn check_range(key: &str, value: f64, line: Option<usize>, lo: f64, hi: f64) -> CliResult<()> {
    if !(lo..=hi).contains(&value) {
        return Err(domain_err(
            key,
            line,
            &format!("value {value} outside [{lo}, {hi}]"),
        ));
    }
    Ok(())
}

/// Parses configuration text into a validated [`RunConfig`].
pub fn parse_config(text: &str) -> CliResult<RunConfig> {
    let mut entries = Entries::parse(text)?;

    let Some((command_name, _cmd_line)) = entries.take("command") else {
        return Err(CliError::Config("missing required key `command`".into()));
    };
    let seed = take_u64(&mut entries, "seed", DEFAULT_SEED)?;
    let (output, _) = take_string(&mut entries, "output", &default_output(&command_name));

    let params = match command_name.as_str() {
        "rate-curve" => {
            let d = RateCurveParams::default();
            let q_min_line = entries.map.get("q_min").map(|(_, l)| *l);
            let q_max_line = entries.map.get("q_max").map(|(_, l)| *l);
            let p = RateCurveParams {
                q_min: take_f64(&mut entries, "q_min", d.q_min)?,
                q_max: take_f64(&mut entries, "q_max", d.q_max)?,
                q_count: take_usize(&mut entries, "q_count", d.q_count)?,
                restarts: take_usize(&mut entries, "restarts", d.restarts)?,
                max_iters: take_usize(&mut entries, "max_iters", d.max_iters)?,
                model: {
                    let (m, line) = take_string(&mut entries, "model", &d.model);
                    if AttackRegistry::with_builtins().get(&m).is_none() {
                        return Err(domain_err(
                            "model",
                            line,
                            &format!("names no attack model: `{m}`"),
                        ));
                    }
                    m
                },
            };
            check_range("q_min", p.q_min, q_min_line, 0.0, 0.5)?;
            check_range("q_max", p.q_max, q_max_line, 0.0, 0.5)?;
            if p.q_count < 1 {
                return Err(domain_err("q_count", None, "must be at least 1"));
            }
            if p.q_count > 1 && p.q_min >= p.q_max {
                return Err(domain_err(
                    "q_min",
                    q_min_line,
                    "must be below q_max for multi-point grids",
                ));
            }
            validate_optimizer(p.restarts, p.max_iters)?;
            CommandParams::RateCurve(p)
        }
        "acc-info" => {
            let d = AccInfoParams::default();
            let min_line = entries.map.get("overlap_min").map(|(_, l)| *l);
            let max_line = entries.map.get("overlap_max").map(|(_, l)| *l);
            let p = AccInfoParams {
                overlap_min: take_f64(&mut entries, "overlap_min", d.overlap_min)?,
                overlap_max: take_f64(&mut entries, "overlap_max", d.overlap_max)?,
                overlap_count: take_usize(&mut entries, "overlap_count", d.overlap_count)?,
                restarts: take_usize(&mut entries, "restarts", d.restarts)?,
                max_iters: take_usize(&mut entries, "max_iters", d.max_iters)?,
            };
            check_range("overlap_min", p.overlap_min, min_line, 0.0, 1.0)?;
            check_range("overlap_max", p.overlap_max, max_line, 0.0, 1.0)?;
            if p.overlap_count < 1 {
                return Err(domain_err("overlap_count", None, "must be at least 1"));
            }
            if p.overlap_count > 1 && p.overlap_min >= p.overlap_max {
                return Err(domain_err(
                    "overlap_min",
                    min_line,
                    "must be below overlap_max for multi-point grids",
                ));
            }
            validate_optimizer(p.restarts, p.max_iters)?;
            CommandParams::AccInfo(p)
        }
        "locking-demo" => {
            let d = LockingParams::default();
            let min_line = entries.map.get("alpha_min").map(|(_, l)| *l);
            let max_line = entries.map.get("alpha_max").map(|(_, l)| *l);
            let grid_line = entries.map.get("separable_grid").map(|(_, l)| *l);
            let p = LockingParams {
                alpha_min: take_f64(&mut entries, "alpha_min", d.alpha_min)?,
                alpha_max: take_f64(&mut entries, "alpha_max", d.alpha_max)?,
                alpha_count: take_usize(&mut entries, "alpha_count", d.alpha_count)?,
                separable_grid: take_usize(&mut entries, "separable_grid", d.separable_grid)?,
                restarts: take_usize(&mut entries, "restarts", d.restarts)?,
                max_iters: take_usize(&mut entries, "max_iters", d.max_iters)?,
            };
            check_range("alpha_min", p.alpha_min, min_line, 0.0, FRAC_PI_4)?;
            check_range("alpha_max", p.alpha_max, max_line, 0.0, FRAC_PI_4)?;
            if p.alpha_count < 1 {
                return Err(domain_err("alpha_count", None, "must be at least 1"));
            }
            if p.alpha_count > 1 && p.alpha_min >= p.alpha_max {
                return Err(domain_err(
                    "alpha_min",
                    min_line,
                    "must be below alpha_max for multi-point grids",
                ));
            }
            if p.separable_grid < 16 {
                return Err(domain_err(
                    "separable_grid",
                    grid_line,
                    "must be at least 16",
                ));
            }
            validate_optimizer(p.restarts, p.max_iters)?;
            CommandParams::LockingDemo(p)
        }
        "simulate" => {
            let d = SimulateParams::default();
            let qber_line = entries.map.get("qber").map(|(_, l)| *l);
            let p = SimulateParams {
                n: take_usize(&mut entries, "n", d.n)?,
                qber: take_f64(&mut entries, "qber", d.qber)?,
                rounds: take_usize(&mut entries, "rounds", d.rounds)?,
                initial_balance: take_usize(&mut entries, "initial_balance", d.initial_balance)?,
                mode: {
                    let (m, line) = take_string(&mut entries, "mode", &d.mode);
                    Mode::parse(&m).map_err(|e| domain_err("mode", line, &e.to_string()))?;
                    m
                },
                ec_scheme: {
                    let (s, line) = take_string(&mut entries, "ec_scheme", &d.ec_scheme);
                    if EcRegistry::with_builtins().get(&s).is_err() {
                        return Err(domain_err(
                            "ec_scheme",
                            line,
                            &format!("names no scheme: `{s}`"),
                        ));
                    }
                    s
                },
                pa_cipher_assumed: take_bool(
                    &mut entries,
                    "pa_cipher_assumed",
                    d.pa_cipher_assumed,
                )?,
                auth_cost: take_usize(&mut entries, "auth_cost", d.auth_cost)?,
                restarts: take_usize(&mut entries, "restarts", d.restarts)?,
                max_iters: take_usize(&mut entries, "max_iters", d.max_iters)?,
                model: {
                    let (m, line) = take_string(&mut entries, "model", &d.model);
                    if AttackRegistry::with_builtins().get(&m).is_none() {
                        return Err(domain_err(
                            "model",
                            line,
                            &format!("names no attack model: `{m}`"),
                        ));
                    }
                    m
                },
            };
            if p.n < 1 {
                return Err(domain_err("n", None, "must be at least 1"));
            }
            check_range("qber", p.qber, qber_line, 0.0, 0.5)?;
            if p.rounds < 1 {
                return Err(domain_err("rounds", None, "must be at least 1"));
            }
            validate_optimizer(p.restarts, p.max_iters)?;
            CommandParams::Simulate(p)
        }
        other => {
            return Err(CliError::Config(format!(
                "unknown command `{other}` (expected rate-curve, acc-info, locking-demo or simulate)"
            )));
        }
    };

    entries.finish()?;
    Ok(RunConfig {
        command: command_name,
        seed,
        output,
        params,
    })
}

fn validate_optimizer(restarts: usize, max_iters: usize) -> CliResult<()> {
    if restarts < 1 {
        return Err(domain_err("restarts", None, "must be at least 1"));
    }
    if max_iters < 1 {
        return Err(domain_err("max_iters", None, "must be at least 1"));
    }
    Ok(())
}

impl RunConfig {
    /// Canonical configuration text; `parse_config` of this text is the
    /// identity on the parsed value.
    pub fn to_config_text(&self) -> String {
        let mut out = String::new();
        let mut push = |k: &str, v: String| {
            out.push_str(k);
            out.push_str(" = ");
            out.push_str(&v);
            out.push('\n');
        };
        push("command", self.command.clone());
        push("seed", self.seed.to_string());
        push("output", self.output.clone());
        match &self.params {
            CommandParams::RateCurve(p) => {
                push("q_min", format_f64(p.q_min));
                push("q_max", format_f64(p.q_max));
                push("q_count", p.q_count.to_string());
                push("restarts", p.restarts.to_string());
                push("max_iters", p.max_iters.to_string());
                push("model", p.model.clone());
            }
            CommandParams::AccInfo(p) => {
                push("overlap_min", format_f64(p.overlap_min));
                push("overlap_max", format_f64(p.overlap_max));
                push("overlap_count", p.overlap_count.to_string());
                push("restarts", p.restarts.to_string());
                push("max_iters", p.max_iters.to_string());
            }
            CommandParams::LockingDemo(p) => {
                push("alpha_min", format_f64(p.alpha_min));
                push("alpha_max", format_f64(p.alpha_max));
                push("alpha_count", p.alpha_count.to_string());
                push("separable_grid", p.separable_grid.to_string());
                push("restarts", p.restarts.to_string());
                push("max_iters", p.max_iters.to_string());
            }
            CommandParams::Simulate(p) => {
                push("n", p.n.to_string());
                push("qber", format_f64(p.qber));
                push("rounds", p.rounds.to_string());
                push("initial_balance", p.initial_balance.to_string());
                push("mode", p.mode.clone());
                push("ec_scheme", p.ec_scheme.clone());
                push("pa_cipher_assumed", p.pa_cipher_assumed.to_string());
                push("auth_cost", p.auth_cost.to_string());
                push("model", p.model.clone());
                push("restarts", p.restarts.to_string());
                push("max_iters", p.max_iters.to_string());
            }
        }
        out
    }
}

fn format_f64(x: f64) -> String {
    // Shortest representation that round-trips through parse.
    format!("{x}")
}

/// Evenly spaced grid including both endpoints (or the single start point).
pub fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![lo];
    }
    (0..count)
        .map(|i| lo + i as f64 * (hi - lo) / (count - 1) as f64)
        .collect()
}

pub fn help_text() -> String {
    let d_rc = RateCurveParams::default();
    let d_ai = AccInfoParams::default();
    let d_lk = LockingParams::default();
    let d_sim = SimulateParams::default();
    format!(
        r#"qkdsim: deterministic QKD post-processing simulator and rate analyzer

USAGE:
    qkdsim --config <path> [--output <path>] [--seed <u64>]
    qkdsim --help | --version

FLAGS:
    --config <path>   configuration file (required)
    --output <path>   overrides the `output` key
    --seed <u64>      overrides the `seed` key
    --help            this text
    --version         version string

EXIT CODES:
    0  success; output written atomically
    1  configuration or domain error
    2  i/o or internal failure

CONFIG FILE:
    Flat `key = value` lines; `#` starts a comment. Unknown and duplicate
    keys are rejected. Identical configurations (including seed) produce
    byte-identical outputs.

COMMON KEYS:
    command            rate-curve | acc-info | locking-demo | simulate
    seed               {DEFAULT_SEED}
    output             <command>.csv, or simulate.jsonl

rate-curve: sweep QBER, emit CSV `qber,ixy,chi,iacc,rate_dw,rate_acc`:
    q_min = {}   q_max = {}   q_count = {}
    restarts = {}   max_iters = {}   model = {}

acc-info: closed form vs see-saw, emit CSV
`overlap,i_closed_form,i_seesaw,seesaw_iterations,seesaw_converged`:
    overlap_min = {}   overlap_max = {}   overlap_count = {}
    restarts = {}   max_iters = {}

locking-demo: XOR-merged two-letter ensemble, emit CSV
`alpha,i_product_local,i_bell,i_separable_best,i_seesaw`:
    alpha_min = {}   alpha_max = {:.9} (pi/4)   alpha_count = {}
    separable_grid = {}   restarts = {}   max_iters = {}

simulate: post-processing rounds, emit JSON lines (one RoundReport per
round, then a ledger summary line):
    n = {}   qber = {}   rounds = {}   initial_balance = {}
    mode = {} (conventional | encrypted-ec)
    ec_scheme = {} (cascade | syndrome)
    pa_cipher_assumed = {}   auth_cost = {}   model = {}
    restarts = {}   max_iters = {}
"#,
        d_rc.q_min,
        d_rc.q_max,
        d_rc.q_count,
        d_rc.restarts,
        d_rc.max_iters,
        d_rc.model,
        d_ai.overlap_min,
        d_ai.overlap_max,
        d_ai.overlap_count,
        d_ai.restarts,
        d_ai.max_iters,
        d_lk.alpha_min,
        d_lk.alpha_max,
        d_lk.alpha_count,
        d_lk.separable_grid,
        d_lk.restarts,
        d_lk.max_iters,
        d_sim.n,
        d_sim.qber,
        d_sim.rounds,
        d_sim.initial_balance,
        d_sim.mode,
        d_sim.ec_scheme,
        d_sim.pa_cipher_assumed,
        d_sim.auth_cost,
        d_sim.model,
        d_sim.restarts,
        d_sim.max_iters,
    )
}
