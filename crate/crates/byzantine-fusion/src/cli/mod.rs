//! Command-line front-end: flag parsing, config merging, and dispatch.
//!
//! Subcommands: `chernoff`, `sweep`, `blind`, `exponent`, `simulate`.
//! Values resolve as flag > config file > environment (seed only) > default.
//! Exit status is 0 iff no validation/domain/I/O error occurred.

pub mod commands;
pub mod config;
pub mod output;

use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::model::{AttackStrategy, GaussianSensingModel, NetworkParams, SensorOperatingPoint};
use crate::sim::SamplingMode;
use commands::{
    cmd_blind_alpha, cmd_blind_attack, cmd_chernoff, cmd_exponent, cmd_simulate, cmd_sweep,
    SweepSpec,
};
use config::RunConfig;
use output::{
    render_blind, render_chernoff, render_exponent, render_simulate, render_sweep, OutputFormat,
};

/// Environment variable consulted for the default seed; flags and config
/// take precedence.
pub const SEED_ENV_VAR: &str = "BYZANTINE_FUSION_SEED";

const DEFAULT_TRIALS: u64 = 100_000;
const DEFAULT_GRID_STEP: f64 = 0.05;

#[derive(Debug, Parser)]
#[command(
    name = "byzantine-fusion",
    version,
    about = "Detection fusion under Byzantine data falsification: marginals, Chernoff information, attacks, and finite-N oracles"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Config document (flat `key = value` lines, dotted section names).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output file; standard output when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "csv")]
    format: OutputFormat,
}

#[derive(Debug, Args, Default)]
struct ScenarioFlags {
    /// Sensor probability of detection.
    #[arg(long)]
    pd: Option<f64>,
    /// Sensor probability of false alarm.
    #[arg(long)]
    pf: Option<f64>,
    /// Byzantine fraction.
    #[arg(long)]
    alpha: Option<f64>,
    /// Probability a Byzantine reports 1 on a local 0.
    #[arg(long)]
    p10: Option<f64>,
    /// Probability a Byzantine reports 0 on a local 1.
    #[arg(long)]
    p01: Option<f64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fused marginals, optimizer, Chernoff information, and bracket for one scenario.
    Chernoff {
        #[command(flatten)]
        scenario: ScenarioFlags,
    },
    /// Chernoff information over the (p10, p01) attack grid.
    Sweep {
        #[command(flatten)]
        scenario: ScenarioFlags,
        /// Grid step; must divide 1.
        #[arg(long)]
        step: Option<f64>,
    },
    /// Blinding fraction of an attack, or the optimal attack for a fraction.
    Blind {
        /// Byzantine fraction to find the optimal attack for.
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        p10: Option<f64>,
        #[arg(long)]
        p01: Option<f64>,
    },
    /// Exact error-exponent fit against the analytic Chernoff information.
    Exponent {
        #[command(flatten)]
        scenario: ScenarioFlags,
        /// Prior of H0.
        #[arg(long)]
        p0: Option<f64>,
        /// Prior of H1.
        #[arg(long)]
        p1: Option<f64>,
        /// Strictly increasing sensor counts, comma separated.
        #[arg(long, value_delimiter = ',')]
        n_values: Option<Vec<u32>>,
    },
    /// Monte Carlo simulation of the full pipeline plus the exact-oracle comparison.
    Simulate {
        #[command(flatten)]
        scenario: ScenarioFlags,
        #[arg(long)]
        p0: Option<f64>,
        #[arg(long)]
        p1: Option<f64>,
        /// Sensor count.
        #[arg(long)]
        n: Option<u32>,
        /// Mean shift under H1 (unit-variance Gaussian noise).
        #[arg(long)]
        theta: Option<f64>,
        /// Likelihood-ratio threshold.
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Byzantine sampling: fixed-fraction or per-node-bernoulli.
        #[arg(long)]
        mode: Option<String>,
        #[arg(long)]
        workers: Option<u32>,
    },
}

fn require<T>(value: Option<T>, what: &str) -> Result<T> {
    value.ok_or_else(|| {
        Error::validation(format!(
            "missing {what}: pass the flag or set the config key"
        ))
    })
}

fn sensor_from(flags: &ScenarioFlags, config: &RunConfig) -> Result<SensorOperatingPoint> {
    let pd = require(flags.pd.or(config.pd), "sensor.pd")?;
    let pf = require(flags.pf.or(config.pf), "sensor.pf")?;
    SensorOperatingPoint::new(pd, pf)
}

fn attack_from(flags: &ScenarioFlags, config: &RunConfig) -> Result<AttackStrategy> {
    let p10 = require(flags.p10.or(config.p10), "attack.p10")?;
    let p01 = require(flags.p01.or(config.p01), "attack.p01")?;
    AttackStrategy::new(p10, p01)
}

fn alpha_from(flags: &ScenarioFlags, config: &RunConfig) -> Result<f64> {
    require(flags.alpha.or(config.alpha), "network.alpha")
}

fn seed_from_env() -> Result<Option<u64>> {
    match std::env::var(SEED_ENV_VAR) {
        Ok(text) => text
            .parse()
            .map(Some)
            .map_err(|_| Error::Config(format!("{SEED_ENV_VAR}: cannot parse {text:?} as u64"))),
        Err(_) => Ok(None),
    }
}

/// Parses argv, runs the requested command, and writes the rendered report.
pub fn run() -> Result<()> {
    let cli = Cli::parse();
    let config = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let rendered = dispatch(&cli.command, &config, cli.format)?;
    emit(cli.out.as_deref(), &rendered)
}

fn dispatch(command: &Command, config: &RunConfig, format: OutputFormat) -> Result<String> {
    match command {
        Command::Chernoff { scenario } => {
            let report = cmd_chernoff(
                sensor_from(scenario, config)?,
                alpha_from(scenario, config)?,
                attack_from(scenario, config)?,
            )?;
            Ok(render_chernoff(&report, format))
        }
        Command::Sweep { scenario, step } => {
            let spec = SweepSpec::new(
                sensor_from(scenario, config)?,
                alpha_from(scenario, config)?,
                step.or(config.step).unwrap_or(DEFAULT_GRID_STEP),
                format,
            )?;
            let report = cmd_sweep(&spec)?;
            Ok(render_sweep(&report, format))
        }
        Command::Blind { alpha, p10, p01 } => {
            // Flags pick the query direction; the config only fills in when
            // no flag disambiguates.
            let report = match (*alpha, *p10, *p01) {
                (Some(alpha), None, None) => cmd_blind_alpha(alpha)?,
                (None, p10 @ Some(_), p01) | (None, p10, p01 @ Some(_)) => {
                    let attack = AttackStrategy::new(
                        require(p10.or(config.p10), "attack.p10")?,
                        require(p01.or(config.p01), "attack.p01")?,
                    )?;
                    cmd_blind_attack(attack)
                }
                (Some(_), _, _) => {
                    return Err(Error::validation(
                        "blind takes either --alpha or an attack (--p10 --p01), not both",
                    ))
                }
                (None, None, None) => match (config.alpha, config.p10, config.p01) {
                    (Some(alpha), None, None) => cmd_blind_alpha(alpha)?,
                    (None, Some(p10), Some(p01)) => {
                        cmd_blind_attack(AttackStrategy::new(p10, p01)?)
                    }
                    (Some(_), Some(_), Some(_)) => {
                        return Err(Error::validation(
                            "config supplies both network.alpha and an attack; pass --alpha or \
                             --p10/--p01 to choose the blind query",
                        ))
                    }
                    _ => {
                        return Err(Error::validation(
                            "missing blind query: pass --alpha or --p10 --p01",
                        ))
                    }
                },
            };
            Ok(render_blind(&report, format))
        }
        Command::Exponent {
            scenario,
            p0,
            p1,
            n_values,
        } => {
            let counts = require(
                n_values.clone().or_else(|| config.n_values.clone()),
                "exponent.n_values",
            )?;
            let report = cmd_exponent(
                sensor_from(scenario, config)?,
                alpha_from(scenario, config)?,
                attack_from(scenario, config)?,
                p0.or(config.p0).unwrap_or(0.5),
                p1.or(config.p1).unwrap_or(0.5),
                &counts,
            )?;
            Ok(render_exponent(&report, format))
        }
        Command::Simulate {
            scenario,
            p0,
            p1,
            n,
            theta,
            lambda,
            trials,
            seed,
            mode,
            workers,
        } => {
            let params = NetworkParams::new(
                alpha_from(scenario, config)?,
                p0.or(config.p0).unwrap_or(0.5),
                p1.or(config.p1).unwrap_or(0.5),
                require(n.or(config.n), "network.n")?,
            )?;
            let model = GaussianSensingModel::new(
                require(theta.or(config.theta), "model.theta")?,
                require(lambda.or(config.lambda), "model.lambda")?,
            )?;
            let mode = match mode {
                Some(text) => SamplingMode::parse(text)?,
                None => config.mode.unwrap_or(SamplingMode::PerNodeBernoulli),
            };
            let seed = match seed.or(config.seed) {
                Some(seed) => seed,
                None => seed_from_env()?.unwrap_or(0),
            };
            let report = cmd_simulate(
                &params,
                sensor_from(scenario, config)?,
                attack_from(scenario, config)?,
                model,
                trials.or(config.trials).unwrap_or(DEFAULT_TRIALS),
                seed,
                mode,
                workers.or(config.workers).unwrap_or(1),
            )?;
            Ok(render_simulate(&report, format))
        }
    }
}

fn emit(out: Option<&std::path::Path>, rendered: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, rendered)?,
        None => std::io::stdout().write_all(rendered.as_bytes())?,
    }
    Ok(())
}
