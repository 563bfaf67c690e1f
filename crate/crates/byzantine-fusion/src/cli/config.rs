//! Flat key/value config documents with dotted section names.
//!
//! ```text
//! # scenario: worst-case attack below blinding
//! sensor.pd = 0.6
//! sensor.pf = 0.4
//! network.alpha = 0.4
//! attack.p10 = 1.0
//! attack.p01 = 1.0
//! ```
//!
//! Unknown and duplicate keys are errors; every section that is fully
//! present is re-validated against its type invariants at load time, so a
//! bad config fails before any computation starts.

use std::collections::BTreeSet;
use std::path::Path;

use crate::error::{Error, Result};
use crate::model::{AttackStrategy, GaussianSensingModel, NetworkParams, SensorOperatingPoint};
use crate::sim::SamplingMode;

/// Scenario parameters loaded from a config document. Every field is
/// optional at parse time; commands demand the pieces they need.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunConfig {
    pub pd: Option<f64>,
    pub pf: Option<f64>,
    pub alpha: Option<f64>,
    pub p0: Option<f64>,
    pub p1: Option<f64>,
    pub n: Option<u32>,
    pub p10: Option<f64>,
    pub p01: Option<f64>,
    pub theta: Option<f64>,
    pub lambda: Option<f64>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    pub mode: Option<SamplingMode>,
    pub workers: Option<u32>,
    pub n_values: Option<Vec<u32>>,
    pub step: Option<f64>,
}

const KNOWN_KEYS: &[&str] = &[
    "sensor.pd",
    "sensor.pf",
    "network.alpha",
    "network.p0",
    "network.p1",
    "network.n",
    "attack.p10",
    "attack.p01",
    "model.theta",
    "model.lambda",
    "sim.trials",
    "sim.seed",
    "sim.mode",
    "sim.workers",
    "exponent.n_values",
    "sweep.step",
];

fn parse_number<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::Config(format!("key {key}: cannot parse {value:?}")))
}

fn parse_n_values(key: &str, value: &str) -> Result<Vec<u32>> {
    value
        .split(',')
        .map(|part| parse_number(key, part.trim()))
        .collect()
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut config = RunConfig::default();
        let mut seen = BTreeSet::new();
        for (idx, raw_line) in text.lines().enumerate() {
            let line = raw_line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {}: expected `key = value`", idx + 1))
            })?;
            let key = key.trim();
            let value = value.trim();
            if !KNOWN_KEYS.contains(&key) {
                return Err(Error::Config(format!("line {}: unknown key {key:?}", idx + 1)));
            }
            if !seen.insert(key.to_owned()) {
                return Err(Error::Config(format!(
                    "line {}: duplicate key {key:?}",
                    idx + 1
                )));
            }
            match key {
                "sensor.pd" => config.pd = Some(parse_number(key, value)?),
                "sensor.pf" => config.pf = Some(parse_number(key, value)?),
                "network.alpha" => config.alpha = Some(parse_number(key, value)?),
                "network.p0" => config.p0 = Some(parse_number(key, value)?),
                "network.p1" => config.p1 = Some(parse_number(key, value)?),
                "network.n" => config.n = Some(parse_number(key, value)?),
                "attack.p10" => config.p10 = Some(parse_number(key, value)?),
                "attack.p01" => config.p01 = Some(parse_number(key, value)?),
                "model.theta" => config.theta = Some(parse_number(key, value)?),
                "model.lambda" => config.lambda = Some(parse_number(key, value)?),
                "sim.trials" => config.trials = Some(parse_number(key, value)?),
                "sim.seed" => config.seed = Some(parse_number(key, value)?),
                "sim.mode" => config.mode = Some(SamplingMode::parse(value)?),
                "sim.workers" => config.workers = Some(parse_number(key, value)?),
                "exponent.n_values" => config.n_values = Some(parse_n_values(key, value)?),
                "sweep.step" => config.step = Some(parse_number(key, value)?),
                _ => unreachable!("key set checked above"),
            }
        }
        config.validate_present_sections()?;
        Ok(config)
    }

    /// Re-validate every invariant whose fields are present.
    fn validate_present_sections(&self) -> Result<()> {
        if let (Some(pd), Some(pf)) = (self.pd, self.pf) {
            SensorOperatingPoint::new(pd, pf)?;
        }
        if let Some(alpha) = self.alpha {
            if !(alpha.is_finite() && (0.0..=1.0).contains(&alpha)) {
                return Err(Error::validation(format!(
                    "invariant 0 <= alpha <= 1 violated: network.alpha = {alpha}"
                )));
            }
        }
        if let (Some(p0), Some(p1)) = (self.p0, self.p1) {
            NetworkParams::new(self.alpha.unwrap_or(0.0), p0, p1, self.n.unwrap_or(1))?;
        }
        if let Some(n) = self.n {
            if n < 1 {
                return Err(Error::validation("invariant n >= 1 violated: network.n = 0"));
            }
        }
        if let (Some(p10), Some(p01)) = (self.p10, self.p01) {
            AttackStrategy::new(p10, p01)?;
        }
        if let (Some(theta), Some(lambda)) = (self.theta, self.lambda) {
            GaussianSensingModel::new(theta, lambda)?;
        }
        if let Some(values) = &self.n_values {
            if !values.windows(2).all(|w| w[0] < w[1]) {
                return Err(Error::validation(
                    "invariant violated: exponent.n_values must be strictly increasing",
                ));
            }
        }
        if let Some(step) = self.step {
            validate_grid_step(step)?;
        }
        Ok(())
    }
}

/// The sweep grid must cover [0, 1] exactly: step in (0, 1) and dividing 1
/// within 1e-12.
pub fn validate_grid_step(step: f64) -> Result<u32> {
    if !(step.is_finite() && step > 0.0 && step < 1.0) {
        return Err(Error::validation(format!(
            "invariant 0 < grid_step < 1 violated: step = {step}"
        )));
    }
    let count = (1.0 / step).round();
    if count < 1.0 || (count * step - 1.0).abs() > 1e-12 {
        return Err(Error::validation(format!(
            "invariant violated: grid_step = {step} does not divide 1 within 1e-12"
        )));
    }
    Ok(count as u32)
}
