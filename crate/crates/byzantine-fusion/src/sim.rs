//! Monte Carlo simulation of the full pipeline: Gaussian sensing, local
//! likelihood-ratio tests, Byzantine flipping, and fused decision.
//!
//! Trials are partitioned into fixed-size chunks; each chunk draws from its
//! own ChaCha stream derived from (seed, chunk index). Workers pull chunks
//! from a shared counter and error counts are summed as integers, so the
//! report is byte-identical for any worker count.

use std::sync::atomic::{AtomicU64, Ordering};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::model::{
    local_operating_point, marginalize, AttackStrategy, GaussianSensingModel, NetworkParams,
    SensorOperatingPoint,
};
use crate::oracle::{fusion_decision, Hypothesis};

/// Trials per RNG chunk; fixed so the stream layout is independent of the
/// worker count.
const CHUNK_TRIALS: u64 = 4096;

/// Maximum discrepancy allowed between the sensing model's induced operating
/// point and the caller-supplied sensor.
const MODEL_CONSISTENCY_TOL: f64 = 1e-9;

/// How the Byzantine subset is drawn each trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SamplingMode {
    /// Exactly floor(alpha N) compromised nodes per trial.
    FixedFraction,
    /// Each node independently Byzantine with probability alpha; this is the
    /// sampling the analytic marginals describe exactly.
    PerNodeBernoulli,
}

impl SamplingMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            SamplingMode::FixedFraction => "fixed-fraction",
            SamplingMode::PerNodeBernoulli => "per-node-bernoulli",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "fixed-fraction" => Ok(SamplingMode::FixedFraction),
            "per-node-bernoulli" => Ok(SamplingMode::PerNodeBernoulli),
            other => Err(Error::Config(format!(
                "unknown sampling mode {other:?}; expected fixed-fraction or per-node-bernoulli"
            ))),
        }
    }
}

/// Outcome of a simulation run; deterministic given (seed, mode, trials).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimulationReport {
    pub trials: u64,
    pub errors_h0: u64,
    pub errors_h1: u64,
    pub seed: u64,
    pub sampling_mode: SamplingMode,
}

impl SimulationReport {
    /// Empirical error probability: hypotheses are drawn from the priors per
    /// trial, so the plain error frequency estimates P_E.
    pub fn pe_hat(&self) -> f64 {
        (self.errors_h0 + self.errors_h1) as f64 / self.trials as f64
    }
}

fn chunk_rng(seed: u64, chunk: u64) -> ChaCha12Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&chunk.to_le_bytes());
    key[16..24].copy_from_slice(b"byzfusim");
    ChaCha12Rng::from_seed(key)
}

/// Runs `trials` end-to-end trials and counts fused decision errors under
/// each hypothesis.
///
/// Per trial: draw the hypothesis from the priors, draw one Gaussian
/// observation per node, apply the local threshold test, flip per `attack`
/// for the Byzantine subset chosen per `mode`, and fuse the count of
/// one-reports through [`fusion_decision`] with the analytic marginals.
///
/// `model` must reproduce `sensor` through [`local_operating_point`] within
/// 1e-9, otherwise the run would silently simulate a different ROC than the
/// fusion rule assumes.
#[allow(clippy::too_many_arguments)]
pub fn simulate(
    params: &NetworkParams,
    sensor: SensorOperatingPoint,
    attack: AttackStrategy,
    model: GaussianSensingModel,
    trials: u64,
    seed: u64,
    mode: SamplingMode,
    workers: u32,
) -> Result<SimulationReport> {
    if trials < 1 {
        return Err(Error::validation("invariant trials >= 1 violated"));
    }
    if workers < 1 {
        return Err(Error::validation("invariant workers >= 1 violated"));
    }
    let induced = local_operating_point(model)?;
    if (induced.pd() - sensor.pd()).abs() > MODEL_CONSISTENCY_TOL
        || (induced.pf() - sensor.pf()).abs() > MODEL_CONSISTENCY_TOL
    {
        return Err(Error::Consistency(format!(
            "model (theta = {}, lambda = {}) induces (pd, pf) = ({}, {}), which differs from the \
             supplied sensor ({}, {}) by more than {MODEL_CONSISTENCY_TOL:e}",
            model.theta(),
            model.lambda(),
            induced.pd(),
            induced.pf(),
            sensor.pd(),
            sensor.pf()
        )));
    }
    let marginals = marginalize(params.alpha(), attack, sensor)?;
    let tau = model.decision_threshold();
    let n = params.n();
    let byzantine_count = (params.alpha() * n as f64).floor() as u32;

    let num_chunks = trials.div_ceil(CHUNK_TRIALS);
    let next_chunk = AtomicU64::new(0);
    let errors_h0 = AtomicU64::new(0);
    let errors_h1 = AtomicU64::new(0);

    let run_chunk = |chunk: u64| -> Result<(u64, u64)> {
        let mut rng = chunk_rng(seed, chunk);
        let first = chunk * CHUNK_TRIALS;
        let count = CHUNK_TRIALS.min(trials - first);
        let mut e0 = 0u64;
        let mut e1 = 0u64;
        for _ in 0..count {
            let under_h1 = rng.gen::<f64>() < params.p1();
            let shift = if under_h1 { model.theta() } else { 0.0 };
            let mut ones = 0u32;
            for node in 0..n {
                let byzantine = match mode {
                    SamplingMode::FixedFraction => node < byzantine_count,
                    SamplingMode::PerNodeBernoulli => rng.gen::<f64>() < params.alpha(),
                };
                let observation: f64 = shift + rng.sample::<f64, _>(StandardNormal);
                let local = observation > tau;
                let report = if byzantine {
                    if local {
                        rng.gen::<f64>() >= attack.p01()
                    } else {
                        rng.gen::<f64>() < attack.p10()
                    }
                } else {
                    local
                };
                ones += report as u32;
            }
            let decision = fusion_decision(ones, params, &marginals)?;
            match (under_h1, decision) {
                (false, Hypothesis::H1) => e0 += 1,
                (true, Hypothesis::H0) => e1 += 1,
                _ => {}
            }
        }
        Ok((e0, e1))
    };

    let worker_loop = || -> Result<()> {
        loop {
            let chunk = next_chunk.fetch_add(1, Ordering::Relaxed);
            if chunk >= num_chunks {
                return Ok(());
            }
            let (e0, e1) = run_chunk(chunk)?;
            errors_h0.fetch_add(e0, Ordering::Relaxed);
            errors_h1.fetch_add(e1, Ordering::Relaxed);
        }
    };

    if workers == 1 {
        worker_loop()?;
    } else {
        std::thread::scope(|scope| -> Result<()> {
            let handles: Vec<_> = (0..workers).map(|_| scope.spawn(worker_loop)).collect();
            for handle in handles {
                handle
                    .join()
                    .map_err(|_| Error::Numeric("simulation worker panicked".into()))??;
            }
            Ok(())
        })?;
    }

    Ok(SimulationReport {
        trials,
        errors_h0: errors_h0.into_inner(),
        errors_h1: errors_h1.into_inner(),
        seed,
        sampling_mode: mode,
    })
}
