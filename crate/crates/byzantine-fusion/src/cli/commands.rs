//! Command implementations behind the CLI subcommands. Each returns a plain
//! report struct; rendering lives in [`crate::cli::output`].

use crate::adversary::{blinding_fraction, optimal_attack, AttackRegime};
use crate::chernoff::{
    chernoff_information, chernoff_information_with_bracket, TStarBracket,
    NEAR_DEGENERATE_TOLERANCE,
};
use crate::cli::config::validate_grid_step;
use crate::cli::output::OutputFormat;
use crate::error::Result;
use crate::model::{
    marginalize, AttackStrategy, FusedMarginals, GaussianSensingModel, NetworkParams,
    SensorOperatingPoint,
};
use crate::oracle::{exact_log_error_probability, fit_error_exponent, ExponentFit, MAX_ORACLE_N};
use crate::sim::{simulate, SamplingMode, SimulationReport};

/// Scenario report for one (sensor, alpha, attack) triple.
#[derive(Debug, Clone)]
pub struct ChernoffReport {
    pub pd: f64,
    pub pf: f64,
    pub alpha: f64,
    pub p10: f64,
    pub p01: f64,
    pub pi10: f64,
    pub pi11: f64,
    pub t_star: f64,
    pub c: f64,
    pub blinded: bool,
    pub bracket: Option<TStarBracket>,
}

/// Fused marginals, optimizer, Chernoff information, and bracket for one
/// scenario; `blinded` reflects the marginal-coincidence convention.
pub fn cmd_chernoff(
    sensor: SensorOperatingPoint,
    alpha: f64,
    attack: AttackStrategy,
) -> Result<ChernoffReport> {
    let m = marginalize(alpha, attack, sensor)?;
    let result = chernoff_information_with_bracket(m, sensor)?;
    Ok(ChernoffReport {
        pd: sensor.pd(),
        pf: sensor.pf(),
        alpha,
        p10: attack.p10(),
        p01: attack.p01(),
        pi10: m.pi10(),
        pi11: m.pi11(),
        t_star: result.t_star,
        c: result.c,
        blinded: (m.pi11() - m.pi10()).abs() < NEAR_DEGENERATE_TOLERANCE,
        bracket: result.bracket,
    })
}

/// Grid sweep request over the attack square.
#[derive(Debug, Clone, Copy)]
pub struct SweepSpec {
    pub sensor: SensorOperatingPoint,
    pub alpha: f64,
    pub grid_step: f64,
    pub output_format: OutputFormat,
}

impl SweepSpec {
    pub fn new(
        sensor: SensorOperatingPoint,
        alpha: f64,
        grid_step: f64,
        output_format: OutputFormat,
    ) -> Result<Self> {
        validate_grid_step(grid_step)?;
        Ok(Self {
            sensor,
            alpha,
            grid_step,
            output_format,
        })
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SweepRow {
    pub p10: f64,
    pub p01: f64,
    pub pi10: f64,
    pub pi11: f64,
    pub c: f64,
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub pd: f64,
    pub pf: f64,
    pub alpha: f64,
    pub grid_step: f64,
    pub rows: Vec<SweepRow>,
}

/// One row per grid point in lexicographic (p10, p01) order.
pub fn cmd_sweep(spec: &SweepSpec) -> Result<SweepReport> {
    let count = validate_grid_step(spec.grid_step)?;
    let grid_value = |i: u32| {
        if i == count {
            1.0
        } else {
            i as f64 * spec.grid_step
        }
    };
    let mut rows = Vec::with_capacity(((count + 1) * (count + 1)) as usize);
    for i in 0..=count {
        for j in 0..=count {
            let attack = AttackStrategy::new(grid_value(i), grid_value(j))?;
            let m = marginalize(spec.alpha, attack, spec.sensor)?;
            let c = chernoff_information(m)?.c;
            rows.push(SweepRow {
                p10: attack.p10(),
                p01: attack.p01(),
                pi10: m.pi10(),
                pi11: m.pi11(),
                c,
            });
        }
    }
    Ok(SweepReport {
        pd: spec.sensor.pd(),
        pf: spec.sensor.pf(),
        alpha: spec.alpha,
        grid_step: spec.grid_step,
        rows,
    })
}

/// Blinding analysis, from either direction.
#[derive(Debug, Clone)]
pub enum BlindReport {
    /// Given an attack: the fraction of Byzantines at which it blinds.
    FromAttack {
        p10: f64,
        p01: f64,
        blinding_fraction: f64,
    },
    /// Given a fraction: the optimal attack and (when blinding) the line of
    /// equally optimal strategies p10 + p01 = line_sum.
    FromAlpha {
        alpha: f64,
        regime: AttackRegime,
        p10: f64,
        p01: f64,
        line_sum: Option<f64>,
    },
}

pub fn cmd_blind_attack(attack: AttackStrategy) -> BlindReport {
    BlindReport::FromAttack {
        p10: attack.p10(),
        p01: attack.p01(),
        blinding_fraction: blinding_fraction(attack),
    }
}

pub fn cmd_blind_alpha(alpha: f64) -> Result<BlindReport> {
    let optimal = optimal_attack(alpha)?;
    Ok(BlindReport::FromAlpha {
        alpha,
        regime: optimal.regime,
        p10: optimal.representative.p10(),
        p01: optimal.representative.p01(),
        line_sum: optimal.blinding_line_sum,
    })
}

#[derive(Debug, Clone)]
pub struct ExponentReport {
    pub pd: f64,
    pub pf: f64,
    pub alpha: f64,
    pub p10: f64,
    pub p01: f64,
    pub p0: f64,
    pub p1: f64,
    pub pi10: f64,
    pub pi11: f64,
    pub fit: ExponentFit,
    pub analytic_c: f64,
    pub relative_gap: f64,
}

/// Exact ln P_E over the n grid, the fitted slope, and its gap from the
/// analytic Chernoff information.
pub fn cmd_exponent(
    sensor: SensorOperatingPoint,
    alpha: f64,
    attack: AttackStrategy,
    p0: f64,
    p1: f64,
    n_values: &[u32],
) -> Result<ExponentReport> {
    let m = marginalize(alpha, attack, sensor)?;
    let params = NetworkParams::new(alpha, p0, p1, 1)?;
    let fit = fit_error_exponent(&params, &m, n_values)?;
    let analytic_c = chernoff_information(m)?.c;
    let relative_gap = (fit.slope - analytic_c).abs() / analytic_c;
    Ok(ExponentReport {
        pd: sensor.pd(),
        pf: sensor.pf(),
        alpha,
        p10: attack.p10(),
        p01: attack.p01(),
        p0,
        p1,
        pi10: m.pi10(),
        pi11: m.pi11(),
        fit,
        analytic_c,
        relative_gap,
    })
}

#[derive(Debug, Clone)]
pub struct SimulateReport {
    pub report: SimulationReport,
    pub workers: u32,
    pub pe_hat: f64,
    /// 4-sigma binomial band around pe_hat.
    pub ci_lo: f64,
    pub ci_hi: f64,
    /// Exact-oracle comparison, present when n is within the oracle bound.
    pub exact_pe: Option<f64>,
    pub z_score: Option<f64>,
}

/// Monte Carlo run plus the exact-oracle cross-check when tractable.
#[allow(clippy::too_many_arguments)]
pub fn cmd_simulate(
    params: &NetworkParams,
    sensor: SensorOperatingPoint,
    attack: AttackStrategy,
    model: GaussianSensingModel,
    trials: u64,
    seed: u64,
    mode: SamplingMode,
    workers: u32,
) -> Result<SimulateReport> {
    let report = simulate(params, sensor, attack, model, trials, seed, mode, workers)?;
    let pe_hat = report.pe_hat();
    let half_width = 4.0 * (pe_hat * (1.0 - pe_hat) / trials as f64).sqrt();
    let (exact_pe, z_score) = if params.n() <= MAX_ORACLE_N {
        let m = marginalize(params.alpha(), attack, sensor)?;
        let pe = exact_log_error_probability(params, &m)?.exp();
        let sigma = (pe * (1.0 - pe) / trials as f64).sqrt();
        let z = if sigma > 0.0 {
            (pe_hat - pe) / sigma
        } else {
            0.0
        };
        (Some(pe), Some(z))
    } else {
        (None, None)
    };
    Ok(SimulateReport {
        report,
        workers,
        pe_hat,
        ci_lo: (pe_hat - half_width).max(0.0),
        ci_hi: (pe_hat + half_width).min(1.0),
        exact_pe,
        z_score,
    })
}

/// Marginals for a scenario; used by tests and the FFI layer.
pub fn scenario_marginals(
    sensor: SensorOperatingPoint,
    alpha: f64,
    attack: AttackStrategy,
) -> Result<FusedMarginals> {
    marginalize(alpha, attack, sensor)
}
