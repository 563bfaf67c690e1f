//! Probabilistic model of the sensing layer: local operating points,
//! Byzantine flipping strategies, and the report marginals seen by the
//! fusion center.
//!
//! All types are immutable values validated at construction; all operations
//! are pure functions.

use crate::error::{Error, Result};
use crate::numeric::q_function;

/// Per-sensor ROC point induced by the local likelihood-ratio threshold.
///
/// `pd` is the probability of detection P(v=1 | H1), `pf` the probability of
/// false alarm P(v=1 | H0). Construction requires 0 < pf < pd < 1 strictly:
/// downstream formulas divide by differences of these quantities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SensorOperatingPoint {
    pd: f64,
    pf: f64,
}

impl SensorOperatingPoint {
    pub fn new(pd: f64, pf: f64) -> Result<Self> {
        if !pf.is_finite() || !pd.is_finite() {
            return Err(Error::validation("sensor operating point must be finite"));
        }
        if !(pf > 0.0 && pf < 1.0) {
            return Err(Error::validation(format!(
                "invariant 0 < pf < 1 violated: pf = {pf}"
            )));
        }
        if !(pd > 0.0 && pd < 1.0) {
            return Err(Error::validation(format!(
                "invariant 0 < pd < 1 violated: pd = {pd}"
            )));
        }
        if pd <= pf {
            return Err(Error::validation(format!(
                "invariant pf < pd violated: pf = {pf}, pd = {pd}"
            )));
        }
        Ok(Self { pd, pf })
    }

    pub fn pd(&self) -> f64 {
        self.pd
    }

    pub fn pf(&self) -> f64 {
        self.pf
    }
}

/// Byzantine flipping probabilities.
///
/// `p10` is the probability of reporting 1 when the local decision is 0;
/// `p01` the probability of reporting 0 when the local decision is 1. The
/// honest strategy is the fixed point (0, 0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttackStrategy {
    p10: f64,
    p01: f64,
}

impl AttackStrategy {
    pub const HONEST: AttackStrategy = AttackStrategy { p10: 0.0, p01: 0.0 };

    pub fn new(p10: f64, p01: f64) -> Result<Self> {
        for (name, p) in [("p10", p10), ("p01", p01)] {
            if !(p.is_finite() && (0.0..=1.0).contains(&p)) {
                return Err(Error::validation(format!(
                    "invariant 0 <= {name} <= 1 violated: {name} = {p}"
                )));
            }
        }
        Ok(Self { p10, p01 })
    }

    pub fn p10(&self) -> f64 {
        self.p10
    }

    pub fn p01(&self) -> f64 {
        self.p01
    }

    /// p10 + p01, the quantity the blinding condition is expressed in.
    pub fn flip_sum(&self) -> f64 {
        self.p10 + self.p01
    }
}

/// Network-level parameters: Byzantine fraction, hypothesis priors, sensor count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NetworkParams {
    alpha: f64,
    p0: f64,
    p1: f64,
    n: u32,
}

impl NetworkParams {
    pub fn new(alpha: f64, p0: f64, p1: f64, n: u32) -> Result<Self> {
        if !(alpha.is_finite() && (0.0..=1.0).contains(&alpha)) {
            return Err(Error::validation(format!(
                "invariant 0 <= alpha <= 1 violated: alpha = {alpha}"
            )));
        }
        for (name, p) in [("p0", p0), ("p1", p1)] {
            if !(p.is_finite() && p > 0.0 && p < 1.0) {
                return Err(Error::validation(format!(
                    "invariant 0 < {name} < 1 violated: {name} = {p}"
                )));
            }
        }
        if (p0 + p1 - 1.0).abs() > 1e-12 {
            return Err(Error::validation(format!(
                "invariant p0 + p1 = 1 violated: p0 + p1 = {}",
                p0 + p1
            )));
        }
        if n < 1 {
            return Err(Error::validation("invariant n >= 1 violated: n = 0"));
        }
        Ok(Self { alpha, p0, p1, n })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn p0(&self) -> f64 {
        self.p0
    }

    pub fn p1(&self) -> f64 {
        self.p1
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Same priors and Byzantine fraction with a different sensor count.
    pub fn with_n(&self, n: u32) -> Result<Self> {
        Self::new(self.alpha, self.p0, self.p1, n)
    }
}

/// Conditional probabilities of a report u = 1 under each hypothesis, after
/// mixing honest and Byzantine behavior.
///
/// `pi10` = P(u=1 | H0), `pi11` = P(u=1 | H1). Both lie in [0, 1]; the
/// ordering pi11 > pi10 holds exactly when the generating attack is below its
/// blinding fraction, so it is not a construction invariant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FusedMarginals {
    pi10: f64,
    pi11: f64,
}

impl FusedMarginals {
    pub fn new(pi10: f64, pi11: f64) -> Result<Self> {
        for (name, p) in [("pi10", pi10), ("pi11", pi11)] {
            if !(p.is_finite() && (0.0..=1.0).contains(&p)) {
                return Err(Error::validation(format!(
                    "invariant 0 <= {name} <= 1 violated: {name} = {p}"
                )));
            }
        }
        Ok(Self { pi10, pi11 })
    }

    pub fn pi10(&self) -> f64 {
        self.pi10
    }

    pub fn pi11(&self) -> f64 {
        self.pi11
    }

    /// Both marginals strictly inside (0, 1)?
    pub fn is_interior(&self) -> bool {
        self.pi10 > 0.0 && self.pi10 < 1.0 && self.pi11 > 0.0 && self.pi11 < 1.0
    }
}

/// Unit-variance Gaussian mean-shift observation model with LRT threshold.
///
/// Under H0 observations are N(0, 1), under H1 they are N(theta, 1); the
/// local test compares the likelihood ratio against `lambda`. This closes the
/// sensing layer with a concrete map from (theta, lambda) to (pd, pf) able to
/// reach any operating point with pd > pf.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianSensingModel {
    theta: f64,
    lambda: f64,
}

impl GaussianSensingModel {
    pub fn new(theta: f64, lambda: f64) -> Result<Self> {
        if !(theta.is_finite() && theta > 0.0) {
            return Err(Error::validation(format!(
                "invariant theta > 0 violated: theta = {theta}"
            )));
        }
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::validation(format!(
                "invariant lambda > 0 violated: lambda = {lambda}"
            )));
        }
        Ok(Self { theta, lambda })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Observation threshold equivalent to the likelihood-ratio test:
    /// decide 1 iff y > tau, with tau = ln(lambda)/theta + theta/2.
    pub fn decision_threshold(&self) -> f64 {
        self.lambda.ln() / self.theta + self.theta / 2.0
    }
}

/// Report marginals at the fusion center for a Byzantine fraction `alpha`
/// playing `attack` against sensors at `sensor`.
///
/// pi10 = alpha (p10 (1-pf) + (1-p01) pf) + (1-alpha) pf, and likewise for
/// pi11 with pd in place of pf. Evaluated as base + alpha (byz - base) so the
/// honest strategy (0,0) is a floating-point fixed point and blinding
/// cancellations are exact.
pub fn marginalize(
    alpha: f64,
    attack: AttackStrategy,
    sensor: SensorOperatingPoint,
) -> Result<FusedMarginals> {
    if !(alpha.is_finite() && (0.0..=1.0).contains(&alpha)) {
        return Err(Error::validation(format!(
            "invariant 0 <= alpha <= 1 violated: alpha = {alpha}"
        )));
    }
    let mix = |base: f64| {
        let byz = attack.p10 * (1.0 - base) + (1.0 - attack.p01) * base;
        base + alpha * (byz - base)
    };
    FusedMarginals::new(mix(sensor.pf), mix(sensor.pd))
}

/// Operating point induced by the Gaussian sensing model.
///
/// pf = Q(tau), pd = Q(tau - theta), with Q the standard Gaussian upper tail.
/// Thresholds extreme enough to round pf or pd onto {0, 1} are rejected as a
/// degenerate model.
pub fn local_operating_point(model: GaussianSensingModel) -> Result<SensorOperatingPoint> {
    let tau = model.decision_threshold();
    let pf = q_function(tau);
    let pd = q_function(tau - model.theta);
    SensorOperatingPoint::new(pd, pf).map_err(|_| {
        Error::DegenerateModel(format!(
            "theta = {}, lambda = {} maps to (pd, pf) = ({pd}, {pf}) outside the open unit square",
            model.theta, model.lambda
        ))
    })
}
