//! Finite-N ground truth for the asymptotics: exact Bayesian error
//! probability of the optimal fusion rule over conditionally i.i.d. one-bit
//! reports, and the least-squares error-exponent fit against it.
//!
//! Everything here runs in log domain; for n up to the tractability bound
//! ln P_E is representable long after P_E itself underflows.

use crate::error::{Error, Result};
use crate::model::{FusedMarginals, NetworkParams};
use crate::numeric::{ln_choose, log_sum_exp, NeumaierSum};

/// Largest sensor count the exact binomial oracle accepts.
pub const MAX_ORACLE_N: u32 = 100_000;

/// Hypothesis labels for the fused decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hypothesis {
    H0,
    H1,
}

/// Least-squares fit of -ln P_E against n.
///
/// `slope` estimates the error exponent in nats per sensor; `points` holds
/// the exact (n, ln P_E) pairs the fit consumed.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentFit {
    pub slope: f64,
    pub intercept: f64,
    pub points: Vec<(u32, f64)>,
    pub r_squared: f64,
}

/// Log-likelihood ln P(k ones out of n | pi), with the boundary conventions
/// P(k | pi = 0) = [k = 0] and P(k | pi = 1) = [k = n] so the oracle can
/// price perfectly separating marginals.
fn ln_count_likelihood(k: u32, n: u32, pi: f64) -> f64 {
    if pi == 0.0 {
        return if k == 0 { 0.0 } else { f64::NEG_INFINITY };
    }
    if pi == 1.0 {
        return if k == n { 0.0 } else { f64::NEG_INFINITY };
    }
    ln_choose(n as u64, k as u64) + k as f64 * pi.ln() + (n - k) as f64 * (1.0 - pi).ln()
}

/// Optimal Bayesian fused decision given `k` one-reports out of `params.n()`.
///
/// Decides H1 iff p1 P(k | pi11) > p0 P(k | pi10), evaluated in log domain;
/// ties go to H0, keeping the rule deterministic.
pub fn fusion_decision(k: u32, params: &NetworkParams, m: &FusedMarginals) -> Result<Hypothesis> {
    let n = params.n();
    if k > n {
        return Err(Error::validation(format!(
            "invariant 0 <= k <= n violated: k = {k}, n = {n}"
        )));
    }
    let score_h1 = params.p1().ln() + ln_count_likelihood(k, n, m.pi11());
    let score_h0 = params.p0().ln() + ln_count_likelihood(k, n, m.pi10());
    if score_h1 > score_h0 {
        Ok(Hypothesis::H1)
    } else {
        Ok(Hypothesis::H0)
    }
}

/// ln of the exact Bayesian error probability of the optimal fusion rule:
///
/// P_E = sum_k C(n,k) min(p0 pi10^k (1-pi10)^(n-k), p1 pi11^k (1-pi11)^(n-k)).
///
/// Boundary marginals are permitted here (and only here) so the oracle can
/// report P_E = 0 (ln P_E = -inf) for perfect separation.
pub fn exact_log_error_probability(params: &NetworkParams, m: &FusedMarginals) -> Result<f64> {
    let n = params.n();
    if n > MAX_ORACLE_N {
        return Err(Error::Size(format!(
            "n = {n} above the exact-oracle bound {MAX_ORACLE_N}"
        )));
    }
    let ln_p0 = params.p0().ln();
    let ln_p1 = params.p1().ln();
    let mut ln_terms = Vec::with_capacity(n as usize + 1);
    for k in 0..=n {
        let h0_branch = ln_p0 + ln_count_likelihood(k, n, m.pi10());
        let h1_branch = ln_p1 + ln_count_likelihood(k, n, m.pi11());
        ln_terms.push(h0_branch.min(h1_branch));
    }
    Ok(log_sum_exp(&ln_terms).min(0.0))
}

/// Exact Bayesian error probability; equals exp of
/// [`exact_log_error_probability`] and therefore underflows to 0 for large n
/// even though the log form stays representable.
pub fn exact_error_probability(params: &NetworkParams, m: &FusedMarginals) -> Result<f64> {
    Ok(exact_log_error_probability(params, m)?.exp())
}

/// Fits the error exponent: computes ln P_E exactly at each count in
/// `n_values` (priors and Byzantine mixture taken from `params`, whose own
/// `n` is ignored) and least-squares fits -ln P_E against n.
pub fn fit_error_exponent(
    params: &NetworkParams,
    m: &FusedMarginals,
    n_values: &[u32],
) -> Result<ExponentFit> {
    if (m.pi11() - m.pi10()).abs() < 1e-12 {
        return Err(Error::Domain(format!(
            "exponent undefined for blind marginals: pi10 = {}, pi11 = {}",
            m.pi10(),
            m.pi11()
        )));
    }
    if !m.is_interior() {
        return Err(Error::Domain(
            "exponent fit requires marginals strictly inside (0, 1)".into(),
        ));
    }
    if n_values.len() < 2 {
        return Err(Error::validation(
            "exponent fit needs at least two sensor counts",
        ));
    }
    if !n_values.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::validation(
            "invariant violated: n_values must be strictly increasing",
        ));
    }
    let mut points = Vec::with_capacity(n_values.len());
    for &n in n_values {
        let at_n = params.with_n(n)?;
        points.push((n, exact_log_error_probability(&at_n, m)?));
    }

    let count = points.len() as f64;
    let mean_n = points.iter().map(|&(n, _)| n as f64).sum::<f64>() / count;
    let mean_y = points.iter().map(|&(_, ln_pe)| -ln_pe).sum::<f64>() / count;
    let mut sxx = NeumaierSum::new();
    let mut sxy = NeumaierSum::new();
    let mut syy = NeumaierSum::new();
    for &(n, ln_pe) in &points {
        let dx = n as f64 - mean_n;
        let dy = -ln_pe - mean_y;
        sxx.add(dx * dx);
        sxy.add(dx * dy);
        syy.add(dy * dy);
    }
    let slope = sxy.value() / sxx.value();
    let intercept = mean_y - slope * mean_n;
    let r_squared = if syy.value() > 0.0 {
        (sxy.value() * sxy.value()) / (sxx.value() * syy.value())
    } else {
        1.0
    };
    Ok(ExponentFit {
        slope,
        intercept,
        points,
        r_squared,
    })
}
