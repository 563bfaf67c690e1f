//! Chernoff information of the fused report distributions.
//!
//! The best achievable Bayesian error exponent for conditionally i.i.d.
//! one-bit reports is
//!
//! ```text
//! C = max over t in [0,1] of -ln( pi10^t pi11^(1-t) + (1-pi10)^t (1-pi11)^(1-t) )
//! ```
//!
//! The inner sum is convex in t, its unique stationary point has a closed
//! form when pi10 < pi11, and an analytic bracket (A, B) around the
//! optimizer is available from the sensor operating point. A derivative-free
//! golden-section minimizer serves as the independent numeric oracle for the
//! closed form.

use crate::error::{Error, Result};
use crate::model::{FusedMarginals, SensorOperatingPoint};

/// Marginal gap below which distributions are treated as identical and the
/// C = 0, t* = 0.5 convention applies.
pub const NEAR_DEGENERATE_TOLERANCE: f64 = 1e-12;

/// Floor on the bracket denominator pi11 (G+1) - 1; below it the bracket
/// formula is a 0/0 form.
const BRACKET_DEGENERACY_FLOOR: f64 = 1e-14;

const GOLDEN_MAX_ITERS: usize = 1_000;
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Optimizer, Chernoff information, and (when defined) the analytic bracket.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChernoffResult {
    /// Optimizing exponent t* in [0, 1].
    pub t_star: f64,
    /// Chernoff information in nats; 0 iff the marginals coincide.
    pub c: f64,
    /// Analytic bracket around t*; absent when its preconditions fail.
    pub bracket: Option<TStarBracket>,
}

/// Analytic lower/upper bounds containing the optimizer t*.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TStarBracket {
    pub lo: f64,
    pub hi: f64,
}

fn require_interior(m: FusedMarginals) -> Result<()> {
    if !m.is_interior() {
        return Err(Error::Domain(format!(
            "marginals must lie strictly inside (0, 1): pi10 = {}, pi11 = {}",
            m.pi10(),
            m.pi11()
        )));
    }
    Ok(())
}

/// The inner sum of the Chernoff information: pi10^t pi11^(1-t)
/// + (1-pi10)^t (1-pi11)^(1-t), evaluated in log domain.
///
/// Value lies in (0, 1] for t in [0, 1] and equals 1 at both endpoints.
pub fn chernoff_objective(t: f64, m: FusedMarginals) -> Result<f64> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::Domain(format!("t must lie in [0, 1]: t = {t}")));
    }
    require_interior(m)?;
    let term_one = (t * m.pi10().ln() + (1.0 - t) * m.pi11().ln()).exp();
    let term_zero = (t * (1.0 - m.pi10()).ln() + (1.0 - t) * (1.0 - m.pi11()).ln()).exp();
    Ok(term_one + term_zero)
}

/// Log-ratios ln(pi11/pi10) and ln((1-pi10)/(1-pi11)), both positive for
/// pi10 < pi11, computed through ln_1p so nearby marginals keep relative
/// accuracy.
fn log_ratios(m: FusedMarginals) -> (f64, f64) {
    let delta = m.pi11() - m.pi10();
    let la = (delta / m.pi10()).ln_1p();
    let lb = (delta / (1.0 - m.pi11())).ln_1p();
    (la, lb)
}

/// Unique stationary point of the Chernoff objective, from setting its first
/// derivative to zero:
///
/// t* = ln(G pi11/(1-pi11)) / ln(((1/pi10)-1)/((1/pi11)-1)),
/// G  = ln(pi11/pi10) / ln((1-pi10)/(1-pi11)).
///
/// Defined for 0 < pi10 < pi11 < 1; the result lies in [0, 1].
pub fn closed_form_t_star(m: FusedMarginals) -> Result<f64> {
    require_interior(m)?;
    if (m.pi11() - m.pi10()).abs() < NEAR_DEGENERATE_TOLERANCE {
        return Err(Error::NearDegenerate(format!(
            "|pi11 - pi10| = {:e} < {NEAR_DEGENERATE_TOLERANCE:e}; identical distributions carry \
             no information (use the C = 0, t* = 0.5 convention)",
            (m.pi11() - m.pi10()).abs()
        )));
    }
    if m.pi11() < m.pi10() {
        return Err(Error::Ordering {
            pi10: m.pi10(),
            pi11: m.pi11(),
        });
    }
    let (la, lb) = log_ratios(m);
    // ln(((1/pi10)-1)/((1/pi11)-1)) = la + lb, and ln(G r) = ln G + ln r
    // with r = pi11/(1-pi11).
    let numerator = (la / lb).ln() + (m.pi11() / (1.0 - m.pi11())).ln();
    Ok(numerator / (la + lb))
}

/// Signed difference g(x1) - g(x2) of the Chernoff objective.
///
/// Factoring each power term around x2 and using expm1 keeps the difference
/// accurate to the scale of |x1 - x2| instead of the scale of g itself, so
/// ordering comparisons stay meaningful far below the sqrt(eps) floor of
/// naive value comparisons.
fn objective_difference(m: FusedMarginals, x1: f64, x2: f64) -> f64 {
    let la = (m.pi10() / m.pi11()).ln();
    let lb = ((1.0 - m.pi10()) / (1.0 - m.pi11())).ln();
    let d = x1 - x2;
    m.pi11() * (x2 * la).exp() * (d * la).exp_m1()
        + (1.0 - m.pi11()) * (x2 * lb).exp() * (d * lb).exp_m1()
}

/// Derivative-free bracketing minimizer of the Chernoff objective over
/// [0, 1]: golden-section search driven by sign comparisons of objective
/// differences. Convexity of the objective makes the bracket update sound.
///
/// Returns the argmin within `tol` (floored at a few ulps). Serves as the
/// independent oracle for [`closed_form_t_star`].
pub fn numeric_t_star(m: FusedMarginals, tol: f64) -> Result<f64> {
    require_interior(m)?;
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::validation(format!(
            "invariant tol > 0 violated: tol = {tol}"
        )));
    }
    let tol = tol.max(2.0 * f64::EPSILON);
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    for _ in 0..GOLDEN_MAX_ITERS {
        if hi - lo <= tol {
            return Ok(0.5 * (lo + hi));
        }
        if objective_difference(m, x1, x2) < 0.0 {
            hi = x2;
            x2 = x1;
            x1 = hi - INV_PHI * (hi - lo);
        } else {
            lo = x1;
            x1 = x2;
            x2 = lo + INV_PHI * (hi - lo);
        }
    }
    Err(Error::Numeric(format!(
        "golden-section search did not reach tol = {tol:e} within {GOLDEN_MAX_ITERS} iterations"
    )))
}

/// Chernoff information of the fused marginals.
///
/// - |pi11 - pi10| below [`NEAR_DEGENERATE_TOLERANCE`]: returns C = 0 with
///   t* = 0.5 (identical distributions carry no information).
/// - pi10 < pi11: t* from the closed form.
/// - pi11 < pi10 (attacks past the blinding line): falls back to the numeric
///   minimizer, which needs no ordering.
///
/// The bracket field is absent; it needs the sensor operating point, see
/// [`chernoff_information_with_bracket`].
pub fn chernoff_information(m: FusedMarginals) -> Result<ChernoffResult> {
    if (m.pi11() - m.pi10()).abs() < NEAR_DEGENERATE_TOLERANCE {
        return Ok(ChernoffResult {
            t_star: 0.5,
            c: 0.0,
            bracket: None,
        });
    }
    let t_star = if m.pi11() > m.pi10() {
        closed_form_t_star(m)?
    } else {
        numeric_t_star(m, 1e-12)?
    };
    let objective = chernoff_objective(t_star, m)?;
    // -ln of a quantity mathematically <= 1; rounding dust may push the
    // float above 1, so pin the exponent at its lower bound 0.
    let c = (-objective.ln()).max(0.0);
    Ok(ChernoffResult {
        t_star,
        c,
        bracket: None,
    })
}

/// [`chernoff_information`] plus the analytic bracket when its preconditions
/// hold (pd > pf, pi10 < pi11, non-degenerate); the bracket is marked absent
/// rather than failing when they do not.
pub fn chernoff_information_with_bracket(
    m: FusedMarginals,
    sensor: SensorOperatingPoint,
) -> Result<ChernoffResult> {
    let mut result = chernoff_information(m)?;
    if let Ok((lo, hi)) = t_star_bounds(m, sensor) {
        result.bracket = Some(TStarBracket { lo, hi });
    }
    Ok(result)
}

/// Analytic bracket (A, B) around the optimizer:
///
/// A = 1 / (((1-pf)/(1-pd)) Y + 1),  B = 1 / ((pf/pd) Y + 1),
/// Y = (pi11/pi10) ((1-pi11)/(1-pi10)) (1 - pi10 (G+1)) / (pi11 (G+1) - 1).
///
/// Requires pd > pf (held by the sensor type) and marginals generated below
/// the blinding point, so that pi10 < pi11. Marginals close enough that the
/// Y denominator vanishes (symmetric limit, a 0/0 form) are rejected as
/// near-degenerate.
pub fn t_star_bounds(m: FusedMarginals, sensor: SensorOperatingPoint) -> Result<(f64, f64)> {
    require_interior(m)?;
    if m.pi11() <= m.pi10() {
        return Err(Error::Domain(format!(
            "bracket requires pi10 < pi11 (pd > pf with alpha below blinding): pi10 = {}, pi11 = {}",
            m.pi10(),
            m.pi11()
        )));
    }
    let (la, lb) = log_ratios(m);
    let g = la / lb;
    let denominator = m.pi11() * (g + 1.0) - 1.0;
    if denominator < BRACKET_DEGENERACY_FLOOR {
        return Err(Error::NearDegenerate(format!(
            "pi11 (G+1) - 1 = {denominator:e} below {BRACKET_DEGENERACY_FLOOR:e}; near-symmetric \
             marginals make the bracket a 0/0 form"
        )));
    }
    // Strictly positive alongside the denominator whenever pi10 < pi11;
    // a zero here would collapse the bracket to A = B = 1.
    let numerator = 1.0 - m.pi10() * (g + 1.0);
    if numerator <= 0.0 {
        return Err(Error::Numeric(format!(
            "pi10 (G+1) = {} reaches 1, violating the bracket's supporting inequality",
            m.pi10() * (g + 1.0)
        )));
    }
    let y = (m.pi11() / m.pi10()) * ((1.0 - m.pi11()) / (1.0 - m.pi10())) * numerator
        / denominator;
    let lo = 1.0 / (((1.0 - sensor.pf()) / (1.0 - sensor.pd())) * y + 1.0);
    let hi = 1.0 / ((sensor.pf() / sensor.pd()) * y + 1.0);
    debug_assert!(lo < hi);
    Ok((lo, hi))
}
