//! The attacker's side: blinding conditions, optimal flipping strategies,
//! and the fusion center's robust design rule under an upper bound on the
//! Byzantine fraction.

use crate::chernoff::chernoff_information;
use crate::error::{Error, Result};
use crate::model::{marginalize, AttackStrategy, SensorOperatingPoint};

/// Conventional tolerance for the marginal-coincidence test in
/// [`is_blinded`].
pub const DEFAULT_BLINDING_TOL: f64 = 1e-12;

/// Which side of the blinding boundary an optimal attack sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AttackRegime {
    /// alpha < 0.5: the fusion center cannot be blinded; (1, 1) is optimal.
    SubBlinding,
    /// alpha >= 0.5: every strategy with alpha (p10 + p01) = 1 zeroes C.
    Blinding,
}

impl AttackRegime {
    pub fn as_str(&self) -> &'static str {
        match self {
            AttackRegime::SubBlinding => "sub-blinding",
            AttackRegime::Blinding => "blinding",
        }
    }
}

/// Chernoff-information-minimizing attack for a given Byzantine fraction.
///
/// In the blinding regime the optimal set is a whole line; `representative`
/// is its symmetric point and `blinding_line_sum` = 1/alpha describes the
/// full set {(p10, p01) : p10 + p01 = 1/alpha}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimalAttack {
    pub representative: AttackStrategy,
    pub regime: AttackRegime,
    pub blinding_line_sum: Option<f64>,
}

/// Minimum Byzantine fraction that blinds the fusion center under `attack`:
/// alpha = 1/(p10 + p01), +infinity for the honest strategy.
pub fn blinding_fraction(attack: AttackStrategy) -> f64 {
    let sum = attack.flip_sum();
    if sum == 0.0 {
        f64::INFINITY
    } else {
        1.0 / sum
    }
}

/// Does `(alpha, attack)` blind the fusion center at this sensor operating
/// point? True iff the fused marginals coincide within `tol`
/// ([`DEFAULT_BLINDING_TOL`] is the conventional choice).
///
/// The algebraic characterization alpha (p10 + p01) = 1 is cross-checked in
/// debug builds; the two tests agree whenever the margin is clear of the
/// tolerance threshold.
pub fn is_blinded(
    alpha: f64,
    attack: AttackStrategy,
    sensor: SensorOperatingPoint,
    tol: f64,
) -> Result<bool> {
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(Error::validation(format!(
            "invariant tol >= 0 violated: tol = {tol}"
        )));
    }
    let m = marginalize(alpha, attack, sensor)?;
    let gap = (m.pi11() - m.pi10()).abs();
    let blinded = gap <= tol;
    #[cfg(debug_assertions)]
    {
        // pi11 - pi10 = (pd - pf)(1 - alpha (p10 + p01)); the line condition
        // is the same test with tolerance rescaled by pd - pf.
        let scaled = tol / (sensor.pd() - sensor.pf());
        let line_margin = (1.0 - alpha * attack.flip_sum()).abs();
        let ambiguous = (gap - tol).abs() <= 8.0 * f64::EPSILON * (1.0 + tol)
            || (line_margin - scaled).abs() <= 8.0 * f64::EPSILON * (1.0 + scaled);
        debug_assert!(
            ambiguous || blinded == (line_margin <= scaled),
            "marginal and algebraic blinding tests disagree: gap = {gap:e}, \
             line margin = {line_margin:e}"
        );
    }
    Ok(blinded)
}

/// Optimal attacking strategy for Byzantine fraction `alpha`.
///
/// alpha < 0.5: maximal flipping (1, 1). alpha >= 0.5: the symmetric point
/// (1/(2 alpha), 1/(2 alpha)) on the blinding line, with the line sum
/// 1/alpha exposing the full optimal set.
pub fn optimal_attack(alpha: f64) -> Result<OptimalAttack> {
    if !(alpha.is_finite() && (0.0..=1.0).contains(&alpha)) {
        return Err(Error::validation(format!(
            "invariant 0 <= alpha <= 1 violated: alpha = {alpha}"
        )));
    }
    if alpha < 0.5 {
        Ok(OptimalAttack {
            representative: AttackStrategy::new(1.0, 1.0)?,
            regime: AttackRegime::SubBlinding,
            blinding_line_sum: None,
        })
    } else {
        let flip = 1.0 / (2.0 * alpha);
        Ok(OptimalAttack {
            representative: AttackStrategy::new(flip, flip)?,
            regime: AttackRegime::Blinding,
            blinding_line_sum: Some(1.0 / alpha),
        })
    }
}

/// Guaranteed error exponent of the test designed against an upper bound
/// `alpha_tilde` on the Byzantine fraction: C evaluated at the worst-case
/// attack for `alpha_tilde`. Zero for alpha_tilde >= 0.5, where the
/// guarantee collapses.
pub fn robust_design_exponent(alpha_tilde: f64, sensor: SensorOperatingPoint) -> Result<f64> {
    if !(alpha_tilde.is_finite() && (0.0..=1.0).contains(&alpha_tilde)) {
        return Err(Error::validation(format!(
            "invariant 0 <= alpha_tilde <= 1 violated: alpha_tilde = {alpha_tilde}"
        )));
    }
    if alpha_tilde >= 0.5 {
        return Ok(0.0);
    }
    let attack = optimal_attack(alpha_tilde)?.representative;
    let m = marginalize(alpha_tilde, attack, sensor)?;
    Ok(chernoff_information(m)?.c)
}
