//! C ABI for the byzantine-fusion library.
//!
//! Conventions:
//! - Every fallible call returns a [`BfStatus`]; outputs are written through
//!   pointers only on `BF_STATUS_OK`.
//! - Scenarios are opaque handles created by [`bf_scenario_new`] and released
//!   by [`bf_scenario_free`]; all other functions borrow them.
//! - Null pointers are rejected with `BF_STATUS_NULL_ARGUMENT`, never
//!   dereferenced; non-null pointers must be valid for the advertised access.
//!
//! The generated header lives at `include/byzantine_fusion.h`.

use std::os::raw::c_char;

use byzantine_fusion::adversary::{
    blinding_fraction, optimal_attack, robust_design_exponent, AttackRegime,
};
use byzantine_fusion::chernoff::{chernoff_information, t_star_bounds};
use byzantine_fusion::model::{
    marginalize, AttackStrategy, FusedMarginals, GaussianSensingModel, NetworkParams,
    SensorOperatingPoint,
};
use byzantine_fusion::oracle::exact_log_error_probability;
use byzantine_fusion::sim::{simulate, SamplingMode};
use byzantine_fusion::Error;

/// Status codes mirroring the library's error classes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BfStatus {
    Ok = 0,
    ValidationError = 1,
    DegenerateModel = 2,
    DomainError = 3,
    OrderingError = 4,
    NearDegenerate = 5,
    NumericError = 6,
    SizeError = 7,
    ConsistencyError = 8,
    ConfigError = 9,
    IoError = 10,
    NullArgument = 100,
}

/// Byzantine sampling mode for the simulator.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BfSamplingMode {
    FixedFraction = 0,
    PerNodeBernoulli = 1,
}

/// Which side of the blinding boundary an optimal attack sits on.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BfAttackRegime {
    SubBlinding = 0,
    Blinding = 1,
}

/// Monte Carlo outcome; `pe_hat` = (errors_h0 + errors_h1) / trials.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct BfSimReport {
    pub trials: u64,
    pub errors_h0: u64,
    pub errors_h1: u64,
    pub pe_hat: f64,
    pub seed: u64,
    pub sampling_mode: BfSamplingMode,
}

/// Opaque scenario handle: a validated (sensor, network, attack) triple.
pub struct BfScenario {
    sensor: SensorOperatingPoint,
    params: NetworkParams,
    attack: AttackStrategy,
}

fn status_of(err: &Error) -> BfStatus {
    match err {
        Error::Validation(_) => BfStatus::ValidationError,
        Error::DegenerateModel(_) => BfStatus::DegenerateModel,
        Error::Domain(_) => BfStatus::DomainError,
        Error::Ordering { .. } => BfStatus::OrderingError,
        Error::NearDegenerate(_) => BfStatus::NearDegenerate,
        Error::Numeric(_) => BfStatus::NumericError,
        Error::Size(_) => BfStatus::SizeError,
        Error::Consistency(_) => BfStatus::ConsistencyError,
        Error::Config(_) => BfStatus::ConfigError,
        Error::Io(_) => BfStatus::IoError,
    }
}

macro_rules! try_ffi {
    ($expr:expr) => {
        match $expr {
            Ok(value) => value,
            Err(err) => return status_of(&err),
        }
    };
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn bf_status_message(status: BfStatus) -> *const c_char {
    let message: &'static [u8] = match status {
        BfStatus::Ok => b"ok\0",
        BfStatus::ValidationError => b"validation error: a type invariant was violated\0",
        BfStatus::DegenerateModel => b"degenerate model: operating point outside (0, 1)\0",
        BfStatus::DomainError => b"domain error: input outside the operation's domain\0",
        BfStatus::OrderingError => b"ordering error: closed form requires pi10 < pi11\0",
        BfStatus::NearDegenerate => b"near-degenerate marginals: use the C = 0 convention\0",
        BfStatus::NumericError => b"numeric error: iteration failed to converge\0",
        BfStatus::SizeError => b"size error: problem above the tractability bound\0",
        BfStatus::ConsistencyError => b"consistency error: model and sensor disagree\0",
        BfStatus::ConfigError => b"config error: bad configuration value\0",
        BfStatus::IoError => b"i/o error\0",
        BfStatus::NullArgument => b"null pointer argument\0",
    };
    message.as_ptr() as *const c_char
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn bf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Creates a validated scenario handle. On success writes the handle through
/// `out`; the caller owns it and must release it with [`bf_scenario_free`].
///
/// # Safety
/// `out` must be null or valid for writing one pointer.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn bf_scenario_new(
    pd: f64,
    pf: f64,
    alpha: f64,
    p0: f64,
    p1: f64,
    n: u32,
    p10: f64,
    p01: f64,
    out: *mut *mut BfScenario,
) -> BfStatus {
    if out.is_null() {
        return BfStatus::NullArgument;
    }
    let sensor = try_ffi!(SensorOperatingPoint::new(pd, pf));
    let params = try_ffi!(NetworkParams::new(alpha, p0, p1, n));
    let attack = try_ffi!(AttackStrategy::new(p10, p01));
    let scenario = Box::new(BfScenario {
        sensor,
        params,
        attack,
    });
    unsafe { out.write(Box::into_raw(scenario)) };
    BfStatus::Ok
}

/// Releases a scenario created by [`bf_scenario_new`]. Null is a no-op.
///
/// # Safety
/// `scenario` must be null or a pointer previously returned by
/// [`bf_scenario_new`] and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bf_scenario_free(scenario: *mut BfScenario) {
    if !scenario.is_null() {
        drop(unsafe { Box::from_raw(scenario) });
    }
}

/// Fused report marginals (pi10, pi11) for the scenario.
///
/// # Safety
/// `scenario` must be null or a live handle; `pi10` and `pi11` must be null
/// or valid for writing one f64 each.
#[no_mangle]
pub unsafe extern "C" fn bf_scenario_marginals(
    scenario: *const BfScenario,
    pi10: *mut f64,
    pi11: *mut f64,
) -> BfStatus {
    let Some(s) = (unsafe { scenario.as_ref() }) else {
        return BfStatus::NullArgument;
    };
    if pi10.is_null() || pi11.is_null() {
        return BfStatus::NullArgument;
    }
    let m = try_ffi!(marginalize(s.params.alpha(), s.attack, s.sensor));
    unsafe {
        pi10.write(m.pi10());
        pi11.write(m.pi11());
    }
    BfStatus::Ok
}

/// Chernoff information and optimizer for the scenario's fused marginals.
///
/// # Safety
/// `scenario` must be null or a live handle; `t_star` and `c` must be null
/// or valid for writing one f64 each.
#[no_mangle]
pub unsafe extern "C" fn bf_scenario_chernoff(
    scenario: *const BfScenario,
    t_star: *mut f64,
    c: *mut f64,
) -> BfStatus {
    let Some(s) = (unsafe { scenario.as_ref() }) else {
        return BfStatus::NullArgument;
    };
    if t_star.is_null() || c.is_null() {
        return BfStatus::NullArgument;
    }
    let m = try_ffi!(marginalize(s.params.alpha(), s.attack, s.sensor));
    let result = try_ffi!(chernoff_information(m));
    unsafe {
        t_star.write(result.t_star);
        c.write(result.c);
    }
    BfStatus::Ok
}

/// Analytic bracket (A, B) around the optimizer; fails with a domain or
/// near-degenerate status when the bracket is undefined for the scenario.
///
/// # Safety
/// `scenario` must be null or a live handle; `lo` and `hi` must be null or
/// valid for writing one f64 each.
#[no_mangle]
pub unsafe extern "C" fn bf_scenario_bracket(
    scenario: *const BfScenario,
    lo: *mut f64,
    hi: *mut f64,
) -> BfStatus {
    let Some(s) = (unsafe { scenario.as_ref() }) else {
        return BfStatus::NullArgument;
    };
    if lo.is_null() || hi.is_null() {
        return BfStatus::NullArgument;
    }
    let m = try_ffi!(marginalize(s.params.alpha(), s.attack, s.sensor));
    let (a, b) = try_ffi!(t_star_bounds(m, s.sensor));
    unsafe {
        lo.write(a);
        hi.write(b);
    }
    BfStatus::Ok
}

/// ln of the exact Bayesian error probability at the scenario's sensor count.
///
/// # Safety
/// `scenario` must be null or a live handle; `ln_pe` must be null or valid
/// for writing one f64.
#[no_mangle]
pub unsafe extern "C" fn bf_scenario_log_error_probability(
    scenario: *const BfScenario,
    ln_pe: *mut f64,
) -> BfStatus {
    let Some(s) = (unsafe { scenario.as_ref() }) else {
        return BfStatus::NullArgument;
    };
    if ln_pe.is_null() {
        return BfStatus::NullArgument;
    }
    let m = try_ffi!(marginalize(s.params.alpha(), s.attack, s.sensor));
    let value = try_ffi!(exact_log_error_probability(&s.params, &m));
    unsafe { ln_pe.write(value) };
    BfStatus::Ok
}

/// Monte Carlo simulation of the scenario under a Gaussian sensing model
/// consistent with the scenario's sensor. Deterministic in
/// (seed, mode, trials) for any worker count.
///
/// # Safety
/// `scenario` must be null or a live handle; `out` must be null or valid for
/// writing one [`BfSimReport`].
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn bf_scenario_simulate(
    scenario: *const BfScenario,
    theta: f64,
    lambda: f64,
    trials: u64,
    seed: u64,
    mode: BfSamplingMode,
    workers: u32,
    out: *mut BfSimReport,
) -> BfStatus {
    let Some(s) = (unsafe { scenario.as_ref() }) else {
        return BfStatus::NullArgument;
    };
    if out.is_null() {
        return BfStatus::NullArgument;
    }
    let model = try_ffi!(GaussianSensingModel::new(theta, lambda));
    let sampling = match mode {
        BfSamplingMode::FixedFraction => SamplingMode::FixedFraction,
        BfSamplingMode::PerNodeBernoulli => SamplingMode::PerNodeBernoulli,
    };
    let report = try_ffi!(simulate(
        &s.params, s.sensor, s.attack, model, trials, seed, sampling, workers
    ));
    unsafe {
        out.write(BfSimReport {
            trials: report.trials,
            errors_h0: report.errors_h0,
            errors_h1: report.errors_h1,
            pe_hat: report.pe_hat(),
            seed: report.seed,
            sampling_mode: mode,
        });
    }
    BfStatus::Ok
}

/// Chernoff information directly from a pair of fused marginals.
///
/// # Safety
/// `t_star` and `c` must be null or valid for writing one f64 each.
#[no_mangle]
pub unsafe extern "C" fn bf_chernoff_information(
    pi10: f64,
    pi11: f64,
    t_star: *mut f64,
    c: *mut f64,
) -> BfStatus {
    if t_star.is_null() || c.is_null() {
        return BfStatus::NullArgument;
    }
    let m = try_ffi!(FusedMarginals::new(pi10, pi11));
    let result = try_ffi!(chernoff_information(m));
    unsafe {
        t_star.write(result.t_star);
        c.write(result.c);
    }
    BfStatus::Ok
}

/// Minimum Byzantine fraction at which the attack blinds the fusion center;
/// +infinity for the honest strategy (0, 0).
///
/// # Safety
/// `fraction` must be null or valid for writing one f64.
#[no_mangle]
pub unsafe extern "C" fn bf_blinding_fraction(
    p10: f64,
    p01: f64,
    fraction: *mut f64,
) -> BfStatus {
    if fraction.is_null() {
        return BfStatus::NullArgument;
    }
    let attack = try_ffi!(AttackStrategy::new(p10, p01));
    unsafe { fraction.write(blinding_fraction(attack)) };
    BfStatus::Ok
}

/// Optimal attack for a Byzantine fraction. In the blinding regime
/// `line_sum` receives 1/alpha (the optimal set is p10 + p01 = line_sum);
/// below it, `line_sum` receives NaN.
///
/// # Safety
/// All pointer arguments must be null or valid for writing one element.
#[no_mangle]
pub unsafe extern "C" fn bf_optimal_attack(
    alpha: f64,
    p10: *mut f64,
    p01: *mut f64,
    regime: *mut BfAttackRegime,
    line_sum: *mut f64,
) -> BfStatus {
    if p10.is_null() || p01.is_null() || regime.is_null() || line_sum.is_null() {
        return BfStatus::NullArgument;
    }
    let optimal = try_ffi!(optimal_attack(alpha));
    unsafe {
        p10.write(optimal.representative.p10());
        p01.write(optimal.representative.p01());
        regime.write(match optimal.regime {
            AttackRegime::SubBlinding => BfAttackRegime::SubBlinding,
            AttackRegime::Blinding => BfAttackRegime::Blinding,
        });
        line_sum.write(optimal.blinding_line_sum.unwrap_or(f64::NAN));
    }
    BfStatus::Ok
}

/// Guaranteed exponent of the test designed against the upper bound
/// `alpha_tilde`; zero at and above 0.5.
///
/// # Safety
/// `c` must be null or valid for writing one f64.
#[no_mangle]
pub unsafe extern "C" fn bf_robust_design_exponent(
    alpha_tilde: f64,
    pd: f64,
    pf: f64,
    c: *mut f64,
) -> BfStatus {
    if c.is_null() {
        return BfStatus::NullArgument;
    }
    let sensor = try_ffi!(SensorOperatingPoint::new(pd, pf));
    let value = try_ffi!(robust_design_exponent(alpha_tilde, sensor));
    unsafe { c.write(value) };
    BfStatus::Ok
}
