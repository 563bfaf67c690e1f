//! Exercises the C ABI exactly the way a foreign binding would: through the
//! exported functions, checking status codes and out-parameters.

use std::ptr;

use byzantine_fusion_ffi::*;

fn new_scenario(pd: f64, pf: f64, alpha: f64, n: u32, p10: f64, p01: f64) -> *mut BfScenario {
    let mut handle: *mut BfScenario = ptr::null_mut();
    let status = unsafe { bf_scenario_new(pd, pf, alpha, 0.5, 0.5, n, p10, p01, &mut handle) };
    assert_eq!(status, BfStatus::Ok);
    assert!(!handle.is_null());
    handle
}

#[test]
fn scenario_round_trip_reference_scenario() {
    let handle = new_scenario(0.6, 0.4, 0.4, 11, 1.0, 1.0);

    let (mut pi10, mut pi11) = (0.0, 0.0);
    assert_eq!(
        unsafe { bf_scenario_marginals(handle, &mut pi10, &mut pi11) },
        BfStatus::Ok
    );
    assert!((pi10 - 0.48).abs() < 1e-15);
    assert!((pi11 - 0.52).abs() < 1e-15);

    let (mut t_star, mut c) = (0.0, 0.0);
    assert_eq!(
        unsafe { bf_scenario_chernoff(handle, &mut t_star, &mut c) },
        BfStatus::Ok
    );
    assert!((t_star - 0.5).abs() < 1e-12);
    assert!((c - -(2.0 * (0.48f64 * 0.52).sqrt()).ln()).abs() < 1e-12);

    let (mut lo, mut hi) = (0.0, 0.0);
    assert_eq!(
        unsafe { bf_scenario_bracket(handle, &mut lo, &mut hi) },
        BfStatus::Ok
    );
    assert!(lo < t_star && t_star < hi);

    let mut ln_pe = 0.0;
    assert_eq!(
        unsafe { bf_scenario_log_error_probability(handle, &mut ln_pe) },
        BfStatus::Ok
    );
    assert!(ln_pe < 0.0 && ln_pe.is_finite());

    unsafe { bf_scenario_free(handle) };
}

#[test]
fn invalid_scenarios_report_validation_errors() {
    let mut handle: *mut BfScenario = ptr::null_mut();
    // pd <= pf violates the sensor invariant.
    assert_eq!(
        unsafe { bf_scenario_new(0.4, 0.6, 0.4, 0.5, 0.5, 11, 1.0, 1.0, &mut handle) },
        BfStatus::ValidationError
    );
    assert!(handle.is_null());
    // alpha out of range.
    assert_eq!(
        unsafe { bf_scenario_new(0.6, 0.4, 1.5, 0.5, 0.5, 11, 1.0, 1.0, &mut handle) },
        BfStatus::ValidationError
    );
    // null out pointer.
    assert_eq!(
        unsafe { bf_scenario_new(0.6, 0.4, 0.4, 0.5, 0.5, 11, 1.0, 1.0, ptr::null_mut()) },
        BfStatus::NullArgument
    );
}

#[test]
fn null_arguments_are_rejected_not_dereferenced() {
    let handle = new_scenario(0.6, 0.4, 0.4, 5, 1.0, 1.0);
    let mut x = 0.0;
    assert_eq!(
        unsafe { bf_scenario_marginals(ptr::null(), &mut x, &mut x) },
        BfStatus::NullArgument
    );
    assert_eq!(
        unsafe { bf_scenario_chernoff(handle, ptr::null_mut(), &mut x) },
        BfStatus::NullArgument
    );
    assert_eq!(
        unsafe { bf_blinding_fraction(1.0, 1.0, ptr::null_mut()) },
        BfStatus::NullArgument
    );
    unsafe { bf_scenario_free(handle) };
    unsafe { bf_scenario_free(ptr::null_mut()) }; // no-op by contract
}

#[test]
fn blinded_scenario_has_zero_information_and_no_bracket() {
    let handle = new_scenario(0.6, 0.4, 0.5, 5, 1.0, 1.0);
    let (mut t_star, mut c) = (9.0, 9.0);
    assert_eq!(
        unsafe { bf_scenario_chernoff(handle, &mut t_star, &mut c) },
        BfStatus::Ok
    );
    assert_eq!(c, 0.0);
    assert_eq!(t_star, 0.5);

    let (mut lo, mut hi) = (0.0, 0.0);
    let status = unsafe { bf_scenario_bracket(handle, &mut lo, &mut hi) };
    assert!(matches!(
        status,
        BfStatus::DomainError | BfStatus::NearDegenerate
    ));
    unsafe { bf_scenario_free(handle) };
}

#[test]
fn direct_chernoff_and_attack_queries() {
    let (mut t_star, mut c) = (0.0, 0.0);
    assert_eq!(
        unsafe { bf_chernoff_information(0.2, 0.8, &mut t_star, &mut c) },
        BfStatus::Ok
    );
    assert!((c - -(0.8f64.ln())).abs() < 1e-12);

    let mut fraction = 0.0;
    assert_eq!(
        unsafe { bf_blinding_fraction(1.0, 1.0, &mut fraction) },
        BfStatus::Ok
    );
    assert_eq!(fraction, 0.5);
    assert_eq!(
        unsafe { bf_blinding_fraction(0.0, 0.0, &mut fraction) },
        BfStatus::Ok
    );
    assert!(fraction.is_infinite());

    let (mut p10, mut p01, mut line_sum) = (0.0, 0.0, 0.0);
    let mut regime = BfAttackRegime::SubBlinding;
    assert_eq!(
        unsafe { bf_optimal_attack(0.8, &mut p10, &mut p01, &mut regime, &mut line_sum) },
        BfStatus::Ok
    );
    assert_eq!(regime, BfAttackRegime::Blinding);
    assert_eq!(p10, 0.625);
    assert_eq!(line_sum, 1.25);

    assert_eq!(
        unsafe { bf_optimal_attack(0.3, &mut p10, &mut p01, &mut regime, &mut line_sum) },
        BfStatus::Ok
    );
    assert_eq!(regime, BfAttackRegime::SubBlinding);
    assert_eq!((p10, p01), (1.0, 1.0));
    assert!(line_sum.is_nan());

    let mut exponent = 0.0;
    assert_eq!(
        unsafe { bf_robust_design_exponent(0.5, 0.6, 0.4, &mut exponent) },
        BfStatus::Ok
    );
    assert_eq!(exponent, 0.0);
}

#[test]
fn simulation_is_deterministic_across_worker_counts() {
    // theta = 1, lambda = 1 induces pf = Q(0.5), pd = Q(-0.5).
    let handle = new_scenario(
        0.691_462_461_274_013_1,
        0.308_537_538_725_986_9,
        0.2,
        7,
        1.0,
        1.0,
    );
    let run = |workers: u32| {
        let mut report = BfSimReport {
            trials: 0,
            errors_h0: 0,
            errors_h1: 0,
            pe_hat: 0.0,
            seed: 0,
            sampling_mode: BfSamplingMode::FixedFraction,
        };
        let status = unsafe {
            bf_scenario_simulate(
                handle,
                1.0,
                1.0,
                20_000,
                99,
                BfSamplingMode::PerNodeBernoulli,
                workers,
                &mut report,
            )
        };
        assert_eq!(status, BfStatus::Ok);
        report
    };
    let a = run(1);
    let b = run(4);
    assert_eq!(a.errors_h0, b.errors_h0);
    assert_eq!(a.errors_h1, b.errors_h1);
    assert_eq!(a.pe_hat, b.pe_hat);
    unsafe { bf_scenario_free(handle) };
}

#[test]
fn status_messages_and_version_are_static_strings() {
    for status in [
        BfStatus::Ok,
        BfStatus::ValidationError,
        BfStatus::NearDegenerate,
        BfStatus::NullArgument,
    ] {
        let ptr = bf_status_message(status);
        assert!(!ptr.is_null());
        let text = unsafe { std::ffi::CStr::from_ptr(ptr) }.to_str().unwrap();
        assert!(!text.is_empty());
    }
    let version = unsafe { std::ffi::CStr::from_ptr(bf_version()) }
        .to_str()
        .unwrap();
    assert_eq!(version, env!("CARGO_PKG_VERSION"));
}
