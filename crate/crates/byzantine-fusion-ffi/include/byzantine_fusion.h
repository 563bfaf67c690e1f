/* C ABI for the byzantine-fusion library. Generated by cbindgen; do not edit. */

#ifndef BYZANTINE_FUSION_H
#define BYZANTINE_FUSION_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Which side of the blinding boundary an optimal attack sits on.
 */
typedef enum BfAttackRegime {
  BF_ATTACK_REGIME_SUB_BLINDING = 0,
  BF_ATTACK_REGIME_BLINDING = 1,
} BfAttackRegime;

/**
 * Byzantine sampling mode for the simulator.
 */
typedef enum BfSamplingMode {
  BF_SAMPLING_MODE_FIXED_FRACTION = 0,
  BF_SAMPLING_MODE_PER_NODE_BERNOULLI = 1,
} BfSamplingMode;

/**
 * Status codes mirroring the library's error classes.
 */
typedef enum BfStatus {
  BF_STATUS_OK = 0,
  BF_STATUS_VALIDATION_ERROR = 1,
  BF_STATUS_DEGENERATE_MODEL = 2,
  BF_STATUS_DOMAIN_ERROR = 3,
  BF_STATUS_ORDERING_ERROR = 4,
  BF_STATUS_NEAR_DEGENERATE = 5,
  BF_STATUS_NUMERIC_ERROR = 6,
  BF_STATUS_SIZE_ERROR = 7,
  BF_STATUS_CONSISTENCY_ERROR = 8,
  BF_STATUS_CONFIG_ERROR = 9,
  BF_STATUS_IO_ERROR = 10,
  BF_STATUS_NULL_ARGUMENT = 100,
} BfStatus;

/**
 * Opaque scenario handle: a validated (sensor, network, attack) triple.
 */
typedef struct BfScenario BfScenario;

/**
 * Monte Carlo outcome; `pe_hat` = (errors_h0 + errors_h1) / trials.
 */
typedef struct BfSimReport {
  uint64_t trials;
  uint64_t errors_h0;
  uint64_t errors_h1;
  double pe_hat;
  uint64_t seed;
  enum BfSamplingMode sampling_mode;
} BfSimReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code.
 */
const char *bf_status_message(enum BfStatus status);

/**
 * Library version as a static NUL-terminated string.
 */
const char *bf_version(void);

/**
 * Creates a validated scenario handle. On success writes the handle through
 * `out`; the caller owns it and must release it with [`bf_scenario_free`].
 *
 * # Safety
 * `out` must be null or valid for writing one pointer.
 */
enum BfStatus bf_scenario_new(double pd,
                              double pf,
                              double alpha,
                              double p0,
                              double p1,
                              uint32_t n,
                              double p10,
                              double p01,
                              struct BfScenario **out);

/**
 * Releases a scenario created by [`bf_scenario_new`]. Null is a no-op.
 *
 * # Safety
 * `scenario` must be null or a pointer previously returned by
 * [`bf_scenario_new`] and not yet freed.
 */
void bf_scenario_free(struct BfScenario *scenario);

/**
 * Fused report marginals (pi10, pi11) for the scenario.
 *
 * # Safety
 * `scenario` must be null or a live handle; `pi10` and `pi11` must be null
 * or valid for writing one f64 each.
 */
enum BfStatus bf_scenario_marginals(const struct BfScenario *scenario, double *pi10, double *pi11);

/**
 * Chernoff information and optimizer for the scenario's fused marginals.
 *
 * # Safety
 * `scenario` must be null or a live handle; `t_star` and `c` must be null
 * or valid for writing one f64 each.
 */
enum BfStatus bf_scenario_chernoff(const struct BfScenario *scenario, double *t_star, double *c);

/**
 * Analytic bracket (A, B) around the optimizer; fails with a domain or
 * near-degenerate status when the bracket is undefined for the scenario.
 *
 * # Safety
 * `scenario` must be null or a live handle; `lo` and `hi` must be null or
 * valid for writing one f64 each.
 */
enum BfStatus bf_scenario_bracket(const struct BfScenario *scenario, double *lo, double *hi);

/**
 * ln of the exact Bayesian error probability at the scenario's sensor count.
 *
 * # Safety
 * `scenario` must be null or a live handle; `ln_pe` must be null or valid
 * for writing one f64.
 */
enum BfStatus bf_scenario_log_error_probability(const struct BfScenario *scenario, double *ln_pe);

/**
 * Monte Carlo simulation of the scenario under a Gaussian sensing model
 * consistent with the scenario's sensor. Deterministic in
 * (seed, mode, trials) for any worker count.
 *
 * # Safety
 * `scenario` must be null or a live handle; `out` must be null or valid for
 * writing one [`BfSimReport`].
 */
enum BfStatus bf_scenario_simulate(const struct BfScenario *scenario,
                                   double theta,
                                   double lambda,
                                   uint64_t trials,
                                   uint64_t seed,
                                   enum BfSamplingMode mode,
                                   uint32_t workers,
                                   struct BfSimReport *out);

/**
 * Chernoff information directly from a pair of fused marginals.
 *
 * # Safety
 * `t_star` and `c` must be null or valid for writing one f64 each.
 */
enum BfStatus bf_chernoff_information(double pi10, double pi11, double *t_star, double *c);

/**
 * Minimum Byzantine fraction at which the attack blinds the fusion center;
 * +infinity for the honest strategy (0, 0).
 *
 * # Safety
 * `fraction` must be null or valid for writing one f64.
 */
enum BfStatus bf_blinding_fraction(double p10, double p01, double *fraction);

/**
 * Optimal attack for a Byzantine fraction. In the blinding regime
 * `line_sum` receives 1/alpha (the optimal set is p10 + p01 = line_sum);
 * below it, `line_sum` receives NaN.
 *
 * # Safety
 * All pointer arguments must be null or valid for writing one element.
 */
enum BfStatus bf_optimal_attack(double alpha,
                                double *p10,
                                double *p01,
                                enum BfAttackRegime *regime,
                                double *line_sum);

/**
 * Guaranteed exponent of the test designed against the upper bound
 * `alpha_tilde`; zero at and above 0.5.
 *
 * # Safety
 * `c` must be null or valid for writing one f64.
 */
enum BfStatus bf_robust_design_exponent(double alpha_tilde, double pd, double pf, double *c);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* BYZANTINE_FUSION_H */
