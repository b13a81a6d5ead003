#pragma once

#include <cstdint>
#include <vector>

#include "core/gibbs.hpp"
#include "core/rng.hpp"
#include "core/scenarios.hpp"

namespace aucgibbs {

/// Bootstrap/stochastic-approximation settings. kappa_exponent in (0.5, 1]
/// makes the step sizes (t+1)^{-kappa_exponent} divergent in sum but
/// square-summable. omega_init <= 0 means "auto": start from the analytic
/// learning rate when it exists, else 1.
struct CalibrationConfig {
    std::int64_t bootstrap_samples = 1000;
    double alpha = 0.05;
    double epsilon = 0.01;
    double kappa_exponent = 0.51;
    double omega_init = 0.0;
    std::int64_t max_iterations = 1000;
    std::uint64_t seed = 0;
};

struct CalibrationIterate {
    std::int64_t t;
    double omega;     // rate at which coverage was evaluated
    double coverage;  // bootstrap coverage estimate at that rate
    double delta;     // coverage - (1 - alpha)
};

struct CalibrationTrace {
    double omega_hat;
    std::vector<CalibrationIterate> iterates;
    bool converged;
};

/// m (resp. n) draws with replacement from each group; group sizes kept.
ScoreData bootstrap_resample(const ScoreData& data, RngStream& rng);

/// Fraction of bootstrap-sample HPD intervals, built at rate omega with
/// the given prior, that contain the original-sample theta_hat.
double coverage_estimate(const std::vector<ScoreData>& boot_samples, double theta_hat,
                         double omega, double alpha, const Prior& prior);

/// Bootstrap-calibrated learning rate: the bootstrap set is drawn once,
/// then omega follows the stochastic-approximation recursion
/// omega <- omega + kappa_t (coverage(omega) - (1-alpha)) until
/// |delta| < epsilon (converged) or max_iterations is hit. omega is
/// clamped at 1e-12. Non-convergence is a reported state, not an error.
CalibrationTrace calibrate(const ScoreData& data, const Prior& prior,
                           const CalibrationConfig& cfg);

/// Monte Carlo oracle rate for a known generator: draws mc_reps datasets
/// once, then bisects log omega until the fraction of flat-prior HPD
/// intervals covering the true AUC is within 0.002 of 1-alpha (coverage is
/// exactly nonincreasing in omega over a fixed dataset set). When a jump
/// of the coverage step function straddles the band, the crossing point
/// the bracket collapses onto is returned. Requires mc_reps >= 500 so the
/// Monte Carlo granularity resolves the tolerance.
double oracle_learning_rate(ScenarioId scenario, std::int64_t m, std::int64_t n,
                            double alpha, std::int64_t mc_reps, RngStream rng);

}  // namespace aucgibbs
