#pragma once

#include <cstdint>
#include <vector>

#include "core/brl.hpp"
#include "core/calibrate.hpp"
#include "core/scenarios.hpp"

namespace aucgibbs {

enum class Method : int { Gibbs = 0, Brl = 1 };

/// Per-cell replication settings. The Gibbs arm calibrates its learning
/// rate per replication with `calibration`; the BRL arm runs `brl` per
/// replication. `mean_absolute_bias` switches the bias column from
/// |mean of posterior means - theta*| (the default) to the mean of
/// per-replication absolute deviations.
struct StudyConfig {
    Method method = Method::Gibbs;
    std::int64_t replications = 1000;
    double alpha = 0.05;
    CalibrationConfig calibration;
    BrlConfig brl;
    bool mean_absolute_bias = false;
    std::uint64_t seed = 0;
};

struct StudyResult {
    ScenarioId scenario;
    std::int64_t n;  // group size, m = n
    Method method;
    double bias;
    double avg_posterior_sd;
    double mean_ci_length;
    double coverage;
    std::int64_t replications;
    std::uint64_t seed;
};

/// Replication study over a grid of equal group sizes. Every replication
/// draws from its own deterministic substream of (seed, scenario, n,
/// method, rep), so results are bit-reproducible and order-independent.
/// Zero replications yields an empty vector.
std::vector<StudyResult> run_study(ScenarioId scenario, const std::vector<std::int64_t>& n_grid,
                                   const StudyConfig& cfg);

/// Lower and upper type-7 sample quantiles (the linear-interpolation rule)
/// of a draw vector; used for the equal-tailed BRL interval.
double sample_quantile(std::vector<double> values, double p);

struct OmegaStudyRow {
    std::int64_t n;
    std::vector<double> omega_hats;  // one calibrated rate per replication
    double omega_oracle;
};

/// Per n: `replications` bootstrap-calibrated rates on fresh scenario
/// draws plus one Monte Carlo oracle rate. Empty grid yields empty rows.
std::vector<OmegaStudyRow> omega_study(ScenarioId scenario,
                                       const std::vector<std::int64_t>& n_grid,
                                       std::int64_t replications,
                                       const CalibrationConfig& calibration,
                                       std::int64_t oracle_mc_reps, double alpha,
                                       std::uint64_t seed);

}  // namespace aucgibbs
