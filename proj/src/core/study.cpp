#include "core/study.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aucgibbs {

namespace {

// Stream purposes, kept distinct so adding draws to one phase never
// shifts another.
constexpr std::uint64_t kPurposeData = 1;
constexpr std::uint64_t kPurposeFit = 2;

struct RepSummary {
    double post_mean;
    double post_sd;
    double ci_lower;
    double ci_upper;
};

RepSummary gibbs_replication(const ScoreData& data, const StudyConfig& cfg,
                             std::uint64_t fit_seed) {
    CalibrationConfig calib = cfg.calibration;
    calib.alpha = cfg.alpha;
    calib.seed = fit_seed;
    const CalibrationTrace trace = calibrate(data, Prior::flat(), calib);
    const GibbsPosterior post = build_posterior(data, Prior::flat(), trace.omega_hat);
    const Moments mom = posterior_moments(post);
    const CredibleInterval ci = hpd_interval(post, cfg.alpha);
    return {mom.mean, std::sqrt(mom.variance), ci.lower, ci.upper};
}

RepSummary brl_replication(const ScoreData& data, const StudyConfig& cfg,
                           std::uint64_t fit_seed) {
    const auto draws = brl_run(data, cfg.brl, RngStream(fit_seed, 0));
    std::vector<double> auc;
    auc.reserve(draws.size());
    for (const auto& d : draws) auc.push_back(d.auc);
    double mean = 0.0;
    for (double x : auc) mean += x;
    mean /= static_cast<double>(auc.size());
    double ss = 0.0;
    for (double x : auc) ss += (x - mean) * (x - mean);
    const double sd = std::sqrt(ss / static_cast<double>(auc.size() - 1));
    const double lo = sample_quantile(auc, 0.5 * cfg.alpha);
    const double hi = sample_quantile(auc, 1.0 - 0.5 * cfg.alpha);
    return {mean, sd, lo, hi};
}

}  // namespace

double sample_quantile(std::vector<double> values, double p) {
    if (values.empty()) throw std::invalid_argument("sample_quantile: empty sample");
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("sample_quantile: p must lie in [0,1]");
    std::sort(values.begin(), values.end());
    const double h = (static_cast<double>(values.size()) - 1.0) * p;
    const auto k = static_cast<std::size_t>(std::floor(h));
    if (k + 1 >= values.size()) return values.back();
    const double frac = h - std::floor(h);
    return values[k] + frac * (values[k + 1] - values[k]);
}

std::vector<StudyResult> run_study(ScenarioId scenario,
                                   const std::vector<std::int64_t>& n_grid,
                                   const StudyConfig& cfg) {
    if (cfg.replications < 0)
        throw std::invalid_argument("run_study: replications must be >= 0");
    std::vector<StudyResult> results;
    if (cfg.replications == 0) return results;

    const double theta_star = true_auc(scenario);
    for (std::int64_t n : n_grid) {
        double sum_mean = 0.0, sum_absdev = 0.0, sum_sd = 0.0, sum_len = 0.0;
        std::int64_t covered = 0;
        for (std::int64_t rep = 0; rep < cfg.replications; ++rep) {
            const std::uint64_t data_id = RngStream::derive_id(
                {static_cast<std::uint64_t>(scenario), static_cast<std::uint64_t>(n),
                 static_cast<std::uint64_t>(cfg.method), static_cast<std::uint64_t>(rep),
                 kPurposeData});
            RngStream data_rng(cfg.seed, data_id);
            const ScoreData data = generate(scenario, n, n, data_rng);

            const std::uint64_t fit_seed = RngStream::derive_id(
                {cfg.seed, static_cast<std::uint64_t>(scenario),
                 static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(cfg.method),
                 static_cast<std::uint64_t>(rep), kPurposeFit});
            const RepSummary rs = cfg.method == Method::Gibbs
                                      ? gibbs_replication(data, cfg, fit_seed)
                                      : brl_replication(data, cfg, fit_seed);

            sum_mean += rs.post_mean;
            sum_absdev += std::fabs(rs.post_mean - theta_star);
            sum_sd += rs.post_sd;
            sum_len += rs.ci_upper - rs.ci_lower;
            if (rs.ci_lower <= theta_star && theta_star <= rs.ci_upper) ++covered;
        }
        const double reps = static_cast<double>(cfg.replications);
        StudyResult r;
        r.scenario = scenario;
        r.n = n;
        r.method = cfg.method;
        r.bias = cfg.mean_absolute_bias ? sum_absdev / reps
                                        : std::fabs(sum_mean / reps - theta_star);
        r.avg_posterior_sd = sum_sd / reps;
        r.mean_ci_length = sum_len / reps;
        r.coverage = static_cast<double>(covered) / reps;
        r.replications = cfg.replications;
        r.seed = cfg.seed;
        results.push_back(r);
    }
    return results;
}

std::vector<OmegaStudyRow> omega_study(ScenarioId scenario,
                                       const std::vector<std::int64_t>& n_grid,
                                       std::int64_t replications,
                                       const CalibrationConfig& calibration,
                                       std::int64_t oracle_mc_reps, double alpha,
                                       std::uint64_t seed) {
    if (replications < 1)
        throw std::invalid_argument("omega_study: replications must be >= 1");
    std::vector<OmegaStudyRow> rows;
    for (std::int64_t n : n_grid) {
        OmegaStudyRow row;
        row.n = n;
        row.omega_hats.reserve(static_cast<std::size_t>(replications));
        for (std::int64_t rep = 0; rep < replications; ++rep) {
            const std::uint64_t data_id = RngStream::derive_id(
                {static_cast<std::uint64_t>(scenario), static_cast<std::uint64_t>(n),
                 static_cast<std::uint64_t>(rep), kPurposeData, 0xA1});
            RngStream data_rng(seed, data_id);
            const ScoreData data = generate(scenario, n, n, data_rng);
            CalibrationConfig calib = calibration;
            calib.alpha = alpha;
            calib.seed = RngStream::derive_id({seed, static_cast<std::uint64_t>(scenario),
                                               static_cast<std::uint64_t>(n),
                                               static_cast<std::uint64_t>(rep), kPurposeFit,
                                               0xA1});
            row.omega_hats.push_back(calibrate(data, Prior::flat(), calib).omega_hat);
        }
        row.omega_oracle = oracle_learning_rate(
            scenario, n, n, alpha, oracle_mc_reps,
            RngStream(seed, RngStream::derive_id({static_cast<std::uint64_t>(scenario),
                                                  static_cast<std::uint64_t>(n), 0xF3})));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace aucgibbs
