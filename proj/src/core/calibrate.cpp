#include "core/calibrate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "core/errors.hpp"

namespace aucgibbs {

namespace {

constexpr double kOmegaMin = 1e-12;

void validate(const CalibrationConfig& cfg) {
    if (cfg.bootstrap_samples < 1)
        throw std::invalid_argument("calibrate: bootstrap_samples must be >= 1");
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0))
        throw std::invalid_argument("calibrate: alpha must lie in (0,1)");
    if (!(cfg.epsilon > 0.0))
        throw std::invalid_argument("calibrate: epsilon must be positive");
    if (!(cfg.kappa_exponent > 0.5 && cfg.kappa_exponent <= 1.0))
        throw std::invalid_argument("calibrate: kappa_exponent must lie in (0.5, 1]");
    if (cfg.max_iterations < 0)
        throw std::invalid_argument("calibrate: max_iterations must be >= 0");
}

// Coverage at rate omega given precomputed bootstrap estimates; intervals
// are a deterministic function of (theta_hat_b, m, n), so the resample
// data never needs to be revisited.
double coverage_from_estimates(const std::vector<double>& boot_theta, std::int64_t m,
                               std::int64_t n, double theta_hat, double omega,
                               double alpha, const Prior& prior) {
    std::int64_t covered = 0;
    for (double tb : boot_theta) {
        const CredibleInterval ci =
            hpd_interval(posterior_from_estimate(tb, m, n, prior, omega), alpha);
        if (ci.lower <= theta_hat && theta_hat <= ci.upper) ++covered;
    }
    return static_cast<double>(covered) / static_cast<double>(boot_theta.size());
}

}  // namespace

ScoreData bootstrap_resample(const ScoreData& data, RngStream& rng) {
    const auto m = static_cast<std::size_t>(data.m());
    const auto n = static_cast<std::size_t>(data.n());
    std::vector<double> u(m), v(n);
    for (auto& x : u) x = data.u[rng.uniform_below(m)];
    for (auto& x : v) x = data.v[rng.uniform_below(n)];
    return ScoreData(std::move(u), std::move(v));
}

double coverage_estimate(const std::vector<ScoreData>& boot_samples, double theta_hat,
                         double omega, double alpha, const Prior& prior) {
    if (boot_samples.empty())
        throw std::invalid_argument("coverage_estimate: need at least one bootstrap sample");
    std::vector<double> boot_theta;
    boot_theta.reserve(boot_samples.size());
    for (const auto& b : boot_samples) boot_theta.push_back(mann_whitney(b));
    return coverage_from_estimates(boot_theta, boot_samples.front().m(),
                                   boot_samples.front().n(), theta_hat, omega, alpha,
                                   prior);
}

CalibrationTrace calibrate(const ScoreData& data, const Prior& prior,
                           const CalibrationConfig& cfg) {
    validate(cfg);
    const double theta_hat = mann_whitney(data);

    double omega;
    if (cfg.omega_init > 0.0) {
        omega = cfg.omega_init;
    } else {
        try {
            omega = analytic_learning_rate(data);
        } catch (const NonpositiveVarianceError&) {
            omega = 1.0;
        }
    }

    // The bootstrap set is drawn once, before the loop, and reused for
    // every coverage evaluation; only theta_hat per resample is needed.
    RngStream rng(cfg.seed, RngStream::derive_id({0x626f6f74ULL}));
    std::vector<double> boot_theta(static_cast<std::size_t>(cfg.bootstrap_samples));
    for (std::size_t b = 0; b < boot_theta.size(); ++b) {
        RngStream sub = rng.substream(b);
        boot_theta[b] = mann_whitney(bootstrap_resample(data, sub));
    }

    CalibrationTrace trace;
    trace.converged = false;
    for (std::int64_t t = 0; t < cfg.max_iterations; ++t) {
        const double coverage = coverage_from_estimates(boot_theta, data.m(), data.n(),
                                                        theta_hat, omega, cfg.alpha, prior);
        const double delta = coverage - (1.0 - cfg.alpha);
        trace.iterates.push_back({t, omega, coverage, delta});
        const double kappa = std::pow(static_cast<double>(t + 1), -cfg.kappa_exponent);
        omega = std::max(kOmegaMin, omega + kappa * delta);
        if (std::fabs(delta) < cfg.epsilon) {
            trace.converged = true;
            break;
        }
    }
    trace.omega_hat = omega;
    return trace;
}

double oracle_learning_rate(ScenarioId scenario, std::int64_t m, std::int64_t n,
                            double alpha, std::int64_t mc_reps, RngStream rng) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("oracle_learning_rate: alpha must lie in (0,1)");
    constexpr double kTol = 0.002;
    if (mc_reps < 500)
        throw std::invalid_argument(
            "oracle_learning_rate: mc_reps too small to resolve the coverage tolerance");

    // Fresh datasets drawn once and reused across omega: coverage is then
    // exactly nonincreasing in omega and bisection is safe.
    const double theta_star = true_auc(scenario);
    std::vector<double> theta(static_cast<std::size_t>(mc_reps));
    for (std::size_t r = 0; r < theta.size(); ++r) {
        RngStream sub = rng.substream(r);
        theta[r] = mann_whitney(generate(scenario, m, n, sub));
    }
    const Prior prior = Prior::flat();
    auto coverage = [&](double omega) {
        std::int64_t covered = 0;
        for (double th : theta) {
            const CredibleInterval ci =
                hpd_interval(posterior_from_estimate(th, m, n, prior, omega), alpha);
            if (ci.lower <= theta_star && theta_star <= ci.upper) ++covered;
        }
        return static_cast<double>(covered) / static_cast<double>(mc_reps);
    };

    const double target = 1.0 - alpha;
    double lo = 1e-8, hi = 1e6;  // log-bisection bracket
    for (int guard = 0; coverage(lo) < target; ++guard) {
        lo /= 100.0;
        if (guard > 20) throw std::runtime_error("oracle_learning_rate: no lower bracket");
    }
    for (int guard = 0; coverage(hi) > target; ++guard) {
        hi *= 100.0;
        if (guard > 20) throw std::runtime_error("oracle_learning_rate: no upper bracket");
    }
    // Coverage over a fixed dataset pool is a step function of omega
    // (datasets sharing one theta_hat flip together), so a single jump can
    // straddle the tolerance band. The crossing point the bracket then
    // collapses onto is the solution of the monotone equation.
    double mid = std::exp(0.5 * (std::log(lo) + std::log(hi)));
    for (int it = 0; it < 200; ++it) {
        mid = std::exp(0.5 * (std::log(lo) + std::log(hi)));
        const double c = coverage(mid);
        if (std::fabs(c - target) <= kTol) break;
        (c > target ? lo : hi) = mid;
        if (std::log(hi) - std::log(lo) < 1e-10) break;
    }
    return mid;
}

}  // namespace aucgibbs
