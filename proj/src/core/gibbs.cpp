#include "core/gibbs.hpp"

#include <cmath>
#include <stdexcept>

#include "core/errors.hpp"
#include "core/normal.hpp"

namespace aucgibbs {

Prior Prior::truncated_normal(double location, double scale) {
    if (!(scale > 0.0) || !std::isfinite(scale) || !std::isfinite(location))
        throw std::invalid_argument("Prior: truncated normal needs finite location and scale > 0");
    return {Kind::TruncatedNormal, location, scale};
}

GibbsPosterior posterior_from_estimate(double theta_hat, std::int64_t m, std::int64_t n,
                                       const Prior& prior, double omega) {
    if (!(omega > 0.0) || !std::isfinite(omega))
        throw std::invalid_argument("posterior: omega must be positive and finite");
    if (!(theta_hat >= 0.0 && theta_hat <= 1.0))
        throw std::invalid_argument("posterior: theta_hat must lie in [0,1]");
    if (m < 1 || n < 1) throw std::invalid_argument("posterior: m and n must be >= 1");

    GibbsPosterior p;
    p.omega = omega;
    p.theta_hat = theta_hat;
    p.m = m;
    p.n = n;
    p.prior = prior;
    const double mn = static_cast<double>(m) * static_cast<double>(n);
    if (prior.kind == Prior::Kind::Flat) {
        p.mu_mn = theta_hat;
        p.sigma_mn = 1.0 / std::sqrt(2.0 * omega * mn);
    } else {
        const double s02 = prior.scale * prior.scale;
        const double t = 2.0 * omega * s02 * mn;
        p.mu_mn = (prior.location + t * theta_hat) / (1.0 + t);
        p.sigma_mn = std::sqrt(s02 / (1.0 + t));
    }
    return p;
}

GibbsPosterior build_posterior(const ScoreData& data, const Prior& prior, double omega) {
    return posterior_from_estimate(mann_whitney(data), data.m(), data.n(), prior, omega);
}

TruncatedNormal posterior_distribution(const GibbsPosterior& p) {
    return TruncatedNormal(p.mu_mn, p.sigma_mn, 0.0, 1.0);
}

Moments posterior_moments(const GibbsPosterior& p) {
    return truncnorm_moments(posterior_distribution(p));
}

CredibleInterval hpd_interval(const GibbsPosterior& p, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("hpd_interval: alpha must lie in (0,1)");
    const double mu = p.mu_mn, sigma = p.sigma_mn;
    const double target = 1.0 - alpha;
    const double z = normal_interval_mass((0.0 - mu) / sigma, (1.0 - mu) / sigma);
    if (!(z > 0.0))
        throw DegenerateIntervalError("hpd_interval: posterior mass underflows on [0,1]");

    // The density level set of a unimodal truncated normal is
    // {x : |x - mu| <= w} intersected with [0,1]; its mass is monotone
    // increasing in w, so bisect on the half-width.
    auto mass = [&](double w) {
        const double lo = std::max(0.0, mu - w);
        const double hi = std::min(1.0, mu + w);
        if (!(hi > lo)) return 0.0;
        return normal_interval_mass((lo - mu) / sigma, (hi - mu) / sigma) / z;
    };

    double w_lo = 0.0;
    double w_hi = std::max(std::fabs(mu), std::fabs(1.0 - mu));  // covers all of [0,1]
    for (int it = 0; it < 200; ++it) {
        const double w = 0.5 * (w_lo + w_hi);
        const double f = mass(w);
        if (std::fabs(f - target) <= 1e-8) {
            w_lo = w_hi = w;
            break;
        }
        (f < target ? w_lo : w_hi) = w;
        if (w_hi - w_lo <= 1e-16 * (1.0 + w_hi)) break;
    }
    const double w = 0.5 * (w_lo + w_hi);
    return {std::max(0.0, mu - w), std::min(1.0, mu + w), target};
}

double analytic_learning_rate(const ScoreData& data) {
    const TauEstimates tau = tau_estimates(data);
    const double v = asymptotic_variance(tau.tau10, tau.tau01, data.m(), data.n());
    if (!(v > 0.0)) throw NonpositiveVarianceError();
    return 1.0 / (2.0 * static_cast<double>(data.m()) * static_cast<double>(data.n()) * v);
}

}  // namespace aucgibbs
