#pragma once

#include <cstdint>

#include "core/auc.hpp"
#include "core/truncated_normal.hpp"

namespace aucgibbs {

/// Prior on the AUC over [0,1]: flat, or a truncated normal with the given
/// location and scale (scale > 0).
struct Prior {
    enum class Kind { Flat, TruncatedNormal };

    Kind kind = Kind::Flat;
    double location = 0.0;
    double scale = 1.0;

    static Prior flat() { return {}; }
    static Prior truncated_normal(double location, double scale);
};

/// Loss-based posterior for the AUC: a truncated normal on [0,1] whose
/// parameters resolve in closed form from (theta_hat, m, n, omega, prior).
/// Flat prior: mu = theta_hat, sigma = (2 omega m n)^{-1/2}.
/// Informative prior (mu0, sigma0): with t = 2 omega sigma0^2 m n,
/// mu = (mu0 + t theta_hat)/(1 + t), sigma = sigma0/sqrt(1 + t).
struct GibbsPosterior {
    double mu_mn;
    double sigma_mn;
    double omega;
    double theta_hat;
    std::int64_t m;
    std::int64_t n;
    Prior prior;
};

/// 100(1-alpha)% highest-density credible interval, possibly clipped at
/// the support boundary. Posterior mass of [lower, upper] equals level to
/// within 1e-8.
struct CredibleInterval {
    double lower;
    double upper;
    double level;
};

GibbsPosterior build_posterior(const ScoreData& data, const Prior& prior, double omega);

/// Closed-form variant when theta_hat is already known (bootstrap loops
/// avoid recomputing it).
GibbsPosterior posterior_from_estimate(double theta_hat, std::int64_t m, std::int64_t n,
                                       const Prior& prior, double omega);

/// The posterior as a distribution object on [0,1].
TruncatedNormal posterior_distribution(const GibbsPosterior& p);

/// Posterior mean and variance (truncated-normal closed forms).
Moments posterior_moments(const GibbsPosterior& p);

/// Highest-density interval by bisection on the half-width of the density
/// level set; exact for a unimodal truncated normal, no sampling noise.
CredibleInterval hpd_interval(const GibbsPosterior& p, double alpha);

/// Variance-matching learning rate 1/(2 m n V) with V the Hoeffding
/// plug-in variance, so the flat-prior posterior variance before
/// truncation equals V exactly. Throws NonpositiveVarianceError when the
/// variance estimate is <= 0 (callers may fall back to bootstrap
/// calibration).
double analytic_learning_rate(const ScoreData& data);

}  // namespace aucgibbs
