#include <cfloat>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "core/errors.hpp"
#include "core/gibbs.hpp"
#include "core/rng.hpp"
#include "core/scenarios.hpp"
#include "core/truncated_normal.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace aucgibbs;

namespace {

double interval_mass(const GibbsPosterior& p, double lo, double hi) {
    const TruncatedNormal d = posterior_distribution(p);
    return truncnorm_cdf(d, hi) - truncnorm_cdf(d, lo);
}

}  // namespace

TEST_CASE("Prior: truncated-normal factory validates scale") {
    CHECK_THROWS_AS((void)Prior::truncated_normal(0.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS((void)Prior::truncated_normal(0.5, -1.0), std::invalid_argument);
    const Prior p = Prior::truncated_normal(0.75, 0.81);
    CHECK(p.kind == Prior::Kind::TruncatedNormal);
    CHECK(p.location == 0.75);
    CHECK(p.scale == 0.81);
}

TEST_CASE("build_posterior: flat-prior location and scale in closed form") {
    // theta_hat = 80/100 exactly: eight u-scores above every v, two below
    std::vector<double> u{10, 11, 12, 13, 14, 15, 16, 17, -10, -11};
    std::vector<double> v{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    const ScoreData data(u, v);
    REQUIRE(mann_whitney(data) == 0.8);

    const GibbsPosterior p = build_posterior(data, Prior::flat(), 0.5);
    CHECK(p.mu_mn == 0.8);
    CHECK(p.sigma_mn == 0.1);  // (2 * 0.5 * 100)^{-1/2}
    CHECK(p.theta_hat == 0.8);
    CHECK(p.m == 10);
    CHECK(p.n == 10);
}

TEST_CASE("posterior_from_estimate: informative-prior closed form") {
    const GibbsPosterior p =
        posterior_from_estimate(0.8, 10, 10, Prior::truncated_normal(0.5, 1.0), 0.5);
    // t = 2*0.5*1*100 = 100: mu = 80.5/101, sigma = sqrt(1/101)
    CHECK(p.mu_mn == doctest::Approx(80.5 / 101.0).epsilon(1e-15));
    CHECK(p.sigma_mn == doctest::Approx(std::sqrt(1.0 / 101.0)).epsilon(1e-15));
    CHECK(std::round(p.mu_mn * 1e5) / 1e5 == doctest::Approx(0.79703));
    CHECK(std::round(p.sigma_mn * 1e5) / 1e5 == doctest::Approx(0.09950));
}

TEST_CASE("posterior_from_estimate: rejects bad omega and theta") {
    CHECK_THROWS_AS((void)posterior_from_estimate(0.5, 5, 5, Prior::flat(), 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)posterior_from_estimate(0.5, 5, 5, Prior::flat(), -1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)posterior_from_estimate(1.5, 5, 5, Prior::flat(), 1.0),
                    std::invalid_argument);
}

TEST_CASE("posterior: flat scale identity over randomized parameters") {
    RngStream rng(20240813, 1);
    for (int trial = 0; trial < 1000; ++trial) {
        const double theta = rng.uniform_open01();
        const std::int64_t m = 2 + static_cast<std::int64_t>(rng.uniform_below(500));
        const std::int64_t n = 2 + static_cast<std::int64_t>(rng.uniform_below(500));
        const double omega = std::exp(6.0 * (rng.uniform_open01() - 0.5));
        const GibbsPosterior p = posterior_from_estimate(theta, m, n, Prior::flat(), omega);
        CHECK(p.mu_mn == theta);
        const double mn = static_cast<double>(m) * static_cast<double>(n);
        const double rel = p.sigma_mn * p.sigma_mn * (2.0 * omega * mn) - 1.0;
        CHECK(std::fabs(rel) <= 4.0 * DBL_EPSILON);
    }
}

TEST_CASE("posterior: informative parameters match the closed display") {
    RngStream rng(20240813, 2);
    for (int trial = 0; trial < 1000; ++trial) {
        const double theta = rng.uniform_open01();
        const double mu0 = rng.uniform_open01();
        const double s0 = 0.05 + rng.uniform_open01();
        const std::int64_t m = 2 + static_cast<std::int64_t>(rng.uniform_below(200));
        const std::int64_t n = 2 + static_cast<std::int64_t>(rng.uniform_below(200));
        const double omega = std::exp(4.0 * (rng.uniform_open01() - 0.5));
        const GibbsPosterior p =
            posterior_from_estimate(theta, m, n, Prior::truncated_normal(mu0, s0), omega);
        const double t = 2.0 * omega * s0 * s0 * static_cast<double>(m) *
                         static_cast<double>(n);
        const double mu_ref = (mu0 + t * theta) / (1.0 + t);
        const double sg_ref = s0 / std::sqrt(1.0 + t);
        CHECK(std::fabs(p.mu_mn - mu_ref) <= 4.0 * DBL_EPSILON * std::fabs(mu_ref));
        CHECK(std::fabs(p.sigma_mn - sg_ref) <= 4.0 * DBL_EPSILON * sg_ref);
    }
}

TEST_CASE("posterior: data dominate any prior as omega grows") {
    const Prior prior = Prior::truncated_normal(0.2, 0.3);
    const GibbsPosterior p = posterior_from_estimate(0.8, 10, 10, prior, 1e12);
    CHECK(std::fabs(p.mu_mn - 0.8) <= 1e-10);

    // and as mn grows with omega fixed, the location walks to theta_hat
    double prev_gap = 1.0;
    for (const std::int64_t side : {10, 100, 1000}) {
        const GibbsPosterior q = posterior_from_estimate(0.9, side, side, prior, 1.0);
        const double gap = std::fabs(q.mu_mn - 0.9);
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
}

TEST_CASE("posterior_moments: pins, quadrature agreement, boundary finiteness") {
    {
        const GibbsPosterior p = posterior_from_estimate(0.5, 50, 50, Prior::flat(), 0.02);
        REQUIRE(p.sigma_mn == 0.1);
        // sigma = 0.1 case has a visible truncation correction; compare to
        // quadrature
        double qmean, qvar;
        oracle::truncnorm_moments_quad(0.5, 0.1, 0.0, 1.0, qmean, qvar);
        const Moments mom = posterior_moments(p);
        CHECK(std::fabs(mom.mean - qmean) <= 1e-10);
        CHECK(std::fabs(mom.variance - qvar) <= 1e-10);
    }
    {
        // sigma = 0.01: truncation negligible, closed normal moments
        const GibbsPosterior p = posterior_from_estimate(0.5, 50, 50, Prior::flat(), 2.0);
        const Moments mom = posterior_moments(p);
        CHECK(std::fabs(mom.mean - 0.5) <= 1e-12);
        CHECK(std::fabs(mom.variance - 1e-4) <= 1e-12);
    }
    {
        const GibbsPosterior p =
            posterior_from_estimate(0.9214, 100, 100, Prior::flat(), 2.0);
        double qmean, qvar;
        oracle::truncnorm_moments_quad(p.mu_mn, p.sigma_mn, 0.0, 1.0, qmean, qvar);
        const Moments mom = posterior_moments(p);
        CHECK(std::fabs(mom.mean - qmean) <= 1e-8);
        CHECK(std::fabs(mom.variance - qvar) <= 1e-8);
    }
    {
        const GibbsPosterior p = posterior_from_estimate(1.0, 10, 10, Prior::flat(), 1.0);
        const Moments mom = posterior_moments(p);
        CHECK(mom.mean < 1.0);
        CHECK(mom.mean > 0.9);
        CHECK(mom.variance > 0.0);
        CHECK(std::isfinite(mom.variance));
    }
}

TEST_CASE("hpd_interval: central pin at (0.5, 0.1)") {
    const GibbsPosterior p = posterior_from_estimate(0.5, 50, 50, Prior::flat(), 0.02);
    REQUIRE(p.sigma_mn == 0.1);
    const CredibleInterval ci = hpd_interval(p, 0.05);
    CHECK(std::fabs(ci.lower - 0.3040) <= 1e-3);
    CHECK(std::fabs(ci.upper - 0.6960) <= 1e-3);
    CHECK(ci.level == 0.95);
    // symmetric posterior gives a symmetric interval
    CHECK(std::fabs((ci.lower + ci.upper) - 1.0) <= 1e-9);
    CHECK(interval_mass(p, ci.lower, ci.upper) == doctest::Approx(0.95).epsilon(1e-6));
}

TEST_CASE("hpd_interval: boundary-clipped case pins the upper endpoint at 1") {
    const double sigma = 0.05;
    const double omega = 1.0 / (2.0 * sigma * sigma * 100.0);
    const GibbsPosterior p = posterior_from_estimate(0.99, 10, 10, Prior::flat(), omega);
    const CredibleInterval ci = hpd_interval(p, 0.05);
    CHECK(ci.upper == 1.0);
    CHECK(ci.lower > 0.8);
    CHECK(interval_mass(p, ci.lower, ci.upper) == doctest::Approx(0.95).epsilon(1e-6));
}

TEST_CASE("hpd_interval: mass is 1 - alpha on randomized posteriors") {
    RngStream rng(20240813, 3);
    for (int trial = 0; trial < 100; ++trial) {
        // boundary-heavy: locations may fall outside [0,1]
        const double mu = -0.2 + 1.4 * rng.uniform_open01();
        const double sigma = 0.01 + 0.4 * rng.uniform_open01();
        const GibbsPosterior p{mu,
                               sigma,
                               1.0,
                               std::min(1.0, std::max(0.0, mu)),
                               20,
                               20,
                               Prior::flat()};
        const double alpha = 0.02 + 0.3 * rng.uniform_open01();
        const CredibleInterval ci = hpd_interval(p, alpha);
        CHECK(ci.lower >= 0.0);
        CHECK(ci.upper <= 1.0);
        CHECK(ci.lower < ci.upper);
        const double mass = interval_mass(p, ci.lower, ci.upper);
        CHECK(std::fabs(mass - (1.0 - alpha)) <= 1e-6);
        // level-set shape: symmetric about mu unless a boundary cuts it off
        if (ci.lower > 0.0 && ci.upper < 1.0)
            CHECK(std::fabs((ci.upper - mu) - (mu - ci.lower)) <= 1e-9);
        if (mu > 1.0) CHECK(ci.upper == 1.0);
        if (mu < 0.0) CHECK(ci.lower == 0.0);
    }
}

TEST_CASE("hpd_interval: alpha domain errors") {
    const GibbsPosterior p = posterior_from_estimate(0.5, 10, 10, Prior::flat(), 1.0);
    CHECK_THROWS_AS((void)hpd_interval(p, 0.0), std::invalid_argument);
    CHECK_THROWS_AS((void)hpd_interval(p, 1.0), std::invalid_argument);
}

TEST_CASE("analytic_learning_rate: nonpositive variance raises") {
    CHECK_THROWS_WITH_AS((void)analytic_learning_rate(ScoreData({2.0, 4.0}, {1.0, 3.0})),
                         "variance estimate nonpositive", NonpositiveVarianceError);
    // perfectly separated data: both tau estimates vanish
    CHECK_THROWS_AS((void)analytic_learning_rate(ScoreData({5.0, 6.0}, {0.0, 1.0})),
                    NonpositiveVarianceError);
}

TEST_CASE("analytic_learning_rate: variance-matching identity") {
    RngStream rng(20240813, 4);
    int tested = 0;
    while (tested < 200) {
        const std::int64_t m = 5 + static_cast<std::int64_t>(rng.uniform_below(60));
        const std::int64_t n = 5 + static_cast<std::int64_t>(rng.uniform_below(60));
        std::vector<double> u(static_cast<std::size_t>(m)), v(static_cast<std::size_t>(n));
        for (auto& x : u) x = rng.normal(1.0, 1.0);
        for (auto& x : v) x = rng.normal();
        const ScoreData data(std::move(u), std::move(v));
        double omega;
        try {
            omega = analytic_learning_rate(data);
        } catch (const NonpositiveVarianceError&) {
            continue;
        }
        ++tested;
        const auto tau = tau_estimates(data);
        const double variance = asymptotic_variance(tau.tau10, tau.tau01, m, n);
        const double mn = static_cast<double>(m) * static_cast<double>(n);
        const double recon = 1.0 / (2.0 * omega * mn);
        CHECK(std::fabs(recon - variance) <= 4.0 * DBL_EPSILON * variance);
    }
}

TEST_CASE("posterior concentrates: tail mass shrinks in radius and sample size") {
    const double theta_star = true_auc(ScenarioId::Ex1);
    const double omega = 0.1;
    const std::vector<std::int64_t> sizes{25, 50, 100, 200};
    const std::vector<double> radii{0.5, 1.0, 2.0};  // multiples of n^{-1/2}
    const int reps = 100;

    std::vector<std::vector<double>> avg_tail(sizes.size(),
                                              std::vector<double>(radii.size(), 0.0));
    for (std::size_t si = 0; si < sizes.size(); ++si) {
        const std::int64_t n = sizes[si];
        for (int rep = 0; rep < reps; ++rep) {
            RngStream rng(31400, RngStream::derive_id({static_cast<std::uint64_t>(n),
                                                       static_cast<std::uint64_t>(rep)}));
            const ScoreData data = generate(ScenarioId::Ex1, n, n, rng);
            const GibbsPosterior p = build_posterior(data, Prior::flat(), omega);
            for (std::size_t ki = 0; ki < radii.size(); ++ki) {
                const double r = radii[ki] / std::sqrt(static_cast<double>(n));
                const double inside =
                    interval_mass(p, std::max(0.0, theta_star - r),
                                  std::min(1.0, theta_star + r));
                avg_tail[si][ki] += (1.0 - inside) / reps;
            }
        }
    }
    for (std::size_t si = 0; si < sizes.size(); ++si)
        for (std::size_t ki = 1; ki < radii.size(); ++ki)
            CHECK(avg_tail[si][ki] <= avg_tail[si][ki - 1]);  // wider ball, less outside
    for (std::size_t ki = 0; ki < radii.size(); ++ki)
        for (std::size_t si = 1; si < sizes.size(); ++si)
            CHECK(avg_tail[si][ki] <= avg_tail[si - 1][ki] + 0.005);  // larger n
}
