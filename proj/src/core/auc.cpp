#include "core/auc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace aucgibbs {

namespace {

// Exceedance counts c_i = #{j : u_i > v_j} via one sort of v.
std::vector<std::int64_t> exceedance_counts(const std::vector<double>& u,
                                            const std::vector<double>& v) {
    std::vector<double> sv(v);
    std::sort(sv.begin(), sv.end());
    std::vector<std::int64_t> c(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        c[i] = std::lower_bound(sv.begin(), sv.end(), u[i]) - sv.begin();
    return c;
}

}  // namespace

ScoreData::ScoreData(std::vector<double> u_, std::vector<double> v_)
    : u(std::move(u_)), v(std::move(v_)) {
    if (u.size() < 2 || v.size() < 2)
        throw std::invalid_argument("ScoreData: each group needs at least 2 scores");
    for (double x : u)
        if (!std::isfinite(x)) throw std::invalid_argument("ScoreData: group-1 scores must be finite");
    for (double x : v)
        if (!std::isfinite(x)) throw std::invalid_argument("ScoreData: group-0 scores must be finite");
}

double mann_whitney(const ScoreData& data) {
    const auto c = exceedance_counts(data.u, data.v);
    std::int64_t total = 0;
    for (auto ci : c) total += ci;
    return static_cast<double>(total) /
           (static_cast<double>(data.m()) * static_cast<double>(data.n()));
}

double empirical_risk(double theta, const ScoreData& data) {
    if (!(theta >= 0.0 && theta <= 1.0))
        throw std::invalid_argument("empirical_risk: theta must lie in [0,1]");
    const double theta_hat = mann_whitney(data);
    return (theta - theta_hat) * (theta - theta_hat) + theta_hat * (1.0 - theta_hat);
}

TauEstimates tau_estimates(const ScoreData& data) {
    const std::int64_t m = data.m(), n = data.n();
    const auto c = exceedance_counts(data.u, data.v);

    std::int64_t total = 0, pair10 = 0;
    for (auto ci : c) {
        total += ci;
        pair10 += ci * (ci - 1);
    }
    // d_j = #{i : u_i > v_j} by the mirrored scan (strict inequality stays
    // strict: u_i > v_j <=> not(v_j >= u_i)).
    std::vector<double> su(data.u);
    std::sort(su.begin(), su.end());
    std::int64_t pair01 = 0;
    for (double vj : data.v) {
        const std::int64_t dj =
            su.end() - std::upper_bound(su.begin(), su.end(), vj);
        pair01 += dj * (dj - 1);
    }

    const double theta_hat =
        static_cast<double>(total) / (static_cast<double>(m) * static_cast<double>(n));
    const double t2 = theta_hat * theta_hat;
    const double tau10 =
        static_cast<double>(pair10) /
            (static_cast<double>(m) * static_cast<double>(n) * static_cast<double>(n - 1)) -
        t2;
    const double tau01 =
        static_cast<double>(pair01) /
            (static_cast<double>(m) * static_cast<double>(n) * static_cast<double>(m - 1)) -
        t2;
    return {tau10, tau01};
}

double asymptotic_variance(double tau10, double tau01, std::int64_t m, std::int64_t n) {
    if (m < 1 || n < 1)
        throw std::invalid_argument("asymptotic_variance: m and n must be >= 1");
    return tau10 / static_cast<double>(m) + tau01 / static_cast<double>(n);
}

}  // namespace aucgibbs
