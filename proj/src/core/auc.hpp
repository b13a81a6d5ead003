#pragma once

#include <cstdint>
#include <vector>

namespace aucgibbs {

/// Two independent score samples: u holds the m group-1 scores, v the n
/// group-0 scores. Both groups need at least two finite entries (the
/// pairwise covariance estimators require pairs within each group).
struct ScoreData {
    std::vector<double> u;
    std::vector<double> v;

    ScoreData(std::vector<double> u_, std::vector<double> v_);

    std::int64_t m() const noexcept { return static_cast<std::int64_t>(u.size()); }
    std::int64_t n() const noexcept { return static_cast<std::int64_t>(v.size()); }
};

/// (mn)^{-1} sum_i sum_j 1(u_i > v_j): the exceedance count is accumulated
/// as an integer and divided once, so the average is exact for mn ≲ 2^53.
/// Sort-and-scan, O((m+n) log(m+n)).
double mann_whitney(const ScoreData& data);

/// Mean squared loss (theta - 1(u_i > v_j))^2 over all pairs, reduced
/// exactly through the pair count: equals (theta - theta_hat)^2 +
/// theta_hat (1 - theta_hat).
double empirical_risk(double theta, const ScoreData& data);

struct TauEstimates {
    double tau10;
    double tau01;
};

/// Plug-in estimates of the overlapping-pair indicator covariances:
/// tau10 = sum_i c_i (c_i - 1) / (m n (n-1)) - theta_hat^2 with
/// c_i = #{j : u_i > v_j}, and symmetrically tau01 (unordered pairs).
/// Small samples can make either estimate negative; they are returned
/// as-is.
TauEstimates tau_estimates(const ScoreData& data);

/// Hoeffding asymptotic variance of the Mann-Whitney estimator:
/// (tau10/lambda + tau01/(1-lambda)) / (m+n) with lambda = m/(m+n),
/// algebraically reduced to tau10/m + tau01/n. Possibly nonpositive for
/// estimated inputs; consumers own the error policy.
double asymptotic_variance(double tau10, double tau01, std::int64_t m, std::int64_t n);

}  // namespace aucgibbs
