#pragma once

#include "core/rng.hpp"

namespace aucgibbs {

/// Normal(location, scale^2) restricted to [lower, upper]. Bounds may be
/// infinite; lower < upper and scale > 0 are enforced at construction.
struct TruncatedNormal {
    double location;
    double scale;
    double lower;
    double upper;

    TruncatedNormal(double location, double scale, double lower, double upper);
};

struct Moments {
    double mean;
    double variance;
};

/// Phi(b) - Phi(a) for a <= b without cancellation: evaluated through
/// erfcx factoring on whichever tail both endpoints share.
double normal_interval_mass(double a, double b);

/// Mean and variance in closed form; numerically stable when both
/// standardized bounds sit far out in one tail.
Moments truncnorm_moments(const TruncatedNormal& d);

/// P(X <= x) for the truncated variable; 0 below lower, 1 above upper.
double truncnorm_cdf(const TruncatedNormal& d, double x);

/// One draw, strictly inside (lower, upper). Inverse-CDF from the nearer
/// tail; switches to one-sided exponential rejection when the interval
/// mass falls below 1e-280. Throws DegenerateIntervalError when no double
/// lies strictly between the bounds.
double truncnorm_sample(const TruncatedNormal& d, RngStream& rng);

}  // namespace aucgibbs
