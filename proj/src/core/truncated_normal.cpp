#include "core/truncated_normal.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "core/errors.hpp"
#include "core/normal.hpp"

namespace aucgibbs {

namespace {

constexpr double kSqrt1_2 = 0.7071067811865475244008444;
constexpr double kInf = std::numeric_limits<double>::infinity();

// 64-point Gauss-Legendre nodes/weights on [-1,1], built once by Newton
// iteration on the Legendre recurrence (converges to machine precision).
struct GL64 {
    double x[64];
    double w[64];
    GL64() {
        constexpr int n = 64;
        for (int i = 0; i < n / 2; ++i) {
            double xi = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            double pp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = 0.0;
                for (int k = 0; k < n; ++k) {
                    const double p2 = p1;
                    p1 = p0;
                    p0 = ((2 * k + 1) * xi * p1 - k * p2) / (k + 1);
                }
                pp = n * (xi * p0 - p1) / (xi * xi - 1.0);
                const double dx = p0 / pp;
                xi -= dx;
                if (std::fabs(dx) < 1e-15) break;
            }
            x[i] = -xi;
            x[n - 1 - i] = xi;
            w[i] = w[n - 1 - i] = 2.0 / ((1.0 - xi * xi) * pp * pp);
        }
    }
};

const GL64& gl64() {
    static const GL64 g;
    return g;
}

template <class F>
double gl_integrate(double a, double b, F f) {
    const GL64& g = gl64();
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double acc = 0.0;
    for (int i = 0; i < 64; ++i) acc += g.w[i] * f(mid + half * g.x[i]);
    return half * acc;
}

// Standardized moments on [a, b] with 0 <= a < b (right-tail case).
// Works on t = x - a with weight exp(-t(a + t/2)); the phi(a) factor
// cancels in the ratios, so nothing underflows even for a ~ 1e6. The
// integral is cut where the weight drops below e^-45 (solve
// a*T + T^2/2 = 45), a relative error far under 1e-15.
void tail_moments(double a, double b, double& mean, double& var) {
    const double tcut = 90.0 / (std::sqrt(a * a + 90.0) + a);
    const double dlim = std::isinf(b) ? tcut : std::min(b - a, tcut);
    auto g = [a](double t) { return std::exp(-t * (a + 0.5 * t)); };
    const double i0 = gl_integrate(0.0, dlim, g);
    const double c = gl_integrate(0.0, dlim, [&](double t) { return t * g(t); }) / i0;
    var = gl_integrate(0.0, dlim, [&](double t) {
              const double u = t - c;
              return u * u * g(t);
          }) /
          i0;
    mean = a + c;
}

// Standardized moments on [a, b] with a < 0 < b and |a| <= b (interval
// straddles the mode). Two Gauss-Legendre panels split at zero; bounds
// beyond sqrt(90) contribute < e^-45 relatively and are cut.
void straddle_moments(double a, double b, double& mean, double& var) {
    const double tcut = std::sqrt(90.0);
    const double lo = std::max(a, -tcut);
    const double hi = std::min(b, tcut);
    auto g = [](double x) { return std::exp(-0.5 * x * x); };
    const double i0 = gl_integrate(lo, 0.0, g) + gl_integrate(0.0, hi, g);
    const double c = (gl_integrate(lo, 0.0, [&](double x) { return x * g(x); }) +
                      gl_integrate(0.0, hi, [&](double x) { return x * g(x); })) /
                     i0;
    auto cg = [&](double x) {
        const double u = x - c;
        return u * u * g(x);
    };
    var = (gl_integrate(lo, 0.0, cg) + gl_integrate(0.0, hi, cg)) / i0;
    mean = c;
}

// Draw standardized value in (a, b), 0 <= a, for intervals whose mass
// underflows: truncated-exponential proposal with Robert's optimal rate,
// acceptance exp(-(x-rate)^2/2), valid for every a >= 0.
double tail_reject(double a, double b, RngStream& rng) {
    const double rate = 0.5 * (a + std::sqrt(a * a + 4.0));
    const double span = std::isinf(b) ? 1.0 : -std::expm1(-rate * (b - a));
    for (int attempt = 0; attempt < 100000; ++attempt) {
        const double u = rng.uniform_open01();
        const double t = -std::log1p(-u * span) / rate;  // Exp(rate) on (0, b-a)
        const double x = a + t;
        const double dev = x - rate;
        if (std::log(rng.uniform_open01()) < -0.5 * dev * dev) return x;
    }
    throw DegenerateIntervalError("truncnorm_sample: rejection sampler stalled");
}

}  // namespace

TruncatedNormal::TruncatedNormal(double location_, double scale_, double lower_,
                                 double upper_)
    : location(location_), scale(scale_), lower(lower_), upper(upper_) {
    if (!(scale > 0.0) || !std::isfinite(scale))
        throw std::invalid_argument("TruncatedNormal: scale must be positive and finite");
    if (!std::isfinite(location))
        throw std::invalid_argument("TruncatedNormal: location must be finite");
    if (std::isnan(lower) || std::isnan(upper) || !(lower < upper))
        throw std::invalid_argument("TruncatedNormal: requires lower < upper");
}

double normal_interval_mass(double a, double b) {
    if (!(a <= b)) throw std::invalid_argument("normal_interval_mass: requires a <= b");
    if (a == -kInf && b == kInf) return 1.0;
    if (a == -kInf) return norm_cdf(b);
    if (b == kInf) return norm_sf(a);
    if (b <= 0.0) return normal_interval_mass(-b, -a);
    if (a < 0.0) return norm_cdf(b) - norm_cdf(a);
    // both in the upper tail: factor exp(-a^2/2) through erfcx to avoid
    // subtracting two tiny cdf values.
    const double e = std::exp(-0.5 * (b - a) * (b + a));
    const double zs = erfcx_approx(a * kSqrt1_2) - e * erfcx_approx(b * kSqrt1_2);
    const double ea = std::exp(-0.5 * a * a);
    return 0.5 * ea * zs;
}

Moments truncnorm_moments(const TruncatedNormal& d) {
    double a = std::isinf(d.lower) ? -kInf : (d.lower - d.location) / d.scale;
    double b = std::isinf(d.upper) ? kInf : (d.upper - d.location) / d.scale;
    if (a == -kInf && b == kInf) return {d.location, d.scale * d.scale};
    if (!(a < b)) {
        // standardized bounds rounded together: uniform limit on the
        // original interval.
        const double w = d.upper - d.lower;
        return {0.5 * (d.lower + d.upper), w * w / 12.0};
    }

    double sign = 1.0;
    if (a + b < 0.0 || (a == -kInf)) {  // reflect so the mass sits right of -|b|
        sign = -1.0;
        const double na = (b == kInf) ? -kInf : -b;
        b = (a == -kInf) ? kInf : -a;
        a = na;
    }
    double m_std, v_std;
    if (a >= 0.0)
        tail_moments(a, b, m_std, v_std);
    else
        straddle_moments(a, b, m_std, v_std);
    return {d.location + sign * d.scale * m_std, d.scale * d.scale * v_std};
}

double truncnorm_cdf(const TruncatedNormal& d, double x) {
    if (x <= d.lower) return 0.0;
    if (x >= d.upper) return 1.0;
    const double a = std::isinf(d.lower) ? -kInf : (d.lower - d.location) / d.scale;
    const double b = std::isinf(d.upper) ? kInf : (d.upper - d.location) / d.scale;
    const double xi = (x - d.location) / d.scale;
    const double f = normal_interval_mass(a, xi) / normal_interval_mass(a, b);
    return std::min(1.0, std::max(0.0, f));
}

double truncnorm_sample(const TruncatedNormal& d, RngStream& rng) {
    const double a = std::isinf(d.lower) ? -kInf : (d.lower - d.location) / d.scale;
    const double b = std::isinf(d.upper) ? kInf : (d.upper - d.location) / d.scale;
    if (!(a < b))
        throw DegenerateIntervalError("truncnorm_sample: standardized bounds collapsed");

    const double mass = normal_interval_mass(a, b);
    double xs;
    if (mass < 1e-280) {
        // interval so deep in a tail that its mass underflows: one-sided
        // exponential rejection on the near side (a tiny mass forces the
        // whole interval into one tail, so one of these holds).
        if (a >= 0.0)
            xs = tail_reject(a, b, rng);
        else
            xs = -tail_reject(-b, -a, rng);
    } else {
        const double u = rng.uniform_open01();
        if (a >= 0.0) {
            // invert the upper-tail probability: strictly decreasing in x.
            const double qa = norm_sf(a);
            double q = qa - u * mass;
            if (q <= 0.0) q = std::numeric_limits<double>::min();
            xs = -norm_quantile(std::min(q, 1.0 - 1e-16));
        } else if (b <= 0.0) {
            const double qb = norm_sf(-b);
            double q = qb - u * mass;
            if (q <= 0.0) q = std::numeric_limits<double>::min();
            xs = norm_quantile(std::min(q, 1.0 - 1e-16));
        } else {
            double p = norm_cdf(a) + u * mass;
            p = std::min(std::max(p, std::numeric_limits<double>::min()), 1.0 - 1e-16);
            xs = norm_quantile(p);
        }
    }

    double x = d.location + d.scale * xs;
    if (x <= d.lower) x = std::nextafter(d.lower, kInf);
    if (x >= d.upper) x = std::nextafter(d.upper, -kInf);
    if (!(x > d.lower && x < d.upper))
        throw DegenerateIntervalError("truncnorm_sample: no representable value inside interval");
    return x;
}

}  // namespace aucgibbs
