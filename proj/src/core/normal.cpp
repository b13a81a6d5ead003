#include "core/normal.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace aucgibbs {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779399461;  // 1/sqrt(2*pi)
constexpr double kInvSqrtPi = 0.5641895835477562869480795;   // 1/sqrt(pi)
constexpr double kSqrt1_2 = 0.7071067811865475244008444;     // 1/sqrt(2)

// Rational coefficients for the three-region erfc scheme (Cody, SPECFUN).
constexpr double A[5] = {3.16112374387056560e00, 1.13864154151050156e02,
                         3.77485237685302021e02, 3.20937758913846947e03,
                         1.85777706184603153e-1};
constexpr double B[4] = {2.36012909523441209e01, 2.44024637934444173e02,
                         1.28261652607737228e03, 2.84423683343917062e03};
constexpr double C[9] = {5.64188496988670089e-1, 8.88314979438837594e00,
                         6.61191906371416295e01, 2.98635138197400131e02,
                         8.81952221241769090e02, 1.71204761263407058e03,
                         2.05107837782607147e03, 1.23033935479799725e03,
                         2.15311535474403846e-8};
constexpr double D[8] = {1.57449261107098347e01, 1.17693950891312499e02,
                         5.37181101862009858e02, 1.62138957456669019e03,
                         3.29079923573345963e03, 4.36261909014324716e03,
                         3.43936767414372164e03, 1.23033935480374942e03};
constexpr double P[6] = {3.05326634961232344e-1, 3.60344899949804439e-1,
                         1.25781726111229246e-1, 1.60837851487422766e-2,
                         6.58749161529837803e-4, 1.63153871373020978e-2};
constexpr double Q[5] = {2.56852019228982242e00, 1.87295284992346047e00,
                         5.27905102951428412e-1, 6.05183413124413191e-2,
                         2.33520497626869185e-3};

// erf(x) for |x| <= 0.46875.
double erf_small(double x) {
    const double z = x * x;
    double xnum = A[4] * z;
    double xden = z;
    for (int i = 0; i < 3; ++i) {
        xnum = (xnum + A[i]) * z;
        xden = (xden + B[i]) * z;
    }
    return x * (xnum + A[3]) / (xden + B[3]);
}

// exp(x^2) * erfc(x) for x > 0.46875 (the scaled value, before any exp factor).
double erfcx_large(double y) {
    if (y <= 4.0) {
        double xnum = C[8] * y;
        double xden = y;
        for (int i = 0; i < 7; ++i) {
            xnum = (xnum + C[i]) * y;
            xden = (xden + D[i]) * y;
        }
        return (xnum + C[7]) / (xden + D[7]);
    }
    const double z = 1.0 / (y * y);
    double xnum = P[5] * z;
    double xden = z;
    for (int i = 0; i < 4; ++i) {
        xnum = (xnum + P[i]) * z;
        xden = (xden + Q[i]) * z;
    }
    double r = z * (xnum + P[4]) / (xden + Q[4]);
    return (kInvSqrtPi - r) / y;
}

// exp(-y^2) computed as exp(-ysq*ysq)*exp(-del) with ysq = y rounded to
// 1/16: keeps the argument splitting exact and preserves relative accuracy
// of the tail (the classic SPECFUN trick).
double exp_neg_square(double y) {
    const double ysq = std::trunc(y * 16.0) / 16.0;
    const double del = (y - ysq) * (y + ysq);
    return std::exp(-ysq * ysq) * std::exp(-del);
}

}  // namespace

double norm_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double erfc_approx(double x) {
    const double y = std::fabs(x);
    if (y <= 0.46875) return 1.0 - erf_small(x);
    if (y >= 26.6) return x > 0.0 ? 0.0 : 2.0;  // underflow / saturation
    const double r = erfcx_large(y) * exp_neg_square(y);
    return x > 0.0 ? r : 2.0 - r;
}

double erfcx_approx(double x) {
    if (x >= 0.0) {
        if (x <= 0.46875) return std::exp(x * x) * (1.0 - erf_small(x));
        return erfcx_large(x);
    }
    // erfcx(-x) = 2 exp(x^2) - erfcx(x); overflows for x < -26.6.
    const double y = -x;
    if (y > 26.7) return std::numeric_limits<double>::infinity();
    const double e = std::exp(y * y);
    if (y <= 0.46875) return 2.0 * e - e * (1.0 - erf_small(y));
    return 2.0 * e - erfcx_large(y);
}

double norm_cdf(double x) { return 0.5 * erfc_approx(-x * kSqrt1_2); }

double norm_sf(double x) { return 0.5 * erfc_approx(x * kSqrt1_2); }

double norm_quantile(double p) {
    if (!(p > 0.0) || !(p < 1.0))
        throw std::invalid_argument("norm_quantile: p must lie in (0,1)");
    // Wichura's algorithm AS 241, PPND16.
    const double q = p - 0.5;
    if (std::fabs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                     6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
                   1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
                 1.3314166789178437745e+2) * r + 3.3871328727963666080e+0) /
               (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                     3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
                   5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
                 4.2313330701600911252e+1) * r + 1.0);
    }
    double r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double value;
    if (r <= 5.0) {
        r -= 1.6;
        value = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                      2.41780725177450611770e-1) * r + 1.27045825245236838258e+0) * r +
                    3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r +
                  4.63033784615654529590e+0) * r + 1.42343711074968357734e+0) /
                (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                      1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                    6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r +
                  2.05319162663775882187e+0) * r + 1.0);
    } else {
        r -= 5.0;
        value = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                      1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                    2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r +
                  5.46378491116411436990e+0) * r + 6.65790464350110377720e+0) /
                (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                      1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                    1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
                  5.99832206555887937690e-1) * r + 1.0);
    }
    return q < 0.0 ? -value : value;
}

}  // namespace aucgibbs
