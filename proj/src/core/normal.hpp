#pragma once

namespace aucgibbs {

/// Standard normal density (2*pi)^{-1/2} exp(-x^2/2).
double norm_pdf(double x);

/// Complementary error function, rational-approximation implementation
/// (Cody-style three-region scheme), relative accuracy ~1e-15 on the
/// region where erfc does not underflow.
double erfc_approx(double x);

/// Scaled complement erfcx(x) = exp(x^2) erfc(x). Finite for all x >= 0
/// (decays like 1/(x sqrt(pi))); overflows for x << -26.6.
double erfcx_approx(double x);

/// Standard normal CDF via erfc; absolute error well below 1e-12,
/// relative error preserved far into the lower tail.
double norm_cdf(double x);

/// Upper tail P(X > x) = norm_cdf(-x), computed without cancellation.
double norm_sf(double x);

/// Inverse standard normal CDF (Wichura's PPND16 rational scheme),
/// |norm_cdf(result) - p| <= 1e-10 over (0,1). Throws std::invalid_argument
/// outside (0,1).
double norm_quantile(double p);

}  // namespace aucgibbs
