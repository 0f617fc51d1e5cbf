#pragma once

#include <functional>

#include "tailinv/config.hpp"

namespace tailinv {

struct QuadratureResult {
  double value = 0;
  double error = 0;
  bool converged = false;
  // Right end actually integrated before the analytic tail correction (inf
  // never; equals the finite upper limit for finite ranges).
  double truncation = 0;
};

// Integral of exp(log_f) carried in log space: value = exp(log_value).
struct LogQuadratureResult {
  double log_value = -kInf;
  double rel_error = 0;
  bool converged = false;
  bool divergent = false;
  double truncation = 0;
  double log_integrand_at_cap = -kInf;
};

struct QuadratureOptions {
  double rel_tol = 1e-12;
  // Window growth stops once the last panel adds less than this fraction.
  double tail_rel = 1e-16;
  double window_cap = 1e12;
  // Width of the first window on either side of the peak.
  double scale = 1.0;
  // Location of the integrand's maximum, when known.
  double peak = kInf;
  // Subtracted from log_f before exponentiating; use the (approximate)
  // maximum of log_f to avoid overflow.
  double log_shift = 0;
};

// Adaptive Gauss-Kronrod on a finite range, or geometric window growth when
// b is +inf. Never throws on non-convergence; check `converged`.
QuadratureResult quadrature(const std::function<double(double)>& f, double a, double b, double rel_tol = 1e-12);

// log of the integral over [a, inf) of exp(log_f(x)). A divergence pre-test
// looks at the local power-law decay exponent at the window cap: decay no
// faster than 1/x marks the result divergent. Tails that decay like a power
// faster than 1/x are closed analytically past the cap.
LogQuadratureResult log_quadrature(const std::function<double(double)>& log_f, double a, const QuadratureOptions& opts = {});

}  // namespace tailinv
