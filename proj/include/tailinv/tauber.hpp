#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tailinv/oracle.hpp"
#include "tailinv/phi_function.hpp"

namespace tailinv {

// Two limits that must be reciprocal for a regular phi:
//   K_mgf  = lim phi^-1(ln E exp(lambda X)) / lambda
//   K_tail = lim (phi*)^-1(|ln P(X > x)|) / x

struct LadderEstimate {
  std::vector<double> points;
  std::vector<double> ratios;
  std::vector<double> sigmas;  // Monte Carlo standard errors; empty in analytic mode
  double estimate = std::nan("");
  // Relative change of the raw ratio over the last ladder step.
  double last_step_change = std::nan("");
  // Relative change of the extrapolated limit when the top point is added.
  double estimate_change = std::nan("");
  bool converged = false;
  // Ladder points left out (no sample above x in Monte Carlo mode).
  std::vector<double> dropped;
};

struct TauberianReport {
  double k_mgf = std::nan("");
  double k_tail = std::nan("");
  LadderEstimate mgf;
  LadderEstimate tail;
  double product = std::nan("");
  double tolerance = 0;
  bool consistent = false;
  bool regularity_ok = false;
  std::string tail_mode = "analytic";
};

struct TauberOptions {
  std::vector<double> lambda_ladder{3.125, 6.25, 12.5, 25, 50};
  std::vector<double> x_ladder{2, 2 * std::sqrt(2.0), 4, 4 * std::sqrt(2.0), 8};
  double tolerance = 0.02;
  // A side is converged when estimate_change stays under this.
  double drift_tolerance = 0.02;
  // Throw NotConverged instead of flagging.
  bool strict = false;
};

struct MonteCarloOptions {
  std::size_t samples = 10'000'000;
  std::uint64_t seed = 42;
  std::vector<double> x_ladder{2, 2.5, 3, 3.5, 4, 4.5, 5};
};

// Monotone bisection to relative width 1e-10 on [max(lo, 0), ...). Throws
// NonInvertible when f does not reach y or is flat across the bracket.
double invert_increasing(const std::function<double(double)>& f, double y, double lo, double hi);

// Correction basis {1, ln(s) w(s), w(s)} with w = 1/(s * slope(s)); returns
// the constant term. Exact on three points, weighted least squares otherwise.
double extrapolate_limit(std::span<const double> s, std::span<const double> ratios, std::span<const double> slopes,
                         std::span<const double> sigmas = {});

TauberianReport tauberian_check(const PhiFunction& phi, const std::function<double(double)>& log_mgf,
                                const std::function<double(double)>& log_tail, const TauberOptions& opts = {});

TauberianReport tauberian_check(const PhiFunction& phi, const OracleDistribution& law, const TauberOptions& opts = {});

// Tail side from seeded samples of the law; the MGF side stays analytic.
TauberianReport tauberian_check_monte_carlo(const PhiFunction& phi, const OracleDistribution& law,
                                            const MonteCarloOptions& mc = {}, const TauberOptions& opts = {});

}  // namespace tailinv
