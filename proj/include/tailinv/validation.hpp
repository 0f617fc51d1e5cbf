#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tailinv/envelope.hpp"
#include "tailinv/oracle.hpp"

namespace tailinv {

// One envelope compared against the exact tail of an oracle.
struct SandwichCheck {
  std::string envelope;  // provenance of the envelope checked
  Side side = Side::kUpper;
  std::size_t points_checked = 0;
  // Points where a lower envelope is a nonzero bound; 0 marks a vacuous check.
  std::size_t nontrivial_points = 0;
  // Smallest signed log gap in the direction of the bound (>= slack passes).
  double worst_slack = kInf;
  double worst_x = std::nan("");
  bool passed = false;
  std::string error;  // set when the envelope could not be produced
};

struct EmpiricalCheck {
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::vector<double> fraction;
  // |fraction - T| in binomial standard deviations of T.
  std::vector<double> z_scores;
  double max_z = 0;
  bool passed = false;
};

struct LawValidation {
  std::string law;
  std::vector<double> x_grid;
  std::vector<double> exact_log_tail;
  std::vector<TailEnvelope> envelopes;  // Chernoff upper first, then the lower envelopes produced
  std::vector<SandwichCheck> checks;
  EmpiricalCheck empirical;
  bool passed = false;
};

struct ValidationOptions {
  std::vector<double> x_grid;  // empty: 1 to 8 step 0.25
  double slack = -1e-12;
  double eps = 0.2;              // damping for the unilateral chain
  std::size_t samples = 100'000;  // empirical cross-check of the oracle sampler
  std::uint64_t seed = 42;
  double max_z = 5;
};

// Chernoff upper >= exact tail >= unilateral chain, bilateral closure and
// Richter lower envelopes, each from the law's exact MGF exponent, at every
// grid point where the envelope is present; plus a seeded empirical check of
// the sampler against the exact tail.
LawValidation validate_law(const OracleDistribution& law, const ValidationOptions& opts = {});

// Gaussian, exponential, Weibull(2), Weibull(4).
std::vector<OracleDistribution> sandwich_suite();

}  // namespace tailinv
