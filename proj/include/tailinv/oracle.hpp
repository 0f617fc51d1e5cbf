#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tailinv/phi_function.hpp"

namespace tailinv {

// Reference law with exact tail, MGF exponent (when finite) and a seeded
// inverse-transform sampler. The tail is the right tail P(X > x).
class OracleDistribution {
 public:
  struct Parts {
    std::string name;
    std::function<double(double)> log_tail;
    std::function<double(double)> density;
    std::function<double(double)> quantile;
    std::optional<PhiFunction> mgf_exponent;
    double support_lo = 0;
  };

  explicit OracleDistribution(Parts parts);

  static OracleDistribution gaussian(double sigma = 1.0);
  static OracleDistribution exponential(double rate = 1.0);
  static OracleDistribution weibull(double shape);
  static OracleDistribution pareto(double alpha);
  // Centered Gaussian with variance s1^2 w.p. w and s2^2 otherwise.
  static OracleDistribution gaussian_mixture(double w, double s1, double s2);

  const std::string& name() const { return parts_.name; }
  double log_tail(double x) const { return parts_.log_tail(x); }
  double tail(double x) const { return std::exp(parts_.log_tail(x)); }
  double density(double x) const { return parts_.density(x); }
  double quantile(double u) const { return parts_.quantile(u); }
  double support_lo() const { return parts_.support_lo; }
  bool cramer() const { return parts_.mgf_exponent.has_value(); }
  // ln E exp(lambda X); throws std::logic_error for non-Cramer laws.
  const PhiFunction& mgf_exponent() const;
  // G(x) = -ln T(x) on [0, inf).
  PhiFunction tail_exponent() const;

  // Element `index` of the stream for `seed`; streams depend only on (seed, index).
  double sample_at(std::uint64_t seed, std::uint64_t index) const;
  std::vector<double> sample(std::uint64_t seed, std::size_t n) const;

 private:
  Parts parts_;
};

// Counter-based uniform in (0, 1).
double uniform_at(std::uint64_t seed, std::uint64_t index);

struct EmpiricalTail {
  std::vector<double> x_grid;
  std::vector<double> fraction;   // share of samples strictly above x
  std::vector<double> halfwidth;  // 95% Wilson interval half-width
  std::size_t n = 0;
};

EmpiricalTail empirical_tail(std::span<const double> samples, std::span<const double> x_grid);

// The suite used by the validation runs.
std::vector<OracleDistribution> oracle_suite();
std::optional<OracleDistribution> oracle_by_name(const std::string& name);

}  // namespace tailinv
