#pragma once

#include <span>
#include <string>
#include <vector>

#include "tailinv/conjugate.hpp"
#include "tailinv/phi_function.hpp"

namespace tailinv {

enum class Side { kUpper, kLower };

const char* to_string(Side side);

// A bound on the tail function T(x) over an x grid, stored as ln T. NaN marks
// a point outside the validity range (absent, not zero); -inf is the value 0.
struct TailEnvelope {
  std::vector<double> x_grid;
  std::vector<double> log_values;
  Side side = Side::kUpper;
  double valid_from = 0;
  std::string provenance;
  std::vector<std::string> annotations;

  std::size_t size() const { return x_grid.size(); }
  bool present(std::size_t i) const { return !std::isnan(log_values[i]); }
  double value(std::size_t i) const { return std::exp(log_values[i]); }
  // G(x) = -ln T(x)
  double exponent(std::size_t i) const { return -log_values[i]; }
  bool has_annotation(const std::string& tag) const;
  void annotate(const std::string& tag);
};

// exp(-phi*(x)); zero where the conjugate is +inf.
TailEnvelope chernoff_envelope(const PhiFunction& phi, std::span<const double> x_grid, const ConjugateOptions& opts = {});

// Replaces each present value by the largest present value to its right, which
// keeps a lower envelope valid when T is nonincreasing.
void monotone_from_right(TailEnvelope& env);

}  // namespace tailinv
