#pragma once

#include <cmath>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tailinv/config.hpp"

namespace tailinv {

// Interval [lo, hi) or [lo, hi] on which a scalar function is defined.
struct Domain {
  double lo = 1.0;
  double hi = kInf;
  bool hi_closed = false;

  bool contains(double t) const {
    if (!(t >= lo)) return false;
    return hi_closed ? t <= hi : t < hi;
  }
  bool bounded() const { return std::isfinite(hi); }
  // Largest point usable for numerical work.
  double upper_probe() const;
};

// Optional facts about an expression, used by the conjugate engine.
struct PhiTraits {
  bool convex = false;
  // lim f(t)/t as t -> inf; +inf for superlinear growth, NaN when unknown.
  double growth_slope = std::numeric_limits<double>::quiet_NaN();
  std::function<double(double)> derivative;
};

// A scalar function of one real variable: either a named closed-form family or
// a piecewise-linear interpolant of tabulated values.
//
// Evaluation outside the domain throws OutOfDomain; grid functions never
// extrapolate beyond their last knot.
class PhiFunction {
 public:
  enum class Form { kQuadratic, kPowerLog, kLinear, kExpression, kGrid };

  using Fn = std::function<double(double)>;

  using Traits = PhiTraits;

  // scale * t^2 / 2
  static PhiFunction quadratic(double scale = 1.0, Domain domain = {});
  // t^p / p * ln(e + t)^r, p > 1
  static PhiFunction power_log(double p, double r, Domain domain = {});
  // slope * t
  static PhiFunction linear(double slope, Domain domain = {});
  static PhiFunction expression(std::string name, Fn fn, Domain domain, Traits traits = {});
  // Knots strictly increasing; the domain is [first, last]. When open_ended is
  // set the tabulation stands for a function continuing past the last knot,
  // which the conjugate uses to flag divergence.
  static PhiFunction grid(std::vector<double> knots, std::vector<double> values, bool open_ended = false);
  // CSV with header "lambda,value".
  static PhiFunction from_csv(const std::filesystem::path& path);
  static PhiFunction from_csv_text(const std::string& text, const std::string& source = "<memory>");

  double operator()(double t) const { return evaluate(t); }
  double evaluate(double t) const;

  // Derivative if the form provides one exactly, nullopt otherwise.
  std::optional<double> exact_derivative(double t) const;
  // Exact derivative when available, else a central (one-sided at the domain
  // edge) difference. Grid form returns the right slope, or the left one at the
  // last knot.
  double slope(double t) const;
  // One-sided slopes [left, right]; differ only at kinks.
  std::pair<double, double> one_sided_slopes(double t) const;

  const Domain& domain() const { return domain_; }
  Form form() const { return form_; }
  const std::string& name() const { return name_; }
  const std::vector<double>& params() const { return params_; }
  bool convex() const { return convex_; }
  double growth_slope() const { return growth_slope_; }
  bool open_ended() const { return open_ended_; }

  std::span<const double> knots() const { return knots_; }
  std::span<const double> knot_values() const { return values_; }

  // k * f(t)
  PhiFunction scaled(double k) const;
  // f(t) + shift
  PhiFunction shifted(double shift) const;
  PhiFunction with_domain(Domain domain) const;

 private:
  PhiFunction() = default;

  Form form_ = Form::kExpression;
  std::string name_;
  std::vector<double> params_;
  Domain domain_;
  Fn fn_;
  Fn derivative_;
  bool convex_ = false;
  bool open_ended_ = false;
  double growth_slope_ = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> knots_;
  std::vector<double> values_;
};

// Second-difference convexity test on n points of [lo, hi].
bool is_convex_on(const PhiFunction& f, double lo, double hi, int n = 256, double tol = 1e-9);

}  // namespace tailinv
