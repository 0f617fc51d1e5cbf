#pragma once

#include <span>
#include <vector>

#include "tailinv/config.hpp"
#include "tailinv/phi_function.hpp"

namespace tailinv {

struct ConjugateOptions {
  Tolerances tol{};
  // Store +inf instead of throwing UnboundedObjective.
  bool allow_infinite = false;
};

struct ConjugatePoint {
  double x = 0;
  double value = 0;   // +inf when unbounded and allowed
  double argmax = 0;  // maximizing lambda (subgradient of the conjugate at x)
  bool finite() const { return value < kInf; }
};

// Tabulated Young-Fenchel transform f*(x) = sup_{lambda in dom f} (lambda x - f(lambda)).
struct ConjugateResult {
  std::vector<double> x_grid;
  std::vector<double> values;
  std::vector<double> argmax;
  Domain source_domain;

  std::size_t size() const { return x_grid.size(); }
  bool finite(std::size_t i) const { return values[i] < kInf; }
};

ConjugatePoint conjugate_at(const PhiFunction& f, double x, const ConjugateOptions& opts = {});

// x_grid strictly increasing, all x >= 0.
ConjugateResult conjugate(const PhiFunction& f, std::span<const double> x_grid, const ConjugateOptions& opts = {});

// (f*)* on lambda_grid; argmax holds the maximizing x for each lambda.
ConjugateResult biconjugate(const PhiFunction& f, std::span<const double> lambda_grid, const ConjugateOptions& opts = {});

// Maximizer x0 of S(lambda, x) = lambda x - f*(x), i.e. the inverse of (f*)'
// at lambda. Throws NonUniqueArgmax when the maximizing set (the
// subdifferential of f at lambda) is wider than width_tol * (1 + |x0|).
double saddle_point(const PhiFunction& f, double lambda, const ConjugateOptions& opts = {}, double width_tol = 1e-4);

// Fast path used inside sweeps: for convex f the saddle point is f'(lambda).
inline double saddle_point_from_slope(const PhiFunction& f, double lambda) { return f.slope(lambda); }

}  // namespace tailinv
