#pragma once

#include <span>
#include <vector>

#include "tailinv/conjugate.hpp"
#include "tailinv/envelope.hpp"
#include "tailinv/phi_function.hpp"

namespace tailinv {

// S(lambda, x) = lambda x - phi2*(x) and its x-derivative lambda - (phi2*)'(x).
struct SaddleValue {
  double s = 0;
  double ds = 0;
};

SaddleValue saddle_objective(const PhiFunction& phi2, double lambda, double x, const ConjugateOptions& opts = {});

enum class Selection { kSymmetric, kAsymmetric, kExplicit };

struct SaddleGeometry {
  double lambda = 0;
  double x0 = 0;
  double x_minus = 0;
  double x_plus = 0;
  Selection selection = Selection::kExplicit;
  double s0 = 0;
  double s_minus = 0;
  double s_plus = 0;
  double ds_minus = 0;  // > 0 when valid
  double ds_plus = 0;   // < 0 when valid

  bool valid() const { return ds_minus > 0 && ds_plus < 0 && x_minus < x0 && x0 < x_plus; }
};

// x_minus = x0(lambda (1 - d1)), x_plus = x0(lambda (1 + d2)), with x0 the
// derivative of phi2. S values come from Fenchel equality, so phi2 must be
// convex and differentiable.
SaddleGeometry asymmetric_geometry(const PhiFunction& phi2, double lambda, double d1, double d2);
inline SaddleGeometry symmetric_geometry(const PhiFunction& phi2, double lambda, double delta) {
  auto g = asymmetric_geometry(phi2, lambda, delta, delta);
  g.selection = Selection::kSymmetric;
  return g;
}
// Arbitrary x_minus < x_plus, evaluated through numerical conjugates.
SaddleGeometry explicit_geometry(const PhiFunction& phi2, double lambda, double x_minus, double x_plus,
                                 const ConjugateOptions& opts = {});

struct BilateralPoint {
  double x = 0;  // the bound applies to T(x_minus)
  double log_value = -kInf;
  bool clamped = true;
  double value() const { return std::exp(log_value); }
};

// exp(-lambda x_plus) [exp(phi1(lambda)) - lambda e^{S-}/S'- - lambda e^{S+}/|S'+|]
// in log space, clamped to 0 when the bracket is not positive. phi1 is the
// lower MGF exponent. Throws GeometryInvalid on wrong derivative signs.
BilateralPoint bilateral_lower_point(const PhiFunction& phi1, const SaddleGeometry& geometry);

struct ClosureOptions {
  std::vector<double> deltas;  // empty: 16 log-spaced values in [1e-3, 0.5]
  // Extra deltas of the form c / lambda, useful when the optimum shrinks with lambda.
  std::vector<double> scaled_deltas;
  // Apply the right-to-left running max; off returns the raw pointwise sup.
  bool monotone = true;
};

std::vector<double> default_deltas();

// Supremum over the (d1, d2) grid of the bilateral bound at each z = x_minus,
// made nonincreasing from the right. Points where every geometry clamps get
// value 0 and the envelope is annotated AllClamped.
TailEnvelope closure_lower_envelope(const PhiFunction& phi1, const PhiFunction& phi2, std::span<const double> z_grid,
                                    const ClosureOptions& opts = {});

struct RegularityReport {
  double v = 0;  // grid infimum of the normalized saddle drop
  double v_arg_lambda = 0;
  double v_arg_delta = 0;
  bool v_positive = false;
  // Smallest c0 with lambda x0(lambda(1+d)) - (1-d^2) phi(lambda) <= (1 + c0 d) phi*(x0(lambda(1-d)))
  // over the (lambda, d) grid.
  double c0 = kInf;
  bool c0_feasible = false;
  std::vector<double> lambda_grid;
  std::vector<double> delta_grid;
};

RegularityReport verify_regularity(const PhiFunction& phi, double lambda_max = 1e3);

struct PinchedEnvelope {
  TailEnvelope envelope;
  double delta = 0;
  double c = 0;
  bool within_stated_range = false;  // c < 1 / (2 delta)
  TailEnvelope closure;
};

// Lower envelope exp(-(1 - c d) phi*(z / (1 - c d))) for MGF exponents pinched
// between (1 - d^2) phi and phi; c is the smallest grid value in (0, 1/d)
// keeping it under the closure bound. Valid for z >= e.
PinchedEnvelope pinched_lower_envelope(const PhiFunction& phi, double delta, std::span<const double> z_grid,
                                       const ClosureOptions& opts = {});

struct RichterSandwich {
  TailEnvelope lower;
  TailEnvelope upper;
  double c2 = 0;
};

// Exact MGF exponent phi: exp(-phi*(x) - c2 x) <= T(x) <= exp(-phi*(x)).
RichterSandwich richter_sandwich(const PhiFunction& phi, std::span<const double> x_grid);

}  // namespace tailinv
