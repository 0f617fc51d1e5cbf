#pragma once

#include <span>
#include <vector>

#include "tailinv/conjugate.hpp"
#include "tailinv/envelope.hpp"
#include "tailinv/phi_function.hpp"
#include "tailinv/quadrature.hpp"

namespace tailinv {

// ln[(exp(phi(lambda)) - 1) / lambda], evaluated without overflow.
double auxiliary_exponent(const PhiFunction& phi, double lambda);

struct WCertificate {
  bool certified = false;
  double c1 = 0;
  double lambda_lo = 0;
  double lambda_hi = 0;
  // min over the verification grid of auxiliary(lambda) - phi(c1 lambda)
  double margin = -kInf;
  std::size_t grid_points = 0;
};

struct WOptions {
  // Verification range; NaN picks the defaults (smallest lambda with
  // phi >= 1, and 1e3 or the neighbourhood of a finite domain end).
  double lambda_lo = std::numeric_limits<double>::quiet_NaN();
  double lambda_hi = std::numeric_limits<double>::quiet_NaN();
  int lambda_points = 2000;
  int c_points = 1000;
};

// Largest c1 = k / c_points with auxiliary(lambda) >= phi(c1 lambda) on the
// verification grid.
WCertificate certify_class_w(const PhiFunction& phi, const WOptions& opts = {});

struct LowerEnvelopeCertificate {
  double eps = 0;
  double m_bound = 0;
  double c1 = 0;
  double c2 = 0;
  double dilation = 1;   // a = 1 / (c2 (1 - eps))
  double lambda1 = 0;
  double linear_rate = 0;  // lambda1 / (1 - eps)
  double x_valid_from = 1;
  bool super_convexity_assumed = true;
  WCertificate w;
};

struct UnilateralResult {
  TailEnvelope envelope;
  LowerEnvelopeCertificate certificate;
};

struct UnilateralOptions {
  WOptions w;
  int c2_points = 200;
  int lambda1_steps = 14;
  ConjugateOptions conj;
};

// Lower tail envelope exp(-max(phi*(a x), mu x)) for x >= 1 from a lower MGF
// exponent phi and a finite bound M_surrogate on M[G](eps). Annotated NoCramer
// (all zero) when phi is infinite on (0, inf).
// Throws AbsorptionFailed, Divergent (non-finite M), GeometryInvalid when phi
// is not in class W.
UnilateralResult unilateral_lower_envelope(const PhiFunction& phi, double eps, double m_surrogate,
                                           std::span<const double> x_grid, const UnilateralOptions& opts = {});

// K[max(nu*, 0)](eps) for an upper MGF exponent nu: a computable bound on
// M[G](eps) since G >= nu*.
double m_surrogate_from_upper(const PhiFunction& nu, double eps, const QuadratureOptions& qopts = {});

// nu* as a function of x on [0, inf), clamped at 0.
PhiFunction conjugate_function(const PhiFunction& nu, const ConjugateOptions& opts = {});

}  // namespace tailinv
