#pragma once

#include <optional>
#include <vector>

#include "tailinv/conjugate.hpp"
#include "tailinv/phi_function.hpp"
#include "tailinv/quadrature.hpp"

namespace tailinv {

// Integrals over x in the domain of zeta (Lebesgue measure; [0, inf) in every
// application here). zeta is an exponent in x, not a function of lambda.

struct IntegralValue {
  double value = 0;
  double error = 0;
  double truncation = 0;
};

// K(eps) = integral of exp(-eps * zeta(x)) dx. Throws Divergent, NegativeInput.
IntegralValue damped_integral(const PhiFunction& zeta, double eps, const QuadratureOptions& opts = {});

// R(eps) = integral of exp(zeta((1 - eps) x) - zeta(x)) dx. Same contract.
IntegralValue contraction_integral(const PhiFunction& zeta, double eps, const QuadratureOptions& opts = {});

struct EpsilonReport {
  double eps = 0;
  std::optional<double> k;  // nullopt: divergent
  std::optional<double> r;
  std::optional<double> m;  // min of the finite ones
  double truncation = 0;
  double abs_error = 0;
};

EpsilonReport epsilon_report(const PhiFunction& zeta, double eps, const QuadratureOptions& opts = {});

// Upper estimates of I(lambda) = integral of exp(lambda x - zeta(x)) dx, all in
// log space.
struct CompoundBound {
  double lambda = 0;
  double eps = 0;
  EpsilonReport integrals;
  double conjugate_at_dilated = 0;  // zeta*(lambda / (1 - eps))
  double log_bound = kInf;          // M * exp(zeta*(lambda/(1-eps)))
  double log_bound_k_sharp = kInf;  // K * exp((1-eps) zeta*(lambda/(1-eps)))
  double log_bound_k = kInf;        // K * exp(zeta*(lambda/(1-eps)))
  bool finite_measure = false;      // bounded domain: measure * exp(zeta*(lambda))

  double bound() const { return std::exp(log_bound); }
  double bound_k_sharp() const { return std::exp(log_bound_k_sharp); }
};

// Throws Divergent when M is not finite, UnboundedObjective when the dilated
// conjugate is +inf. For a bounded domain of measure m the finite-measure
// shortcut m * exp(zeta*(lambda)) is returned in log_bound.
CompoundBound compound_upper(const PhiFunction& zeta, double lambda, double eps, const QuadratureOptions& qopts = {},
                             const ConjugateOptions& copts = {});

struct OptimizedCompound {
  double eps = 0;
  double log_bound = kInf;
  std::vector<double> eps_grid;
  std::vector<double> log_bounds;  // +inf where divergent
};

// Infimum over eps of the compound bound: 33-point geometric scan of
// [0.01, 0.99], then golden-section refinement around the best point.
OptimizedCompound optimized_compound_upper(const PhiFunction& zeta, double lambda, const QuadratureOptions& qopts = {},
                                           const ConjugateOptions& copts = {});

// log of I(lambda) by direct quadrature, centred on the saddle point.
LogQuadratureResult laplace_integral(const PhiFunction& zeta, double lambda, const ConjugateOptions& copts = {});

struct CramerCertificate {
  bool certified = false;
  // Witness rate mu with G(x) >= mu x on the probe ladder; 0 when not certified.
  double mu = 0;
  std::vector<double> eps_tested;
  std::vector<bool> k_finite;
  std::vector<double> ladder;
  std::vector<double> ratios;  // G(x)/x on the ladder
};

// G is an exponential tail function (T = exp(-G)). Certified when K(eps) is
// finite for every tested eps and G(x)/x does not decay along the ladder.
CramerCertificate cramer_check(const PhiFunction& tail_exponent, const QuadratureOptions& opts = {});

}  // namespace tailinv
