#include "tailinv/saddle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tailinv/errors.hpp"
#include "tailinv/optimize.hpp"

namespace tailinv {

namespace {

double checked(const PhiFunction& zeta, double x) {
  const double v = zeta.evaluate(x);
  if (v < -1e-12 * (1 + std::abs(x))) {
    std::ostringstream os;
    os << "exponent " << zeta.name() << " is negative (" << v << ") at x = " << x;
    throw NegativeInput(os.str());
  }
  return v;
}

IntegralValue integrate_exponent(const PhiFunction& zeta, const std::function<double(double)>& log_f, const char* what,
                                 double eps, const QuadratureOptions& opts) {
  const Domain& dom = zeta.domain();
  if (dom.bounded()) {
    auto r = quadrature([&](double x) { return std::exp(log_f(x)); }, dom.lo, dom.upper_probe(), opts.rel_tol);
    return {r.value, r.error, r.truncation};
  }
  const LogQuadratureResult r = log_quadrature(log_f, dom.lo, opts);
  if (r.divergent || !r.converged || !std::isfinite(r.log_value)) {
    std::ostringstream os;
    os << what << "(" << eps << ") diverges for " << zeta.name() << ": integrand at truncation " << r.truncation
       << " is exp(" << r.log_integrand_at_cap << ")";
    throw Divergent(r.truncation, r.log_integrand_at_cap, os.str());
  }
  const double v = std::exp(r.log_value);
  return {v, v * r.rel_error, r.truncation};
}

}  // namespace

IntegralValue damped_integral(const PhiFunction& zeta, double eps, const QuadratureOptions& opts) {
  if (!(eps > 0 && eps <= 1)) throw std::invalid_argument("damped_integral: eps must lie in (0, 1]");
  return integrate_exponent(
      zeta, [&](double x) { return -eps * checked(zeta, x); }, "K", eps, opts);
}

IntegralValue contraction_integral(const PhiFunction& zeta, double eps, const QuadratureOptions& opts) {
  if (!(eps > 0 && eps < 1)) throw std::invalid_argument("contraction_integral: eps must lie in (0, 1)");
  return integrate_exponent(
      zeta, [&](double x) { return checked(zeta, (1 - eps) * x) - checked(zeta, x); }, "R", eps, opts);
}

EpsilonReport epsilon_report(const PhiFunction& zeta, double eps, const QuadratureOptions& opts) {
  EpsilonReport rep;
  rep.eps = eps;
  try {
    const auto k = damped_integral(zeta, eps, opts);
    rep.k = k.value;
    rep.truncation = k.truncation;
    rep.abs_error = k.error;
  } catch (const Divergent& d) {
    rep.truncation = d.cap();
  }
  if (eps < 1) {
    try {
      const auto r = contraction_integral(zeta, eps, opts);
      rep.r = r.value;
      rep.truncation = std::max(rep.truncation, r.truncation);
      rep.abs_error = std::max(rep.abs_error, r.error);
    } catch (const Divergent&) {
    }
  }
  if (rep.k && rep.r) {
    rep.m = std::min(*rep.k, *rep.r);
  } else if (rep.k) {
    rep.m = rep.k;
  } else if (rep.r) {
    rep.m = rep.r;
  }
  return rep;
}

CompoundBound compound_upper(const PhiFunction& zeta, double lambda, double eps, const QuadratureOptions& qopts,
                             const ConjugateOptions& copts) {
  if (!(eps > 0 && eps < 1)) throw std::invalid_argument("compound_upper: eps must lie in (0, 1)");
  CompoundBound out;
  out.lambda = lambda;
  out.eps = eps;
  const Domain& dom = zeta.domain();
  if (dom.bounded()) {
    out.finite_measure = true;
    const double measure = dom.hi - dom.lo;
    const double c = conjugate_at(zeta, lambda, copts).value;
    out.conjugate_at_dilated = c;
    out.log_bound = std::log(measure) + c;
    out.log_bound_k = out.log_bound;
    out.log_bound_k_sharp = out.log_bound;
    return out;
  }
  out.integrals = epsilon_report(zeta, eps, qopts);
  if (!out.integrals.m) {
    throw Divergent(out.integrals.truncation, kInf, "compound_upper: both K and R diverge at eps = " + std::to_string(eps));
  }
  const double c = conjugate_at(zeta, lambda / (1 - eps), copts).value;
  out.conjugate_at_dilated = c;
  out.log_bound = std::log(*out.integrals.m) + c;
  if (out.integrals.k) {
    out.log_bound_k = std::log(*out.integrals.k) + c;
    out.log_bound_k_sharp = std::log(*out.integrals.k) + (1 - eps) * c;
  }
  return out;
}

OptimizedCompound optimized_compound_upper(const PhiFunction& zeta, double lambda, const QuadratureOptions& qopts,
                                           const ConjugateOptions& copts) {
  OptimizedCompound out;
  auto eval = [&](double eps) {
    try {
      return compound_upper(zeta, lambda, eps, qopts, copts).log_bound;
    } catch (const Divergent&) {
      return kInf;
    } catch (const UnboundedObjective&) {
      return kInf;
    }
  };
  out.eps_grid = geomspace(0.01, 0.99, 33);
  for (double e : out.eps_grid) out.log_bounds.push_back(eval(e));
  const auto it = std::min_element(out.log_bounds.begin(), out.log_bounds.end());
  const std::size_t i = static_cast<std::size_t>(it - out.log_bounds.begin());
  out.eps = out.eps_grid[i];
  out.log_bound = *it;
  if (!std::isfinite(out.log_bound)) return out;
  const double a = out.eps_grid[i == 0 ? 0 : i - 1];
  const double b = out.eps_grid[std::min(i + 1, out.eps_grid.size() - 1)];
  const Maximum m = golden_section_maximize([&](double e) { return -eval(e); }, a, b, 1e-6, 80);
  if (-m.value < out.log_bound) {
    out.eps = m.arg;
    out.log_bound = -m.value;
  }
  return out;
}

LogQuadratureResult laplace_integral(const PhiFunction& zeta, double lambda, const ConjugateOptions& copts) {
  ConjugateOptions c = copts;
  c.allow_infinite = true;
  const ConjugatePoint peak = conjugate_at(zeta, lambda, c);
  LogQuadratureResult out;
  if (!peak.finite()) {
    out.divergent = true;
    return out;
  }
  auto log_f = [&](double x) { return lambda * x - zeta.evaluate(x); };
  const Domain& dom = zeta.domain();
  if (dom.bounded()) {
    auto r = quadrature([&](double x) { return std::exp(log_f(x) - peak.value); }, dom.lo, dom.upper_probe());
    out.log_value = std::log(r.value) + peak.value;
    out.rel_error = r.error / r.value;
    out.converged = r.converged;
    out.truncation = r.truncation;
    return out;
  }
  QuadratureOptions q;
  q.peak = peak.argmax;
  q.log_shift = peak.value;
  q.scale = std::max(1.0, 0.05 * peak.argmax);
  return log_quadrature(log_f, dom.lo, q);
}

CramerCertificate cramer_check(const PhiFunction& tail_exponent, const QuadratureOptions& opts) {
  CramerCertificate cert;
  cert.eps_tested = {1e-3, 2e-3, 5e-3, 1e-2, 2e-2, 5e-2, 0.1, 0.2, 0.5};
  bool all_finite = true;
  for (double e : cert.eps_tested) {
    bool finite = true;
    try {
      damped_integral(tail_exponent, e, opts);
    } catch (const Divergent&) {
      finite = false;
    }
    cert.k_finite.push_back(finite);
    all_finite = all_finite && finite;
  }
  for (double x = 1; x <= 1e6; x *= 10) {
    if (!tail_exponent.domain().contains(x)) break;
    cert.ladder.push_back(x);
    cert.ratios.push_back(tail_exponent.evaluate(x) / x);
  }
  const std::size_t n = cert.ratios.size();
  const bool non_decaying = n >= 2 && cert.ratios[n - 1] > 0 && cert.ratios[n - 1] >= 0.9 * cert.ratios[n - 2];
  cert.certified = all_finite && non_decaying;
  if (cert.certified) cert.mu = *std::min_element(cert.ratios.begin(), cert.ratios.end());
  return cert;
}

}  // namespace tailinv
