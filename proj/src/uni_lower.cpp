#include "tailinv/uni_lower.hpp"

#include <algorithm>
#include <cmath>

#include "tailinv/errors.hpp"
#include "tailinv/optimize.hpp"
#include "tailinv/saddle.hpp"

namespace tailinv {

namespace {

constexpr double kDefaultTop = 1e3;
constexpr double kEdgeFraction = 1e-6;

double verification_top(const Domain& dom) {
  if (dom.bounded()) return dom.hi - (dom.hi - dom.lo) * kEdgeFraction;
  return std::max(kDefaultTop, 4 * std::max(dom.lo, 1.0));
}

// Points between lo and top; dense near a finite domain end.
std::vector<double> verification_grid(const Domain& dom, double lo, double top, int n) {
  if (!(top > lo)) return {lo};
  if (dom.bounded()) {
    std::vector<double> out;
    const double span = dom.hi - lo;
    const double t_min = (dom.hi - top) / span;
    for (double t : geomspace(1.0, t_min, n)) out.push_back(dom.hi - span * t);
    std::sort(out.begin(), out.end());
    return out;
  }
  return geomspace(lo, top, n);
}

// Smallest lambda in [lo, top] with phi(lambda) >= 1, assuming phi increasing.
double first_unit_level(const PhiFunction& phi, double lo, double top) {
  const double start = lo > 0 ? lo : std::min(1e-12, top);
  if (phi(start) >= 1) return start;
  if (phi(top) < 1) return kInf;
  double a = start, b = top;
  for (int i = 0; i < 200 && (b - a) > 1e-13 * b; ++i) {
    const double m = 0.5 * (a + b);
    (phi(m) >= 1 ? b : a) = m;
  }
  return b;
}

// Largest k in [1, n] with feasible(k). Bisects when k = 1 is feasible
// (feasibility decreasing in k); otherwise falls back to a descending scan,
// which covers exponents that are negative near the origin. 0: none feasible.
int largest_feasible(int n, const std::function<bool(int)>& feasible) {
  if (feasible(n)) return n;
  if (!feasible(1)) {
    for (int k = n - 1; k > 1; --k) {
      if (feasible(k)) return k;
    }
    return 0;
  }
  int good = 1, bad = n;
  while (bad - good > 1) {
    const int mid = (good + bad) / 2;
    (feasible(mid) ? good : bad) = mid;
  }
  return good;
}

double safe_eval(const PhiFunction& phi, double t) {
  if (!phi.domain().contains(t)) return kInf;
  return phi(t);
}

bool no_cramer(const PhiFunction& phi) {
  const Domain& dom = phi.domain();
  if (dom.hi <= std::max(dom.lo, 0.0)) return true;
  double probe = dom.lo > 0 ? dom.lo : 1.0;
  if (dom.bounded()) probe = std::min(probe, 0.5 * (std::max(dom.lo, 0.0) + dom.hi));
  return !std::isfinite(phi(probe));
}

}  // namespace

double auxiliary_exponent(const PhiFunction& phi, double lambda) {
  if (!(lambda > 0)) throw OutOfDomain(lambda, 0, kInf);
  const double p = phi(lambda);
  if (!(p > 0)) return -kInf;
  return p - std::log(lambda) + std::log1p(-std::exp(-p));
}

WCertificate certify_class_w(const PhiFunction& phi, const WOptions& opts) {
  WCertificate cert;
  const Domain& dom = phi.domain();
  const double top = std::isnan(opts.lambda_hi) ? verification_top(dom) : opts.lambda_hi;
  const double lo = std::isnan(opts.lambda_lo) ? first_unit_level(phi, dom.lo, top) : opts.lambda_lo;
  cert.lambda_lo = lo;
  cert.lambda_hi = top;
  if (!std::isfinite(lo) || !(lo > 0) || lo > top) return cert;

  const auto grid = verification_grid(dom, lo, top, opts.lambda_points);
  cert.grid_points = grid.size();
  std::vector<double> aux(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) aux[i] = auxiliary_exponent(phi, grid[i]);

  auto margin = [&](double c) {
    double m = kInf;
    for (std::size_t i = 0; i < grid.size(); ++i) m = std::min(m, aux[i] - safe_eval(phi, c * grid[i]));
    return m;
  };
  const int n = opts.c_points;
  const int k = largest_feasible(n, [&](int j) { return margin(double(j) / n) >= 0; });
  if (k == 0) {
    cert.margin = margin(1.0 / n);
    return cert;
  }
  cert.c1 = double(k) / n;
  cert.margin = margin(cert.c1);
  cert.certified = cert.margin >= 0;
  return cert;
}

UnilateralResult unilateral_lower_envelope(const PhiFunction& phi, double eps, double m_surrogate,
                                           std::span<const double> x_grid, const UnilateralOptions& opts) {
  if (!(eps > 0 && eps < 1)) throw std::invalid_argument("unilateral_lower_envelope: eps must lie in (0, 1)");
  UnilateralResult out;
  auto& cert = out.certificate;
  auto& env = out.envelope;
  cert.eps = eps;
  cert.m_bound = m_surrogate;
  env.side = Side::kLower;
  env.provenance = "unilateral";
  env.valid_from = cert.x_valid_from;
  env.x_grid.assign(x_grid.begin(), x_grid.end());

  if (no_cramer(phi)) {
    env.annotate("NoCramer");
    for (double x : x_grid) env.log_values.push_back(x >= cert.x_valid_from ? -kInf : std::nan(""));
    return out;
  }
  if (!std::isfinite(m_surrogate)) throw Divergent(kInf, kInf, "unilateral_lower_envelope: M surrogate is not finite");
  if (!(m_surrogate > 0)) throw std::invalid_argument("unilateral_lower_envelope: M surrogate must be positive");

  cert.w = certify_class_w(phi, opts.w);
  if (!cert.w.certified) throw GeometryInvalid("unilateral_lower_envelope: " + phi.name() + " not certified in class W");
  cert.c1 = cert.w.c1;

  const Domain& dom = phi.domain();
  const double ln_m = std::log(m_surrogate);
  const double c1 = cert.c1;
  const double top = cert.w.lambda_hi;
  const double base = std::max(dom.lo, 0.0);
  for (int k = 1; k <= opts.lambda1_steps && cert.c2 == 0; ++k) {
    const double lambda1 = dom.bounded() ? dom.hi - (dom.hi - base) * std::ldexp(1.0, -k) : std::ldexp(1.0, k);
    if (!dom.contains(lambda1)) continue;
    const double reach = dom.bounded() ? top : std::max(top, 4 * lambda1);
    const auto grid = verification_grid(dom, lambda1, std::max(reach, lambda1), 400);
    std::vector<double> lhs(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) lhs[i] = safe_eval(phi, c1 * grid[i]) - ln_m;
    const int n = opts.c2_points;
    const int j = largest_feasible(n, [&](int jj) {
      const double c2 = c1 * jj / n;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(lhs[i] >= safe_eval(phi, c2 * grid[i]))) return false;
      }
      return true;
    });
    if (j > 0) {
      cert.c2 = c1 * j / n;
      cert.lambda1 = lambda1;
    }
  }
  if (cert.c2 == 0) throw AbsorptionFailed("unilateral_lower_envelope: no (lambda1, c2) pair on the search grid");
  cert.dilation = 1 / (cert.c2 * (1 - eps));
  cert.linear_rate = cert.lambda1 / (1 - eps);

  ConjugateOptions co = opts.conj;
  co.allow_infinite = true;
  for (double x : x_grid) {
    if (x < cert.x_valid_from) {
      env.log_values.push_back(std::nan(""));
      continue;
    }
    const double g = conjugate_at(phi, cert.dilation * x, co).value;
    env.log_values.push_back(-std::max(g, cert.linear_rate * x));
  }
  monotone_from_right(env);
  return out;
}

PhiFunction conjugate_function(const PhiFunction& nu, const ConjugateOptions& opts) {
  ConjugateOptions co = opts;
  co.allow_infinite = true;
  PhiTraits traits;
  traits.convex = true;
  traits.growth_slope = nu.domain().hi;
  return PhiFunction::expression(
      nu.name() + "*", [nu, co](double x) { return std::max(0.0, conjugate_at(nu, x, co).value); }, Domain{0.0},
      traits);
}

double m_surrogate_from_upper(const PhiFunction& nu, double eps, const QuadratureOptions& qopts) {
  return damped_integral(conjugate_function(nu), eps, qopts).value;
}

}  // namespace tailinv
