#include "tailinv/bi_lower.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tailinv/errors.hpp"
#include "tailinv/optimize.hpp"

namespace tailinv {

namespace {

double log_add(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == -kInf) return a;
  return a + std::log1p(std::exp(b - a));
}

// log of exp(-lambda x_plus) * bracket; -inf when the bracket is not positive.
double bracket_log(double phi1_at_lambda, double lambda, double x_plus, double s_minus, double ds_minus,
                   double s_plus, double ds_plus) {
  const double ln_l = std::log(lambda);
  const double neg = log_add(ln_l + s_minus - std::log(ds_minus), ln_l + s_plus - std::log(-ds_plus));
  if (!(neg < phi1_at_lambda)) return -kInf;
  return -lambda * x_plus + phi1_at_lambda + std::log1p(-std::exp(neg - phi1_at_lambda));
}

void require_in(const PhiFunction& f, double t, const char* what) {
  if (!f.domain().contains(t)) throw GeometryInvalid(std::string(what) + " outside the domain of " + f.name());
}

}  // namespace

SaddleValue saddle_objective(const PhiFunction& phi2, double lambda, double x, const ConjugateOptions& opts) {
  const ConjugatePoint p = conjugate_at(phi2, x, opts);
  return {lambda * x - p.value, lambda - p.argmax};
}

SaddleGeometry asymmetric_geometry(const PhiFunction& phi2, double lambda, double d1, double d2) {
  if (!(d1 > 0 && d1 < 1 && d2 > 0)) throw GeometryInvalid("asymmetric_geometry: need 0 < d1 < 1 and d2 > 0");
  const double nu_m = lambda * (1 - d1);
  const double nu_p = lambda * (1 + d2);
  require_in(phi2, nu_m, "lambda (1 - d1)");
  require_in(phi2, lambda, "lambda");
  require_in(phi2, nu_p, "lambda (1 + d2)");
  SaddleGeometry g;
  g.selection = Selection::kAsymmetric;
  g.lambda = lambda;
  g.x0 = phi2.slope(lambda);
  g.x_minus = phi2.slope(nu_m);
  g.x_plus = phi2.slope(nu_p);
  g.s0 = phi2(lambda);
  g.s_minus = (lambda - nu_m) * g.x_minus + phi2(nu_m);
  g.s_plus = (lambda - nu_p) * g.x_plus + phi2(nu_p);
  g.ds_minus = lambda - nu_m;
  g.ds_plus = lambda - nu_p;
  return g;
}

SaddleGeometry explicit_geometry(const PhiFunction& phi2, double lambda, double x_minus, double x_plus,
                                 const ConjugateOptions& opts) {
  if (!(x_minus < x_plus)) throw GeometryInvalid("explicit_geometry: need x_minus < x_plus");
  SaddleGeometry g;
  g.selection = Selection::kExplicit;
  g.lambda = lambda;
  g.x0 = phi2.slope(lambda);
  g.x_minus = x_minus;
  g.x_plus = x_plus;
  g.s0 = saddle_objective(phi2, lambda, g.x0, opts).s;
  const SaddleValue m = saddle_objective(phi2, lambda, x_minus, opts);
  const SaddleValue p = saddle_objective(phi2, lambda, x_plus, opts);
  g.s_minus = m.s;
  g.ds_minus = m.ds;
  g.s_plus = p.s;
  g.ds_plus = p.ds;
  return g;
}

BilateralPoint bilateral_lower_point(const PhiFunction& phi1, const SaddleGeometry& g) {
  if (!(g.ds_minus > 0) || !(g.ds_plus < 0)) {
    throw GeometryInvalid("bilateral_lower_point: S' must be positive at x_minus and negative at x_plus");
  }
  require_in(phi1, g.lambda, "lambda");
  BilateralPoint out;
  out.x = g.x_minus;
  out.log_value = bracket_log(phi1(g.lambda), g.lambda, g.x_plus, g.s_minus, g.ds_minus, g.s_plus, g.ds_plus);
  out.clamped = out.log_value == -kInf;
  return out;
}

std::vector<double> default_deltas() { return geomspace(1e-3, 0.5, 16); }

TailEnvelope closure_lower_envelope(const PhiFunction& phi1, const PhiFunction& phi2, std::span<const double> z_grid,
                                    const ClosureOptions& opts) {
  const std::vector<double> deltas = opts.deltas.empty() ? default_deltas() : opts.deltas;
  TailEnvelope env;
  env.side = Side::kLower;
  env.provenance = "bilateral-closure";
  env.x_grid.assign(z_grid.begin(), z_grid.end());
  env.valid_from = z_grid.empty() ? 0 : z_grid.front();

  ConjugateOptions co;
  co.allow_infinite = true;
  const Domain& d1 = phi1.domain();
  const Domain& d2 = phi2.domain();
  bool any_clamped = false;
  for (double z : z_grid) {
    double best = -kInf;
    const ConjugatePoint cp = conjugate_at(phi2, z, co);
    const double mu = cp.argmax;
    if (cp.finite() && mu > 0) {
      const double s_minus_base = -cp.value;  // S(lambda, z) = lambda z - phi2*(z)
      std::vector<double> lambdas;
      for (double d : deltas) lambdas.push_back(mu / (1 - d));
      for (double c : opts.scaled_deltas) lambdas.push_back(mu + c);
      for (double lambda : lambdas) {
        if (!d1.contains(lambda) || !d2.contains(lambda)) continue;
        const double phi1_l = phi1(lambda);
        const double s_minus = lambda * z + s_minus_base;
        const double ds_minus = lambda - mu;
        if (!(ds_minus > 0)) continue;
        std::vector<double> d2s = deltas;
        for (double c : opts.scaled_deltas) d2s.push_back(c / lambda);
        for (double d : d2s) {
          const double nu = lambda * (1 + d);
          if (!d2.contains(nu)) continue;
          const double x_plus = phi2.slope(nu);
          const double s_plus = (lambda - nu) * x_plus + phi2(nu);
          const double v = bracket_log(phi1_l, lambda, x_plus, s_minus, ds_minus, s_plus, lambda - nu);
          best = std::max(best, v);
        }
      }
    }
    if (best == -kInf) any_clamped = true;
    env.log_values.push_back(best);
  }
  if (any_clamped) env.annotate("AllClamped");
  if (opts.monotone) monotone_from_right(env);
  return env;
}

RegularityReport verify_regularity(const PhiFunction& phi, double lambda_max) {
  RegularityReport rep;
  const Domain& dom = phi.domain();
  const double e = std::numbers::e;
  if (!dom.contains(e)) return rep;
  double top = lambda_max;
  if (dom.bounded()) top = std::min(top, dom.upper_probe() / 1.5);
  if (!(top > e)) return rep;
  rep.lambda_grid = geomspace(e, top, 40);
  rep.delta_grid = geomspace(1e-3, 0.5, 20);

  auto saddle_at = [&](double lambda, double nu) { return phi(nu) - (nu - lambda) * phi.slope(nu); };
  rep.v = kInf;
  for (double l : rep.lambda_grid) {
    const double s0 = phi(l);
    for (double d : rep.delta_grid) {
      for (double sd : {d, -d}) {
        const double nu = l * (1 + sd);
        if (!dom.contains(nu)) continue;
        const double v = (s0 - saddle_at(l, nu)) / (s0 * sd * sd);
        if (v < rep.v) {
          rep.v = v;
          rep.v_arg_lambda = l;
          rep.v_arg_delta = sd;
        }
      }
    }
  }
  rep.v_positive = rep.v > 0 && std::isfinite(rep.v);

  double c0 = -kInf;
  bool ok = true;
  for (double l : rep.lambda_grid) {
    for (double d : rep.delta_grid) {
      const double up = l * (1 + d);
      const double down = l * (1 - d);
      if (!dom.contains(up) || !dom.contains(down)) continue;
      const double lhs = l * phi.slope(up) - (1 - d * d) * phi(l);
      const double rhs = down * phi.slope(down) - phi(down);  // phi*(x0(down))
      if (!(rhs > 0)) {
        ok = false;
        continue;
      }
      c0 = std::max(c0, (lhs / rhs - 1) / d);
    }
  }
  rep.c0_feasible = ok && std::isfinite(c0);
  rep.c0 = rep.c0_feasible ? std::max(c0, 0.0) : kInf;
  return rep;
}

PinchedEnvelope pinched_lower_envelope(const PhiFunction& phi, double delta, std::span<const double> z_grid,
                                       const ClosureOptions& opts) {
  if (!(delta > 0 && delta < 0.5)) throw std::invalid_argument("pinched_lower_envelope: delta must lie in (0, 1/2)");
  PinchedEnvelope out;
  out.delta = delta;
  const PhiFunction lower = phi.scaled(1 - delta * delta);
  out.closure = closure_lower_envelope(lower, phi, z_grid, opts);
  const double e = std::numbers::e;

  ConjugateOptions co;
  co.allow_infinite = true;
  auto log_env = [&](double c, double z) {
    const double s = 1 - c * delta;
    return -s * conjugate_at(phi, z / s, co).value;
  };
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < z_grid.size(); ++i) {
    if (z_grid[i] >= e && out.closure.log_values[i] > -kInf) active.push_back(i);
  }
  constexpr int kSteps = 1000;
  auto feasible = [&](int k) {
    const double c = double(k) / (kSteps * delta);
    for (std::size_t i : active) {
      if (!(log_env(c, z_grid[i]) <= out.closure.log_values[i])) return false;
    }
    return true;
  };
  int k = kSteps;
  if (feasible(1)) {
    k = 1;
  } else if (feasible(kSteps - 1)) {
    int bad = 1, good = kSteps - 1;
    while (good - bad > 1) {
      const int mid = (good + bad) / 2;
      (feasible(mid) ? good : bad) = mid;
    }
    k = good;
  }
  out.c = double(k) / (kSteps * delta);
  out.within_stated_range = out.c < 1 / (2 * delta);

  TailEnvelope& env = out.envelope;
  env.side = Side::kLower;
  env.provenance = "pinched";
  env.valid_from = e;
  env.x_grid.assign(z_grid.begin(), z_grid.end());
  for (std::size_t i = 0; i < z_grid.size(); ++i) {
    const double z = z_grid[i];
    if (z < e) {
      env.log_values.push_back(std::nan(""));
    } else if (k == kSteps || out.closure.log_values[i] == -kInf) {
      env.log_values.push_back(-kInf);
      env.annotate("ClosureClamped");
    } else {
      env.log_values.push_back(log_env(out.c, z));
    }
  }
  return out;
}

RichterSandwich richter_sandwich(const PhiFunction& phi, std::span<const double> x_grid) {
  RichterSandwich out;
  out.upper = chernoff_envelope(phi, x_grid);
  ClosureOptions opts;
  opts.scaled_deltas = geomspace(0.125, 16, 15);
  const TailEnvelope closure = closure_lower_envelope(phi, phi, x_grid, opts);

  // Validity starts after the last clamped point.
  std::size_t first = 0;
  for (std::size_t i = 0; i < closure.size(); ++i) {
    if (closure.log_values[i] == -kInf || !(x_grid[i] > 0)) first = i + 1;
  }
  ConjugateOptions co;
  co.allow_infinite = true;
  std::vector<double> conj(x_grid.size(), kInf);
  double c2 = 0;
  for (std::size_t i = first; i < x_grid.size(); ++i) {
    conj[i] = conjugate_at(phi, x_grid[i], co).value;
    c2 = std::max(c2, (-closure.log_values[i] - conj[i]) / x_grid[i]);
  }
  out.c2 = c2;
  TailEnvelope& env = out.lower;
  env.side = Side::kLower;
  env.provenance = "richter";
  env.x_grid.assign(x_grid.begin(), x_grid.end());
  env.valid_from = first < x_grid.size() ? x_grid[first] : kInf;
  for (std::size_t i = 0; i < x_grid.size(); ++i) {
    env.log_values.push_back(i < first ? std::nan("") : -conj[i] - c2 * x_grid[i]);
  }
  if (first >= x_grid.size()) env.annotate("AllClamped");
  return out;
}

}  // namespace tailinv
