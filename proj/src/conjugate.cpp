#include "tailinv/conjugate.hpp"

#include <algorithm>
#include <cmath>

#include "tailinv/errors.hpp"
#include "tailinv/optimize.hpp"

namespace tailinv {

namespace {

ConjugatePoint unbounded(double x, std::vector<double> witness, const ConjugateOptions& opts) {
  if (!opts.allow_infinite) throw UnboundedObjective(x, std::move(witness));
  return {x, kInf, witness.empty() ? kInf : witness.back()};
}

ConjugatePoint conjugate_grid(const PhiFunction& f, double x, const ConjugateOptions& opts) {
  const auto k = f.knots();
  const auto v = f.knot_values();
  if (f.open_ended()) {
    const double last_slope = f.growth_slope();
    if (x > last_slope + 1e-12 * (1 + std::abs(last_slope))) {
      const double end = k.back();
      return unbounded(x, {end, 2 * end, 4 * end, 8 * end}, opts);
    }
  }
  // Piecewise-linear f: the supremum is attained at a knot.
  ConjugatePoint best{x, -kInf, k[0]};
  for (std::size_t i = 0; i < k.size(); ++i) {
    const double val = k[i] * x - v[i];
    if (val > best.value) best = {x, val, k[i]};
  }
  return best;
}

std::vector<double> scan_abscissae(double lo, double hi, int n, bool bounded) {
  auto pts = offset_log_spaced(lo, hi, n);
  if (bounded) {
    // Dense near the upper end too, where f may blow up.
    auto rev = offset_log_spaced(0.0, hi - lo, n);
    for (double r : rev) pts.push_back(hi - r);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  }
  return pts;
}

}  // namespace

ConjugatePoint conjugate_at(const PhiFunction& f, double x, const ConjugateOptions& opts) {
  if (!std::isfinite(x)) throw std::invalid_argument("conjugate_at: non-finite x");
  if (f.form() == PhiFunction::Form::kGrid) return conjugate_grid(f, x, opts);

  const Domain& dom = f.domain();
  const double lo = dom.lo;
  const auto& tol = opts.tol;
  auto objective = [&](double l) {
    const double val = l * x - f.evaluate(l);
    return std::isnan(val) ? -kInf : val;
  };

  double upper = 0;
  if (dom.bounded()) {
    upper = dom.upper_probe();
    if (!(upper > lo)) throw EmptyDomain("conjugate_at: empty domain");
  } else {
    const double gs = f.growth_slope();
    if (!std::isnan(gs) && x > gs + 1e-12 * (1 + std::abs(gs))) {
      std::vector<double> witness;
      double l = std::max(2 * lo, lo + 1);
      for (int i = 0; i < 4; ++i, l *= 2) witness.push_back(l);
      return unbounded(x, std::move(witness), opts);
    }
    double u = std::max(2 * lo, lo + 1);
    int confirmations = 0;
    const int needed = f.convex() ? 1 : 4;
    std::vector<double> witness;
    while (u < tol.search_cap) {
      if (objective(2 * u) < objective(u)) {
        if (++confirmations >= needed) break;
      } else {
        confirmations = 0;
        witness.push_back(2 * u);
      }
      u *= 2;
    }
    if (u >= tol.search_cap && std::isnan(gs)) {
      if (witness.size() > 4) witness.erase(witness.begin(), witness.end() - 4);
      return unbounded(x, std::move(witness), opts);
    }
    upper = std::min(2 * u, tol.search_cap);
  }

  const int n = f.convex() ? tol.scan_points : 8 * tol.scan_points;
  const auto pts = scan_abscissae(lo, upper, n, dom.bounded());
  const Maximum m = scan_and_refine(objective, pts, tol.golden_rel_width, f.convex() ? 1 : 3, tol.golden_max_iter);
  return {x, m.value, m.arg};
}

ConjugateResult conjugate(const PhiFunction& f, std::span<const double> x_grid, const ConjugateOptions& opts) {
  ConjugateResult out;
  out.source_domain = f.domain();
  for (std::size_t i = 0; i < x_grid.size(); ++i) {
    if (x_grid[i] < 0) throw std::invalid_argument("conjugate: x_grid must be nonnegative");
    if (i > 0 && !(x_grid[i] > x_grid[i - 1])) throw std::invalid_argument("conjugate: x_grid must be strictly increasing");
  }
  out.x_grid.assign(x_grid.begin(), x_grid.end());
  out.values.reserve(x_grid.size());
  out.argmax.reserve(x_grid.size());
  for (double x : x_grid) {
    const ConjugatePoint p = conjugate_at(f, x, opts);
    out.values.push_back(p.value);
    out.argmax.push_back(p.argmax);
  }
  return out;
}

namespace {

// Range of chord slopes of f over a probe grid reaching past `reach`; every
// subgradient of the convex envelope at points up to `reach` lies inside.
std::pair<double, double> chord_slope_range(const PhiFunction& f, double reach) {
  const Domain& dom = f.domain();
  double hi = dom.bounded() ? dom.upper_probe() : std::max(2 * reach, dom.lo + 1);
  if (f.form() == PhiFunction::Form::kGrid) hi = dom.hi;
  auto probe = offset_log_spaced(dom.lo, hi, 513, 1e4);
  if (f.form() == PhiFunction::Form::kGrid) {
    probe.assign(f.knots().begin(), f.knots().end());
  }
  double smin = kInf, smax = -kInf;
  double prev = f.evaluate(probe[0]);
  for (std::size_t i = 1; i < probe.size(); ++i) {
    const double cur = f.evaluate(probe[i]);
    const double s = (cur - prev) / (probe[i] - probe[i - 1]);
    if (std::isfinite(s)) {
      smin = std::min(smin, s);
      smax = std::max(smax, s);
    }
    prev = cur;
  }
  return {smin, smax};
}

}  // namespace

ConjugateResult biconjugate(const PhiFunction& f, std::span<const double> lambda_grid, const ConjugateOptions& opts) {
  ConjugateResult out;
  out.source_domain = f.domain();
  if (lambda_grid.empty()) return out;
  const double reach = *std::max_element(lambda_grid.begin(), lambda_grid.end());
  auto [smin, smax] = chord_slope_range(f, reach);
  const double xlo = smin - 1 - std::abs(smin);
  const double xhi = smax + 1 + std::abs(smax);

  ConjugateOptions inner = opts;
  inner.allow_infinite = true;
  const auto xs = linspace(xlo, xhi, 2 * opts.tol.scan_points + 1);
  for (double l : lambda_grid) {
    auto h = [&](double x) {
      const ConjugatePoint p = conjugate_at(f, x, inner);
      return p.finite() ? l * x - p.value : -kInf;
    };
    const Maximum m = scan_and_refine(h, xs, opts.tol.golden_rel_width, 1, opts.tol.golden_max_iter);
    out.x_grid.push_back(l);
    out.values.push_back(m.value);
    out.argmax.push_back(m.arg);
  }
  return out;
}

double saddle_point(const PhiFunction& f, double lambda, const ConjugateOptions& opts, double width_tol) {
  const auto [left, right] = f.one_sided_slopes(lambda);
  const double width = right - left;
  if (width > width_tol * (1 + std::abs(0.5 * (left + right)))) throw NonUniqueArgmax(lambda, width);

  ConjugateOptions inner = opts;
  inner.allow_infinite = true;
  const double span = 1 + 0.5 * std::max(std::abs(left), std::abs(right));
  const auto xs = linspace(left - span, right + span, 65);
  auto h = [&](double x) {
    const ConjugatePoint p = conjugate_at(f, x, inner);
    return p.finite() ? lambda * x - p.value : -kInf;
  };
  return scan_and_refine(h, xs, opts.tol.golden_rel_width, 1, opts.tol.golden_max_iter).arg;
}

}  // namespace tailinv
