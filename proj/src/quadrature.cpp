#include "tailinv/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace tailinv {

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 15>;

struct Panel {
  double value = 0;
  double error = 0;
};

Panel single(const std::function<double(double)>& f, double a, double b) {
  Panel p;
  p.value = GK::integrate(f, a, b, 0, 0.0, &p.error);
  return p;
}

struct Piece {
  double a, b;
  Panel p;
  bool operator<(const Piece& o) const { return p.error < o.p.error; }
};

// Global adaptive bisection: always split the piece with the largest error.
Panel refine(const std::function<double(double)>& f, double a, double b, Panel whole, double tol) {
  constexpr int kMaxPieces = 1000;
  std::priority_queue<Piece> heap;
  heap.push({a, b, whole});
  double value = whole.value, error = whole.error;
  int pieces = 1;
  while (error > tol && pieces < kMaxPieces) {
    const Piece worst = heap.top();
    const double m = 0.5 * (worst.a + worst.b);
    if (!(m > worst.a && m < worst.b)) break;
    heap.pop();
    const Piece l{worst.a, m, single(f, worst.a, m)};
    const Piece r{m, worst.b, single(f, m, worst.b)};
    value += l.p.value + r.p.value - worst.p.value;
    error += l.p.error + r.p.error - worst.p.error;
    heap.push(l);
    heap.push(r);
    ++pieces;
  }
  return {value, error};
}

// Adaptive bisection with an absolute target rel_tol * max(|estimate|, floor),
// so panels that are negligible next to `floor` are not refined.
Panel panel(const std::function<double(double)>& f, double a, double b, double rel_tol, double floor = 0) {
  if (!(b > a)) return {};
  const Panel whole = single(f, a, b);
  const double tol = std::max(rel_tol * std::max(std::abs(whole.value), floor), 1e-300);
  return refine(f, a, b, whole, tol);
}

}  // namespace

QuadratureResult quadrature(const std::function<double(double)>& f, double a, double b, double rel_tol) {
  QuadratureResult out;
  if (std::isfinite(b)) {
    const Panel p = panel(f, a, b, rel_tol);
    out.value = p.value;
    out.error = p.error;
    out.converged = out.error <= std::max(rel_tol * std::abs(out.value) * 10, 1e-300);
    out.truncation = b;
    return out;
  }
  constexpr double kTailRel = 1e-16;
  constexpr double kCap = 1e12;
  double left = a;
  double w = 1;
  while (true) {
    const double right = left + w;
    const Panel p = panel(f, left, right, rel_tol, std::abs(out.value));
    out.value += p.value;
    out.error += p.error;
    if (std::abs(p.value) <= kTailRel * std::abs(out.value) && out.value != 0) {
      out.converged = true;
      out.truncation = right;
      break;
    }
    if (right >= kCap) {
      out.truncation = right;
      break;
    }
    left = right;
    w *= 2;
  }
  return out;
}

LogQuadratureResult log_quadrature(const std::function<double(double)>& log_f, double a, const QuadratureOptions& opts) {
  LogQuadratureResult out;
  const double cap = opts.window_cap;
  auto decay_exponent = [&](double at) {
    const double l1 = log_f(at);
    const double l2 = log_f(2 * at);
    return std::pair{l1, -(l2 - l1) / std::numbers::ln2};
  };

  {
    const auto [l_cap, s] = decay_exponent(cap);
    if (l_cap > -kInf && s <= 1.0) {
      out.divergent = true;
      out.log_integrand_at_cap = l_cap;
      out.truncation = cap;
      return out;
    }
  }

  const double shift = opts.log_shift;
  // exp(log_f - shift) carries relative rounding noise of order eps * |log_f|.
  const double rel_tol =
      std::max(opts.rel_tol, 64 * std::numeric_limits<double>::epsilon() * (1 + std::abs(shift)));
  const std::function<double(double)> g = [&](double x) {
    const double v = std::exp(log_f(x) - shift);
    return std::isfinite(v) ? v : (v > 0 ? std::numeric_limits<double>::max() : 0.0);
  };
  const double peak = std::isfinite(opts.peak) ? std::max(a, opts.peak) : a;
  double total = 0, err = 0;

  // Leftwards from the peak down to a.
  {
    double right = peak;
    double w = opts.scale;
    while (right > a) {
      const double left = std::max(a, right - w);
      const Panel p = panel(g, left, right, rel_tol, total);
      total += p.value;
      err += p.error;
      if (left > a && total > 0 && p.value <= opts.tail_rel * total) {
        const Panel rest = panel(g, a, left, rel_tol, total);
        total += rest.value;
        err += rest.error;
        break;
      }
      right = left;
      w *= 2;
    }
  }

  // Rightwards until the panels stop contributing.
  double left = peak;
  double w = opts.scale;
  while (true) {
    const double right = std::min(left + w, cap);
    const Panel p = panel(g, left, right, rel_tol, total);
    total += p.value;
    err += p.error;
    const bool negligible = p.value <= opts.tail_rel * total;
    if (negligible && total > 0 && log_f(right) <= log_f(left)) {
      out.converged = true;
      out.truncation = right;
      break;
    }
    if (right >= cap) {
      const auto [l_cap, s] = decay_exponent(cap);
      out.truncation = cap;
      out.log_integrand_at_cap = l_cap;
      if (l_cap == -kInf) {
        out.converged = true;
      } else if (s > 1.0) {
        const double tail = std::exp(l_cap - shift) * cap / (s - 1);
        total += tail;
        err += tail;
        out.converged = true;
      } else {
        out.divergent = true;
        return out;
      }
      break;
    }
    left = right;
    w *= 2;
  }
  if (!std::isfinite(total)) {
    out.converged = false;
    out.log_value = kInf;
    return out;
  }
  out.log_value = total > 0 ? std::log(total) + shift : -kInf;
  out.rel_error = total > 0 ? err / total : 0;
  return out;
}

}  // namespace tailinv
