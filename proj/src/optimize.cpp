#include "tailinv/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace tailinv {

Maximum golden_section_maximize(const std::function<double(double)>& g, double a, double b, double rel_width,
                                int max_iter) {
  static const double kInvPhi = (std::sqrt(5.0) - 1) / 2;
  if (b < a) std::swap(a, b);
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double gc = g(c);
  double gd = g(d);
  for (int i = 0; i < max_iter; ++i) {
    if (b - a <= rel_width * std::max(1.0, std::abs(0.5 * (a + b)))) break;
    if (gc >= gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - kInvPhi * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + kInvPhi * (b - a);
      gd = g(d);
    }
  }
  Maximum best{c, gc};
  if (gd > best.value) best = {d, gd};
  // The bracket ends are never evaluated by the loop; check them so a maximum
  // sitting on a domain boundary is reported exactly.
  const double ga = g(a);
  if (ga > best.value) best = {a, ga};
  const double gb = g(b);
  if (gb > best.value) best = {b, gb};
  return best;
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 2) return {lo};
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  out.back() = hi;
  return out;
}

std::vector<double> geomspace(double lo, double hi, int n) {
  if (!(lo > 0) || !(hi > 0)) throw std::invalid_argument("geomspace needs positive endpoints");
  if (n < 2) return {lo};
  std::vector<double> out(static_cast<std::size_t>(n));
  const double r = std::log(hi / lo);
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = lo * std::exp(r * i / (n - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<double> offset_log_spaced(double lo, double hi, int n, double dynamic_range) {
  if (n < 2) return {lo, hi};
  std::vector<double> out(static_cast<std::size_t>(n));
  const double span = hi - lo;
  const double base = std::log1p(dynamic_range);
  for (int i = 0; i < n; ++i) {
    const double t = std::expm1(base * i / (n - 1)) / dynamic_range;
    out[static_cast<std::size_t>(i)] = lo + span * t;
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

Maximum scan_and_refine(const std::function<double(double)>& g, const std::vector<double>& abscissae, double rel_width,
                        int local_maxima, int max_iter) {
  const std::size_t n = abscissae.size();
  if (n == 0) throw std::invalid_argument("scan_and_refine: no abscissae");
  std::vector<double> vals(n);
  for (std::size_t i = 0; i < n; ++i) vals[i] = g(abscissae[i]);

  std::vector<std::size_t> peaks;
  for (std::size_t i = 0; i < n; ++i) {
    const bool left_ok = i == 0 || vals[i] >= vals[i - 1];
    const bool right_ok = i + 1 == n || vals[i] >= vals[i + 1];
    if (left_ok && right_ok) peaks.push_back(i);
  }
  std::sort(peaks.begin(), peaks.end(), [&](std::size_t a, std::size_t b) { return vals[a] > vals[b]; });
  if (peaks.empty()) peaks.push_back(static_cast<std::size_t>(std::max_element(vals.begin(), vals.end()) - vals.begin()));
  peaks.resize(std::min<std::size_t>(peaks.size(), static_cast<std::size_t>(std::max(local_maxima, 1))));

  Maximum best{abscissae[peaks.front()], vals[peaks.front()]};
  for (std::size_t p : peaks) {
    const double a = abscissae[p == 0 ? 0 : p - 1];
    const double b = abscissae[p + 1 == n ? n - 1 : p + 1];
    if (b > a) {
      Maximum m = golden_section_maximize(g, a, b, rel_width, max_iter);
      if (m.value > best.value) best = m;
    }
  }
  return best;
}

}  // namespace tailinv
