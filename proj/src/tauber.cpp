#include "tailinv/tauber.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "tailinv/bi_lower.hpp"
#include "tailinv/conjugate.hpp"
#include "tailinv/errors.hpp"

namespace tailinv {

double invert_increasing(const std::function<double(double)>& f, double y, double lo, double hi) {
  if (!std::isfinite(y)) throw NonInvertible("invert_increasing: non-finite target");
  lo = std::max(lo, 0.0);
  if (f(lo) > y) {
    std::ostringstream os;
    os << "value " << y << " lies below f(" << lo << ") = " << f(lo);
    throw NonInvertible(os.str());
  }
  double top = std::isfinite(hi) ? hi : std::max(1.0, 2 * lo);
  while (!(f(top) >= y)) {
    if (std::isfinite(hi) || top > 1e300) {
      std::ostringstream os;
      os << "value " << y << " is not reached below " << top;
      throw NonInvertible(os.str());
    }
    lo = top;
    top *= 2;
  }
  double a = lo, b = top;
  while (b - a > 1e-10 * std::max(1.0, std::abs(b))) {
    const double m = 0.5 * (a + b);
    (f(m) < y ? a : b) = m;
  }
  if (!(f(b) > f(a)) && b - a > 0 && f(a) != y) throw NonInvertible("invert_increasing: flat at the target");
  return 0.5 * (a + b);
}

double extrapolate_limit(std::span<const double> s, std::span<const double> ratios, std::span<const double> slopes,
                         std::span<const double> sigmas) {
  const std::size_t n = s.size();
  if (n < 3) throw std::invalid_argument("extrapolate_limit: need at least three points");
  std::array<std::array<double, 4>, 3> a{};
  for (std::size_t i = 0; i < n; ++i) {
    const double w = 1 / (s[i] * slopes[i]);
    const std::array<double, 3> row{1.0, std::log(s[i]) * w, w};
    const double wt = sigmas.empty() ? 1.0 : 1 / (sigmas[i] * sigmas[i]);
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) a[r][c] += wt * row[r] * row[c];
      a[r][3] += wt * row[r] * ratios[i];
    }
  }
  // Gauss-Jordan with partial pivoting on the 3x3 normal equations.
  for (int c = 0; c < 3; ++c) {
    int p = c;
    for (int r = c + 1; r < 3; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    }
    std::swap(a[c], a[p]);
    if (a[c][c] == 0) return std::nan("");
    for (int r = 0; r < 3; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      for (int k = c; k < 4; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return a[0][3] / a[0][0];
}

namespace {

double fit(const LadderEstimate& lad, std::span<const double> slopes, std::size_t end) {
  if (end < 3) return std::nan("");
  const std::size_t begin = lad.sigmas.empty() ? end - 3 : 0;
  const auto pick = [&](std::span<const double> v) { return v.subspan(begin, end - begin); };
  const std::span<const double> sig = lad.sigmas.empty() ? std::span<const double>{} : pick(lad.sigmas);
  return extrapolate_limit(pick(lad.points), pick(lad.ratios), pick(slopes), sig);
}

// Analytic ladders extrapolate the last three points; Monte Carlo ladders fit all of them.
void finish(LadderEstimate& lad, std::span<const double> slopes, const TauberOptions& opts, const char* side) {
  const std::size_t n = lad.points.size();
  lad.estimate = fit(lad, slopes, n);
  const double previous = fit(lad, slopes, n - (n > 0));
  if (n >= 2) lad.last_step_change = std::abs(lad.ratios[n - 1] - lad.ratios[n - 2]) / std::abs(lad.ratios[n - 1]);
  lad.estimate_change = std::abs(lad.estimate - previous) / std::abs(lad.estimate);
  lad.converged = std::isfinite(lad.estimate) && lad.estimate > 0 && lad.estimate_change <= opts.drift_tolerance;
  if (opts.strict && !lad.converged) {
    std::ostringstream os;
    os << side << " estimate still drifting at the ladder cap: change " << lad.estimate_change;
    throw NotConverged(os.str());
  }
}

LadderEstimate mgf_side(const PhiFunction& phi, const std::function<double(double)>& log_mgf, const TauberOptions& opts,
                        std::vector<double>& slopes) {
  LadderEstimate lad;
  const Domain& dom = phi.domain();
  for (double l : opts.lambda_ladder) {
    const double y = log_mgf(l);
    const double t = invert_increasing(phi, y, dom.lo, dom.bounded() ? dom.upper_probe() : kInf);
    lad.points.push_back(l);
    lad.ratios.push_back(t / l);
    slopes.push_back(phi.slope(l));
  }
  return lad;
}

struct ConjugateSide {
  const PhiFunction& phi;
  ConjugateOptions co;
  explicit ConjugateSide(const PhiFunction& p) : phi(p) { co.allow_infinite = true; }
  double value(double s) const { return conjugate_at(phi, s, co).value; }
  double slope(double s) const { return conjugate_at(phi, s, co).argmax; }
  double inverse(double y) const {
    return invert_increasing([&](double s) { return value(s); }, y, 0.0, kInf);
  }
};

TauberianReport assemble(const PhiFunction& phi, LadderEstimate mgf, LadderEstimate tail,
                         std::span<const double> mgf_slopes, std::span<const double> tail_slopes,
                         const TauberOptions& opts) {
  TauberianReport rep;
  rep.tolerance = opts.tolerance;
  const RegularityReport reg = verify_regularity(phi);
  rep.regularity_ok = reg.v_positive && reg.c0_feasible;
  finish(mgf, mgf_slopes, opts, "MGF-side");
  finish(tail, tail_slopes, opts, "tail-side");
  rep.mgf = std::move(mgf);
  rep.tail = std::move(tail);
  rep.k_mgf = rep.mgf.estimate;
  rep.k_tail = rep.tail.estimate;
  rep.product = rep.k_mgf * rep.k_tail;
  rep.consistent = rep.mgf.converged && rep.tail.converged && std::abs(rep.product - 1) <= opts.tolerance;
  return rep;
}

}  // namespace

TauberianReport tauberian_check(const PhiFunction& phi, const std::function<double(double)>& log_mgf,
                                const std::function<double(double)>& log_tail, const TauberOptions& opts) {
  std::vector<double> mgf_slopes, tail_slopes;
  LadderEstimate mgf = mgf_side(phi, log_mgf, opts, mgf_slopes);
  const ConjugateSide conj(phi);
  LadderEstimate tail;
  for (double x : opts.x_ladder) {
    const double s = conj.inverse(-log_tail(x));
    tail.points.push_back(x);
    tail.ratios.push_back(s / x);
    tail_slopes.push_back(conj.slope(x));
  }
  return assemble(phi, std::move(mgf), std::move(tail), mgf_slopes, tail_slopes, opts);
}

TauberianReport tauberian_check(const PhiFunction& phi, const OracleDistribution& law, const TauberOptions& opts) {
  const PhiFunction& mgf = law.mgf_exponent();
  return tauberian_check(
      phi, [&](double l) { return mgf(l); }, [&](double x) { return law.log_tail(x); }, opts);
}

TauberianReport tauberian_check_monte_carlo(const PhiFunction& phi, const OracleDistribution& law,
                                            const MonteCarloOptions& mc, const TauberOptions& opts) {
  std::vector<double> mgf_slopes, tail_slopes;
  const PhiFunction& mgf_phi = law.mgf_exponent();
  LadderEstimate mgf = mgf_side(
      phi, [&](double l) { return mgf_phi(l); }, opts, mgf_slopes);

  std::vector<std::size_t> above(mc.x_ladder.size(), 0);
  for (std::size_t i = 0; i < mc.samples; ++i) {
    const double v = law.sample_at(mc.seed, i);
    for (std::size_t k = 0; k < mc.x_ladder.size(); ++k) {
      if (v > mc.x_ladder[k]) ++above[k];
    }
  }
  const ConjugateSide conj(phi);
  const double n = double(mc.samples);
  LadderEstimate tail;
  for (std::size_t k = 0; k < mc.x_ladder.size(); ++k) {
    const double x = mc.x_ladder[k];
    if (above[k] == 0) {
      tail.dropped.push_back(x);
      continue;
    }
    const double p = double(above[k]) / n;
    const double s = conj.inverse(-std::log(p));
    const double slope = conj.slope(s);
    tail.points.push_back(x);
    tail.ratios.push_back(s / x);
    tail.sigmas.push_back(std::sqrt(p * (1 - p) / n) / (p * x * slope));
    tail_slopes.push_back(conj.slope(x));
  }
  TauberianReport rep = assemble(phi, std::move(mgf), std::move(tail), mgf_slopes, tail_slopes, opts);
  rep.tail_mode = "monte-carlo";
  return rep;
}

}  // namespace tailinv
