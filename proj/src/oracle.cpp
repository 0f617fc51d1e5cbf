#include "tailinv/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <boost/math/distributions/normal.hpp>

#include "tailinv/quadrature.hpp"

namespace tailinv {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

double log_add(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == -kInf) return a;
  return a + std::log1p(std::exp(b - a));
}

// ln P(Z > x) for a standard normal.
double log_normal_tail(double x) {
  if (x < 25) return std::log(0.5 * std::erfc(x / std::numbers::sqrt2));
  const double r = 1 / (x * x);
  const double series = r * (-1 + r * (3 + r * (-15 + r * 105)));
  return -0.5 * x * x - std::log(x) - 0.5 * std::log(2 * std::numbers::pi) + std::log1p(series);
}

double normal_density(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2 * std::numbers::pi); }

double normal_quantile(double u) { return boost::math::quantile(boost::math::normal_distribution<double>(), u); }

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// ln of integral over [0, inf) of x^k exp(lambda x - x^m), m > 1, lambda > 0.
double log_weibull_moment(double lambda, double m, int k) {
  const double peak = std::pow(lambda / m, 1 / (m - 1));
  const double h_peak = lambda * peak - std::pow(peak, m);
  const double curvature = m * (m - 1) * std::pow(peak, m - 2);
  QuadratureOptions q;
  q.peak = peak;
  q.log_shift = h_peak + (k > 0 ? std::log(std::max(peak, 1e-300)) : 0.0);
  q.scale = std::clamp(1 / std::sqrt(curvature), 1e-3 * (1 + peak), 1 + peak);
  auto log_f = [=](double x) {
    const double h = lambda * x - std::pow(x, m);
    return k == 0 ? h : h + k * std::log(x);
  };
  return log_quadrature(log_f, 0.0, q).log_value;
}

struct WeibullMgf {
  double m;
  // ln J and ln J' with J(lambda) = integral of exp(lambda x - x^m).
  std::pair<double, double> log_j(double lambda) const {
    if (m == 2) {
      const double lj = lambda * lambda / 4 + std::log(0.5 * std::sqrt(std::numbers::pi)) + std::log(std::erfc(-lambda / 2));
      return {lj, std::log(0.5) + log_add(std::log(lambda) + lj, 0.0)};
    }
    return {log_weibull_moment(lambda, m, 0), log_weibull_moment(lambda, m, 1)};
  }
  double value(double lambda) const {
    if (lambda <= 0) return 0;
    return log_add(0.0, std::log(lambda) + log_j(lambda).first);
  }
  double derivative(double lambda) const {
    if (lambda <= 0) return std::tgamma(1 + 1 / m);
    const auto [lj, ljp] = log_j(lambda);
    const double l = std::log(lambda);
    const double total = log_add(0.0, l + lj);
    return std::exp(lj - total) + std::exp(l + ljp - total);
  }
};

PhiFunction exponential_mgf(double rate) {
  PhiTraits t;
  t.convex = true;
  t.derivative = [rate](double l) { return 1 / (rate - l); };
  return PhiFunction::expression(
      "-ln(1-l/" + fmt(rate) + ")", [rate](double l) { return -std::log1p(-l / rate); }, Domain{0.0, rate, false}, t);
}

}  // namespace

double uniform_at(std::uint64_t seed, std::uint64_t index) {
  const std::uint64_t r = mix64(seed ^ mix64(index));
  return ((r >> 11) + 0.5) * 0x1.0p-53;
}

OracleDistribution::OracleDistribution(Parts parts) : parts_(std::move(parts)) {}

const PhiFunction& OracleDistribution::mgf_exponent() const {
  if (!parts_.mgf_exponent) throw std::logic_error(parts_.name + " has no finite MGF");
  return *parts_.mgf_exponent;
}

PhiFunction OracleDistribution::tail_exponent() const {
  auto lt = parts_.log_tail;
  return PhiFunction::expression(
      "G[" + parts_.name + "]", [lt](double x) { return -lt(x); }, Domain{0.0});
}

double OracleDistribution::sample_at(std::uint64_t seed, std::uint64_t index) const {
  return parts_.quantile(uniform_at(seed, index));
}

std::vector<double> OracleDistribution::sample(std::uint64_t seed, std::size_t n) const {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = sample_at(seed, i);
  return out;
}

OracleDistribution OracleDistribution::gaussian(double sigma) {
  if (!(sigma > 0)) throw std::invalid_argument("gaussian: sigma must be positive");
  Parts p;
  p.name = sigma == 1 ? "gaussian" : "gaussian:" + fmt(sigma);
  p.log_tail = [sigma](double x) { return log_normal_tail(x / sigma); };
  p.density = [sigma](double x) { return normal_density(x / sigma) / sigma; };
  p.quantile = [sigma](double u) { return sigma * normal_quantile(u); };
  p.mgf_exponent = PhiFunction::quadratic(sigma * sigma, Domain{0.0});
  p.support_lo = -40 * sigma;
  return OracleDistribution(std::move(p));
}

OracleDistribution OracleDistribution::exponential(double rate) {
  if (!(rate > 0)) throw std::invalid_argument("exponential: rate must be positive");
  Parts p;
  p.name = rate == 1 ? "exponential" : "exponential:" + fmt(rate);
  p.log_tail = [rate](double x) { return x <= 0 ? 0.0 : -rate * x; };
  p.density = [rate](double x) { return x < 0 ? 0.0 : rate * std::exp(-rate * x); };
  p.quantile = [rate](double u) { return -std::log1p(-u) / rate; };
  p.mgf_exponent = exponential_mgf(rate);
  return OracleDistribution(std::move(p));
}

OracleDistribution OracleDistribution::weibull(double m) {
  if (!(m > 0)) throw std::invalid_argument("weibull: shape must be positive");
  Parts p;
  p.name = "weibull:" + fmt(m);
  p.log_tail = [m](double x) { return x <= 0 ? 0.0 : -std::pow(x, m); };
  p.density = [m](double x) { return x <= 0 ? 0.0 : m * std::pow(x, m - 1) * std::exp(-std::pow(x, m)); };
  p.quantile = [m](double u) { return std::pow(-std::log1p(-u), 1 / m); };
  if (m == 1) {
    p.mgf_exponent = exponential_mgf(1.0);
  } else if (m > 1) {
    const WeibullMgf w{m};
    PhiTraits t;
    t.convex = true;
    t.growth_slope = kInf;
    t.derivative = [w](double l) { return w.derivative(l); };
    p.mgf_exponent = PhiFunction::expression(
        "lnE[exp(l W" + fmt(m) + ")]", [w](double l) { return w.value(l); }, Domain{0.0}, t);
  }
  return OracleDistribution(std::move(p));
}

OracleDistribution OracleDistribution::pareto(double alpha) {
  if (!(alpha > 0)) throw std::invalid_argument("pareto: alpha must be positive");
  Parts p;
  p.name = "pareto:" + fmt(alpha);
  p.log_tail = [alpha](double x) { return x <= 1 ? 0.0 : -alpha * std::log(x); };
  p.density = [alpha](double x) { return x < 1 ? 0.0 : alpha * std::pow(x, -alpha - 1); };
  p.quantile = [alpha](double u) { return std::exp(-std::log1p(-u) / alpha); };
  p.support_lo = 1;
  return OracleDistribution(std::move(p));
}

OracleDistribution OracleDistribution::gaussian_mixture(double w, double s1, double s2) {
  if (!(w > 0 && w < 1 && s1 > 0 && s2 > 0)) throw std::invalid_argument("gaussian_mixture: bad parameters");
  Parts p;
  p.name = "mixture:" + fmt(w) + ":" + fmt(s1) + ":" + fmt(s2);
  const double lw = std::log(w), lv = std::log1p(-w);
  p.log_tail = [=](double x) { return log_add(lw + log_normal_tail(x / s1), lv + log_normal_tail(x / s2)); };
  p.density = [=](double x) { return w * normal_density(x / s1) / s1 + (1 - w) * normal_density(x / s2) / s2; };
  auto log_tail = p.log_tail;
  const double span = 40 * std::max(s1, s2);
  p.quantile = [log_tail, span](double u) {
    const double target = std::log1p(-u);
    double a = -span, b = span;
    for (int i = 0; i < 200 && b - a > 1e-14 * (1 + std::abs(a)); ++i) {
      const double mid = 0.5 * (a + b);
      (log_tail(mid) > target ? a : b) = mid;
    }
    return 0.5 * (a + b);
  };
  PhiTraits t;
  t.convex = true;
  t.growth_slope = kInf;
  t.derivative = [=](double l) {
    const double a = lw + 0.5 * s1 * s1 * l * l, b = lv + 0.5 * s2 * s2 * l * l;
    const double tot = log_add(a, b);
    return std::exp(a - tot) * s1 * s1 * l + std::exp(b - tot) * s2 * s2 * l;
  };
  p.mgf_exponent = PhiFunction::expression(
      p.name + " lnMGF", [=](double l) { return log_add(lw + 0.5 * s1 * s1 * l * l, lv + 0.5 * s2 * s2 * l * l); },
      Domain{0.0}, t);
  p.support_lo = -span;
  return OracleDistribution(std::move(p));
}

EmpiricalTail empirical_tail(std::span<const double> samples, std::span<const double> x_grid) {
  EmpiricalTail out;
  out.n = samples.size();
  out.x_grid.assign(x_grid.begin(), x_grid.end());
  if (out.n == 0) throw std::invalid_argument("empirical_tail: no samples");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = double(out.n);
  constexpr double z = 1.959963984540054;
  for (double x : x_grid) {
    const auto above = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), x);
    const double p = double(above) / n;
    out.fraction.push_back(p);
    out.halfwidth.push_back(z / (1 + z * z / n) * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n)));
  }
  return out;
}

std::vector<OracleDistribution> oracle_suite() {
  return {OracleDistribution::gaussian(),       OracleDistribution::exponential(),
          OracleDistribution::weibull(0.5),     OracleDistribution::weibull(1),
          OracleDistribution::weibull(2),       OracleDistribution::weibull(4),
          OracleDistribution::pareto(2),        OracleDistribution::gaussian_mixture(0.5, 1.0, std::sqrt(0.99))};
}

std::optional<OracleDistribution> oracle_by_name(const std::string& name) {
  std::vector<std::string> parts;
  std::stringstream ss(name);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.empty()) return std::nullopt;
  std::vector<double> args;
  try {
    for (std::size_t i = 1; i < parts.size(); ++i) args.push_back(std::stod(parts[i]));
  } catch (const std::exception&) {
    return std::nullopt;
  }
  const std::string& kind = parts[0];
  auto arg = [&](std::size_t i, double dflt) { return i < args.size() ? args[i] : dflt; };
  if (kind == "gaussian" && args.size() <= 1) return OracleDistribution::gaussian(arg(0, 1));
  if (kind == "exponential" && args.size() <= 1) return OracleDistribution::exponential(arg(0, 1));
  if (kind == "weibull" && args.size() == 1) return OracleDistribution::weibull(args[0]);
  if (kind == "pareto" && args.size() == 1) return OracleDistribution::pareto(args[0]);
  if (kind == "mixture" && args.size() == 3) return OracleDistribution::gaussian_mixture(args[0], args[1], args[2]);
  return std::nullopt;
}

}  // namespace tailinv
