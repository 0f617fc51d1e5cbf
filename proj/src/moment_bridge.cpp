#include "tailinv/moment_bridge.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tailinv/bi_lower.hpp"
#include "tailinv/csv.hpp"
#include "tailinv/errors.hpp"
#include "tailinv/optimize.hpp"

namespace tailinv {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::vector<double> probe_points(const PhiFunction& f) {
  if (f.form() == PhiFunction::Form::kGrid) return {f.knots().begin(), f.knots().end()};
  const Domain& d = f.domain();
  const double hi = d.bounded() ? d.upper_probe() : std::max(2 * d.lo, d.lo + 100);
  return offset_log_spaced(d.lo, hi, 64);
}

PhiFunction exponent_of(const PhiFunction& env) {
  for (double p : probe_points(env)) {
    if (!(env(p) > 0)) {
      throw NonPositiveEnvelope("moment envelope " + env.name() + " is not positive at p = " + fmt(p));
    }
  }
  PhiTraits t;
  t.growth_slope = env.domain().bounded() ? std::numeric_limits<double>::quiet_NaN() : kInf;
  if (env.form() != PhiFunction::Form::kGrid && env.exact_derivative(env.domain().lo)) {
    t.derivative = [env](double l) {
      const double v = env(l);
      return std::log(v) + l * *env.exact_derivative(l) / v;
    };
  }
  return PhiFunction::expression(
      "lambda ln " + env.name(),
      [env](double l) {
        const double v = env(l);
        if (!(v > 0)) throw NonPositiveEnvelope("moment envelope " + env.name() + " is not positive at " + fmt(l));
        return l * std::log(v);
      },
      env.domain(), t);
}

std::vector<double> theta_grid(std::span<const double> x_grid) {
  std::vector<double> out;
  for (double x : x_grid) {
    if (x >= std::numbers::e) out.push_back(std::log(x));
  }
  return out;
}

// Envelope on x_grid from values on the theta grid built by theta_grid.
TailEnvelope carry_to_x(const TailEnvelope& theta_env, std::span<const double> x_grid) {
  TailEnvelope env = theta_env;
  env.x_grid.assign(x_grid.begin(), x_grid.end());
  env.log_values.clear();
  env.valid_from = std::numbers::e;
  std::size_t j = 0;
  for (double x : x_grid) {
    if (x >= std::numbers::e) {
      env.log_values.push_back(theta_env.log_values[j++]);
    } else {
      env.log_values.push_back(std::nan(""));
    }
  }
  return env;
}

}  // namespace

ExponentialPair to_exponential(const MomentEnvelope& m) {
  ExponentialPair out{exponent_of(m.lower), std::nullopt, false};
  if (m.upper) out.phi2 = exponent_of(*m.upper);
  out.degenerate = true;
  for (double p : probe_points(m.lower)) {
    if (std::abs(out.phi1(p)) > 1e-14) {
      out.degenerate = false;
      break;
    }
  }
  return out;
}

TailEnvelope theta_to_x(const std::function<double(double)>& log_theta_env, std::span<const double> x_grid,
                        Side side, const std::string& provenance) {
  TailEnvelope env;
  env.side = side;
  env.provenance = provenance;
  env.valid_from = std::numbers::e;
  env.x_grid.assign(x_grid.begin(), x_grid.end());
  for (double x : x_grid) env.log_values.push_back(x >= std::numbers::e ? log_theta_env(std::log(x)) : std::nan(""));
  return env;
}

MomentEnvelope blowup_moments(double b, double beta, double c) {
  if (!(b > 1 && beta > 0 && c > 0)) throw std::invalid_argument("blowup_moments: need b > 1, beta > 0, c > 0");
  PhiTraits t;
  t.derivative = [=](double p) { return c * beta * std::pow(b - p, -beta - 1); };
  auto lower = PhiFunction::expression(
      fmt(c) + "(" + fmt(b) + "-p)^-" + fmt(beta), [=](double p) { return c * std::pow(b - p, -beta); },
      Domain{0.0, b, false}, t);
  return {lower, std::nullopt};
}

MomentEnvelope power_moments(double m, double c_low, double c_high) {
  if (!(m > 0 && c_low > 0 && c_high >= c_low)) {
    throw std::invalid_argument("power_moments: need m > 0 and 0 < c_low <= c_high");
  }
  auto make = [m](double c) {
    PhiTraits t;
    t.derivative = [=](double p) { return c / m * std::pow(p, 1 / m - 1); };
    return PhiFunction::expression(
        fmt(c) + "p^(1/" + fmt(m) + ")", [=](double p) { return c * std::pow(p, 1 / m); }, Domain{1.0}, t);
  };
  return {make(c_low), make(c_high)};
}

PowerTailResult power_tail_lower(double b, double beta, double c, std::span<const double> x_grid, double eps,
                                 double m_surrogate) {
  const auto pair = to_exponential(blowup_moments(b, beta, c));
  const auto thetas = theta_grid(x_grid);
  const UnilateralResult chain = unilateral_lower_envelope(pair.phi1, eps, m_surrogate, thetas);

  PowerTailResult out;
  out.certificate = chain.certificate;
  out.envelope = carry_to_x(chain.envelope, x_grid);
  out.envelope.provenance = "unilateral-moments";
  out.gamma_asymptotic = std::max(chain.certificate.dilation * b, chain.certificate.linear_rate);

  std::vector<double> lx, lv;
  for (std::size_t i = 0; i < x_grid.size(); ++i) {
    if (out.envelope.present(i) && std::isfinite(out.envelope.log_values[i])) {
      lx.push_back(std::log(x_grid[i]));
      lv.push_back(out.envelope.log_values[i]);
    }
  }
  if (lx.empty()) throw NonPositiveEnvelope("power_tail_lower: no grid point with a positive envelope at x >= e");

  double best_score = -kInf, best_gamma = 0, best_lnc = 0;
  for (double g : linspace(1, b, 66)) {
    if (!(g > 1 && g < b)) continue;
    double lnc = kInf;
    for (std::size_t i = 0; i < lx.size(); ++i) lnc = std::min(lnc, lv[i] + g * lx[i]);
    double score = 0;
    for (double l : lx) score += lnc - g * l;
    if (score > best_score) {
      best_score = score;
      best_gamma = g;
      best_lnc = lnc;
    }
  }
  out.gamma = best_gamma;
  out.c = std::exp(best_lnc);

  TailEnvelope& pe = out.power_envelope;
  pe.side = Side::kLower;
  pe.provenance = "power-fit";
  pe.valid_from = std::numbers::e;
  pe.x_grid.assign(x_grid.begin(), x_grid.end());
  for (double x : x_grid) pe.log_values.push_back(x >= std::numbers::e ? best_lnc - best_gamma * std::log(x) : std::nan(""));
  pe.annotate("GridOnly");
  return out;
}

namespace {

struct LogLogPoints {
  std::vector<double> u, v;
};

LogLogPoints loglog_points(const TailEnvelope& env, double lo, double hi) {
  LogLogPoints pts;
  for (std::size_t i = 0; i < env.size(); ++i) {
    const double x = env.x_grid[i];
    if (x < lo || x > hi || !env.present(i)) continue;
    const double g = -env.log_values[i];
    if (!(g > 0) || !std::isfinite(g)) continue;
    pts.u.push_back(std::log(x));
    pts.v.push_back(std::log(g));
  }
  return pts;
}

}  // namespace

double loglog_slope(const TailEnvelope& env, double lo, double hi) {
  const TailEnvelope one[] = {env};
  return pooled_loglog_slope(one, lo, hi);
}

double pooled_loglog_slope(std::span<const TailEnvelope> envs, double lo, double hi) {
  double sxy = 0, sxx = 0;
  std::size_t used = 0;
  for (const auto& env : envs) {
    const LogLogPoints p = loglog_points(env, lo, hi);
    const std::size_t n = p.u.size();
    if (n < 2) continue;
    double mu = 0, mv = 0;
    for (std::size_t i = 0; i < n; ++i) {
      mu += p.u[i] / n;
      mv += p.v[i] / n;
    }
    for (std::size_t i = 0; i < n; ++i) {
      sxx += (p.u[i] - mu) * (p.u[i] - mu);
      sxy += (p.u[i] - mu) * (p.v[i] - mv);
    }
    ++used;
  }
  if (used == 0 || !(sxx > 0)) return std::nan("");
  return sxy / sxx;
}

WeibullRecovery weibull_recovery(double m, double c_low, double c_high, std::span<const double> x_grid, double fit_lo,
                                 double fit_hi) {
  const auto pair = to_exponential(power_moments(m, c_low, c_high));
  const auto thetas = theta_grid(x_grid);

  WeibullRecovery out;
  out.upper = carry_to_x(chernoff_envelope(*pair.phi2, thetas), x_grid);
  out.upper.provenance = "chernoff-moments";
  ClosureOptions raw_opts;
  raw_opts.monotone = false;
  raw_opts.deltas = geomspace(1e-3, 0.95, 60);
  raw_opts.scaled_deltas = geomspace(0.05, 500, 60);
  const TailEnvelope raw = carry_to_x(closure_lower_envelope(pair.phi1, *pair.phi2, thetas, raw_opts), x_grid);
  out.lower = raw;
  monotone_from_right(out.lower);
  out.lower.provenance = "bilateral-moments";

  out.c1 = kInf;
  out.c2 = 0;
  for (std::size_t i = 0; i < x_grid.size(); ++i) {
    const double xm = std::pow(x_grid[i], m);
    if (out.upper.present(i) && out.upper.log_values[i] < 0) out.c1 = std::min(out.c1, -out.upper.log_values[i] / xm);
    if (out.lower.present(i) && std::isfinite(out.lower.log_values[i])) {
      out.c2 = std::max(out.c2, -out.lower.log_values[i] / xm);
    }
  }
  if (!std::isfinite(out.c1)) out.c1 = 0;

  out.slope_upper = loglog_slope(out.upper, fit_lo, fit_hi);
  out.slope_lower = loglog_slope(raw, fit_lo, fit_hi);
  const TailEnvelope both[] = {out.upper, raw};
  out.recovered_exponent = pooled_loglog_slope(both, fit_lo, fit_hi);

  const double c1 = out.c1;
  const auto g = PhiFunction::expression(
      fmt(c1) + "x^" + fmt(m), [=](double x) { return c1 * std::pow(x, m); }, Domain{0.0});
  out.cramer = cramer_check(g);
  return out;
}

MomentEnvelope moment_csv_text(const std::string& text, const std::string& source) {
  const csv::Table t = csv::parse(text, source);
  const bool has_upper = t.header.size() == 3 && t.header[2] == "upper";
  if (t.header.size() < 2 || t.header[0] != "p" || t.header[1] != "lower" || (t.header.size() == 3 && !has_upper) ||
      t.header.size() > 3) {
    throw InputError(source, 1, "expected header 'p,lower' or 'p,lower,upper'");
  }
  std::vector<double> ps, lo, up;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    const std::size_t line = t.lines[r];
    if (row.size() < 2 || std::isnan(row[1])) throw InputError(source, line, "missing lower value");
    const double p = row[0], l = row[1];
    if (!(p > 0)) throw InputError(source, line, "p must be positive");
    if (!ps.empty() && !(p > ps.back())) throw InputError(source, line, "p column not strictly increasing");
    if (!(l > 0) || !std::isfinite(l)) throw InputError(source, line, "lower must be finite and positive");
    const bool row_upper = row.size() == 3 && !std::isnan(row[2]);
    if (has_upper && !row_upper) throw InputError(source, line, "missing upper value");
    if (row_upper) {
      if (!(row[2] >= l) || !std::isfinite(row[2])) throw InputError(source, line, "upper must be finite and >= lower");
      up.push_back(row[2]);
    }
    ps.push_back(p);
    lo.push_back(l);
  }
  if (ps.size() < 2) throw InputError(source, t.lines.empty() ? 1 : t.lines.back(), "need at least two data rows");
  MomentEnvelope out{PhiFunction::grid(ps, lo), std::nullopt};
  if (has_upper) out.upper = PhiFunction::grid(ps, up);
  return out;
}

MomentEnvelope load_moment_csv(const std::filesystem::path& path) {
  return moment_csv_text(csv::read_file(path), path.string());
}

}  // namespace tailinv
