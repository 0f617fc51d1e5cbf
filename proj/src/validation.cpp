#include "tailinv/validation.hpp"

#include <cmath>

#include "tailinv/bi_lower.hpp"
#include "tailinv/errors.hpp"
#include "tailinv/optimize.hpp"
#include "tailinv/uni_lower.hpp"

namespace tailinv {

namespace {

SandwichCheck compare(const TailEnvelope& env, std::span<const double> exact, double slack) {
  SandwichCheck c;
  c.envelope = env.provenance;
  c.side = env.side;
  for (std::size_t i = 0; i < env.size(); ++i) {
    if (!env.present(i) || env.x_grid[i] < env.valid_from) continue;
    const double gap = env.side == Side::kUpper ? env.log_values[i] - exact[i] : exact[i] - env.log_values[i];
    ++c.points_checked;
    if (env.side == Side::kUpper || std::isfinite(env.log_values[i])) ++c.nontrivial_points;
    // -inf lower values (the bound 0) and equal infinities always hold.
    const double g = std::isnan(gap) ? kInf : gap;
    if (g < c.worst_slack) {
      c.worst_slack = g;
      c.worst_x = env.x_grid[i];
    }
  }
  c.passed = c.worst_slack >= slack;
  return c;
}

template <class F>
void attempt(LawValidation& out, const char* name, Side side, std::span<const double> exact, double slack, F produce) {
  try {
    TailEnvelope env = produce();
    out.checks.push_back(compare(env, exact, slack));
    out.envelopes.push_back(std::move(env));
  } catch (const Error& e) {
    SandwichCheck c;
    c.envelope = name;
    c.side = side;
    c.error = e.what();
    out.checks.push_back(c);
  }
}

}  // namespace

LawValidation validate_law(const OracleDistribution& law, const ValidationOptions& opts) {
  LawValidation out;
  out.law = law.name();
  out.x_grid = opts.x_grid.empty() ? linspace(1, 8, 29) : opts.x_grid;
  const auto& xs = out.x_grid;
  for (double x : xs) out.exact_log_tail.push_back(law.log_tail(x));
  const std::span<const double> exact = out.exact_log_tail;

  if (law.cramer()) {
    const PhiFunction& phi = law.mgf_exponent();
    attempt(out, "chernoff", Side::kUpper, exact, opts.slack, [&] { return chernoff_envelope(phi, xs); });
    attempt(out, "unilateral", Side::kLower, exact, opts.slack, [&] {
      const double m = m_surrogate_from_upper(phi, opts.eps);
      return unilateral_lower_envelope(phi, opts.eps, m, xs).envelope;
    });
    attempt(out, "bilateral-closure", Side::kLower, exact, opts.slack, [&] { return closure_lower_envelope(phi, phi, xs); });
    attempt(out, "richter", Side::kLower, exact, opts.slack, [&] {
      TailEnvelope env = richter_sandwich(phi, xs).lower;
      env.provenance = "richter";
      return env;
    });
  }

  auto& emp = out.empirical;
  emp.seed = opts.seed;
  emp.samples = opts.samples;
  std::vector<std::size_t> above(xs.size(), 0);
  for (std::size_t i = 0; i < opts.samples; ++i) {
    const double v = law.sample_at(opts.seed, i);
    for (std::size_t k = 0; k < xs.size(); ++k) {
      if (v > xs[k]) ++above[k];
    }
  }
  const double n = double(opts.samples);
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double p = std::exp(exact[k]);
    const double f = double(above[k]) / n;
    const double sd = std::sqrt(p * (1 - p) / n);
    const double z = sd > 0 ? std::abs(f - p) / sd : (f == p ? 0.0 : kInf);
    emp.fraction.push_back(f);
    emp.z_scores.push_back(z);
    emp.max_z = std::max(emp.max_z, z);
  }
  emp.passed = opts.samples > 0 && emp.max_z <= opts.max_z;

  out.passed = emp.passed && !out.checks.empty();
  for (const auto& c : out.checks) out.passed = out.passed && c.passed;
  return out;
}

std::vector<OracleDistribution> sandwich_suite() {
  return {OracleDistribution::gaussian(), OracleDistribution::exponential(), OracleDistribution::weibull(2),
          OracleDistribution::weibull(4)};
}

}  // namespace tailinv
