#include "tailinv/envelope.hpp"

#include <algorithm>

namespace tailinv {

const char* to_string(Side side) { return side == Side::kUpper ? "upper" : "lower"; }

bool TailEnvelope::has_annotation(const std::string& tag) const {
  return std::find(annotations.begin(), annotations.end(), tag) != annotations.end();
}

void TailEnvelope::annotate(const std::string& tag) {
  if (!has_annotation(tag)) annotations.push_back(tag);
}

TailEnvelope chernoff_envelope(const PhiFunction& phi, std::span<const double> x_grid, const ConjugateOptions& opts) {
  ConjugateOptions o = opts;
  o.allow_infinite = true;
  const ConjugateResult c = conjugate(phi, x_grid, o);
  TailEnvelope env;
  env.side = Side::kUpper;
  env.provenance = "chernoff";
  env.x_grid = c.x_grid;
  env.valid_from = x_grid.empty() ? 0 : x_grid.front();
  for (double v : c.values) env.log_values.push_back(std::min(0.0, -v));
  return env;
}

void monotone_from_right(TailEnvelope& env) {
  double run = -kInf;
  for (std::size_t i = env.size(); i-- > 0;) {
    if (!env.present(i)) continue;
    run = std::max(run, env.log_values[i]);
    env.log_values[i] = run;
  }
}

}  // namespace tailinv
