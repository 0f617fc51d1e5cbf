#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "cli_support.hpp"
#include "tailinv/bi_lower.hpp"
#include "tailinv/conjugate.hpp"
#include "tailinv/errors.hpp"
#include "tailinv/moment_bridge.hpp"
#include "tailinv/optimize.hpp"
#include "tailinv/saddle.hpp"
#include "tailinv/tauber.hpp"
#include "tailinv/uni_lower.hpp"
#include "tailinv/validation.hpp"

#ifndef TAILINV_VERSION
#define TAILINV_VERSION "0.0.0"
#endif

namespace tailinv::cli {

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kValidationFailure = 2;

struct Common {
  std::string family = "quadratic";
  std::string phi_csv;
  std::string x;
  std::string out;
  std::string csv;
  bool normalize = false;
  std::uint64_t seed = kDefaultSeed;
};

// What a subcommand hands back for the report.
struct Outcome {
  json results = json::object();
  json config = json::object();
  std::vector<double> x;
  std::vector<Column> columns;
  bool validation_ok = true;
};

PhiFunction load_phi(const Common& c) {
  if (!c.phi_csv.empty()) return PhiFunction::from_csv(c.phi_csv);
  return parse_family(c.family);
}

std::string phi_label(const Common& c) { return c.phi_csv.empty() ? c.family : "csv:" + c.phi_csv; }

std::vector<double> grid_or(const std::string& text, const std::string& fallback, const std::string& option) {
  return parse_grid(text.empty() ? fallback : text, option);
}

void add_common(CLI::App* sub, Common& c, const std::string& default_x) {
  sub->add_option("--family", c.family, family_help())->capture_default_str();
  sub->add_option("--phi-csv", c.phi_csv, "tabulated MGF exponent, CSV with header lambda,value");
  sub->add_option("--x", c.x, "x grid: start:stop:step or a comma list (default " + default_x + ")");
  sub->add_option("--out", c.out, "JSON report path (default stdout)");
  sub->add_option("--csv", c.csv, "envelope table path, '-' for stdout");
  sub->add_flag("--normalize", c.normalize, "omit timestamp and timing so reports are byte-comparable");
  sub->add_option("--seed", c.seed, "seed for sampling (default $TAILINV_SEED or 42)");
}

json certificate_json(const LowerEnvelopeCertificate& c) {
  return {{"eps", num(c.eps)},
          {"m_bound", num(c.m_bound)},
          {"c1", num(c.c1)},
          {"c2", num(c.c2)},
          {"dilation", num(c.dilation)},
          {"lambda1", num(c.lambda1)},
          {"linear_rate", num(c.linear_rate)},
          {"x_valid_from", num(c.x_valid_from)},
          {"super_convexity_assumed", c.super_convexity_assumed},
          {"class_w",
           {{"certified", c.w.certified},
            {"c1", num(c.w.c1)},
            {"lambda_lo", num(c.w.lambda_lo)},
            {"lambda_hi", num(c.w.lambda_hi)},
            {"margin", num(c.w.margin)},
            {"grid_points", c.w.grid_points}}}};
}

json ladder_json(const LadderEstimate& l) {
  return {{"points", nums(l.points)},       {"ratios", nums(l.ratios)},
          {"sigmas", nums(l.sigmas)},       {"estimate", num(l.estimate)},
          {"last_step_change", num(l.last_step_change)}, {"estimate_change", num(l.estimate_change)},
          {"converged", l.converged},       {"dropped", nums(l.dropped)}};
}

// Lower <= upper wherever both are present.
bool ordered(const TailEnvelope& lower, const TailEnvelope& upper, json& where) {
  bool ok = true;
  for (std::size_t i = 0; i < lower.size() && i < upper.size(); ++i) {
    if (!lower.present(i) || !upper.present(i)) continue;
    if (lower.log_values[i] > upper.log_values[i] + 1e-12) {
      ok = false;
      where.push_back(num(lower.x_grid[i]));
    }
  }
  return ok;
}

json ordering_json(const TailEnvelope& lower, const TailEnvelope& upper, bool& ok) {
  json where = json::array();
  const bool good = ordered(lower, upper, where);
  ok = ok && good;
  return {{"lower", lower.provenance}, {"upper", upper.provenance}, {"holds", good}, {"violations_at", where}};
}

// ---------------------------------------------------------------- commands

Outcome cmd_conjugate(const Common& c, const std::string& lambda_text) {
  Outcome o;
  const PhiFunction phi = load_phi(c);
  o.x = grid_or(c.x, "1:20:1", "--x");
  ConjugateOptions co;
  co.allow_infinite = true;
  const ConjugateResult r = conjugate(phi, o.x, co);
  o.config = {{"phi", phi_label(c)}, {"x", nums(o.x)}};
  o.results["conjugate"] = {{"x", nums(r.x_grid)}, {"value", nums(r.values)}, {"argmax", nums(r.argmax)}};
  if (!lambda_text.empty()) {
    const auto ls = parse_grid(lambda_text, "--biconjugate");
    const ConjugateResult b = biconjugate(phi, ls, co);
    std::vector<double> orig;
    for (double l : ls) orig.push_back(phi.domain().contains(l) ? phi(l) : std::nan(""));
    o.results["biconjugate"] = {{"lambda", nums(ls)}, {"value", nums(b.values)}, {"original", nums(orig)}};
    o.config["biconjugate"] = nums(ls);
  }
  o.columns = {{"conjugate", r.values, false}, {"argmax", r.argmax, false}};
  return o;
}

Outcome cmd_upper(const Common& c, const std::string& zeta_spec, const std::string& lambda_text) {
  Outcome o;
  const PhiFunction phi = load_phi(c);
  o.x = grid_or(c.x, "1:8:0.5", "--x");
  o.config = {{"phi", phi_label(c)}, {"x", nums(o.x)}};
  const TailEnvelope env = chernoff_envelope(phi, o.x);
  o.results["chernoff"] = envelope_json(env);
  o.columns = {{"upper", env.log_values}};
  if (!zeta_spec.empty()) {
    const PhiFunction zeta = parse_family(zeta_spec);
    const auto ls = parse_grid(lambda_text.empty() ? "1,3,10,30" : lambda_text, "--lambda");
    o.config["zeta"] = zeta_spec;
    o.config["lambda"] = nums(ls);
    json rows = json::array();
    for (double l : ls) {
      const OptimizedCompound b = optimized_compound_upper(zeta, l);
      const LogQuadratureResult q = laplace_integral(zeta, l);
      const bool holds = !std::isfinite(q.log_value) || b.log_bound >= q.log_value - 1e-9 * std::abs(q.log_value);
      o.validation_ok = o.validation_ok && holds;
      rows.push_back({{"lambda", num(l)},
                      {"eps", num(b.eps)},
                      {"log_bound", num(b.log_bound)},
                      {"log_integral", num(q.log_value)},
                      {"integral_converged", q.converged},
                      {"dominates", holds}});
    }
    o.results["compound"] = rows;
  }
  return o;
}

Outcome cmd_lower_uni(const Common& c, const std::string& upper_spec, double eps, double m_bound) {
  Outcome o;
  const PhiFunction phi = load_phi(c);
  const PhiFunction nu = upper_spec.empty() ? phi : parse_family(upper_spec);
  o.x = grid_or(c.x, "1:8:0.5", "--x");
  const double m = std::isnan(m_bound) ? m_surrogate_from_upper(nu, eps) : m_bound;
  o.config = {{"phi", phi_label(c)},
              {"upper_family", upper_spec.empty() ? phi_label(c) : upper_spec},
              {"epsilon", num(eps)},
              {"m_bound", std::isnan(m_bound) ? json("from upper family") : num(m_bound)},
              {"x", nums(o.x)}};
  const UnilateralResult r = unilateral_lower_envelope(phi, eps, m, o.x);
  const TailEnvelope upper = chernoff_envelope(nu, o.x);
  o.results["certificate"] = certificate_json(r.certificate);
  o.results["lower"] = envelope_json(r.envelope);
  o.results["upper"] = envelope_json(upper);
  o.results["ordering"] = ordering_json(r.envelope, upper, o.validation_ok);
  o.columns = {{"lower", r.envelope.log_values}, {"upper", upper.log_values}};
  return o;
}

Outcome cmd_lower_bi(const Common& c, const std::string& upper_spec, double delta, const std::string& deltas_text) {
  Outcome o;
  const PhiFunction phi1 = load_phi(c);
  const PhiFunction phi2 = upper_spec.empty() ? phi1 : parse_family(upper_spec);
  o.x = grid_or(c.x, "1:8:0.5", "--x");
  ClosureOptions opts;
  if (!deltas_text.empty()) opts.deltas = parse_grid(deltas_text, "--deltas");
  o.config = {{"phi1", phi_label(c)},
              {"phi2", upper_spec.empty() ? phi_label(c) : upper_spec},
              {"x", nums(o.x)},
              {"deltas", nums(opts.deltas.empty() ? default_deltas() : opts.deltas)}};
  const TailEnvelope upper = chernoff_envelope(phi2, o.x);
  const TailEnvelope closure = closure_lower_envelope(phi1, phi2, o.x, opts);
  o.results["closure"] = envelope_json(closure);
  o.results["upper"] = envelope_json(upper);
  json ord = json::array({ordering_json(closure, upper, o.validation_ok)});
  o.columns = {{"closure", closure.log_values}, {"upper", upper.log_values}};
  if (!std::isnan(delta)) {
    o.config["delta"] = num(delta);
    const PinchedEnvelope p = pinched_lower_envelope(phi2, delta, o.x, opts);
    o.results["pinched"] = {{"delta", num(p.delta)},
                            {"c", num(p.c)},
                            {"within_stated_range", p.within_stated_range},
                            {"envelope", envelope_json(p.envelope)}};
    ord.push_back(ordering_json(p.envelope, upper, o.validation_ok));
    o.columns.push_back({"pinched", p.envelope.log_values});
  }
  const RegularityReport reg = verify_regularity(phi2);
  o.results["regularity"] = {{"v", num(reg.v)},
                             {"v_arg_lambda", num(reg.v_arg_lambda)},
                             {"v_arg_delta", num(reg.v_arg_delta)},
                             {"v_positive", reg.v_positive},
                             {"c0", num(reg.c0)},
                             {"c0_feasible", reg.c0_feasible}};
  o.results["ordering"] = ord;
  return o;
}

Outcome cmd_richter(const Common& c) {
  Outcome o;
  const PhiFunction phi = load_phi(c);
  o.x = grid_or(c.x, "1:8:0.5", "--x");
  o.config = {{"phi", phi_label(c)}, {"x", nums(o.x)}};
  const RichterSandwich r = richter_sandwich(phi, o.x);
  o.results["c2"] = num(r.c2);
  o.results["lower"] = envelope_json(r.lower);
  o.results["upper"] = envelope_json(r.upper);
  o.results["ordering"] = ordering_json(r.lower, r.upper, o.validation_ok);
  o.columns = {{"lower", r.lower.log_values}, {"upper", r.upper.log_values}};
  return o;
}

struct MomentArgs {
  std::string csv_path;
  std::string blowup;
  std::string power;
  std::string fit = "2:10";
  double eps = 0.2;
  double m_bound = std::nan("");
};

Outcome cmd_moments(const Common& c, const MomentArgs& a) {
  Outcome o;
  const int modes = !a.csv_path.empty() + !a.blowup.empty() + !a.power.empty();
  if (modes != 1) throw InputError("moments", 0, "give exactly one of --moments-csv, --blowup b:beta:C, --power m:c_low:c_high");
  o.x = grid_or(c.x, "1:10:0.25", "--x");
  o.config = {{"x", nums(o.x)}};
  if (!a.power.empty()) {
    const auto v = parse_numbers(a.power, "--power", 3);
    const auto fit = parse_numbers(a.fit, "--fit", 2);
    o.config["power"] = {{"m", num(v[0])}, {"c_low", num(v[1])}, {"c_high", num(v[2])}};
    o.config["fit"] = nums(fit);
    const WeibullRecovery r = weibull_recovery(v[0], v[1], v[2], o.x, fit[0], fit[1]);
    o.results["weibull"] = {{"c1", num(r.c1)},
                            {"c2", num(r.c2)},
                            {"slope_upper", num(r.slope_upper)},
                            {"slope_lower", num(r.slope_lower)},
                            {"recovered_exponent", num(r.recovered_exponent)},
                            {"cramer", {{"certified", r.cramer.certified}, {"mu", num(r.cramer.mu)}}},
                            {"lower", envelope_json(r.lower)},
                            {"upper", envelope_json(r.upper)}};
    o.results["ordering"] = ordering_json(r.lower, r.upper, o.validation_ok);
    o.columns = {{"lower", r.lower.log_values}, {"upper", r.upper.log_values}};
    return o;
  }
  if (!a.blowup.empty()) {
    const auto v = parse_numbers(a.blowup, "--blowup", 3);
    if (std::isnan(a.m_bound)) throw InputError("--m-bound", 0, "--blowup needs --m-bound (a bound on M[G](eps) for ln|X|)");
    o.config["blowup"] = {{"b", num(v[0])}, {"beta", num(v[1])}, {"C", num(v[2])}};
    o.config["epsilon"] = num(a.eps);
    o.config["m_bound"] = num(a.m_bound);
    const PowerTailResult r = power_tail_lower(v[0], v[1], v[2], o.x, a.eps, a.m_bound);
    o.results["power_tail"] = {{"c", num(r.c)},
                               {"gamma", num(r.gamma)},
                               {"gamma_asymptotic", num(r.gamma_asymptotic)},
                               {"certificate", certificate_json(r.certificate)},
                               {"envelope", envelope_json(r.envelope)},
                               {"power_envelope", envelope_json(r.power_envelope)}};
    o.columns = {{"chain", r.envelope.log_values}, {"power", r.power_envelope.log_values}};
    return o;
  }
  const MomentEnvelope m = load_moment_csv(a.csv_path);
  o.config["moments_csv"] = a.csv_path;
  const ExponentialPair pair = to_exponential(m);
  ConjugateOptions co;
  co.allow_infinite = true;
  if (pair.phi2) {
    const PhiFunction& phi2 = *pair.phi2;
    const TailEnvelope upper = theta_to_x(
        [&](double t) { return std::min(0.0, -conjugate_at(phi2, t, co).value); }, o.x, Side::kUpper,
        "chernoff-moments");
    std::vector<double> thetas;
    for (double x : o.x) {
      if (x >= std::numbers::e) thetas.push_back(std::log(x));
    }
    const TailEnvelope closure = closure_lower_envelope(pair.phi1, phi2, thetas);
    TailEnvelope lower = theta_to_x(
        [&](double t) {
          for (std::size_t i = 0; i < thetas.size(); ++i) {
            if (thetas[i] == t) return closure.log_values[i];
          }
          return std::nan("");
        },
        o.x, Side::kLower, "bilateral-moments");
    o.results["upper"] = envelope_json(upper);
    o.results["lower"] = envelope_json(lower);
    o.results["ordering"] = ordering_json(lower, upper, o.validation_ok);
    o.columns = {{"lower", lower.log_values}, {"upper", upper.log_values}};
  } else {
    o.results["note"] = "no upper moment column: only a lower moment envelope, no tail envelope computed";
  }
  o.results["degenerate"] = pair.degenerate;
  return o;
}

struct TauberArgs {
  std::string dist = "gaussian";
  bool monte_carlo = false;
  std::size_t samples = 10'000'000;
  std::string lambda;
  std::string x;
};

Outcome cmd_tauber(const Common& c, const TauberArgs& a) {
  Outcome o;
  const PhiFunction phi = load_phi(c);
  const OracleDistribution law = parse_law(a.dist);
  if (!law.cramer()) throw InputError("--dist", 0, "law '" + law.name() + "' has no MGF; the MGF-side limit is undefined");
  TauberOptions opts;
  if (!a.lambda.empty()) opts.lambda_ladder = parse_grid(a.lambda, "--lambda");
  o.config = {{"phi", phi_label(c)}, {"dist", law.name()}, {"lambda_ladder", nums(opts.lambda_ladder)}};
  TauberianReport r;
  if (a.monte_carlo) {
    MonteCarloOptions mc;
    mc.samples = a.samples;
    mc.seed = c.seed;
    if (!a.x.empty()) mc.x_ladder = parse_grid(a.x, "--x");
    o.config["monte_carlo"] = {{"samples", mc.samples}, {"seed", mc.seed}, {"x_ladder", nums(mc.x_ladder)}};
    r = tauberian_check_monte_carlo(phi, law, mc, opts);
  } else {
    if (!a.x.empty()) opts.x_ladder = parse_grid(a.x, "--x");
    o.config["x_ladder"] = nums(opts.x_ladder);
    r = tauberian_check(phi, law, opts);
  }
  o.results = {{"k_mgf", num(r.k_mgf)},
               {"k_tail", num(r.k_tail)},
               {"product", num(r.product)},
               {"tolerance", num(r.tolerance)},
               {"consistent", r.consistent},
               {"regularity_ok", r.regularity_ok},
               {"tail_mode", r.tail_mode},
               {"mgf_ladder", ladder_json(r.mgf)},
               {"tail_ladder", ladder_json(r.tail)}};
  o.validation_ok = r.consistent;
  return o;
}

struct ValidateArgs {
  std::vector<std::string> dists;
  std::size_t samples = 100'000;
  double eps = 0.2;
};

Outcome cmd_validate(const Common& c, const ValidateArgs& a) {
  Outcome o;
  std::vector<OracleDistribution> laws;
  if (a.dists.empty()) {
    laws = sandwich_suite();
  } else {
    for (const auto& d : a.dists) laws.push_back(parse_law(d));
  }
  ValidationOptions opts;
  opts.x_grid = grid_or(c.x, "1:8:0.25", "--x");
  opts.samples = a.samples;
  opts.seed = c.seed;
  opts.eps = a.eps;
  o.x = opts.x_grid;
  json names = json::array();
  for (const auto& l : laws) names.push_back(l.name());
  o.config = {{"dists", names}, {"x", nums(opts.x_grid)}, {"samples", opts.samples}, {"seed", opts.seed},
              {"epsilon", num(opts.eps)}, {"slack", num(opts.slack)}};
  json rows = json::array();
  for (const auto& law : laws) {
    const LawValidation v = validate_law(law, opts);
    json checks = json::array();
    for (const auto& ch : v.checks) {
      checks.push_back({{"envelope", ch.envelope},
                        {"side", to_string(ch.side)},
                        {"points_checked", ch.points_checked},
                        {"nontrivial_points", ch.nontrivial_points},
                        {"worst_slack", num(ch.worst_slack)},
                        {"worst_x", num(ch.worst_x)},
                        {"passed", ch.passed},
                        {"error", ch.error}});
    }
    json envs = json::array();
    for (const auto& e : v.envelopes) {
      envs.push_back(envelope_json(e));
      o.columns.push_back({v.law + ":" + e.provenance, e.log_values});
    }
    o.columns.push_back({v.law + ":exact", v.exact_log_tail});
    rows.push_back({{"law", v.law},
                    {"passed", v.passed},
                    {"checks", checks},
                    {"exact_log_tail", nums(v.exact_log_tail)},
                    {"envelopes", envs},
                    {"empirical",
                     {{"seed", v.empirical.seed},
                      {"samples", v.empirical.samples},
                      {"fraction", nums(v.empirical.fraction)},
                      {"z_scores", nums(v.empirical.z_scores)},
                      {"max_z", num(v.empirical.max_z)},
                      {"passed", v.empirical.passed}}}});
    o.validation_ok = o.validation_ok && v.passed;
  }
  o.results["laws"] = rows;
  o.results["all_passed"] = o.validation_ok;
  return o;
}

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

int emit(const std::string& command, const Common& c, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  json report = {{"schema_version", kSchemaVersion}, {"tool", "tailinv"}, {"version", TAILINV_VERSION},
                 {"command", command}};
  Outcome o;
  json errors = json::array();
  int code = kOk;
  try {
    o = body();
    if (!o.validation_ok) code = kValidationFailure;
  } catch (const InputError&) {
    throw;
  } catch (const Error& e) {
    errors.push_back({{"type", "numeric"}, {"message", e.what()}});
    code = kValidationFailure;
  }
  o.config["seed"] = c.seed;
  report["config"] = o.config;
  report["results"] = o.results;
  report["errors"] = errors;
  report["status"] = code == kOk ? "ok" : (errors.empty() ? "validation_failed" : "error");
  if (!c.normalize) {
    report["generated_at"] = utc_now();
    report["elapsed_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
  if (!c.csv.empty() && !o.x.empty()) write_csv(c.csv, o.x, o.columns);
  const std::string out = c.out.empty() ? (c.csv == "-" ? "" : "-") : c.out;
  if (!out.empty()) write_text(out, report.dump(2) + "\n");
  return code;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Tail bounds from MGF exponents: Chernoff upper envelopes, certified lower envelopes, "
               "moment-to-tail transfer and validation against reference laws.\n"
               "Grids: start:stop:step (stop included on the lattice) or a comma list."};
  app.require_subcommand(1);
  app.set_version_flag("--version", TAILINV_VERSION);

  Common common;
  common.seed = default_seed();
  std::string command;
  std::function<Outcome()> body;

  std::string biconj;
  auto* conj = app.add_subcommand("conjugate", "numerical Young-Fenchel transform of a family");
  add_common(conj, common, "1:20:1");
  conj->add_option("--biconjugate", biconj, "also tabulate the biconjugate on this lambda grid");
  conj->callback([&] { command = "conjugate"; body = [&] { return cmd_conjugate(common, biconj); }; });

  std::string zeta, lambdas;
  auto* upper = app.add_subcommand("upper", "Chernoff upper envelope and compound integral bounds");
  add_common(upper, common, "1:8:0.5");
  upper->add_option("--zeta", zeta, "exponent of the compound integral (same families); enables the compound table");
  upper->add_option("--lambda", lambdas, "lambda grid for the compound table (default 1,3,10,30)");
  upper->callback([&] { command = "upper"; body = [&] { return cmd_upper(common, zeta, lambdas); }; });

  std::string upper_family;
  double eps = 0.2;
  double m_bound = std::nan("");
  auto* uni = app.add_subcommand("lower-uni", "unilateral lower envelope from a lower MGF exponent");
  add_common(uni, common, "1:8:0.5");
  uni->add_option("--upper-family", upper_family, "upper MGF exponent used for the M bound (default: --family)");
  uni->add_option("--epsilon", eps, "damping in (0, 1)")->capture_default_str()->check(CLI::Range(1e-9, 1 - 1e-9));
  uni->add_option("--m-bound", m_bound, "explicit bound on M[G](epsilon)");
  uni->callback([&] { command = "lower-uni"; body = [&] { return cmd_lower_uni(common, upper_family, eps, m_bound); }; });

  double delta = std::nan("");
  std::string deltas;
  auto* bi = app.add_subcommand("lower-bi", "bilateral closure lower envelope, optional pinched form");
  add_common(bi, common, "1:8:0.5");
  bi->add_option("--upper-family", upper_family, "upper MGF exponent phi2 (default: --family)");
  bi->add_option("--delta", delta, "pinching width in (0, 1): also emit the pinched envelope")->check(CLI::Range(1e-9, 1 - 1e-9));
  bi->add_option("--deltas", deltas, "closure delta grid (default 16 values in [1e-3, 0.5])");
  bi->callback([&] { command = "lower-bi"; body = [&] { return cmd_lower_bi(common, upper_family, delta, deltas); }; });

  auto* richter = app.add_subcommand("richter", "two-sided envelope from an exact MGF exponent");
  add_common(richter, common, "1:8:0.5");
  richter->callback([&] { command = "richter"; body = [&] { return cmd_richter(common); }; });

  MomentArgs margs;
  auto* mom = app.add_subcommand("moments", "tail envelopes from p-th norm envelopes");
  add_common(mom, common, "1:10:0.25");
  mom->add_option("--moments-csv", margs.csv_path, "CSV with header p,lower[,upper]");
  mom->add_option("--blowup", margs.blowup, "b:beta:C for |X|_p <= C (b - p)^-beta");
  mom->add_option("--power", margs.power, "m:c_low:c_high for c_low p^(1/m) <= |X|_p <= c_high p^(1/m)");
  mom->add_option("--fit", margs.fit, "lo:hi window of the log-log exponent fit")->capture_default_str();
  mom->add_option("--epsilon", margs.eps, "damping for the unilateral chain")->capture_default_str();
  mom->add_option("--m-bound", margs.m_bound, "bound on M[G](epsilon) for ln|X| (required with --blowup)");
  mom->callback([&] { command = "moments"; body = [&] { return cmd_moments(common, margs); }; });

  TauberArgs targs;
  auto* tau = app.add_subcommand("tauber", "estimate the MGF-side and tail-side limits and check reciprocity");
  tau->add_option("--family", common.family, family_help())->capture_default_str();
  tau->add_option("--phi-csv", common.phi_csv, "tabulated phi, CSV with header lambda,value");
  tau->add_option("--dist", targs.dist, "reference law: " + oracle_names())->capture_default_str();
  tau->add_option("--lambda", targs.lambda, "lambda ladder (default 3.125,6.25,12.5,25,50)");
  tau->add_option("--x", targs.x, "x ladder (default 2..8 geometric; 2:5:0.5 with --monte-carlo)");
  tau->add_flag("--monte-carlo", targs.monte_carlo, "tail side from seeded samples");
  tau->add_option("--samples", targs.samples, "Monte Carlo sample count")->capture_default_str();
  tau->add_option("--seed", common.seed, "seed (default $TAILINV_SEED or 42)");
  tau->add_option("--out", common.out, "JSON report path (default stdout)");
  tau->add_flag("--normalize", common.normalize, "omit timestamp and timing");
  tau->callback([&] { command = "tauber"; body = [&] { return cmd_tauber(common, targs); }; });

  ValidateArgs vargs;
  auto* val = app.add_subcommand("validate", "oracle sandwich suite: upper >= exact tail >= every lower envelope");
  add_common(val, common, "1:8:0.25");
  val->add_option("--dist", vargs.dists, "law(s) to validate (default gaussian, exponential, weibull:2, weibull:4)");
  val->add_option("--samples", vargs.samples, "samples for the empirical cross-check")->capture_default_str();
  val->add_option("--epsilon", vargs.eps, "damping for the unilateral chain")->capture_default_str();
  val->callback([&] { command = "validate"; body = [&] { return cmd_validate(common, vargs); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    return emit(command, common, body);
  } catch (const InputError& e) {
    std::cerr << "tailinv: input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "tailinv: input error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace tailinv::cli
