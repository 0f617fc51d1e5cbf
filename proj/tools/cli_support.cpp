#include "cli_support.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "tailinv/csv.hpp"
#include "tailinv/errors.hpp"

namespace tailinv::cli {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, sep);) out.push_back(item);
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

double number(const std::string& field, const std::string& option) {
  try {
    return csv::parse_number(field, option, 0);
  } catch (const InputError&) {
    throw InputError(option, 0, "'" + field + "' is not a number");
  }
}

}  // namespace

std::vector<double> parse_numbers(const std::string& text, const std::string& option, std::size_t count) {
  const auto parts = split(text, ':');
  if (parts.size() != count) {
    std::ostringstream os;
    os << "expected " << count << " colon-separated numbers, got '" << text << "'";
    throw InputError(option, 0, os.str());
  }
  std::vector<double> out;
  for (const auto& p : parts) out.push_back(number(p, option));
  return out;
}

std::vector<double> parse_grid(const std::string& text, const std::string& option) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    const auto v = parse_numbers(text, option, 3);
    const double start = v[0], stop = v[1], step = v[2];
    if (!(step > 0) || !(stop >= start)) throw InputError(option, 0, "need start <= stop and step > 0 in '" + text + "'");
    const double span = (stop - start) / step;
    if (span > 1e7) throw InputError(option, 0, "grid '" + text + "' has too many points");
    const auto n = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
    for (std::size_t i = 0; i < n; ++i) out.push_back(start + double(i) * step);
  } else {
    for (const auto& f : split(text, ',')) out.push_back(number(f, option));
  }
  if (out.empty()) throw InputError(option, 0, "empty grid");
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (!(out[i] > out[i - 1])) throw InputError(option, 0, "grid '" + text + "' is not strictly increasing");
  }
  for (double v : out) {
    if (!std::isfinite(v)) throw InputError(option, 0, "grid '" + text + "' has a non-finite value");
  }
  return out;
}

PhiFunction parse_family(const std::string& spec) {
  const Domain half{0.0};
  const auto parts = split(spec, ':');
  const std::string& head = parts.empty() ? spec : parts[0];
  if (head == "quadratic") {
    if (parts.size() == 1) return PhiFunction::quadratic(1.0, half);
    if (parts.size() == 2) {
      const double s = number(parts[1], "--family");
      if (!(s > 0)) throw InputError("--family", 0, "quadratic scale must be positive");
      return PhiFunction::quadratic(s, half);
    }
  } else if (head == "quartic" && parts.size() == 1) {
    return PhiFunction::power_log(4, 0, half);
  } else if (head == "power-log" && parts.size() == 3) {
    const double p = number(parts[1], "--family"), r = number(parts[2], "--family");
    if (!(p > 1)) throw InputError("--family", 0, "power-log needs p > 1");
    return PhiFunction::power_log(p, r, half);
  } else if (head == "mgf" && parts.size() >= 2) {
    const auto law = parse_law(spec.substr(4));
    if (!law.cramer()) throw InputError("--family", 0, "law '" + law.name() + "' has no finite MGF exponent");
    return law.mgf_exponent();
  }
  throw InputError("--family", 0, "unknown family '" + spec + "'; " + family_help());
}

std::string family_help() {
  return "families: quadratic[:s], quartic, power-log:p:r, mgf:<law> with law one of " + oracle_names();
}

OracleDistribution parse_law(const std::string& spec) {
  std::optional<OracleDistribution> law;
  try {
    law = oracle_by_name(spec);
  } catch (const std::exception& e) {
    throw InputError("--dist", 0, "bad law '" + spec + "': " + e.what());
  }
  if (!law) throw InputError("--dist", 0, "unknown law '" + spec + "'; laws: " + oracle_names());
  return *law;
}

std::string oracle_names() { return "gaussian[:sigma], exponential[:rate], weibull:m, pareto:alpha, mixture:w:s1:s2"; }

std::uint64_t default_seed() {
  const char* env = std::getenv("TAILINV_SEED");
  if (env == nullptr || *env == '\0') return kDefaultSeed;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0') return kDefaultSeed;
  return v;
}

json num(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

json nums(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

json envelope_json(const TailEnvelope& env) {
  return {{"provenance", env.provenance},
          {"side", to_string(env.side)},
          {"valid_from", num(env.valid_from)},
          {"annotations", env.annotations},
          {"x", nums(env.x_grid)},
          {"log_value", nums(env.log_values)}};
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError(path, 0, "cannot open for writing");
  f << text;
  if (!f) throw InputError(path, 0, "write failed");
}

void write_csv(const std::string& path, const std::vector<double>& x, const std::vector<Column>& columns) {
  std::ostringstream os;
  os << std::setprecision(12);
  os << "x";
  for (const auto& c : columns) os << ',' << c.name;
  os << '\n';
  for (std::size_t i = 0; i < x.size(); ++i) {
    os << x[i];
    for (const auto& c : columns) {
      os << ',';
      const double v = i < c.values.size() ? c.values[i] : std::nan("");
      if (!std::isnan(v)) os << (c.log_scale ? std::exp(v) : v);
    }
    os << '\n';
  }
  write_text(path, os.str());
}

}  // namespace tailinv::cli
