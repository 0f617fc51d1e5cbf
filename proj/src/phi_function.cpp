#include "tailinv/phi_function.hpp"

#include <algorithm>
#include <numbers>
#include <sstream>

#include "tailinv/csv.hpp"
#include "tailinv/errors.hpp"

namespace tailinv {

double Domain::upper_probe() const {
  if (!bounded()) return kInf;
  if (hi_closed) return hi;
  return hi - std::max(std::abs(hi), 1.0) * 1e-13;
}

PhiFunction PhiFunction::quadratic(double scale, Domain domain) {
  if (!(scale > 0)) throw std::invalid_argument("quadratic scale must be positive");
  PhiFunction f;
  f.form_ = Form::kQuadratic;
  f.name_ = "quadratic";
  f.params_ = {scale};
  f.domain_ = domain;
  f.fn_ = [scale](double t) { return 0.5 * scale * t * t; };
  f.derivative_ = [scale](double t) { return scale * t; };
  f.convex_ = true;
  f.growth_slope_ = kInf;
  return f;
}

PhiFunction PhiFunction::power_log(double p, double r, Domain domain) {
  if (!(p > 1)) throw std::invalid_argument("power-log family needs p > 1");
  PhiFunction f;
  f.form_ = Form::kPowerLog;
  f.name_ = "power-log";
  f.params_ = {p, r};
  f.domain_ = domain;
  f.fn_ = [p, r](double t) {
    const double a = std::abs(t);
    return std::pow(a, p) / p * std::pow(std::log(std::numbers::e + a), r);
  };
  f.derivative_ = [p, r](double t) {
    const double a = std::abs(t);
    const double l = std::log(std::numbers::e + a);
    const double d = std::pow(a, p - 1) * std::pow(l, r) + std::pow(a, p) / p * r * std::pow(l, r - 1) / (std::numbers::e + a);
    return t < 0 ? -d : d;
  };
  // Convex on t >= 0 whenever p > 1 and r >= 0; other r are certified numerically.
  f.convex_ = r >= 0 || is_convex_on(f, std::max(domain.lo, 0.0), std::isfinite(domain.hi) ? domain.upper_probe() : 1e4);
  f.growth_slope_ = kInf;
  return f;
}

PhiFunction PhiFunction::linear(double slope, Domain domain) {
  PhiFunction f;
  f.form_ = Form::kLinear;
  f.name_ = "linear";
  f.params_ = {slope};
  f.domain_ = domain;
  f.fn_ = [slope](double t) { return slope * t; };
  f.derivative_ = [slope](double) { return slope; };
  f.convex_ = true;
  f.growth_slope_ = slope;
  return f;
}

PhiFunction PhiFunction::expression(std::string name, Fn fn, Domain domain, Traits traits) {
  if (!fn) throw std::invalid_argument("expression needs a callable");
  PhiFunction f;
  f.form_ = Form::kExpression;
  f.name_ = std::move(name);
  f.domain_ = domain;
  f.fn_ = std::move(fn);
  f.derivative_ = std::move(traits.derivative);
  f.convex_ = traits.convex;
  f.growth_slope_ = traits.growth_slope;
  return f;
}

PhiFunction PhiFunction::grid(std::vector<double> knots, std::vector<double> values, bool open_ended) {
  if (knots.size() != values.size()) throw std::invalid_argument("grid: knot/value size mismatch");
  if (knots.size() < 2) throw std::invalid_argument("grid: need at least two knots");
  for (std::size_t i = 0; i < knots.size(); ++i) {
    if (!std::isfinite(knots[i]) || !std::isfinite(values[i])) throw std::invalid_argument("grid: non-finite entry");
    if (values[i] < 0) throw NegativeInput("grid: negative value at knot " + std::to_string(knots[i]));
    if (i > 0 && !(knots[i] > knots[i - 1])) throw std::invalid_argument("grid: knots must be strictly increasing");
  }
  if (knots.front() < 0) throw std::invalid_argument("grid: knots must be nonnegative");
  PhiFunction f;
  f.form_ = Form::kGrid;
  f.name_ = "grid";
  f.domain_ = Domain{knots.front(), knots.back(), true};
  f.knots_ = std::move(knots);
  f.values_ = std::move(values);
  f.open_ended_ = open_ended;
  const auto& k = f.knots_;
  const auto& v = f.values_;
  bool convex = true;
  for (std::size_t i = 1; i + 1 < k.size(); ++i) {
    const double s0 = (v[i] - v[i - 1]) / (k[i] - k[i - 1]);
    const double s1 = (v[i + 1] - v[i]) / (k[i + 1] - k[i]);
    if (s1 < s0 - 1e-12 * (1 + std::abs(s0))) {
      convex = false;
      break;
    }
  }
  f.convex_ = convex;
  f.growth_slope_ = open_ended ? (v.back() - v[v.size() - 2]) / (k.back() - k[k.size() - 2]) : std::numeric_limits<double>::quiet_NaN();
  return f;
}

namespace {


}  // namespace

PhiFunction PhiFunction::from_csv_text(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::vector<double> knots, values;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    line = csv::strip_line(line);
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != "lambda,value") throw InputError(source, line_no, "expected header 'lambda,value'");
      header_seen = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
      throw InputError(source, line_no, "expected two comma-separated columns");
    }
    const double l = csv::parse_number(std::string_view(line).substr(0, comma), source, line_no);
    const double v = csv::parse_number(std::string_view(line).substr(comma + 1), source, line_no);
    if (!knots.empty() && !(l > knots.back())) throw InputError(source, line_no, "lambda column not strictly increasing");
    if (l < 0) throw InputError(source, line_no, "lambda must be nonnegative");
    if (v < 0 || !std::isfinite(v)) throw InputError(source, line_no, "value must be finite and nonnegative");
    knots.push_back(l);
    values.push_back(v);
  }
  if (!header_seen) throw InputError(source, 0, "empty file");
  if (knots.size() < 2) throw InputError(source, line_no, "need at least two data rows");
  return grid(std::move(knots), std::move(values));
}

PhiFunction PhiFunction::from_csv(const std::filesystem::path& path) {
  return from_csv_text(csv::read_file(path), path.string());
}

double PhiFunction::evaluate(double t) const {
  if (!domain_.contains(t)) throw OutOfDomain(t, domain_.lo, domain_.hi);
  if (form_ != Form::kGrid) return fn_(t);
  auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
  if (it == knots_.end()) return values_.back();
  const std::size_t i = static_cast<std::size_t>(it - knots_.begin());
  if (i == 0) return values_.front();
  const double w = (t - knots_[i - 1]) / (knots_[i] - knots_[i - 1]);
  return values_[i - 1] + w * (values_[i] - values_[i - 1]);
}

std::optional<double> PhiFunction::exact_derivative(double t) const {
  if (!domain_.contains(t)) throw OutOfDomain(t, domain_.lo, domain_.hi);
  if (derivative_) return derivative_(t);
  return std::nullopt;
}

std::pair<double, double> PhiFunction::one_sided_slopes(double t) const {
  if (!domain_.contains(t)) throw OutOfDomain(t, domain_.lo, domain_.hi);
  if (form_ == Form::kGrid) {
    auto it = std::lower_bound(knots_.begin(), knots_.end(), t);
    std::size_t i = static_cast<std::size_t>(it - knots_.begin());
    auto seg = [&](std::size_t j) { return (values_[j + 1] - values_[j]) / (knots_[j + 1] - knots_[j]); };
    const std::size_t last = knots_.size() - 2;
    if (it != knots_.end() && *it == t) {
      const double left = i == 0 ? seg(0) : seg(i - 1);
      const double right = i > last ? seg(last) : seg(i);
      return {left, right};
    }
    const double s = seg(std::min(i - 1, last));
    return {s, s};
  }
  if (derivative_) {
    const double d = derivative_(t);
    return {d, d};
  }
  const double h = 1e-6 * std::max(1.0, std::abs(t));
  const double f0 = evaluate(t);
  const bool has_left = domain_.contains(t - h);
  const bool has_right = domain_.contains(t + h);
  const double left = has_left ? (f0 - evaluate(t - h)) / h : (evaluate(t + h) - f0) / h;
  const double right = has_right ? (evaluate(t + h) - f0) / h : left;
  return {left, right};
}

double PhiFunction::slope(double t) const {
  if (form_ == Form::kGrid) {
    auto [l, r] = one_sided_slopes(t);
    return t >= knots_.back() ? l : r;
  }
  if (!domain_.contains(t)) throw OutOfDomain(t, domain_.lo, domain_.hi);
  if (derivative_) return derivative_(t);
  const double h = 1e-5 * std::max(1.0, std::abs(t));
  if (domain_.contains(t - h) && domain_.contains(t + h)) return (evaluate(t + h) - evaluate(t - h)) / (2 * h);
  if (domain_.contains(t + h)) return (evaluate(t + h) - evaluate(t)) / h;
  return (evaluate(t) - evaluate(t - h)) / h;
}

PhiFunction PhiFunction::scaled(double k) const {
  if (!(k > 0)) throw std::invalid_argument("scale factor must be positive");
  if (form_ == Form::kGrid) {
    auto v = values_;
    for (auto& x : v) x *= k;
    auto g = grid(knots_, std::move(v), open_ended_);
    g.name_ = name_ + "*" + std::to_string(k);
    return g;
  }
  PhiFunction f = *this;
  f.form_ = Form::kExpression;
  f.name_ = name_ + "*" + std::to_string(k);
  f.params_ = params_;
  f.fn_ = [g = fn_, k](double t) { return k * g(t); };
  if (derivative_) f.derivative_ = [d = derivative_, k](double t) { return k * d(t); };
  f.growth_slope_ = growth_slope_ * k;
  return f;
}

PhiFunction PhiFunction::shifted(double shift) const {
  if (form_ == Form::kGrid) {
    auto v = values_;
    for (auto& x : v) x = std::max(0.0, x + shift);
    return grid(knots_, std::move(v), open_ended_);
  }
  PhiFunction f = *this;
  f.form_ = Form::kExpression;
  f.name_ = name_ + "+shift";
  f.fn_ = [g = fn_, shift](double t) { return g(t) + shift; };
  return f;
}

PhiFunction PhiFunction::with_domain(Domain domain) const {
  if (form_ == Form::kGrid) throw std::invalid_argument("grid functions carry their own domain");
  PhiFunction f = *this;
  f.domain_ = domain;
  return f;
}

bool is_convex_on(const PhiFunction& f, double lo, double hi, int n, double tol) {
  if (!(hi > lo) || n < 3) return true;
  const double h = (hi - lo) / (n - 1);
  double prev = f.evaluate(lo);
  double cur = f.evaluate(lo + h);
  for (int i = 2; i < n; ++i) {
    const double t = i + 1 == n ? hi : lo + i * h;
    const double next = f.evaluate(t);
    const double second = prev - 2 * cur + next;
    if (second < -tol * (1 + std::abs(cur))) return false;
    prev = cur;
    cur = next;
  }
  return true;
}

}  // namespace tailinv
