#include <cmath>
#include <numbers>

#include "doctest.h"
#include "tailinv/bi_lower.hpp"
#include "tailinv/errors.hpp"
#include "tailinv/optimize.hpp"

using namespace tailinv;
using doctest::Approx;

namespace {
const Domain kHalfLine{0.0};
double log_normal_tail(double x) { return std::log(0.5 * std::erfc(x / std::sqrt(2.0))); }
}  // namespace

TEST_CASE("saddle objective for the quadratic") {
  const auto q = PhiFunction::quadratic(1.0, kHalfLine);
  auto a = saddle_objective(q, 10, 7);
  CHECK(a.s == Approx(45.5));
  CHECK(a.ds == Approx(3.0).epsilon(1e-6));
  auto b = saddle_objective(q, 10, 13);
  CHECK(b.s == Approx(45.5));
  CHECK(b.ds == Approx(-3.0).epsilon(1e-6));
  CHECK(saddle_objective(q, 10, 10).s == Approx(q(10)));
}

TEST_CASE("bilateral point spot values") {
  const auto q = PhiFunction::quadratic(1.0, kHalfLine);
  const auto g = symmetric_geometry(q, 10, 0.3);
  CHECK(g.x_minus == Approx(7));
  CHECK(g.x_plus == Approx(13));
  const auto p = bilateral_lower_point(q, g);
  CHECK_FALSE(p.clamped);
  CHECK(std::exp(p.log_value + 80) == Approx(0.9259).epsilon(1e-4));
  CHECK(p.log_value <= log_normal_tail(7));
  const auto clamped = bilateral_lower_point(q, symmetric_geometry(q, 4, 0.25));
  CHECK(clamped.clamped);
  CHECK(clamped.value() == 0.0);

  const auto e = explicit_geometry(q, 10, 7, 13);
  CHECK(bilateral_lower_point(q, e).log_value == Approx(p.log_value).epsilon(1e-8));
  CHECK_THROWS_AS(bilateral_lower_point(q, explicit_geometry(q, 10, 11, 13)), GeometryInvalid);
}

TEST_CASE("Gaussian closure envelope") {
  const auto q = PhiFunction::quadratic(1.0, kHalfLine);
  const auto zs = linspace(1, 8, 29);
  const auto env = closure_lower_envelope(q, q, zs);
  for (std::size_t i = 0; i < zs.size(); ++i) {
    CHECK(env.log_values[i] <= log_normal_tail(zs[i]) + 1e-12);
    if (zs[i] >= 2) CHECK(env.log_values[i] > -kInf);
    if (i > 0) CHECK(env.log_values[i] <= env.log_values[i - 1]);
  }
  // exponent within O(z) of z^2/2
  const double gap8 = (-env.log_values.back() - 32) / 8;
  CHECK(gap8 > 0);
  CHECK(gap8 < 10);
  // dominates any single geometry
  const auto single = bilateral_lower_point(q, asymmetric_geometry(q, 8 / 0.7, 0.3, 0.3));
  CHECK(single.x == Approx(8));
  CHECK(env.log_values.back() >= single.log_value - 1e-9);
}

TEST_CASE("regularity of the quadratic, quartic and power-log families") {
  const auto q = verify_regularity(PhiFunction::quadratic(1.0, kHalfLine));
  CHECK(std::abs(q.v - 1) <= 1e-6);
  CHECK(q.c0 == Approx(16).epsilon(1e-6));
  CHECK(verify_regularity(PhiFunction::power_log(4, 0, kHalfLine)).v_positive);
  CHECK(verify_regularity(PhiFunction::power_log(2, 1, kHalfLine)).v_positive);
}

TEST_CASE("pinched envelope for the subgaussian case") {
  const auto q = PhiFunction::quadratic(1.0, kHalfLine);
  const auto zs = linspace(2, 8, 13);
  const auto r = pinched_lower_envelope(q, 0.1, zs);
  CHECK(r.c > 0);
  CHECK(r.c < 10);
  for (std::size_t i = 0; i < zs.size(); ++i) {
    if (zs[i] < std::numbers::e) {
      CHECK(std::isnan(r.envelope.log_values[i]));
      continue;
    }
    CHECK(r.envelope.log_values[i] <= r.closure.log_values[i]);
    const double s = 1 - r.c * 0.1;
    CHECK(r.envelope.log_values[i] == Approx(-0.5 * zs[i] * zs[i] / s).epsilon(1e-6));
  }
}

TEST_CASE("Richter sandwich for the standard normal") {
  const auto q = PhiFunction::quadratic(1.0, kHalfLine);
  const auto xs = linspace(2, 8, 25);
  const auto r = richter_sandwich(q, xs);
  CHECK(r.c2 >= 0.892);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    CHECK(r.lower.log_values[i] <= log_normal_tail(xs[i]) + 1e-12);
    CHECK(log_normal_tail(xs[i]) <= r.upper.log_values[i] + 1e-12);
    CHECK(r.upper.log_values[i] == Approx(-0.5 * xs[i] * xs[i]));
  }
}

TEST_CASE("Richter sandwich for the unit exponential") {
  const auto phi = PhiFunction::expression(
      "-ln(1-l)", [](double l) { return -std::log1p(-l); }, Domain{0.0, 1.0, false},
      PhiTraits{true, kInf, [](double l) { return 1 / (1 - l); }});
  const auto xs = linspace(2, 8, 13);
  const auto r = richter_sandwich(phi, xs);
  CHECK(std::isfinite(r.c2));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (r.lower.present(i)) CHECK(r.lower.log_values[i] <= -xs[i] + 1e-12);
    CHECK(-xs[i] <= r.upper.log_values[i] + 1e-12);
  }
}
