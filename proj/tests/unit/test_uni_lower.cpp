#include <cmath>

#include "doctest.h"
#include "tailinv/errors.hpp"
#include "tailinv/uni_lower.hpp"

using namespace tailinv;
using doctest::Approx;

namespace {
const Domain kHalfLine{0.0};
double log_normal_tail(double x) { return std::log(0.5 * std::erfc(x / std::sqrt(2.0))); }
}  // namespace

TEST_CASE("auxiliary exponent values") {
  CHECK(auxiliary_exponent(PhiFunction::quadratic(1.0, kHalfLine), 2.0) == Approx(1.1614).epsilon(1e-4));
  CHECK(auxiliary_exponent(PhiFunction::linear(1.0, kHalfLine), 1.0) == Approx(std::log(std::exp(1.0) - 1)));
  const auto q = PhiFunction::quadratic(1.0, kHalfLine);
  CHECK(auxiliary_exponent(q, 60.0) - (q(60.0) - std::log(60.0)) == Approx(0.0));
  // large lambda stays finite
  CHECK(std::isfinite(auxiliary_exponent(q, 1e4)));
}

TEST_CASE("class W certification for the quadratic") {
  const auto q = PhiFunction::quadratic(1.0, kHalfLine);
  WOptions o;
  o.lambda_lo = std::sqrt(2.0);
  o.lambda_hi = 100;
  const auto w = certify_class_w(q, o);
  CHECK(w.certified);
  CHECK(w.c1 == Approx(0.441).epsilon(2e-3));
  CHECK(w.margin >= 0);

  o.lambda_lo = 1.0;
  CHECK_FALSE(certify_class_w(q, o).certified);

  const auto auto_range = certify_class_w(q);
  CHECK(auto_range.certified);
  CHECK(auto_range.lambda_lo == Approx(std::sqrt(2.0)));
}

TEST_CASE("class W for a power-log exponent") {
  CHECK(certify_class_w(PhiFunction::power_log(2.0, 1.0, kHalfLine)).certified);
}

TEST_CASE("Gaussian unilateral chain") {
  const auto q = PhiFunction::quadratic(1.0, kHalfLine);
  const double m = m_surrogate_from_upper(q, 0.2);
  CHECK(m == Approx(2.8025).epsilon(1e-4));
  const std::vector<double> xs{0.5, 1, 1.5, 2, 3, 4, 6, 8};
  const auto r = unilateral_lower_envelope(q, 0.2, m, xs);
  const auto& c = r.certificate;
  CHECK(c.c1 == Approx(0.441).epsilon(2e-3));
  CHECK(c.lambda1 == 4.0);
  CHECK(c.c2 == Approx(0.257).epsilon(1e-2));
  CHECK(c.dilation == Approx(4.87).epsilon(1e-2));
  CHECK(c.dilation >= 1);
  CHECK(std::isnan(r.envelope.log_values[0]));
  for (std::size_t i = 1; i < xs.size(); ++i) {
    CHECK(r.envelope.log_values[i] <= log_normal_tail(xs[i]) + 1e-12);
    if (i >= 2) CHECK(r.envelope.log_values[i] <= r.envelope.log_values[i - 1]);
  }
  CHECK(r.envelope.log_values[1] == Approx(-0.5 * c.dilation * c.dilation).epsilon(1e-6));
}

TEST_CASE("exponential law chain stays below the exact tail") {
  const auto phi = PhiFunction::expression(
      "-ln(1-l)", [](double l) { return -std::log1p(-l); }, Domain{0.0, 1.0, false}, PhiTraits{true, kInf, {}});
  const double m = m_surrogate_from_upper(phi, 0.2);
  CHECK(std::isfinite(m));
  const std::vector<double> xs{1, 2, 4, 8};
  const auto r = unilateral_lower_envelope(phi, 0.2, m, xs);
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(r.envelope.log_values[i] <= -xs[i] + 1e-12);
}

TEST_CASE("non-Cramer input gives the trivial envelope") {
  const auto phi = PhiFunction::expression("inf", [](double) { return kInf; }, kHalfLine);
  const std::vector<double> xs{1, 2};
  const auto r = unilateral_lower_envelope(phi, 0.2, 10.0, xs);
  CHECK(r.envelope.has_annotation("NoCramer"));
  CHECK(r.envelope.value(0) == 0.0);
}

TEST_CASE("infinite M surrogate is rejected") {
  const auto q = PhiFunction::quadratic(1.0, kHalfLine);
  const std::vector<double> xs{1};
  CHECK_THROWS_AS(unilateral_lower_envelope(q, 0.2, kInf, xs), Divergent);
}
