#include <cmath>
#include <numbers>

#include "doctest.h"
#include "tailinv/errors.hpp"
#include "tailinv/moment_bridge.hpp"
#include "tailinv/optimize.hpp"
#include "tailinv/oracle.hpp"

using namespace tailinv;
using doctest::Approx;

TEST_CASE("moment envelopes become MGF exponents of ln|X|") {
  const auto pm = power_moments(2, 1, 1);
  const auto pair = to_exponential(pm);
  REQUIRE(pair.phi2);
  CHECK((*pair.phi2)(4.0) == Approx(4 * std::log(2.0)));
  CHECK(pair.phi1(4.0) == Approx((*pair.phi2)(4.0)));
  CHECK_FALSE(pair.degenerate);
  CHECK(pair.phi1.slope(4.0) == Approx(std::log(2.0) + 0.5));

  const auto one = PhiFunction::expression("1", [](double) { return 1.0; }, Domain{1.0, 5.0, false});
  CHECK(to_exponential({one, std::nullopt}).degenerate);

  const auto bad = PhiFunction::expression("2-p", [](double p) { return 2 - p; }, Domain{1.0, 5.0, false});
  CHECK_THROWS_AS(to_exponential({bad, std::nullopt}), NonPositiveEnvelope);
}

TEST_CASE("power tail from a blow-up moment envelope") {
  const auto xs = geomspace(1.5, 100, 30);
  const double eps = 0.2;
  const auto r = power_tail_lower(3, 1, 1, xs, eps, 1 / (2 * eps));
  CHECK(r.gamma > 1);
  CHECK(r.gamma < 3);
  CHECK(r.c > 0);
  CHECK(r.gamma_asymptotic >= 3);
  const auto pareto = OracleDistribution::pareto(2);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] < std::numbers::e) {
      CHECK_FALSE(r.envelope.present(i));
      CHECK_FALSE(r.power_envelope.present(i));
      continue;
    }
    CHECK(r.power_envelope.log_values[i] <= r.envelope.log_values[i] + 1e-12);
    CHECK(r.envelope.log_values[i] <= pareto.log_tail(xs[i]) + 1e-12);
  }
}

TEST_CASE("Weibull recovery for m = 2") {
  const auto xs = linspace(2, 10, 33);
  const auto r = weibull_recovery(2, 1, 1, xs);
  CHECK(r.slope_upper == Approx(2).epsilon(0.05));
  CHECK(r.recovered_exponent >= r.slope_lower);
  CHECK(r.recovered_exponent <= r.slope_upper);
  CHECK(r.c1 <= r.c2);
}

TEST_CASE("Weibull recovery brackets the Weibull oracle") {
  // Gamma(1 + p/2)^(1/p) / sqrt(p) stays inside (0.42, 0.9) for p >= 1.
  const auto xs = linspace(2, 10, 33);
  const auto r = weibull_recovery(2, 0.42, 0.9, xs);
  const auto w = OracleDistribution::weibull(2);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!r.upper.present(i)) continue;
    CHECK(r.upper.log_values[i] >= w.log_tail(xs[i]) - 1e-12);
    if (r.lower.present(i)) CHECK(r.lower.log_values[i] <= w.log_tail(xs[i]) + 1e-12);
  }
  CHECK(r.cramer.certified);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!r.lower.present(i)) continue;
    CHECK(r.lower.log_values[i] <= r.upper.log_values[i] + 1e-12);
    const double xm = xs[i] * xs[i];
    CHECK(r.upper.log_values[i] <= -r.c1 * xm + 1e-9);
    if (std::isfinite(r.lower.log_values[i])) CHECK(-r.c2 * xm <= r.lower.log_values[i] + 1e-9);
  }
}

TEST_CASE("lower slope approaches the Weibull exponent far out") {
  const auto xs = geomspace(100, 1000, 40);
  const auto r = weibull_recovery(2, 1, 1, xs, 100, 1000);
  CHECK(r.slope_lower == Approx(2).epsilon(0.05));
  CHECK(r.recovered_exponent == Approx(2).epsilon(0.05));
}

TEST_CASE("Cramer certificate flips at m = 1") {
  const auto xs = linspace(2, 10, 17);
  CHECK_FALSE(weibull_recovery(0.5, 1, 1, xs).cramer.certified);
  CHECK(weibull_recovery(1, 1, 1, xs).cramer.certified);
  CHECK(weibull_recovery(2, 1, 1, xs).cramer.certified);
}

TEST_CASE("Weibull moments grow like p^(1/m)") {
  for (double m : {1.0, 2.0, 4.0}) {
    const auto w = OracleDistribution::weibull(m);
    double lo = kInf, hi = 0;
    for (double p : {1.0, 2.0, 4.0, 8.0, 16.0, 32.0}) {
      const double mom = std::pow(std::tgamma(1 + p / m), 1 / p);
      const double q =
          std::pow(quadrature([&](double x) { return p * std::pow(x, p - 1) * w.tail(x); }, 0, kInf).value, 1 / p);
      CHECK(q == Approx(mom).epsilon(1e-8));
      lo = std::min(lo, mom / std::pow(p, 1 / m));
      hi = std::max(hi, mom / std::pow(p, 1 / m));
    }
    CHECK(hi / lo < 3);
  }
}

TEST_CASE("theta substitution matches the direct tail") {
  const auto w = OracleDistribution::weibull(2);
  const std::vector<double> xs{1, 2, 3, 5};
  const auto env = theta_to_x([&](double t) { return w.log_tail(std::exp(t)); }, xs, Side::kUpper, "oracle");
  CHECK_FALSE(env.present(0));
  CHECK_FALSE(env.present(1));
  for (std::size_t i = 2; i < xs.size(); ++i) CHECK(env.log_values[i] == Approx(w.log_tail(xs[i])).epsilon(1e-14));
}

TEST_CASE("moment CSV parsing") {
  const auto m = moment_csv_text("p,lower,upper\n1,1,2\n2,1.5,3\n3,2,4\n");
  REQUIRE(m.upper);
  CHECK(m.lower(2.0) == Approx(1.5));
  CHECK((*m.upper)(2.5) == Approx(3.5));
  const auto l = moment_csv_text("\xEF\xBB\xBFp,lower\r\n1,1\r\n2,2\r\n");
  CHECK_FALSE(l.upper);
  try {
    moment_csv_text("p,lower\n1,1\n2,abc\n", "m.csv");
    FAIL("expected InputError");
  } catch (const InputError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(moment_csv_text("p,lower,upper\n1,2,1\n2,3,4\n"), InputError);
  CHECK_THROWS_AS(moment_csv_text("x,y\n1,2\n"), InputError);
  CHECK_THROWS_AS(moment_csv_text("p,lower\n2,1\n1,1\n"), InputError);
}
