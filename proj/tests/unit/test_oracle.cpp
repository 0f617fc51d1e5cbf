#include <cmath>

#include "doctest.h"
#include "tailinv/conjugate.hpp"
#include "tailinv/oracle.hpp"
#include "tailinv/quadrature.hpp"

using namespace tailinv;
using doctest::Approx;

TEST_CASE("quadrature reference integrals") {
  auto r1 = quadrature([](double x) { return std::exp(-x); }, 0, kInf);
  CHECK(r1.value == Approx(1.0).epsilon(1e-12));
  CHECK(r1.converged);
  auto r2 = quadrature([](double x) { return std::exp(-x * x); }, 0, kInf);
  CHECK(r2.value == Approx(0.8862269254527580).epsilon(1e-12));
  auto r3 = quadrature([](double x) { return std::exp(3 * x - x * x / 2); }, 0, kInf);
  CHECK(r3.value == Approx(225.34).epsilon(1e-4));
}

TEST_CASE("tails agree with density quadrature") {
  for (const auto& o : oracle_suite()) {
    CAPTURE(o.name());
    for (double x : {0.5, 1.0, 2.0, 4.0}) {
      CAPTURE(x);
      const double q = quadrature([&](double t) { return o.density(t); }, x, kInf).value;
      CHECK(std::abs(q - o.tail(x)) <= 1e-9);
    }
  }
}

TEST_CASE("tails are nonincreasing and within [0, 1]") {
  for (const auto& o : oracle_suite()) {
    double prev = 1;
    for (double x = 0; x <= 12; x += 0.25) {
      const double t = o.tail(x);
      CHECK(t >= 0);
      CHECK(t <= prev);
      prev = t;
    }
  }
}

TEST_CASE("Gaussian tail deep in the asymptotic range") {
  const auto g = OracleDistribution::gaussian();
  CHECK(g.log_tail(24.999) == Approx(g.log_tail(25.001)).epsilon(1e-3));
  CHECK(g.tail(7) == Approx(1.279812543885835e-12).epsilon(1e-12));
  CHECK(std::isfinite(g.log_tail(100)));
}

TEST_CASE("MGF exponents match quadrature") {
  for (const auto& o : oracle_suite()) {
    if (!o.cramer()) continue;
    CAPTURE(o.name());
    const auto& phi = o.mgf_exponent();
    CHECK(phi(0.0) == Approx(0.0));
    for (double l : {0.25, 0.5, 0.9, 2.0, 4.0}) {
      if (!phi.domain().contains(l)) continue;
      CAPTURE(l);
      const double q =
          quadrature([&](double x) { return std::exp(l * x + std::log(o.density(x))); }, o.support_lo(), kInf).value;
      CHECK(q == Approx(std::exp(phi(l))).epsilon(1e-7));
      const double h = 1e-5;
      const double fd = (phi(l + h) - phi(l - h)) / (2 * h);
      CHECK(phi.slope(l) == Approx(fd).epsilon(1e-5));
    }
  }
}

TEST_CASE("Chernoff bound holds for every suite member") {
  for (const auto& o : oracle_suite()) {
    if (!o.cramer()) continue;
    ConjugateOptions co;
    co.allow_infinite = true;
    for (double x : {1.0, 2.0, 4.0, 8.0}) {
      CHECK(-conjugate_at(o.mgf_exponent(), x, co).value >= o.log_tail(x) - 1e-12);
    }
  }
}

TEST_CASE("sampler is reproducible and seed-dependent") {
  const auto g = OracleDistribution::gaussian();
  CHECK(g.sample(42, 100) == g.sample(42, 100));
  CHECK(g.sample(42, 10) != g.sample(43, 10));
  CHECK(g.sample_at(42, 57) == g.sample(42, 100)[57]);
  const double u = uniform_at(1, 2);
  CHECK(u > 0);
  CHECK(u < 1);
}

TEST_CASE("empirical tail") {
  const std::vector<double> five(10, 5.0);
  const std::vector<double> xs{4, 6};
  const auto t = empirical_tail(five, xs);
  CHECK(t.fraction[0] == 1.0);
  CHECK(t.fraction[1] == 0.0);

  const auto g = OracleDistribution::gaussian();
  const auto s = g.sample(42, 1000000);
  const std::vector<double> two{2.0};
  const auto e = empirical_tail(s, two);
  CHECK(std::abs(e.fraction[0] - 0.02275) <= 3 * e.halfwidth[0]);
}

TEST_CASE("oracle lookup by name") {
  CHECK(oracle_by_name("weibull:2")->name() == "weibull:2");
  CHECK(oracle_by_name("gaussian")->cramer());
  CHECK_FALSE(oracle_by_name("pareto:2")->cramer());
  CHECK_FALSE(oracle_by_name("weibull:0.5")->cramer());
  CHECK_FALSE(oracle_by_name("nope").has_value());
  CHECK_FALSE(oracle_by_name("weibull:x").has_value());
}
