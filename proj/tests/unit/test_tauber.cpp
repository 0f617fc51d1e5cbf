#include <cmath>

#include "doctest.h"
#include "tailinv/errors.hpp"
#include "tailinv/oracle.hpp"
#include "tailinv/tauber.hpp"

using namespace tailinv;
using doctest::Approx;

namespace {

PhiFunction quadratic() {
  return PhiFunction::expression("l^2/2", [](double l) { return 0.5 * l * l; }, Domain{0.0});
}

}  // namespace

TEST_CASE("standard normal limits are both 1") {
  const auto rep = tauberian_check(quadratic(), OracleDistribution::gaussian());
  CHECK(rep.k_mgf == Approx(1).epsilon(1e-8));
  CHECK(rep.k_tail == Approx(1).epsilon(0.02));
  CHECK(rep.mgf.converged);
  CHECK(rep.tail.converged);
  CHECK(rep.regularity_ok);
  CHECK(rep.consistent);
}

TEST_CASE("twice a normal: K_mgf = 2, K_tail = 1/2") {
  const auto rep = tauberian_check(quadratic(), OracleDistribution::gaussian(2));
  CHECK(rep.k_mgf == Approx(2).epsilon(1e-8));
  CHECK(rep.k_tail == Approx(0.5).epsilon(0.02));
  CHECK(rep.product == Approx(1).epsilon(0.02));
  CHECK(rep.consistent);
}

TEST_CASE("scale equivariance") {
  const auto base = tauberian_check(quadratic(), OracleDistribution::gaussian());
  for (double a : {0.5, 2.0}) {
    const auto rep = tauberian_check(quadratic(), OracleDistribution::gaussian(a));
    CHECK(rep.k_mgf == Approx(a * base.k_mgf).epsilon(1e-6));
    CHECK(rep.k_tail == Approx(base.k_tail / a).epsilon(0.01));
  }
}

TEST_CASE("inversion by bisection") {
  const auto q = quadratic();
  CHECK(invert_increasing(q, 8, 0, kInf) == Approx(4).epsilon(1e-10));
  CHECK_THROWS_AS(invert_increasing([](double) { return 1.0; }, 2, 0, kInf), NonInvertible);
  CHECK_THROWS_AS(invert_increasing(q, -1, 0, kInf), NonInvertible);
}

TEST_CASE("extrapolation removes the correction terms exactly") {
  const std::vector<double> s{2, 4, 8};
  std::vector<double> r, slopes;
  for (double x : s) {
    slopes.push_back(x);
    const double w = 1 / (x * x);
    r.push_back(0.7 + 0.3 * std::log(x) * w - 0.2 * w);
  }
  CHECK(extrapolate_limit(s, r, slopes) == Approx(0.7).epsilon(1e-12));
}

TEST_CASE("strict mode raises NotConverged on a short drifting ladder") {
  TauberOptions opts;
  opts.x_ladder = {1.0, 1.1, 1.2, 1.3};
  opts.drift_tolerance = 1e-3;
  opts.strict = true;
  CHECK_THROWS_AS(tauberian_check(quadratic(), OracleDistribution::gaussian(), opts), NotConverged);
}

TEST_CASE("Monte Carlo tail side with 10^7 seeded samples") {
  const auto rep = tauberian_check_monte_carlo(quadratic(), OracleDistribution::gaussian());
  CHECK(rep.tail_mode == "monte-carlo");
  // Seed 42 draws no value above 5 (about 2.9 expected); that point is reported as dropped.
  const bool top_used = rep.tail.points.back() == 5;
  const bool top_dropped = !rep.tail.dropped.empty() && rep.tail.dropped.back() == 5;
  CHECK((top_used || top_dropped));
  CHECK(rep.k_tail == Approx(1).epsilon(0.1));
}
