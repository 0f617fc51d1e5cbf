#include <cmath>
#include <numbers>

#include "doctest.h"
#include "tailinv/conjugate.hpp"
#include "tailinv/errors.hpp"
#include "tailinv/saddle.hpp"

using namespace tailinv;
using doctest::Approx;

namespace {
const Domain kHalfLine{0.0};
}

TEST_CASE("conjugate of a quadratic is a quadratic") {
  const auto f = PhiFunction::quadratic(1.0, kHalfLine);
  for (double x : {0.5, 1.0, 3.0, 10.0}) {
    const auto p = conjugate_at(f, x);
    CHECK(p.value == Approx(x * x / 2).epsilon(1e-9));
    CHECK(p.argmax == Approx(x).epsilon(1e-6));
  }
}

TEST_CASE("conjugate of a linear function is unbounded past the slope") {
  const auto f = PhiFunction::linear(2.0, kHalfLine);
  CHECK_THROWS_AS(conjugate_at(f, 3.0), UnboundedObjective);
  ConjugateOptions o;
  o.allow_infinite = true;
  CHECK_FALSE(conjugate_at(f, 3.0, o).finite());
  CHECK(conjugate_at(f, 1.0).value == Approx(0.0));
}

TEST_CASE("grid conjugate uses knot maxima") {
  const auto f = PhiFunction::grid({0, 1, 2, 3}, {0, 0.5, 2, 4.5}, true);
  CHECK(conjugate_at(f, 1.0).value == Approx(0.5));
  CHECK_THROWS_AS(conjugate_at(f, 3.0), UnboundedObjective);
}

TEST_CASE("Fenchel-Young inequality holds on a sweep") {
  const auto f = PhiFunction::power_log(1.5, 1.0, kHalfLine);
  for (double l : {0.5, 2.0, 7.0}) {
    for (double x : {0.3, 1.0, 4.0}) {
      CHECK(f(l) + conjugate_at(f, x).value >= l * x - 1e-9);
    }
  }
}

TEST_CASE("biconjugate recovers a convex function") {
  const auto f = PhiFunction::quadratic(2.0, kHalfLine);
  const std::vector<double> ls{0.5, 1.0, 2.0};
  const auto bc = biconjugate(f, ls);
  for (std::size_t i = 0; i < ls.size(); ++i) CHECK(bc.values[i] == Approx(f(ls[i])).epsilon(1e-6));
}

TEST_CASE("saddle point equals the derivative for smooth convex input") {
  const auto f = PhiFunction::quadratic(1.0, kHalfLine);
  CHECK(saddle_point(f, 3.0) == Approx(3.0).epsilon(1e-6));
  const auto kink = PhiFunction::grid({0, 1, 2}, {0, 1, 3});
  CHECK_THROWS_AS(saddle_point(kink, 1.0), NonUniqueArgmax);
}

TEST_CASE("damped and contraction integrals of a quadratic exponent") {
  const auto z = PhiFunction::quadratic(1.0, kHalfLine);
  const double eps = 0.2;
  CHECK(damped_integral(z, eps).value == Approx(0.5 * std::sqrt(std::numbers::pi / 0.1)).epsilon(1e-9));
  const double c = 1 - (1 - eps) * (1 - eps);
  CHECK(contraction_integral(z, eps).value == Approx(0.5 * std::sqrt(2 * std::numbers::pi / c)).epsilon(1e-9));
}

TEST_CASE("damped integral diverges for a logarithmic exponent with small eps") {
  const auto z = PhiFunction::expression("3ln(1+x)", [](double x) { return 3 * std::log1p(x); }, kHalfLine);
  CHECK_THROWS_AS(damped_integral(z, 0.2), Divergent);
  CHECK(damped_integral(z, 0.5).value == Approx(2.0).epsilon(1e-6));
}

TEST_CASE("negative exponent is rejected") {
  const auto z = PhiFunction::expression("x-1", [](double x) { return x - 1; }, kHalfLine);
  CHECK_THROWS_AS(damped_integral(z, 0.5), NegativeInput);
}

TEST_CASE("compound bound dominates the Laplace integral") {
  const auto z = PhiFunction::quadratic(1.0, kHalfLine);
  const auto cb = compound_upper(z, 3.0, 0.2);
  const auto li = laplace_integral(z, 3.0);
  CHECK(li.converged);
  CHECK(std::exp(li.log_value) == Approx(225.34).epsilon(1e-3));
  CHECK(cb.bound() == Approx(2363.5).epsilon(1e-3));
  CHECK(cb.bound_k_sharp() == Approx(777.1).epsilon(1e-3));
  CHECK(cb.log_bound >= li.log_value);
  const auto opt = optimized_compound_upper(z, 3.0);
  CHECK(opt.log_bound <= cb.log_bound + 1e-12);
  CHECK(opt.log_bound >= li.log_value);
}

TEST_CASE("linear exponent: unbounded conjugate and divergent Laplace integral") {
  const auto z = PhiFunction::linear(1.0, kHalfLine);
  CHECK(laplace_integral(z, 1.0).divergent);
  CHECK(laplace_integral(z, 2.0).divergent);
}

TEST_CASE("Cramer check") {
  const auto lin = PhiFunction::linear(1.0, kHalfLine);
  const auto c = cramer_check(lin);
  CHECK(c.certified);
  CHECK(c.mu == Approx(1.0));
  const auto lg = PhiFunction::expression("3ln(1+x)", [](double x) { return 3 * std::log1p(x); }, kHalfLine);
  CHECK_FALSE(cramer_check(lg).certified);
}
