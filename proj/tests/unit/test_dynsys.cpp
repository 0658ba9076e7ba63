#include <doctest.h>

#include "ergocycle/dynsys.hpp"
#include "ergocycle/errors.hpp"

#include <cmath>

using namespace ergocycle;
using namespace ergocycle::dynsys;

namespace {

Mat scalar(double v) {
  Mat m(1, 1);
  m(0, 0) = v;
  return m;
}

}  // namespace

TEST_CASE("Bernoulli system validation") {
  CHECK_THROWS_AS(BernoulliSystem({Rational(1, 2), Rational(1, 3)}, {0}), InvalidArgument);
  CHECK_THROWS_AS(BernoulliSystem::fair(2, {0, 1}), InvalidArgument);
  CHECK_THROWS_AS(BernoulliSystem::fair(2, {}), InvalidArgument);
  const auto sys = BernoulliSystem({Rational(1, 4), Rational(3, 4)}, {1});
  CHECK(sys.in_c1(1));
  CHECK_FALSE(sys.in_c1(0));
  CHECK(sys.symbol_for(0.1) == 0);
  CHECK(sys.symbol_for(0.9) == 1);
}

TEST_CASE("cylinder measures and mixing") {
  const auto sys = BernoulliSystem({Rational(1, 3), Rational(2, 3)}, {0});
  const auto a = Cylinder::word(0, {0, 1});
  CHECK(measure(sys, a) == Rational(2, 9));
  CHECK(measure(sys, a.shifted(5)) == Rational(2, 9));
  // separated windows are independent
  CHECK(mixing_gap(sys, a, a, 2) == 0);
  CHECK(mixing_gap(sys, a, a, 7) == 0);
  // overlapping windows are not
  CHECK(mixing_gap(sys, a, a, 0) == Rational(2, 9) - Rational(4, 81));
  CHECK(mixing_gap(sys, a, a, 1) == Rational(4, 81));
  CHECK_FALSE(a.intersect(Cylinder::word(0, {1})).has_value());
}

TEST_CASE("seeded Bernoulli points are reproducible and shift consistently") {
  const auto sys = BernoulliSystem::fair(3, {0});
  BernoulliPoint x(sys, 42), y(sys, 42);
  for (long i = -20; i < 20; ++i) {
    CHECK(x.coord(i) == y.coord(i));
    CHECK(x.shifted(3).coord(i) == x.coord(i + 3));
  }
  BernoulliPoint partial({1, 0, 1}, 0);
  CHECK(partial.coord(2) == 1);
  CHECK_THROWS_AS(partial.coord(3), DomainError);
}

TEST_CASE("empirical symbol frequencies") {
  const auto sys = BernoulliSystem({Rational(1, 5), Rational(4, 5)}, {0});
  BernoulliPoint x(sys, 9);
  int zeros = 0;
  for (long i = 0; i < 20000; ++i) zeros += x.coord(i) == 0;
  CHECK(zeros / 20000.0 == doctest::Approx(0.2).epsilon(0.05));
}

TEST_CASE("cylinder functions: shift, extend, integrate") {
  const auto sys = BernoulliSystem({Rational(1, 4), Rational(3, 4)}, {0});
  const auto f = MatCylinderFunction::indicator(2, 0, {0}, scalar(1.0), scalar(0.0));
  CHECK(std::abs(integrate(sys, f)(0, 0) - 0.25) < 1e-15);
  const auto g = shift_apply(f, 3);
  CHECK(std::abs(integrate(sys, g)(0, 0) - 0.25) < 1e-15);
  BernoulliPoint x(sys, 5);
  for (long j = 0; j < 10; ++j) {
    CHECK(g(x.shifted(j))(0, 0) == f(x.shifted(j + 3))(0, 0));
    CHECK(f.at_offset(x, j)(0, 0) == f(x.shifted(j))(0, 0));
  }
  const auto e = f.extended(-2, 6);
  for (long j = 0; j < 10; ++j) CHECK(e(x.shifted(j))(0, 0) == f(x.shifted(j))(0, 0));
  CHECK_THROWS_AS(f.extended(0, 40), BudgetExceeded);
}

TEST_CASE("step functions on the circle") {
  const Theta t = Theta::sqrt2_minus_1();
  const auto f = MatStepFunction::indicator(t, QTheta(), QTheta::theta(), scalar(1.0), scalar(0.0));
  CHECK(std::abs(integrate(CircleSystem{t}, f)(0, 0).real() - (std::sqrt(2.0) - 1)) < 1e-15);
  const auto g = shift_apply(f, 2);
  CHECK(std::abs(integrate(CircleSystem{t}, g)(0, 0).real() - (std::sqrt(2.0) - 1)) < 1e-14);
  // g(x) = f(x - 2 theta)
  for (int i = 0; i < 50; ++i) {
    const QTheta x(Rational(2 * i + 1, 100));
    CHECK(g(x)(0, 0) == f(x - QTheta(Rational(0), Rational(2)))(0, 0));
  }
  // wrapping arc [0.9, 1.2) covers [0, 0.2) and [0.9, 1)
  const auto w = MatStepFunction::indicator(t, QTheta(Rational(9, 10)), QTheta(Rational(6, 5)), scalar(1.0),
                                            scalar(0.0));
  CHECK(w(QTheta(Rational(1, 10)))(0, 0) == 1.0);
  CHECK(w(QTheta(Rational(1, 2)))(0, 0) == 0.0);
  CHECK(std::abs(integrate(CircleSystem{t}, w)(0, 0).real() - 0.3) < 1e-15);
  const auto sum = combine(f, w, [](const Mat& a, const Mat& b) -> Mat { return a + b; });
  CHECK(std::abs(integrate(CircleSystem{t}, sum)(0, 0).real() - (std::sqrt(2.0) - 1 + 0.3)) < 1e-14);
}

TEST_CASE("count_cd agrees with in_c") {
  const auto sys = BernoulliSystem::fair(2, {1});
  BernoulliPoint x(sys, 17);
  long c = 0;
  for (long k = 1; k < 50; ++k) {
    c += in_c(sys, x, k - 1);
    auto [cc, dd] = count_cd(sys, x, k);
    CHECK(cc == c);
    CHECK(dd == k - c);
  }
  const System circ = CircleSystem{Theta::sqrt2_minus_1()};
  const Point p = QTheta(Rational(1, 3));
  auto [cc, dd] = count_cd(circ, p, 200);
  CHECK(cc + dd == 200);
  CHECK(std::abs(cc / 200.0 - (std::sqrt(2.0) - 1)) < 0.02);
}

TEST_CASE("special cylinder realizes every residue pair") {
  const auto sys = BernoulliSystem::fair(2, {0});
  for (int n = 2; n <= 5; ++n) {
    const auto s = special_cylinder_s(n, sys);
    CHECK(s.pattern.size() == static_cast<std::size_t>(n * n));
    CHECK(s.exhaustive);
    CHECK(s.k_needed <= n * n);
    // the pattern word itself has measure 2^{-n^2}
    CHECK(measure(sys, s.cylinder) == Rational(BigInt(1), BigInt(1) << (n * n)));
  }
}
