#include <doctest.h>

#include "ergocycle/equiv.hpp"
#include "ergocycle/errors.hpp"

using namespace ergocycle;
using namespace ergocycle::equiv;

namespace {

PhaseExp ph(Rational p, Rational q = 0) { return PhaseExp(QTheta(std::move(p), std::move(q))); }

}  // namespace

TEST_CASE("equiv0 truth table") {
  auto v = decide_equiv0(ph(5, 3));
  CHECK(v.yes);
  REQUIRE(v.m);
  CHECK(*v.m == 3);
  CHECK(verify_equiv0(ph(5, 3), 3));
  CHECK_FALSE(verify_equiv0(ph(5, 3), 2));
  CHECK_FALSE(decide_equiv0(ph(Rational(1, 2))).yes);
  CHECK_FALSE(decide_equiv0(ph(0, Rational(1, 2))).yes);
  CHECK(decide_equiv0(ph(0)).yes);
  CHECK(decide_equiv0(ph(-4, -7)).yes);
}

TEST_CASE("Bernoulli phase truth table") {
  CHECK(decide_bernoulli_phases(ph(Rational(1, 7)), ph(Rational(2, 5)), ph(Rational(1, 7)), ph(Rational(2, 5)), 3).yes);
  CHECK(decide_bernoulli_phases(ph(Rational(1, 2)), ph(0), ph(0), ph(0), 2).yes);
  CHECK_FALSE(decide_bernoulli_phases(ph(Rational(1, 2)), ph(0), ph(0), ph(0), 3).yes);
  CHECK(decide_bernoulli_phases(ph(Rational(1, 3)), ph(Rational(2, 3)), ph(0), ph(0), 3).yes);
  CHECK_FALSE(decide_bernoulli_phases(ph(0, 1), ph(0), ph(0), ph(0), 4).yes);
}

TEST_CASE("Bernoulli W truth table") {
  CHECK(decide_bernoulli_w({0}, {1}, 2, 2).yes);
  CHECK_FALSE(decide_bernoulli_w({0}, {1}, 3, 2).yes);
  CHECK_FALSE(decide_bernoulli_w({0}, {1}, 2, 3).yes);
  CHECK(decide_bernoulli_w({0}, {1, 2}, 2, 3).yes);
  CHECK_THROWS_AS(decide_bernoulli_w({0}, {0}, 2, 2), InvalidArgument);
  CHECK_THROWS_AS(decide_bernoulli_w({0, 1}, {0}, 2, 2), InvalidArgument);
  CHECK_THROWS_AS(decide_bernoulli_w({5}, {0}, 2, 2), InvalidArgument);
}

TEST_CASE("rotation phase truth table") {
  // eta_1 = theta - 1, eta_2 = theta
  auto v = decide_rotation_phases(ph(-1, 1), ph(0, 1), ph(0), ph(0), 1);
  CHECK(v.yes);
  REQUIRE(v.a);
  CHECK(*v.a == 1);
  // lambda_1 = lambda_2, difference theta
  v = decide_rotation_phases(ph(0, 1), ph(0, 1), ph(0), ph(0), 1);
  CHECK(v.yes);
  CHECK(*v.a == 1);
  CHECK_FALSE(decide_rotation_phases(ph(Rational(1, 3)), ph(Rational(1, 3)), ph(0), ph(0), 1).yes);
  // a non-integer witness: eta_1 = a(theta - 1), eta_2 = a theta, a = 1/2, n = 2 scales to a = 1
  v = decide_rotation_phases(ph(Rational(-1, 2), Rational(1, 2)), ph(0, Rational(1, 2)), ph(0), ph(0), 1);
  CHECK(v.yes);
  CHECK(verify_rotation(ph(Rational(-1, 2), Rational(1, 2)), ph(0, Rational(1, 2)), ph(0), ph(0), 1, *v.a));
  // theta^2 dependence
  CHECK_FALSE(decide_rotation_phases(ph(0), ph(0, 1), ph(0), ph(0), 1).yes);
  CHECK_THROWS_AS(decide_rotation_phases(ph(0), ph(0, 1), ph(0), ph(0), 1, true), UndecidableInModel);
}

TEST_CASE("reflexive and symmetric on a grid") {
  std::vector<PhaseExp> vals;
  for (int p = -2; p <= 2; ++p) {
    for (int q = -2; q <= 2; ++q) vals.push_back(ph(Rational(p, 2), Rational(q, 2)));
  }
  for (const auto& a : vals) {
    for (const auto& b : vals) {
      for (int n = 1; n <= 3; ++n) {
        CHECK(decide_bernoulli_phases(a, b, a, b, n).yes);
        CHECK(decide_rotation_phases(a, b, a, b, n).yes);
        CHECK(decide_bernoulli_phases(a, b, b, a, n).yes == decide_bernoulli_phases(b, a, a, b, n).yes);
        CHECK(decide_rotation_phases(a, b, b, a, n).yes == decide_rotation_phases(b, a, a, b, n).yes);
      }
    }
  }
  CHECK(decide_bernoulli_w({0}, {1, 2}, 2, 3).yes == decide_bernoulli_w({1, 2}, {0}, 2, 3).yes);
}

TEST_CASE("rotation decider restricted to equal phases agrees with equiv0") {
  for (int p1 = -5; p1 <= 5; ++p1) {
    for (int q1 = -5; q1 <= 5; ++q1) {
      const auto r = ph(Rational(p1, 3), Rational(q1, 2));
      for (int n = 1; n <= 4; ++n) {
        const auto rot = decide_rotation_phases(r, r, ph(0), ph(0), n);
        const auto e0 = decide_equiv0(PhaseExp(r.r * Rational(n)));
        CHECK(rot.yes == e0.yes);
        if (rot.yes) {
          CHECK(*rot.a == Rational(*e0.m));
          CHECK(verify_equiv0(PhaseExp(r.r * Rational(n)), *e0.m));
        }
      }
    }
  }
}
