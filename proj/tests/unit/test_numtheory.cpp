#include <doctest.h>

#include "ergocycle/errors.hpp"
#include "ergocycle/numtheory.hpp"

#include <cmath>

using namespace ergocycle;
using namespace ergocycle::numtheory;

namespace {

const double kSqrt2m1 = std::sqrt(2.0) - 1.0;
const double kGolden = (std::sqrt(5.0) - 1.0) / 2.0;

}  // namespace

TEST_CASE("convergents of sqrt(2)-1") {
  const Theta t = Theta::sqrt2_minus_1();
  const auto cs = convergents(t, 4);
  REQUIRE(cs.size() == 4);
  const long k[] = {0, 1, 2, 5}, m[] = {1, 2, 5, 12};
  for (int r = 0; r < 4; ++r) {
    CHECK(cs[r].k == k[r]);
    CHECK(cs[r].m == m[r]);
  }
  CHECK(approximation_error(t, cs[3]) == doctest::Approx(std::abs(kSqrt2m1 - 5.0 / 12.0)).epsilon(1e-12));
  CHECK(approximation_error(t, cs[3]) == doctest::Approx(0.00245).epsilon(1e-2));
}

TEST_CASE("determinant identity and Dirichlet bound") {
  for (const Theta& t : {Theta::sqrt2_minus_1(), Theta::golden(), Theta::parse("cf:3,7,15,1,292")}) {
    const auto cs = convergents(t, 6);
    for (std::size_t r = 1; r < cs.size(); ++r) {
      CHECK(determinant(cs, r) == (r % 2 == 1 ? 1 : -1));
      CHECK(within_dirichlet_bound(t, cs[r]));
    }
  }
}

TEST_CASE("finite expansion runs out of digits") {
  CHECK_THROWS_AS(convergents(Theta::parse("cf:3,7"), 10), PrecisionError);
}

TEST_CASE("golden ratio convergents are Fibonacci ratios") {
  const auto cs = convergents(Theta::golden(), 12);
  for (std::size_t r = 3; r < cs.size(); ++r) {
    CHECK(cs[r].m == cs[r - 1].m + cs[r - 2].m);
    CHECK(cs[r].k.convert_to<double>() / cs[r].m.convert_to<double>() ==
          doctest::Approx(kGolden).epsilon(1.0 / (cs[r].m.convert_to<double>() * cs[r].m.convert_to<double>())));
  }
}

TEST_CASE("signed fractional part") {
  CHECK(frac_rep(0.75) == doctest::Approx(-0.25));
  CHECK(frac_rep(0.5) == doctest::Approx(0.5));
  CHECK(frac_rep(-0.5) == doctest::Approx(0.5));
  const Theta t = Theta::sqrt2_minus_1();
  const QTheta x = signed_fraction(t, 2);
  CHECK(t.to_double(x) == doctest::Approx(2 * kSqrt2m1 - 1).epsilon(1e-12));
  CHECK(t.to_double(x) == doctest::Approx(-0.17157).epsilon(1e-4));
}

TEST_CASE("m_i selection") {
  const auto m = select_mi(Theta::sqrt2_minus_1(), 3);
  REQUIRE(m.size() == 3);
  CHECK(m[0] == 2);
  CHECK(m[1] == 12);
  CHECK(m[2] == 70);
  CHECK(select_mi(Theta::golden(), 1).front() == 2);
  // independent check of the contraction in double precision
  const auto deep = select_mi(Theta::sqrt2_minus_1(), 12);
  double prev = 1.0;
  for (const auto& mi : deep) {
    const double md = mi.convert_to<double>();
    if (md > 1e6) break;  // beyond double resolution
    const double f = std::abs(md * kSqrt2m1 - std::round(md * kSqrt2m1));
    CHECK(f < prev / 3.0);
    prev = f;
  }
}

TEST_CASE("rotation count against the direct floor formula") {
  const Theta t = Theta::sqrt2_minus_1();
  CHECK(rotation_count(t, QTheta(Rational(1, 5)), 2) == 1);
  for (long m = 1; m < 40; ++m) {
    for (int i = 0; i < 10; ++i) {
      const double x = (i + 0.5) / 10.0;
      const long expect = -static_cast<long>(std::floor(x - m * kSqrt2m1));
      CHECK(rotation_count(t, QTheta(Rational(2 * i + 1, 20)), m) == expect);
    }
  }
}

TEST_CASE("circle orbit membership against doubles") {
  const Theta t = Theta::sqrt2_minus_1();
  CircleOrbit orbit(t, QTheta(Rational(3, 7)));
  double x = 3.0 / 7.0;
  for (int j = 0; j < 500; ++j) {
    const double y = x - std::floor(x);
    CHECK(orbit.in_c() == (y < kSqrt2m1));
    orbit.step();
    x -= kSqrt2m1;
  }
}

TEST_CASE("counting lemma level sets") {
  const Theta t = Theta::sqrt2_minus_1();
  auto [a2, b2] = count_measure(t, 2);
  CHECK(t.to_double(a2) == doctest::Approx(0.17157).epsilon(1e-4));
  CHECK(t.to_double(b2) == doctest::Approx(0.82843).epsilon(1e-4));
  auto [a5, b5] = count_measure(t, 5);
  CHECK(t.to_double(a5) == doctest::Approx(0.92893).epsilon(1e-4));
  CHECK(t.to_double(b5) == doctest::Approx(0.07107).epsilon(1e-4));
  for (long m : {1L, 3L, 17L, 99L}) {
    auto exact = count_measure(t, m);
    auto closed = count_measure_closed_form(t, m);
    CHECK(exact.first == closed.first);
    CHECK(exact.second == closed.second);
  }
  CHECK_THROWS_AS(count_measure(Theta::golden(), 3), DomainError);
}
