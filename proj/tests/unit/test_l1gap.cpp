#include <doctest.h>

#include "ergocycle/errors.hpp"
#include "ergocycle/l1gap.hpp"

#include <cmath>

using namespace ergocycle;
using namespace ergocycle::l1gap;
using dynsys::MatStepFunction;

namespace {

Mat scalar(cplx v) {
  Mat m(1, 1);
  m(0, 0) = v;
  return m;
}

const Theta& theta() {
  static const Theta t = Theta::sqrt2_minus_1();
  return t;
}

}  // namespace

TEST_CASE("l1 norms") {
  L1Element delta0;
  delta0.coeffs.emplace(0, MatStepFunction::constant(theta(), scalar(1.0)));
  CHECK(l1_norm(delta0) == doctest::Approx(1.0));
  L1Element harm;
  for (long k = 1; k <= 3; ++k) harm.coeffs.emplace(k, MatStepFunction::constant(theta(), scalar(1.0 / k)));
  CHECK(l1_norm(harm) == doctest::Approx(11.0 / 6.0));
  L1Element ind;
  ind.coeffs.emplace(0, MatStepFunction::indicator(theta(), QTheta(), QTheta::theta(), scalar(1.0), scalar(0.0)));
  CHECK(l1_norm(ind) == doctest::Approx(1.0));
}

TEST_CASE("representation on simple elements") {
  const dynsys::System sys = dynsys::CircleSystem{theta()};
  const auto co = cocycle::Cocycle::make(sys, 2);
  Eigen::VectorXcd eta(2);
  eta << 0.6, cplx(0.0, 0.8);
  const auto xi = MatStepFunction::indicator(theta(), QTheta(Rational(1, 10)), QTheta(Rational(1, 2)), scalar(1.0),
                                             scalar(0.0));
  const RepVector phi = tensor_vector(xi, eta);

  L1Element delta0;
  delta0.coeffs.emplace(0, MatStepFunction::constant(theta(), scalar(1.0)));
  CHECK(l2_distance(sys, apply_rep(delta0, co, phi), phi) < 1e-14);

  L1Element delta1;
  delta1.coeffs.emplace(1, MatStepFunction::constant(theta(), scalar(1.0)));
  const auto trivial = cocycle::Cocycle::identity(sys, 2);
  const RepVector moved = apply_rep(delta1, trivial, phi);
  const RepVector expect = tensor_vector(dynsys::shift_apply(xi, 1), eta);
  CHECK(l2_distance(sys, moved, expect) < 1e-14);

  L1Element mult;
  mult.coeffs.emplace(0, xi);
  CHECK(l2_distance(sys, apply_rep(mult, co, constant_vector(sys, eta)), phi) < 1e-14);
  CHECK(l2_norm(sys, phi) == doctest::Approx(std::sqrt(0.4)).epsilon(1e-12));
}

TEST_CASE("linearity and contractivity") {
  const dynsys::System sys = dynsys::CircleSystem{theta()};
  const auto co = cocycle::Cocycle::make(sys, 2, std::polar(1.0, 0.3), std::polar(1.0, -1.1));
  Rng rng(6);
  Eigen::VectorXcd eta = Eigen::VectorXcd::Zero(2);
  eta(1) = 1.0;
  for (int trial = 0; trial < 5; ++trial) {
    L1Element s;
    for (long k = -2; k <= 2; ++k) {
      const QTheta a(Rational(static_cast<long>(uniform_index(rng, 50)), 100));
      s.coeffs.emplace(k, MatStepFunction::indicator(theta(), a, a + QTheta(Rational(1, 4)),
                                                     scalar(cplx(normal01(rng), normal01(rng))), scalar(0.5)));
    }
    const auto xi = MatStepFunction::indicator(theta(), QTheta(Rational(1, 3)), QTheta(Rational(9, 10)),
                                               scalar(2.0), scalar(-1.0));
    const RepVector phi = tensor_vector(xi, eta);
    const RepVector out = apply_rep(s, co, phi);
    CHECK(l2_norm(sys, out) <= l1_norm(s) * l2_norm(sys, phi) + 1e-12);
    L1Element twice;
    for (const auto& [k, a] : s.coeffs) {
      twice.coeffs.emplace(k, dynsys::combine(std::get<MatStepFunction>(a), std::get<MatStepFunction>(a),
                                              [](const Mat& x, const Mat& y) -> Mat { return x + y; }));
    }
    const RepVector doubled = apply_rep(twice, co, phi);
    const RepVector sum = dynsys::combine(std::get<MatStepFunction>(out), std::get<MatStepFunction>(out),
                                          [](const Mat& x, const Mat& y) -> Mat { return x + y; });
    CHECK(l2_distance(sys, doubled, sum) < 1e-12);
  }
}

TEST_CASE("lower bound on A = X") {
  const dynsys::System sys = dynsys::CircleSystem{theta()};
  const auto co = cocycle::Cocycle::make(sys, 2);
  L1Element delta0;
  delta0.coeffs.emplace(0, MatStepFunction::constant(theta(), scalar(1.0)));
  Eigen::VectorXcd eta = Eigen::VectorXcd::Zero(2);
  eta(0) = 1.0;
  const auto rep = lower_bound_check(delta0, co, MatStepFunction::constant(theta(), scalar(1.0)), eta);
  CHECK(rep.applicable);
  CHECK(rep.chain_holds);
  CHECK(rep.implied_bound == doctest::Approx(1.0));
  CHECK(rep.l1 == doctest::Approx(1.0));
  // a non-representing element is reported as not applicable
  L1Element half;
  half.coeffs.emplace(0, MatStepFunction::constant(theta(), scalar(0.5)));
  CHECK_FALSE(lower_bound_check(half, co, MatStepFunction::constant(theta(), scalar(1.0)), eta).applicable);
}

TEST_CASE("interval instances") {
  const auto co = cocycle::Cocycle::make(dynsys::CircleSystem{theta()}, 2);
  double prev = 0.0;
  for (const Rational eps : {Rational(1, 4), Rational(1, 16), Rational(1, 64)}) {
    const auto demo = interval_demo(co, eps, 5, 12);
    CHECK(demo.all_hold);
    CHECK(demo.applicable == 5);
    CHECK(demo.min_l1 >= demo.bound - 1e-9);
    CHECK(demo.bound > prev);
    prev = demo.bound;
  }
}

TEST_CASE("atomic obstruction equals harmonic numbers") {
  CHECK(atomic_obstruction(1).bound == 1);
  CHECK(atomic_obstruction(3).bound == Rational(11, 6));
  const auto r50 = atomic_obstruction(50);
  Rational h = 0;
  for (long k = 1; k <= 50; ++k) h += Rational(1, k);
  CHECK(r50.bound == h);
  CHECK(r50.bound_double == doctest::Approx(4.499205338329425).epsilon(1e-14));
  CHECK(r50.target_matched);
  CHECK(r50.achieved == r50.bound);
  CHECK_THROWS_AS(atomic_obstruction(0), InvalidArgument);
}
