#include <doctest.h>

#include "ergocycle/cocycle.hpp"
#include "ergocycle/errors.hpp"

#include <cmath>
#include <numbers>

using namespace ergocycle;
using namespace ergocycle::cocycle;

namespace {

cplx phase(double turns) { return std::polar(1.0, 2 * std::numbers::pi * turns); }

std::vector<Cocycle> sample_cocycles() {
  return {Cocycle::make(dynsys::CircleSystem{Theta::sqrt2_minus_1()}, 2, phase(0.1), phase(0.3)),
          Cocycle::make(dynsys::BernoulliSystem::fair(2, {0}), 3, phase(0.25), phase(-0.2)),
          Cocycle::make(dynsys::BernoulliSystem({Rational(1, 3), Rational(1, 6), Rational(1, 2)}, {0, 2}), 2)};
}

}  // namespace

TEST_CASE("one-step value") {
  const auto co = Cocycle::make(dynsys::CircleSystem{Theta::sqrt2_minus_1()}, 2, phase(0.5), phase(0.0));
  CHECK(mat_distance(co.w(QTheta(Rational(1, 10))), -co.pair.u.adjoint()) < 1e-12);
  CHECK(mat_distance(co.w(QTheta(Rational(1, 2))), co.pair.v.adjoint()) < 1e-12);
  CHECK_THROWS_AS(Cocycle::make(dynsys::CircleSystem{Theta::golden()}, 2, cplx(2.0, 0.0)), InvalidArgument);
}

TEST_CASE("iterates against the naive product") {
  for (const auto& co : sample_cocycles()) {
    const auto pts = sample_points(co.system, 3, 5);
    for (const auto& x : pts) {
      Mat prod = Mat::Identity(co.n(), co.n());
      for (long k = 0; k <= 12; ++k) {
        CHECK(mat_distance(w_iterate(co, x, k), prod) < 1e-10);
        prod = prod * co.w(shift_point(co.system, x, k));
      }
      Mat inv = Mat::Identity(co.n(), co.n());
      for (long m = 1; m <= 12; ++m) {
        inv = inv * co.w(shift_point(co.system, x, -m)).adjoint();
        CHECK(mat_distance(w_iterate(co, x, -m), inv) < 1e-10);
      }
    }
  }
}

TEST_CASE("cocycle identity W_{j+k}(x) = W_j(x) W_k(sigma^-j x)") {
  Rng rng(99);
  for (const auto& co : sample_cocycles()) {
    const auto pts = sample_points(co.system, 10, 8);
    for (const auto& x : pts) {
      for (int t = 0; t < 10; ++t) {
        const long j = static_cast<long>(uniform_index(rng, 41)) - 20;
        const long k = static_cast<long>(uniform_index(rng, 41)) - 20;
        const Mat lhs = w_iterate(co, x, j + k);
        const Mat rhs = w_iterate(co, x, j) * w_iterate(co, shift_point(co.system, x, j), k);
        CHECK(mat_distance(lhs, rhs) < 1e-10);
      }
    }
  }
}

TEST_CASE("word counts match count_cd") {
  for (const auto& co : sample_cocycles()) {
    for (const auto& x : sample_points(co.system, 4, 2)) {
      for (long k = 1; k < 30; k += 7) {
        const auto wi = w_word(co, x, k);
        auto [c, d] = dynsys::count_cd(co.system, x, k);
        CHECK(wi.c == c);
        CHECK(wi.d == d);
        CHECK(((wi.word.a + c) % co.n()) == 0);
        CHECK(((wi.word.b + d) % co.n()) == 0);
      }
    }
  }
}

TEST_CASE("beta preserves the normalized trace and matches pointwise conjugation") {
  for (const auto& co : sample_cocycles()) {
    const int n = co.n();
    Mat e = Mat::Zero(n, n);
    e(0, n - 1) = 1.0;
    e(0, 0) = 0.5;
    dynsys::Observable f = [&]() -> dynsys::Observable {
      if (auto* b = std::get_if<dynsys::BernoulliSystem>(&co.system)) {
        return dynsys::MatCylinderFunction::indicator(b->alphabet_size(), 1, {0}, e, e.adjoint());
      }
      return dynsys::MatStepFunction::indicator(std::get<dynsys::CircleSystem>(co.system).theta,
                                                QTheta(Rational(1, 5)), QTheta(Rational(7, 10)), e, e.adjoint());
    }();
    const auto bf = beta_apply(co, f);
    CHECK(std::abs(dynsys::integrate(co.system, bf).trace() - dynsys::integrate(co.system, f).trace()) < 1e-10);
    for (const auto& x : sample_points(co.system, 5, 3)) {
      const Mat w = co.w(x);
      const Mat expect = w * dynsys::evaluate(f, shift_point(co.system, x, 1)) * w.adjoint();
      CHECK(mat_distance(dynsys::evaluate(bf, x), expect) < 1e-10);
    }
  }
}

TEST_CASE("Birkhoff: short runs separate ergodic and degenerate cocycles") {
  const dynsys::System sys = dynsys::CircleSystem{Theta::sqrt2_minus_1()};
  Mat e11 = Mat::Zero(2, 2);
  e11(0, 0) = 1.0;
  const auto f = dynsys::MatStepFunction::constant(Theta::sqrt2_minus_1(), e11);
  const auto pts = sample_points(sys, 4, 1);
  BirkhoffOptions opts;
  opts.tol = 0.05;
  const auto good = birkhoff_test(Cocycle::make(sys, 2), f, 20000, pts, opts);
  CHECK(good.ergodic_consistent);
  CHECK(std::abs(good.tau - cplx(0.5, 0.0)) < 1e-14);
  const auto bad = birkhoff_test(Cocycle::identity(sys, 2), f, 20000, pts, opts);
  CHECK_FALSE(bad.ergodic_consistent);
  CHECK(bad.deviation == doctest::Approx(0.5));
  // fixed seeds give identical numbers
  const auto again = birkhoff_test(Cocycle::make(sys, 2), f, 20000, pts, opts);
  CHECK(again.deviation == good.deviation);
}

TEST_CASE("periodic trivialization") {
  Rng rng(4);
  for (int k = 1; k <= 6; ++k) {
    std::vector<Mat> w;
    for (int i = 0; i < k; ++i) w.push_back(random_unitary(3, rng));
    const auto tr = trivialize_periodic(w);
    CHECK(tr.ok);
    CHECK(tr.max_error < 1e-10);
    for (double ph : tr.lambda_phase) {
      CHECK(ph >= 0.0);
      CHECK(ph < 2 * std::numbers::pi / k + 1e-12);
    }
    // independent check: zeta_n W_n zeta_{n-1}^* = Z along the orbit
    for (int n = 1; n < k; ++n) {
      CHECK(mat_distance(tr.zeta[n] * w[n] * tr.zeta[n - 1].adjoint(), tr.z) < 1e-10);
    }
    CHECK(mat_distance(tr.zeta[0] * w[0] * tr.zeta[k - 1].adjoint(), tr.z) < 1e-10);
  }
}

TEST_CASE("aperiodic trivialization") {
  Rng rng(5);
  std::vector<Mat> w;
  for (int i = 0; i < 7; ++i) w.push_back(random_unitary(2, rng));
  const auto tr = trivialize_aperiodic(w, -3);
  CHECK(tr.ok);
  CHECK(mat_distance(tr.at(0), Mat::Identity(2, 2)) < 1e-12);
  for (long n = -2; n <= 3; ++n) {
    CHECK(mat_distance(tr.at(n) * w[static_cast<std::size_t>(n + 3)] * tr.at(n - 1).adjoint(), Mat::Identity(2, 2)) <
          1e-10);
  }
  CHECK_THROWS_AS(trivialize_aperiodic(w, 1), InvalidArgument);
}
