#include <doctest.h>

#include "ergocycle/clockshift.hpp"
#include "ergocycle/errors.hpp"

#include <cmath>
#include <numbers>

using namespace ergocycle;
using namespace ergocycle::clockshift;

TEST_CASE("clock and shift commutation") {
  for (int n = 1; n <= 8; ++n) {
    const auto p = make_clock_pair(n);
    const cplx w = std::polar(1.0, 2 * std::numbers::pi / n);
    CHECK(std::abs(p.omega - w) < 1e-14);
    CHECK(mat_distance(p.v * p.u * p.v.adjoint(), w * p.u) < 1e-12);
    CHECK(is_unitary(p.u));
    CHECK(is_unitary(p.v));
    CHECK(commutant_dim({p.u, p.v}, n) == 1);
    CHECK(commutant_dim({p.u}, n) == static_cast<std::size_t>(n));
  }
}

TEST_CASE("word reduction matches matrix products") {
  const auto p = make_clock_pair(3);
  for (const std::string w : {"uv", "vu", "uuvVvU", "VUvu", "vvvuuu", ""}) {
    const HeisenbergWord h = reduce_word(w);
    Mat direct = Mat::Identity(3, 3);
    for (char c : w) {
      if (c == 'u') direct = direct * p.u;
      if (c == 'v') direct = direct * p.v;
      if (c == 'U') direct = direct * p.u.adjoint();
      if (c == 'V') direct = direct * p.v.adjoint();
    }
    CHECK(mat_distance(h.matrix(p), direct) < 1e-12);
  }
  const HeisenbergWord a{2, 1, 3}, b{-1, 4, 2};
  const auto e = (a * a.inverse()).reduced(5);
  CHECK(e.s == 0);
  CHECK(e.a == 0);
  CHECK(e.b == 0);
  CHECK(mat_distance((a * b).matrix(make_clock_pair(5)), a.matrix(make_clock_pair(5)) * b.matrix(make_clock_pair(5))) <
        1e-12);
}

TEST_CASE("phi relations") {
  for (int n = 2; n <= 5; ++n) {
    const auto rep = phi_relations_check(make_clock_pair(n), 20, 7 + n, 1e-10);
    CHECK(rep.ok);
    CHECK(rep.max_error < 1e-10);
    CHECK(rep.checks.size() >= 6);
  }
  CHECK(phi_commutation_exponent(1, 3) == 1);
  CHECK(phi_commutation_exponent(1, 2) == 0);
}

TEST_CASE("phi_1 phi_3 = w phi_3 phi_1 by direct evaluation") {
  Rng rng(3);
  const auto p = make_clock_pair(4);
  const Mat z = random_matrix(4, rng);
  const Mat lhs = phi_apply(1, phi_apply(3, z, p), p);
  const Mat rhs = p.omega * phi_apply(3, phi_apply(1, z, p), p);
  CHECK(mat_distance(lhs, rhs) < 1e-12);
  CHECK(mat_distance(phi_apply(1, z, p), p.u * z * p.u.adjoint()) < 1e-12);
}

TEST_CASE("Gamma orbit of a diagonal unit") {
  const auto p = make_clock_pair(3);
  Mat e11 = Mat::Zero(3, 3);
  e11(0, 0) = 1.0;
  // u fixes E11, v moves it around the diagonal
  CHECK(gamma_orbit(e11, p).size() == 3);
}

TEST_CASE("Hadamard conjugates v to u for n = 2") {
  const auto p = make_clock_pair(2);
  const Mat h = hadamard();
  CHECK(mat_distance(h * p.v * h.adjoint(), p.u) < 1e-12);
}

TEST_CASE("matrix k-th roots") {
  Rng rng(11);
  for (int n = 1; n <= 4; ++n) {
    const Mat w = random_unitary(n, rng);
    for (long k = 1; k <= 6; ++k) {
      const Mat r = matrix_kth_root(w, k);
      Mat pw = Mat::Identity(n, n);
      for (long i = 0; i < k; ++i) pw = pw * r;
      CHECK(mat_distance(pw, w) < 1e-10);
      CHECK(is_unitary(r));
    }
  }
  Mat bad = Mat::Identity(2, 2) * 2.0;
  CHECK_THROWS_AS(matrix_kth_root(bad, 2), DomainError);
}
