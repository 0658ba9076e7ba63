#pragma once

#include "ergocycle/clockshift.hpp"
#include "ergocycle/dynsys.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace ergocycle::cocycle {

using dynsys::Observable;
using dynsys::Point;
using dynsys::System;

/// W(x) = lambda_1 u* on C and lambda_2 v* on D = X \ C. The degenerate flag
/// replaces W by the constant identity (negative controls only).
struct Cocycle {
  System system;
  clockshift::ClockPair pair;
  cplx lambda1{1.0, 0.0};
  cplx lambda2{1.0, 0.0};
  bool degenerate = false;

  static Cocycle make(System system, int n, cplx lambda1 = {1.0, 0.0}, cplx lambda2 = {1.0, 0.0});
  static Cocycle identity(System system, int n);

  int n() const { return pair.n; }
  /// One-step value W(x).
  Mat w(const Point& x) const;
};

/// W_k(x) in reduced form lambda_1^c lambda_2^d w^s u^a v^b, where the
/// Heisenberg word is the ordered product of u* and v* letters.
struct WordIterate {
  clockshift::HeisenbergWord word;
  long c = 0;  // net exponent of lambda_1
  long d = 0;  // net exponent of lambda_2

  Mat matrix(const Cocycle& co) const;
};

/// sigma^{-j} x.
Point shift_point(const System& sys, const Point& x, long j);

/// W_0 = 1, W_k(x) = W(x) W(sigma^-1 x) ... W(sigma^{-(k-1)} x) for k > 0 and
/// W_{-m}(x) = W(sigma x)* ... W(sigma^m x)*.
WordIterate w_word(const Cocycle& co, const Point& x, long k);
Mat w_iterate(const Cocycle& co, const Point& x, long k);

/// beta(f)(x) = W(x) f(sigma^{-1} x) W(x)*, exact on step/cylinder functions.
Observable beta_apply(const Cocycle& co, const Observable& f);

struct ErgodicityReport {
  std::string observable;
  long n_iters = 0;
  std::size_t samples = 0;
  cplx tau;            // normalized trace of the integral of f
  double deviation = 0.0;
  double tol = 0.0;
  bool ergodic_consistent = false;
  std::vector<std::pair<long, double>> trace;  // (N, deviation) checkpoints
};

struct BirkhoffOptions {
  double tol = -1.0;  // negative: 5/sqrt(N)
  std::vector<long> checkpoints;  // empty: powers of ten up to N
  unsigned threads = 0;           // 0: hardware concurrency
};

/// Seeded sample points: dyadic rationals u/2^32 on the circle, hashed
/// coordinates on the shift.
std::vector<Point> sample_points(const System& sys, std::size_t count, std::uint64_t seed);

/// max over samples of || (1/N) sum_{j<N} beta^j(f)(x) - tau(f) 1 ||, for all
/// observables in one pass over each orbit.
std::vector<ErgodicityReport> birkhoff_suite(const Cocycle& co,
                                             const std::vector<std::pair<std::string, Observable>>& fs,
                                             long n_iters, const std::vector<Point>& samples,
                                             const BirkhoffOptions& opts = {});
ErgodicityReport birkhoff_test(const Cocycle& co, const Observable& f, long n_iters,
                               const std::vector<Point>& samples, const BirkhoffOptions& opts = {});

struct PeriodicTrivialization {
  std::vector<Mat> zeta;          // zeta_0 .. zeta_{k-1}
  Mat z;                          // Z with Z^k = W_0 W_{k-1} ... W_1
  std::vector<cplx> lambda;       // eigenvalues of Z, phases in [0, 2 pi / k)
  std::vector<double> lambda_phase;
  double max_error = 0.0;         // over zeta_n W_n zeta_{n-1}* = Z and Z^k
  bool ok = false;
};

/// Input w[i] = W_i for i = 0 .. k-1, indices read mod k.
PeriodicTrivialization trivialize_periodic(const std::vector<Mat>& w, double tol = kMatTol);

struct AperiodicTrivialization {
  long lo = 0;
  std::vector<Mat> zeta;   // zeta_lo .. zeta_hi
  double max_error = 0.0;  // over zeta_n W_n zeta_{n-1}* = 1, lo < n <= hi
  std::size_t identities = 0;
  bool ok = false;

  const Mat& at(long n) const { return zeta[static_cast<std::size_t>(n - lo)]; }
};

/// Input w[i] = W_{lo+i}; the window must contain 0.
AperiodicTrivialization trivialize_aperiodic(const std::vector<Mat>& w, long lo, double tol = kMatTol);

}  // namespace ergocycle::cocycle
