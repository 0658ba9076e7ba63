#pragma once

#include "ergocycle/cocycle.hpp"
#include "ergocycle/dynsys.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace ergocycle::l1gap {

using dynsys::Observable;

/// Finite-support element of l^1(Z, C(X)): k -> a_k, scalar observables
/// (1x1 values).
struct L1Element {
  std::map<long, Observable> coeffs;
};

/// Element of L^2(X) (x) C^n: the fiber vector sits in column 0 of an n x n
/// step or cylinder value, the other columns are zero.
using RepVector = Observable;

/// sum_k sup |a_k|.
double l1_norm(const L1Element& s);

/// 1 (x) eta for a fiber vector eta.
RepVector constant_vector(const dynsys::System& sys, const Eigen::VectorXcd& eta);
/// xi (x) eta for a scalar observable xi.
RepVector tensor_vector(const Observable& xi, const Eigen::VectorXcd& eta);
/// L^2 norm with respect to the invariant base measure.
double l2_norm(const dynsys::System& sys, const RepVector& phi);
double l2_distance(const dynsys::System& sys, const RepVector& a, const RepVector& b);

/// W_k as an exact matrix observable.
Observable w_observable(const cocycle::Cocycle& co, long k);

/// pi(S) phi = sum_k (a_k (x) 1) W_k (V^k (x) 1) phi with (V phi)(x) = phi(sigma^{-1} x)
/// (invariant base measure, so F_k = 1).
RepVector apply_rep(const L1Element& s, const cocycle::Cocycle& co, const RepVector& phi);

struct LowerBoundReport {
  bool applicable = false;   // pi(S)(1 (x) eta) = chi_A / mu(A)^{1/2} (x) eta to 1e-8
  double residual = 0.0;
  double mu_a = 0.0;
  double sup_mu_shift = 0.0;  // sup_k mu(sigma^k A) over the support
  double middle = 0.0;        // sum_k ||a_k|| mu(sigma^{-k} A)^{1/2}
  double l1 = 0.0;
  double implied_bound = 0.0;  // (sup_k mu(sigma^k A))^{-1/2}
  bool chain_holds = false;    // 1 <= middle <= ||S||_1 sup_k mu(sigma^k A)^{1/2}
};

/// a_set is the scalar indicator of A (values 0 and 1).
LowerBoundReport lower_bound_check(const L1Element& s, const cocycle::Cocycle& co, const Observable& a_set,
                                   const Eigen::VectorXcd& eta);

/// Random representing S for A = [x0, x0 + eps) on the circle and eta = e_0.
/// On every arc the weight 1/sqrt(eps) is split at random over the k in
/// [-support, support] with W_k e_0 parallel to e_0 (d_k = 0 mod n).
struct IntervalInstance {
  L1Element s;
  Observable a_set;
  Eigen::VectorXcd eta;
  Rational eps;
  QTheta x0;
};
IntervalInstance interval_instance(const cocycle::Cocycle& co, const Rational& eps, long support, Rng& rng);

struct IntervalDemo {
  Rational eps;
  double bound = 0.0;  // eps^{-1/2}
  std::size_t instances = 0;
  std::size_t applicable = 0;
  double min_l1 = 0.0;
  bool all_hold = false;  // every instance applicable, chain holds, l1 >= bound
};
IntervalDemo interval_demo(const cocycle::Cocycle& co, const Rational& eps, std::size_t instances,
                           std::uint64_t seed);

/// Shift model on l^2(Z): the target sum_{k=1}^{K} k^{-1} xi_k forces
/// |a_k(k)| = 1/k, hence ||S||_1 >= H_K.
struct AtomicReport {
  long k_max = 0;
  Rational bound;               // H_K
  double bound_double = 0.0;
  std::vector<Rational> forced;  // forced[k-1] = 1/k
  Rational achieved;            // ||S||_1 of the minimal representing S
  bool target_matched = false;  // that S reproduces the target on 1..K
};
AtomicReport atomic_obstruction(long k_max);

}  // namespace ergocycle::l1gap
