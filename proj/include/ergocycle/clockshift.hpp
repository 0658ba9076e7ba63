#pragma once

#include "ergocycle/rng.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace ergocycle {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;

/// Default identification tolerance for matrices (operator norm).
inline constexpr double kMatTol = 1e-10;

/// Largest singular value.
double op_norm(const Mat& a);
inline double mat_distance(const Mat& a, const Mat& b) { return op_norm(a - b); }
bool is_unitary(const Mat& a, double tol = kMatTol);

/// Haar-ish random unitary: QR of a complex Gaussian matrix with phase fix.
Mat random_unitary(int n, Rng& rng);
/// Entries i.i.d. complex Gaussian.
Mat random_matrix(int n, Rng& rng);

namespace clockshift {

/// u = diag(1, w, ..., w^{n-1}), v e_j = e_{j-1 mod n}, so that v u v* = w u.
struct ClockPair {
  int n = 0;
  cplx omega;
  Mat u;
  Mat v;

  /// omega^j for any integer j.
  cplx omega_pow(long j) const;
  /// u^a, v^b for any integers (exponents reduced mod n).
  Mat u_pow(long a) const;
  Mat v_pow(long b) const;
};

ClockPair make_clock_pair(int n);

/// Reduced form w^s u^a v^b of a word in u, v (exponents mod n). The product
/// rule follows from v u = w u v:
///   (s1,a1,b1)(s2,a2,b2) = (s1 + s2 + b1 a2, a1 + a2, b1 + b2).
struct HeisenbergWord {
  long s = 0;
  long a = 0;
  long b = 0;

  static HeisenbergWord u() { return {0, 1, 0}; }
  static HeisenbergWord v() { return {0, 0, 1}; }
  static HeisenbergWord u_star() { return {0, -1, 0}; }
  static HeisenbergWord v_star() { return {0, 0, -1}; }

  HeisenbergWord operator*(const HeisenbergWord& o) const {
    return {s + o.s + b * o.a, a + o.a, b + o.b};
  }
  HeisenbergWord inverse() const { return {-s + a * b, -a, -b}; }
  /// Exponents reduced: s, a, b into [0, n).
  HeisenbergWord reduced(int n) const;
  Mat matrix(const ClockPair& pair) const;
};

/// Parses a word over {u, v, U, V} (capitals are adjoints) and reduces it.
HeisenbergWord reduce_word(const std::string& word);
Mat word_matrix(const std::string& word, const ClockPair& pair);

/// dim { X : X M = M X for all M } via SVD of the stacked system
/// (I (x) M - M^T (x) I). Empty list gives n^2.
std::size_t commutant_dim(const std::vector<Mat>& mats, int n);

/// { Ad(u^p v^q)(t0) : 0 <= p, q < n } with duplicates merged at tol.
std::vector<Mat> gamma_orbit(const Mat& t0, const ClockPair& pair, double tol = kMatTol);

/// phi_1 = L_u R_u*, phi_2 = L_v R_v*, phi_3 = L_u R_v*, phi_4 = L_v R_u*.
Mat phi_apply(int which, const Mat& zeta, const ClockPair& pair);
/// phi_which^k applied directly (k may be negative).
Mat phi_power(int which, const Mat& zeta, const ClockPair& pair, long k);

struct RelationCheck {
  std::string name;
  double max_error = 0.0;
};

struct PhiRelationsReport {
  int n = 0;
  std::size_t trials = 0;
  std::vector<RelationCheck> checks;
  double max_error = 0.0;
  bool ok = false;
};

/// Checks the six pairwise phi relations (phi_i phi_j = w^c phi_j phi_i),
/// phi_i^n = id and the closed forms of phi_3^k, phi_4^k on random zeta.
PhiRelationsReport phi_relations_check(const ClockPair& pair, std::size_t trials,
                                       std::uint64_t seed, double tol = kMatTol);

/// Exponent c with phi_i phi_j = w^c phi_j phi_i, for 1 <= i < j <= 4.
int phi_commutation_exponent(int i, int j);

/// (1/sqrt 2)[[1,1],[1,-1]]; conjugates v to u for n = 2.
Mat hadamard();

/// Principal k-th root of a unitary: eigenphases in (-pi, pi] divided by k.
/// Throws DomainError for non-unitary input.
Mat matrix_kth_root(const Mat& p, long k);

}  // namespace clockshift
}  // namespace ergocycle
