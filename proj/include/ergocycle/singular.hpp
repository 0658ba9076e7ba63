#pragma once

#include "ergocycle/numeric.hpp"
#include "ergocycle/qtheta.hpp"
#include "ergocycle/rng.hpp"
#include "ergocycle/theta.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ergocycle::singular {

/// Sequence (m_i) with t_i = (m_i theta) in (-1/2, 1/2], |t_1| < 1/3 and
/// |t_i| < |t_{i-1}|/3, cut at a finite depth D. Coordinates are 1-based.
///
/// tail(N) bounds sum_{i>N} |t_i| = b_N - a_N from above by the exact sum up
/// to D plus |t_D|/2 for the part beyond the chart.
class CantorChart {
 public:
  static constexpr std::size_t kDefaultDepth = 30;

  CantorChart(Theta theta, std::size_t depth = kDefaultDepth);
  /// Chart from an explicit admissible sequence; throws if the 1/3 rule fails.
  CantorChart(Theta theta, std::vector<BigInt> m_list);

  const Theta& theta() const { return theta_; }
  std::size_t depth() const { return m_.size(); }
  const BigInt& m(std::size_t i) const { return m_.at(i - 1); }
  const QTheta& t(std::size_t i) const { return t_.at(i - 1); }
  double t_double(std::size_t i) const { return td_.at(i - 1); }
  const std::vector<BigInt>& m_list() const { return m_; }

  /// Upper bound on b_N - a_N, exact, for 0 <= N <= depth.
  const QTheta& tail(std::size_t n) const { return tail_.at(n); }
  double tail_double(std::size_t n) const { return theta_.to_double(tail_.at(n)); }
  /// Sums of the negative / positive t_i with N < i <= depth.
  QTheta a_partial(std::size_t n) const;
  QTheta b_partial(std::size_t n) const;

 private:
  void build();

  Theta theta_;
  std::vector<BigInt> m_;
  std::vector<QTheta> t_;
  std::vector<double> td_;
  std::vector<QTheta> tail_;
};

/// Sum_{i <= depth} bits_i t_i (bits[0] is x_1) and the tail bound b_N - a_N.
struct PhiValue {
  QTheta value;
  double value_double = 0.0;
  double error_bound = 0.0;
};
PhiValue phi_map(const CantorChart& chart, const std::vector<int>& bits, std::size_t depth);
PhiValue phi_map(const CantorChart& chart, const std::vector<int>& bits);

enum class DecodeStatus { Finite, NotRepresentable };

struct SignedDigits {
  DecodeStatus status = DecodeStatus::Finite;
  std::vector<int> lambda;  // lambda[0] is lambda_1; trailing zeros trimmed
  std::size_t failed_at = 0;  // index where no digit fit (NotRepresentable)
};

/// Greedy signed-digit decode of the representative of t in (-1/2, 1/2].
/// Finite: residual exactly zero within the chart. NotRepresentable: at
/// some index no digit leaves the residual within the tail bound (exact).
/// Throws PrecisionError when a nonzero residual survives to chart depth.
SignedDigits decode_digits(const CantorChart& chart, const QTheta& t);

/// True when Phi(P) and Phi(P) + t meet in a set of positive nu_0'-measure.
bool intersection_test(const CantorChart& chart, const QTheta& t);

/// Level-N intervals sum_{i in S} t_i + [a_N, b_N], S subset of {1..N}, are
/// pairwise disjoint. Exact recursive certificate: |t_N| > tail(N) and each
/// pair of children sits inside its parent.
bool level_disjoint_certificate(const CantorChart& chart, std::size_t n);
/// Same statement checked by sorting all 2^N interval centres (double with
/// rigorous margin); N <= 24.
bool level_disjoint_enumerated(const CantorChart& chart, std::size_t n);

/// 2^N (b_N - a_N), upper bound on the Lebesgue measure of Phi(P).
double cover_bound(const CantorChart& chart, std::size_t n);

/// nu_0 = prod_i {a_i, 1 - a_i}: P(x_i = 0) = a_i, P(x_i = 1) = 1 - a_i.
class ProductWeights {
 public:
  explicit ProductWeights(std::vector<Rational> a);
  static ProductWeights constant(const Rational& a, std::size_t depth);
  /// "const:<a>" or a comma-separated list.
  static ProductWeights parse(const std::string& spec, std::size_t depth);

  const Rational& a(std::size_t i) const { return a_.at(i - 1); }
  double a_double(std::size_t i) const { return ad_.at(i - 1); }
  std::size_t size() const { return a_.size(); }

 private:
  std::vector<Rational> a_;
  std::vector<double> ad_;
};

/// c = prod_{i in I_1} (1-a_i)/a_i * prod_{i in I_0} a_i/(1-a_i).
Rational rn_factor(const ProductWeights& w, const std::vector<std::size_t>& i0,
                   const std::vector<std::size_t>& i1);

/// Cylinder of P: coordinate i (1-based) -> required bit.
using PCylinder = std::map<std::size_t, int>;

Rational nu0_measure(const ProductWeights& w, const PCylinder& c);
/// nu_0(A cap C) - nu_0(A) nu_0(C).
Rational nu0_independence_gap(const ProductWeights& w, const PCylinder& a, const PCylinder& c);

/// A = Phi(cylinder) + shift*theta, or the whole circle.
struct ShiftedCylinder {
  PCylinder cylinder;
  long shift = 0;
  bool full = false;

  ShiftedCylinder sigma() const { return {cylinder, shift + 1, full}; }
};

/// gamma = sqrt(2) - 1; sum_k gamma^{1+|k|} = 1.
HpFloat gamma_hp();
double gamma_value();
/// gamma + 2 sum_{k=1}^{K} gamma^{1+k}.
HpFloat gamma_mass(long k_max);
/// gamma^{K+1}(1+gamma)/(1-gamma), the bound used for the truncated series.
double series_tail_bound(long k_max);
/// Smallest K with series_tail_bound(K) < eps.
long truncation_for(double eps);

/// nu(A) = sum_k gamma^{1+|k|} nu_0'(A + k theta), truncated at |k| <= K.
class NuMeasure {
 public:
  NuMeasure(CantorChart chart, ProductWeights weights, long k_max = -1);

  const CantorChart& chart() const { return chart_; }
  const ProductWeights& weights() const { return weights_; }
  long k_max() const { return k_max_; }
  double tail_bound() const { return series_tail_bound(k_max_); }

  /// Signed digits of s*theta when finite; cached for |s| <= 2K + 64.
  const std::optional<std::vector<int>>& digits_of_shift(long s) const;
  /// nu_0'(Phi(cyl) + s theta), exact.
  Rational shifted_mass(const PCylinder& cyl, long s) const;
  /// Truncated series value.
  HpFloat measure(const ShiftedCylinder& a) const;

 private:
  CantorChart chart_;
  ProductWeights weights_;
  long k_max_;
  long cache_radius_;
  std::vector<std::optional<std::vector<int>>> shift_digits_;
};

struct QuasiInvarianceRow {
  double nu_a = 0.0;
  double nu_sigma_a = 0.0;
  bool lower_ok = false;  // gamma nu(A) <= nu(sigma A)
  bool upper_ok = false;  // nu(sigma A) <= nu(A) / gamma
};

struct QuasiInvarianceReport {
  std::vector<QuasiInvarianceRow> rows;
  double tolerance = 0.0;
  bool ok = false;
};

QuasiInvarianceReport quasi_invariance_check(const NuMeasure& nu, const std::vector<ShiftedCylinder>& sets,
                                             double tol = -1.0);

/// Brute-force nu_0'(Phi(cyl) + s theta) at truncation depth d: enumerate
/// x, y in {0,1}^d with x in cyl and sum_i (y_i - x_i) m_i = s.
Rational brute_force_shifted_mass(const CantorChart& chart, const ProductWeights& w, const PCylinder& cyl,
                                  long s, std::size_t d);

struct NuSample {
  long k = 0;              // the point is Phi(bits) - k theta
  std::vector<int> bits;   // x_1 .. x_D
  QTheta point;            // exact, in [0,1)
  double point_double = 0.0;
};

NuSample sample_nu(const NuMeasure& nu, Rng& rng);
/// Draws k with probability gamma^{1+|k|}.
long sample_k(Rng& rng);

/// Decimal string of a circle point with 18 significant digits.
std::string format_point(const Theta& theta, const QTheta& x);

/// Self-normalized Monte-Carlo estimate of <1, V^k 1> = int (d nu sigma^{-k}/d nu)^{1/2} d nu,
/// mean(sqrt h) / sqrt(mean h); exactly 1 for k = 0 and bounded by 1.
struct SpectralMoment {
  long k = 0;
  double estimate = 1.0;
  double raw_mean = 1.0;       // plain mean of sqrt h
  double mean_density = 1.0;   // mean of h, should be close to 1
  std::size_t samples = 0;
};
SpectralMoment spectral_moment(const NuMeasure& nu, long k, std::size_t n_samples, std::uint64_t seed);
/// Lebesgue comparison: h = 1 identically, so the moment is exactly 1.
double spectral_moment_lebesgue(long k);

/// Log-likelihood ratio of nu_a against nu_b on the decoded digits of
/// samples drawn from nu_a, as a function of depth.
struct SingularityExperiment {
  Rational a, b;
  std::size_t samples_used = 0;
  std::vector<double> mean_llr;  // index d-1: mean over samples of LLR_d
  double slope = 0.0;
  double slope_stderr = 0.0;
  double kl_per_digit = 0.0;      // exact expectation of the slope
  bool diverges = false;          // slope > 5 stderr
};
SingularityExperiment singularity_experiment(const CantorChart& chart, const Rational& a, const Rational& b,
                                             std::size_t n_samples, std::uint64_t seed);

}  // namespace ergocycle::singular
