#pragma once

#include "ergocycle/numeric.hpp"
#include "ergocycle/qtheta.hpp"
#include "ergocycle/theta.hpp"

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

namespace ergocycle::numtheory {

struct Convergent {
  long r = 0;
  BigInt b;  // partial quotient b_r
  BigInt k;  // numerator k_r
  BigInt m;  // denominator m_r
};

/// Convergents r = 0 .. count-1 from the recursion
///   (k_r, m_r) = b_r (k_{r-1}, m_{r-1}) + (k_{r-2}, m_{r-2}),
/// seeded with b_0 = 0, k_{-2} = 0, k_{-1} = 1, m_{-2} = 1, m_{-1} = 0.
/// Throws PrecisionError when the digit supply ends first.
std::vector<Convergent> convergents(const Theta& theta, std::size_t count);

/// k_r m_{r-1} - k_{r-1} m_r; for r = 0 the seed values are used.
BigInt determinant(const std::vector<Convergent>& cs, std::size_t r);

/// |theta - k/m| as a double.
double approximation_error(const Theta& theta, const Convergent& c);
/// Exact test of |theta - k/m| < 1/m^2.
bool within_dirichlet_bound(const Theta& theta, const Convergent& c);

/// Representative of x + Z in (-1/2, 1/2].
double frac_rep(double x);
inline QTheta frac_rep(const Theta& theta, const QTheta& x) { return theta.frac_rep(x); }

/// (m theta) as an exact element, i.e. frac_rep(m theta).
QTheta signed_fraction(const Theta& theta, const BigInt& m);

/// Greedy scan over convergent denominators: m_1 is the first with
/// |(m theta)| < 1/3, each later m_i the first larger one with
/// |(m_i theta)| < |(m_{i-1} theta)|/3.
std::vector<BigInt> select_mi(const Theta& theta, std::size_t depth,
                              std::size_t scan_budget = 4096);

/// Walks x, x - theta, x - 2 theta, ... reduced to [0,1) and reports
/// membership in C = [0, theta). Double arithmetic with exact fallback.
class CircleOrbit {
 public:
  CircleOrbit(Theta theta, const QTheta& start);

  /// Point x - j*theta in [0,1), j = steps taken so far.
  QTheta current() const;
  bool in_c() const { return in_c_; }
  long step_index() const { return j_; }
  void step();

 private:
  void locate();

  // current point is (p0_ + off_) + (q0_ - j_) * theta
  Theta theta_;
  Rational p0_;
  Rational q0_;
  double p0d_ = 0.0;
  double q0d_ = 0.0;
  double base_err_ = 0.0;
  long off_ = 0;
  long j_ = 0;
  bool in_c_ = false;
};

/// c'(x, m) = #{ 0 <= i < m : x - i theta in [0, theta) }, x in [0,1).
/// Evaluated through the telescoping identity floor(x) - floor(x - m theta).
long rotation_count(const Theta& theta, const QTheta& x, long m);

/// Level sets of x -> c'(x, m), computed exactly as a step function on the
/// circle: value -> total arc length.
struct CountLevelSets {
  BigInt floor_m_theta;              // [m theta]
  std::map<long, QTheta> measure;    // level value -> Lebesgue measure
  std::size_t arcs = 0;
};

CountLevelSets count_level_sets(const Theta& theta, long m);

/// (mu{c' = [m theta]}, mu{c' = [m theta] + 1}) read off the exact level
/// sets. Requires theta < 1/2.
std::pair<QTheta, QTheta> count_measure(const Theta& theta, long m);

/// ([m theta] + 1 - m theta, m theta - [m theta]).
std::pair<QTheta, QTheta> count_measure_closed_form(const Theta& theta, long m);

}  // namespace ergocycle::numtheory
