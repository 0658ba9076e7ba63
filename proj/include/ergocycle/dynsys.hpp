#pragma once

#include "ergocycle/clockshift.hpp"
#include "ergocycle/numeric.hpp"
#include "ergocycle/qtheta.hpp"
#include "ergocycle/theta.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <variant>
#include <vector>

namespace ergocycle::dynsys {

/// Full shift on Lambda^Z, Lambda = {0, ..., s-1}, with product measure of
/// the one-site weights and the base set C = { x : x_0 in C_1 }.
class BernoulliSystem {
 public:
  BernoulliSystem(std::vector<Rational> weights, std::set<int> c1);
  /// Uniform weights on s symbols.
  static BernoulliSystem fair(int s, std::set<int> c1);

  int alphabet_size() const { return static_cast<int>(weights_.size()); }
  const std::vector<Rational>& weights() const { return weights_; }
  const std::set<int>& c1() const { return c1_; }
  bool in_c1(int symbol) const { return member_[static_cast<std::size_t>(symbol)]; }
  /// Symbol drawn from the one-site law for a uniform u in [0,1).
  int symbol_for(double u) const;

 private:
  std::vector<Rational> weights_;
  std::vector<double> cumulative_;
  std::set<int> c1_;
  std::vector<bool> member_;
};

/// Rotation x -> x + theta on [0,1) with Lebesgue measure; C = [0, theta).
struct CircleSystem {
  Theta theta;
};

using System = std::variant<BernoulliSystem, CircleSystem>;

/// A point of Lambda^Z: explicitly fixed coordinates plus, optionally, a
/// seeded rule that fills every other coordinate i from hash(seed, i).
/// shifted(j) is sigma^{-j} x, i.e. coordinates read with offset +j.
class BernoulliPoint {
 public:
  BernoulliPoint() = default;
  BernoulliPoint(const BernoulliSystem& sys, std::uint64_t seed);
  /// Point with only coordinates lo .. lo+len-1 defined.
  BernoulliPoint(std::vector<int> coords, long lo = 0);

  int coord(long i) const;
  bool has_coord(long i) const;
  BernoulliPoint shifted(long j) const;
  void set(long i, int symbol);

 private:
  std::map<long, int> fixed_;
  std::optional<std::uint64_t> seed_;
  std::vector<double> cumulative_;
  long offset_ = 0;
};

/// Circle points are exact elements of Q + Q theta, read mod 1.
using Point = std::variant<BernoulliPoint, QTheta>;

/// Cylinder set: coordinate -> allowed symbols.
struct Cylinder {
  std::map<long, std::set<int>> constraints;

  static Cylinder word(long lo, const std::vector<int>& symbols);
  /// sigma^k(A): every constraint moves from i to i + k.
  Cylinder shifted(long k) const;
  /// Empty optional when the intersection is empty.
  std::optional<Cylinder> intersect(const Cylinder& o) const;
  bool contains(const BernoulliPoint& x) const;
};

Rational measure(const BernoulliSystem& sys, const Cylinder& a);

/// |mu(A cap sigma^k B) - mu(A) mu(B)|, exact.
Rational mixing_gap(const BernoulliSystem& sys, const Cylinder& a, const Cylinder& b, long k);

/// Matrix-valued function of the coordinates lo .. lo+len-1. The table is
/// indexed by sum_i x_{lo+i} s^i.
class MatCylinderFunction {
 public:
  static constexpr std::size_t kDefaultBudget = std::size_t(1) << 20;

  MatCylinderFunction(int alphabet, long lo, int len, std::vector<Mat> table);
  static MatCylinderFunction constant(int alphabet, const Mat& value);
  /// value_if on {x_at in symbols}, value_else elsewhere.
  static MatCylinderFunction indicator(int alphabet, long at, const std::set<int>& symbols,
                                       const Mat& value_if, const Mat& value_else);

  int alphabet() const { return alphabet_; }
  long lo() const { return lo_; }
  int len() const { return len_; }
  int dim() const { return static_cast<int>(table_.front().rows()); }
  const std::vector<Mat>& table() const { return table_; }

  const Mat& operator()(const BernoulliPoint& x) const;
  /// Value at sigma^{-j} x without materializing the shifted point.
  const Mat& at_offset(const BernoulliPoint& x, long j) const;
  /// Value on the window word (x_lo, ..., x_{lo+len-1}).
  const Mat& at_word(std::size_t index) const { return table_[index]; }

  /// Same function re-expressed on a larger window [lo, lo+len).
  MatCylinderFunction extended(long lo, int len, std::size_t budget = kDefaultBudget) const;

 private:
  int alphabet_;
  long lo_;
  int len_;
  std::vector<Mat> table_;
};

/// Right-continuous step function on [0,1): value_j on [b_j, b_{j+1}),
/// with b_0 = 0 and the last arc ending at 1.
class MatStepFunction {
 public:
  MatStepFunction(Theta theta, std::vector<QTheta> breakpoints, std::vector<Mat> values);
  static MatStepFunction constant(Theta theta, const Mat& value);
  /// value_if on [a, b) (taken mod 1, may wrap), value_else elsewhere.
  static MatStepFunction indicator(Theta theta, const QTheta& a, const QTheta& b, const Mat& value_if,
                                   const Mat& value_else);

  const Theta& theta() const { return theta_; }
  const std::vector<QTheta>& breakpoints() const { return breaks_; }
  const std::vector<Mat>& values() const { return values_; }
  int dim() const { return static_cast<int>(values_.front().rows()); }

  /// Exact evaluation at x mod 1.
  Mat operator()(const QTheta& x) const;
  /// Evaluation at x mod 1 where xd approximates x to within 1e-9; exact
  /// comparison is used only near breakpoints.
  const Mat& eval_near(const QTheta& x, double xd) const;
  std::size_t arc_of(const QTheta& x) const;
  /// Arc containing the double xd in [0,1), or empty when xd is within 1e-9
  /// of a breakpoint and the exact point is needed.
  std::optional<std::size_t> arc_fast(double xd) const;
  /// Arc lengths, exact.
  std::vector<QTheta> arc_lengths() const;

 private:
  Theta theta_;
  std::vector<QTheta> breaks_;
  std::vector<double> breaks_d_;
  std::vector<Mat> values_;
};

using Observable = std::variant<MatCylinderFunction, MatStepFunction>;

/// Combine two circle step functions on the union of their breakpoints.
MatStepFunction combine(const MatStepFunction& f, const MatStepFunction& g,
                        const std::function<Mat(const Mat&, const Mat&)>& op);
MatCylinderFunction combine(const MatCylinderFunction& f, const MatCylinderFunction& g,
                            const std::function<Mat(const Mat&, const Mat&)>& op,
                            std::size_t budget = MatCylinderFunction::kDefaultBudget);

/// f o sigma^{-k}.
MatCylinderFunction shift_apply(const MatCylinderFunction& f, long k);
MatStepFunction shift_apply(const MatStepFunction& f, long k);
Observable shift_apply(const System& sys, const Observable& f, long k);

Mat integrate(const BernoulliSystem& sys, const MatCylinderFunction& f);
Mat integrate(const CircleSystem& sys, const MatStepFunction& f);
Mat integrate(const System& sys, const Observable& f);

Mat evaluate(const Observable& f, const Point& x);

/// (c, d) with c = #{0 <= i < k : sigma^{-i} x in C}, d = k - c.
std::pair<long, long> count_cd(const System& sys, const Point& x, long k);

/// Whether sigma^{-i} x lies in C.
bool in_c(const System& sys, const Point& x, long i);

struct SpecialCylinder {
  int n = 0;
  Cylinder cylinder;
  std::vector<int> pattern;                 // symbols on x_0 .. x_{n^2-1}
  std::vector<std::pair<long, long>> pairs; // (c mod n, d mod n) for k = 0, 1, ...
  long k_needed = -1;                       // first k with all n^2 pairs seen
  bool exhaustive = false;
};

/// The cylinder on x_0 .. x_{n^2-1}: n symbols in C_1, then n-1 blocks of
/// one symbol outside C_1 followed by n-1 symbols in C_1. Certificate lists
/// residue pairs of the counts until all of Z/n x Z/n has appeared.
SpecialCylinder special_cylinder_s(int n, const BernoulliSystem& sys);

}  // namespace ergocycle::dynsys
