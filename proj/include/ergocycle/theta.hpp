#pragma once

#include "ergocycle/numeric.hpp"
#include "ergocycle/qtheta.hpp"

#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ergocycle {

/// An irrational theta in (0,1), carried as continued-fraction digits
/// b_1, b_2, ... (b_0 = 0) together with a 256-bit numeric witness.
///
/// Digits come from one of three sources:
///  - a prefix followed by a repeating block (quadratic irrationals; the
///    digit supply is unbounded),
///  - a finite digit list (the supply ends after the list),
///  - a decimal string, whose certified digits are the common prefix of the
///    expansions of both ends of its rounding interval.
///
/// Ordering decisions on p + q*theta are exact whenever the digit supply
/// suffices; otherwise they fall back to the witness and bump
/// witness_fallbacks().
///
/// Theta is an immutable handle; copies share state and are thread-safe.
class Theta {
 public:
  static constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

  /// sqrt(2) - 1 = [0; 2, 2, 2, ...]
  static Theta sqrt2_minus_1();
  /// (sqrt(5) - 1)/2 = [0; 1, 1, 1, ...]
  static Theta golden();
  static Theta from_digits(std::vector<BigInt> prefix, std::vector<BigInt> period,
                           std::string name = {});
  static Theta from_decimal(std::string_view decimal);

  /// Accepts "sqrt2m1", "golden", "cf:b1,b2,...[,[p1,p2,...]]" (bracketed
  /// block repeats forever) and "num:<decimal>".
  static Theta parse(std::string_view spec);

  const std::string& name() const;

  /// Partial quotient b_r; b_0 = 0. Empty once the supply is exhausted.
  std::optional<BigInt> digit(std::size_t r) const;
  std::size_t available_digits() const;
  /// Periodic expansion, hence a quadratic irrational.
  bool is_quadratic() const;

  double value() const;
  const HpFloat& witness() const;
  /// Rigorous bound on |witness - theta|.
  const HpFloat& witness_error() const;

  /// Exact sign of p + q*theta (0 only for the zero element).
  int sign(const QTheta& x) const;
  int compare(const QTheta& a, const QTheta& b) const { return sign(a - b); }
  bool less(const QTheta& a, const QTheta& b) const { return sign(a - b) < 0; }

  BigInt floor(const QTheta& x) const;
  /// Representative in [0, 1).
  QTheta mod1(const QTheta& x) const;
  /// Representative in (-1/2, 1/2].
  QTheta frac_rep(const QTheta& x) const;
  QTheta abs(const QTheta& x) const { return sign(x) < 0 ? -x : x; }

  double to_double(const QTheta& x) const;
  HpFloat to_hp(const QTheta& x) const;

  /// Sign of pd + qd*theta from double inputs carrying absolute errors
  /// perr, qerr; empty when the double evaluation cannot certify it.
  std::optional<int> fast_sign(double pd, double perr, double qd, double qerr) const;

  /// Exact comparison of theta against a rational: -1, +1 (never 0).
  int compare_with(const Rational& r) const;

  /// Number of ordering decisions that fell back to the numeric witness.
  static std::size_t witness_fallbacks();

  bool same_as(const Theta& o) const { return impl_ == o.impl_; }

  struct Impl;

 private:
  explicit Theta(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

}  // namespace ergocycle
