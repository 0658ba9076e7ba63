#pragma once

#include "ergocycle/numeric.hpp"

#include <iosfwd>
#include <string>

namespace ergocycle {

/// Exact element p + q*theta of Q + Q*theta. Arithmetic needs no knowledge of
/// theta; ordering and rounding go through a Theta context.
class QTheta {
 public:
  QTheta() = default;
  QTheta(Rational p, Rational q = 0) : p_(std::move(p)), q_(std::move(q)) {}  // NOLINT
  QTheta(long p) : p_(p) {}                                                     // NOLINT

  static QTheta theta() { return {Rational(0), Rational(1)}; }
  static QTheta multiple(const BigInt& m) { return {Rational(0), Rational(m)}; }

  const Rational& p() const { return p_; }
  const Rational& q() const { return q_; }

  bool is_rational() const { return q_ == 0; }
  bool is_zero() const { return p_ == 0 && q_ == 0; }
  /// True when the value lies in Z + Z*theta.
  bool in_lattice() const { return is_integer(p_) && is_integer(q_); }

  QTheta operator-() const { return {-p_, -q_}; }
  QTheta& operator+=(const QTheta& o) {
    p_ += o.p_;
    q_ += o.q_;
    return *this;
  }
  QTheta& operator-=(const QTheta& o) {
    p_ -= o.p_;
    q_ -= o.q_;
    return *this;
  }
  QTheta& operator*=(const Rational& s) {
    p_ *= s;
    q_ *= s;
    return *this;
  }

  friend QTheta operator+(QTheta a, const QTheta& b) { return a += b; }
  friend QTheta operator-(QTheta a, const QTheta& b) { return a -= b; }
  friend QTheta operator*(QTheta a, const Rational& s) { return a *= s; }
  friend QTheta operator*(const Rational& s, QTheta a) { return a *= s; }
  friend bool operator==(const QTheta& a, const QTheta& b) {
    return a.p_ == b.p_ && a.q_ == b.q_;
  }

  std::string str() const;

 private:
  Rational p_{0};
  Rational q_{0};
};

std::ostream& operator<<(std::ostream& os, const QTheta& x);

}  // namespace ergocycle
