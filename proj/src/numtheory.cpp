#include "ergocycle/numtheory.hpp"

#include "ergocycle/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ergocycle::numtheory {

std::vector<Convergent> convergents(const Theta& theta, std::size_t count) {
  std::vector<Convergent> out;
  out.reserve(count);
  BigInt k2 = 0, k1 = 1, m2 = 1, m1 = 0;
  for (std::size_t r = 0; r < count; ++r) {
    auto b = theta.digit(r);
    if (!b) {
      throw PrecisionError("theta " + theta.name() + " certifies only " +
                           std::to_string(theta.available_digits()) + " digits, asked for " +
                           std::to_string(count) + " convergents");
    }
    BigInt k = *b * k1 + k2;
    BigInt m = *b * m1 + m2;
    out.push_back({static_cast<long>(r), *b, k, m});
    k2 = k1;
    k1 = k;
    m2 = m1;
    m1 = m;
  }
  return out;
}

BigInt determinant(const std::vector<Convergent>& cs, std::size_t r) {
  if (r >= cs.size()) throw InvalidArgument("determinant index out of range");
  const BigInt kp = r == 0 ? BigInt(1) : cs[r - 1].k;
  const BigInt mp = r == 0 ? BigInt(0) : cs[r - 1].m;
  return cs[r].k * mp - kp * cs[r].m;
}

double approximation_error(const Theta& theta, const Convergent& c) {
  QTheta d = QTheta::theta() - QTheta(Rational(c.k, c.m));
  return std::fabs(theta.to_double(d));
}

bool within_dirichlet_bound(const Theta& theta, const Convergent& c) {
  const Rational centre(c.k, c.m);
  const Rational radius(BigInt(1), c.m * c.m);
  return theta.sign(QTheta(-(centre + radius), 1)) < 0 &&
         theta.sign(QTheta(-(centre - radius), 1)) > 0;
}

double frac_rep(double x) { return x - std::ceil(x - 0.5); }

QTheta signed_fraction(const Theta& theta, const BigInt& m) {
  return theta.frac_rep(QTheta::multiple(m));
}

std::vector<BigInt> select_mi(const Theta& theta, std::size_t depth, std::size_t scan_budget) {
  std::vector<BigInt> out;
  if (depth == 0) return out;
  QTheta bound(Rational(1, 3));
  BigInt last = 0;
  BigInt k2 = 0, k1 = 1, m2 = 1, m1 = 0;
  for (std::size_t r = 0; r <= scan_budget; ++r) {
    auto b = theta.digit(r);
    if (!b) {
      throw PrecisionError("digit supply of " + theta.name() + " ended while selecting m_" +
                           std::to_string(out.size() + 1));
    }
    BigInt k = *b * k1 + k2;
    BigInt m = *b * m1 + m2;
    k2 = k1;
    k1 = k;
    m2 = m1;
    m1 = m;
    if (r == 0 || m <= last) continue;
    QTheta a = theta.abs(signed_fraction(theta, m));
    if (theta.less(a, bound)) {
      out.push_back(m);
      if (out.size() == depth) return out;
      last = m;
      bound = a * Rational(1, 3);
    }
  }
  throw BudgetExceeded("select_mi: scan budget of " + std::to_string(scan_budget) +
                       " convergents exhausted after " + std::to_string(out.size()) + " of " +
                       std::to_string(depth) + " terms");
}

CircleOrbit::CircleOrbit(Theta theta, const QTheta& start) : theta_(std::move(theta)) {
  QTheta x = theta_.mod1(start);
  p0_ = x.p();
  q0_ = x.q();
  p0d_ = p0_.convert_to<double>();
  q0d_ = q0_.convert_to<double>();
  base_err_ = 0x1p-52 * (std::fabs(p0d_) + std::fabs(q0d_) + 1.0);
  locate();
}

QTheta CircleOrbit::current() const {
  return QTheta(p0_ + Rational(off_), q0_ - Rational(j_));
}

void CircleOrbit::locate() {
  // x < theta  <=>  (p0 + off) + (q0 - j - 1) theta < 0
  const double pd = p0d_ + static_cast<double>(off_);
  const double qd = q0d_ - static_cast<double>(j_ + 1);
  const double perr = base_err_ + 0x1p-52 * std::fabs(pd);
  const double qerr = base_err_ + 0x1p-52 * std::fabs(qd);
  if (auto s = theta_.fast_sign(pd, perr, qd, qerr)) {
    in_c_ = *s < 0;
    return;
  }
  in_c_ = theta_.sign(QTheta(p0_ + Rational(off_), q0_ - Rational(j_ + 1))) < 0;
}

void CircleOrbit::step() {
  // x - theta wraps around exactly when x lies in [0, theta)
  if (in_c_) off_ += 1;
  j_ += 1;
  locate();
}

long rotation_count(const Theta& theta, const QTheta& x, long m) {
  if (m < 0) throw InvalidArgument("rotation_count needs m >= 0");
  QTheta y = theta.mod1(x);
  BigInt c = -theta.floor(y - QTheta(Rational(0), Rational(m)));
  return c.convert_to<long>();
}

CountLevelSets count_level_sets(const Theta& theta, long m) {
  if (m < 1) throw InvalidArgument("count_level_sets needs m >= 1");
  std::vector<QTheta> pts;
  pts.reserve(static_cast<std::size_t>(m) + 1);
  for (long i = 0; i <= m; ++i) pts.push_back(theta.mod1(QTheta(Rational(0), Rational(i))));
  std::sort(pts.begin(), pts.end(), [&](const QTheta& a, const QTheta& b) { return theta.less(a, b); });

  CountLevelSets out;
  out.floor_m_theta = theta.floor(QTheta(Rational(0), Rational(m)));
  for (std::size_t j = 0; j < pts.size(); ++j) {
    const QTheta& left = pts[j];
    const QTheta right = j + 1 < pts.size() ? pts[j + 1] : QTheta(1);
    long v = rotation_count(theta, left, m);
    auto [it, fresh] = out.measure.try_emplace(v, QTheta());
    it->second += right - left;
    ++out.arcs;
  }
  return out;
}

std::pair<QTheta, QTheta> count_measure(const Theta& theta, long m) {
  if (theta.sign(QTheta(Rational(-1, 2), 1)) > 0) {
    throw DomainError("count_measure assumes theta < 1/2, got " + theta.name());
  }
  auto ls = count_level_sets(theta, m);
  const long f = ls.floor_m_theta.convert_to<long>();
  for (const auto& [v, mu] : ls.measure) {
    if (v != f && v != f + 1) {
      throw Error("rotation count took value " + std::to_string(v) + " outside {[m theta], [m theta]+1}");
    }
  }
  auto get = [&](long v) {
    auto it = ls.measure.find(v);
    return it == ls.measure.end() ? QTheta() : it->second;
  };
  return {get(f), get(f + 1)};
}

std::pair<QTheta, QTheta> count_measure_closed_form(const Theta& theta, long m) {
  const QTheta mt(Rational(0), Rational(m));
  const QTheta fl(Rational(theta.floor(mt)));
  return {fl + QTheta(1) - mt, mt - fl};
}

}  // namespace ergocycle::numtheory
