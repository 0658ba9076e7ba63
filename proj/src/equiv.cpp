#include "ergocycle/equiv.hpp"

#include "ergocycle/errors.hpp"

namespace ergocycle::equiv {

namespace {

bool integral(const QTheta& x) { return x.q() == 0 && is_integer(x.p()); }

void check_n(int n) {
  if (n < 1) throw InvalidArgument("fiber dimension n must be >= 1");
}

}  // namespace

bool same_phase(const PhaseExp& a, const PhaseExp& b) { return integral(a.r - b.r); }

Verdict decide_equiv0(const PhaseExp& eta) {
  Verdict v;
  if (is_integer(eta.r.p()) && is_integer(eta.r.q())) {
    v.yes = true;
    v.m = numerator(eta.r.q());
  }
  return v;
}

bool verify_equiv0(const PhaseExp& eta, const BigInt& m) {
  return integral(eta.r - QTheta::multiple(m));
}

Verdict decide_bernoulli_phases(const PhaseExp& l1, const PhaseExp& l2, const PhaseExp& l1p,
                                const PhaseExp& l2p, int n) {
  check_n(n);
  Verdict v;
  v.yes = integral((l1.r - l1p.r) * Rational(n)) && integral((l2.r - l2p.r) * Rational(n));
  return v;
}

Verdict decide_bernoulli_w(const std::set<int>& c1, const std::set<int>& c1p, int n, int alphabet) {
  check_n(n);
  if (alphabet < 2) throw InvalidArgument("alphabet needs at least two symbols");
  for (const auto* s : {&c1, &c1p}) {
    if (s->empty() || static_cast<int>(s->size()) >= alphabet) {
      throw InvalidArgument("C_1 must be a proper non-empty subset of the alphabet");
    }
    for (int x : *s) {
      if (x < 0 || x >= alphabet) throw InvalidArgument("symbol " + std::to_string(x) + " outside the alphabet");
    }
  }
  if (c1 == c1p) throw InvalidArgument("decide_bernoulli_w needs C_1 != C_1'");
  Verdict v;
  if (n != 2) return v;
  std::set<int> complement;
  for (int x = 0; x < alphabet; ++x) {
    if (!c1.count(x)) complement.insert(x);
  }
  v.yes = complement == c1p;
  return v;
}

Verdict decide_rotation_phases(const PhaseExp& l1, const PhaseExp& l2, const PhaseExp& l1p,
                               const PhaseExp& l2p, int n, bool theta_algebraic) {
  check_n(n);
  const QTheta eta1 = (l1.r - l1p.r) * Rational(n);
  const QTheta eta2 = (l2.r - l2p.r) * Rational(n);
  // a = delta + k with delta = eta2 - eta1; then (delta + k) theta = eta2 mod Z
  const QTheta delta = eta2 - eta1;
  Verdict v;
  if (delta.q() != 0) {
    if (theta_algebraic) {
      throw UndecidableInModel("rotation phases: the answer depends on an algebraic relation for theta^2 (delta = " +
                               delta.str() + ")");
    }
    return v;
  }
  if (!is_integer(eta2.p()) || !is_integer(eta2.q() - delta.p())) return v;
  v.yes = true;
  v.a = eta2.q();
  if (!verify_rotation(l1, l2, l1p, l2p, n, *v.a)) throw Error("rotation witness failed verification");
  return v;
}

bool verify_rotation(const PhaseExp& l1, const PhaseExp& l2, const PhaseExp& l1p, const PhaseExp& l2p, int n,
                     const Rational& a) {
  const QTheta eta1 = (l1.r - l1p.r) * Rational(n);
  const QTheta eta2 = (l2.r - l2p.r) * Rational(n);
  return integral(eta1 - (QTheta::theta() - QTheta(1)) * a) && integral(eta2 - QTheta::theta() * a);
}

}  // namespace ergocycle::equiv
