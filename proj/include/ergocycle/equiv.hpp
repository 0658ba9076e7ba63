#pragma once

#include "ergocycle/numeric.hpp"
#include "ergocycle/qtheta.hpp"

#include <optional>
#include <set>
#include <string>

namespace ergocycle::equiv {

/// Phase e^{2 pi i r} with r in Q + Q theta. Two phases agree iff their
/// exponents differ by an integer.
struct PhaseExp {
  QTheta r;

  PhaseExp() = default;
  PhaseExp(QTheta value) : r(std::move(value)) {}  // NOLINT
};

bool same_phase(const PhaseExp& a, const PhaseExp& b);

struct Verdict {
  bool yes = false;
  std::optional<BigInt> m;    // decide_equiv0 witness
  std::optional<Rational> a;  // decide_rotation_phases witness
};

/// eta = m theta mod Z for an integer m.
Verdict decide_equiv0(const PhaseExp& eta);
bool verify_equiv0(const PhaseExp& eta, const BigInt& m);

/// lambda_i^n = (lambda_i')^n for i = 1, 2.
Verdict decide_bernoulli_phases(const PhaseExp& l1, const PhaseExp& l2, const PhaseExp& l1p,
                                const PhaseExp& l2p, int n);

/// C_1 and C_1' are proper non-empty subsets of {0, .., alphabet-1}; equal
/// sets are rejected.
Verdict decide_bernoulli_w(const std::set<int>& c1, const std::set<int>& c1p, int n, int alphabet);

/// lambda_1^n = e^{2 pi i a(theta-1)} (lambda_1')^n and
/// lambda_2^n = e^{2 pi i a theta} (lambda_2')^n for some real a.
/// With theta_algebraic set, inputs whose answer hinges on theta^2 throw
/// UndecidableInModel; otherwise theta is treated as transcendental.
Verdict decide_rotation_phases(const PhaseExp& l1, const PhaseExp& l2, const PhaseExp& l1p,
                               const PhaseExp& l2p, int n, bool theta_algebraic = false);
bool verify_rotation(const PhaseExp& l1, const PhaseExp& l2, const PhaseExp& l1p, const PhaseExp& l2p, int n,
                     const Rational& a);

}  // namespace ergocycle::equiv
