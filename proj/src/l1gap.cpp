#include "ergocycle/l1gap.hpp"

#include "ergocycle/errors.hpp"

#include <algorithm>
#include <cmath>

namespace ergocycle::l1gap {

using dynsys::BernoulliSystem;
using dynsys::CircleSystem;
using dynsys::MatCylinderFunction;
using dynsys::MatStepFunction;
using Op = std::function<Mat(const Mat&, const Mat&)>;

namespace {

Observable combine_obs(const Observable& f, const Observable& g, const Op& op) {
  if (auto* a = std::get_if<MatStepFunction>(&f)) {
    auto* b = std::get_if<MatStepFunction>(&g);
    if (!b) throw InvalidArgument("cannot combine a step function with a cylinder function");
    return dynsys::combine(*a, *b, op);
  }
  auto* b = std::get_if<MatCylinderFunction>(&g);
  if (!b) throw InvalidArgument("cannot combine a cylinder function with a step function");
  return dynsys::combine(std::get<MatCylinderFunction>(f), *b, op);
}

const std::vector<Mat>& values_of(const Observable& f) {
  if (auto* a = std::get_if<MatStepFunction>(&f)) return a->values();
  return std::get<MatCylinderFunction>(f).table();
}

Observable constant_obs(const dynsys::System& sys, const Mat& m) {
  if (auto* b = std::get_if<BernoulliSystem>(&sys)) return MatCylinderFunction::constant(b->alphabet_size(), m);
  return MatStepFunction::constant(std::get<CircleSystem>(sys).theta, m);
}

Mat column_matrix(const Eigen::VectorXcd& eta) {
  Mat m = Mat::Zero(eta.size(), eta.size());
  m.col(0) = eta;
  return m;
}

double measure_of(const dynsys::System& sys, const Observable& f) {
  return dynsys::integrate(sys, f)(0, 0).real();
}

}  // namespace

double l1_norm(const L1Element& s) {
  double total = 0.0;
  for (const auto& [k, a] : s.coeffs) {
    double sup = 0.0;
    for (const auto& v : values_of(a)) sup = std::max(sup, std::abs(v(0, 0)));
    total += sup;
  }
  return total;
}

RepVector constant_vector(const dynsys::System& sys, const Eigen::VectorXcd& eta) {
  return constant_obs(sys, column_matrix(eta));
}

RepVector tensor_vector(const Observable& xi, const Eigen::VectorXcd& eta) {
  const Mat col = column_matrix(eta);
  if (auto* a = std::get_if<MatStepFunction>(&xi)) {
    return dynsys::combine(*a, MatStepFunction::constant(a->theta(), col),
                           [](const Mat& s, const Mat& c) -> Mat { return s(0, 0) * c; });
  }
  const auto& c = std::get<MatCylinderFunction>(xi);
  return dynsys::combine(c, MatCylinderFunction::constant(c.alphabet(), col),
                         [](const Mat& s, const Mat& v) -> Mat { return s(0, 0) * v; });
}

double l2_norm(const dynsys::System& sys, const RepVector& phi) {
  auto sq = combine_obs(phi, phi, [](const Mat& a, const Mat& b) -> Mat {
    Mat out(1, 1);
    out(0, 0) = (a.adjoint() * b).trace();
    return out;
  });
  return std::sqrt(std::max(0.0, measure_of(sys, sq)));
}

double l2_distance(const dynsys::System& sys, const RepVector& a, const RepVector& b) {
  return l2_norm(sys, combine_obs(a, b, [](const Mat& x, const Mat& y) -> Mat { return x - y; }));
}

Observable w_observable(const cocycle::Cocycle& co, long k) {
  const int n = co.n();
  if (co.degenerate || k == 0) return constant_obs(co.system, Mat::Identity(n, n));
  const Mat on_c = co.lambda1 * co.pair.u.adjoint();
  const Mat on_d = co.lambda2 * co.pair.v.adjoint();
  const Observable w = [&]() -> Observable {
    if (auto* b = std::get_if<BernoulliSystem>(&co.system)) {
      return MatCylinderFunction::indicator(b->alphabet_size(), 0, b->c1(), on_c, on_d);
    }
    return MatStepFunction::indicator(std::get<CircleSystem>(co.system).theta, QTheta(), QTheta::theta(), on_c,
                                      on_d);
  }();
  const Op mul = [](const Mat& a, const Mat& b) -> Mat { return a * b; };
  const Op mul_adj = [](const Mat& a, const Mat& b) -> Mat { return a * b.adjoint(); };
  if (k > 0) {
    Observable acc = w;
    for (long i = 1; i < k; ++i) acc = combine_obs(acc, dynsys::shift_apply(co.system, w, i), mul);
    return acc;
  }
  Observable acc = constant_obs(co.system, Mat::Identity(n, n));
  for (long i = 1; i <= -k; ++i) acc = combine_obs(acc, dynsys::shift_apply(co.system, w, -i), mul_adj);
  return acc;
}

RepVector apply_rep(const L1Element& s, const cocycle::Cocycle& co, const RepVector& phi) {
  const int n = co.n();
  RepVector out = constant_obs(co.system, Mat::Zero(n, n));
  for (const auto& [k, a] : s.coeffs) {
    auto moved = combine_obs(w_observable(co, k), dynsys::shift_apply(co.system, phi, k),
                             [](const Mat& w, const Mat& p) -> Mat { return w * p; });
    auto term = combine_obs(a, moved, [](const Mat& f, const Mat& v) -> Mat { return f(0, 0) * v; });
    out = combine_obs(out, term, [](const Mat& x, const Mat& y) -> Mat { return x + y; });
  }
  return out;
}

LowerBoundReport lower_bound_check(const L1Element& s, const cocycle::Cocycle& co, const Observable& a_set,
                                   const Eigen::VectorXcd& eta) {
  LowerBoundReport rep;
  const auto& sys = co.system;
  if (eta.size() != co.n()) throw InvalidArgument("fiber vector dimension does not match cocycle");
  rep.l1 = l1_norm(s);
  rep.mu_a = measure_of(sys, a_set);
  if (rep.mu_a <= 0.0) return rep;
  const double scale = 1.0 / std::sqrt(rep.mu_a);
  auto target_scalar = std::visit(
      [&](const auto& f) -> Observable {
        using F = std::decay_t<decltype(f)>;
        Mat sc(1, 1);
        sc(0, 0) = scale;
        if constexpr (std::is_same_v<F, MatStepFunction>) {
          return dynsys::combine(f, MatStepFunction::constant(f.theta(), sc),
                                 [](const Mat& x, const Mat& c) -> Mat { return x * c(0, 0); });
        } else {
          return dynsys::combine(f, MatCylinderFunction::constant(f.alphabet(), sc),
                                 [](const Mat& x, const Mat& c) -> Mat { return x * c(0, 0); });
        }
      },
      a_set);
  const RepVector psi = apply_rep(s, co, constant_vector(sys, eta));
  rep.residual = l2_distance(sys, psi, tensor_vector(target_scalar, eta));
  rep.applicable = rep.residual <= 1e-8;
  for (const auto& [k, a] : s.coeffs) {
    double sup = 0.0;
    for (const auto& v : values_of(a)) sup = std::max(sup, std::abs(v(0, 0)));
    const double mu_minus = measure_of(sys, dynsys::shift_apply(sys, a_set, -k));
    const double mu_plus = measure_of(sys, dynsys::shift_apply(sys, a_set, k));
    rep.middle += sup * std::sqrt(std::max(0.0, mu_minus));
    rep.sup_mu_shift = std::max(rep.sup_mu_shift, mu_plus);
  }
  rep.implied_bound = rep.sup_mu_shift > 0 ? 1.0 / std::sqrt(rep.sup_mu_shift) : 0.0;
  constexpr double slack = 1e-9;
  rep.chain_holds = rep.applicable && 1.0 <= rep.middle + slack &&
                    rep.middle <= rep.l1 * std::sqrt(rep.sup_mu_shift) + slack;
  return rep;
}

IntervalInstance interval_instance(const cocycle::Cocycle& co, const Rational& eps, long support, Rng& rng) {
  auto* circle = std::get_if<CircleSystem>(&co.system);
  if (!circle) throw InvalidArgument("interval instances live on the circle");
  if (eps <= 0 || eps > 1) throw InvalidArgument("eps must lie in (0, 1]");
  if (support < 0) throw InvalidArgument("support radius must be >= 0");
  const Theta& theta = circle->theta;
  const QTheta x0(Rational(static_cast<long>(uniform_index(rng, 256)), 256));
  Eigen::VectorXcd eta = Eigen::VectorXcd::Zero(co.n());
  eta(0) = 1.0;
  Mat one = Mat::Ones(1, 1), zero = Mat::Zero(1, 1);
  const MatStepFunction a_ind = eps == 1 ? MatStepFunction::constant(theta, one)
                                         : MatStepFunction::indicator(theta, x0, x0 + QTheta(eps), one, zero);

  std::vector<long> ks;
  std::vector<MatStepFunction> ws;
  std::vector<QTheta> pts = a_ind.breakpoints();
  for (long k = -support; k <= support; ++k) {
    ks.push_back(k);
    ws.push_back(std::get<MatStepFunction>(w_observable(co, k)));
    pts.insert(pts.end(), ws.back().breakpoints().begin(), ws.back().breakpoints().end());
  }
  std::sort(pts.begin(), pts.end(), [&](const QTheta& a, const QTheta& b) { return theta.less(a, b); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  const double height = 1.0 / std::sqrt(eps.convert_to<double>());
  std::vector<std::vector<Mat>> vals(ks.size());
  for (const auto& c : pts) {
    const bool inside = a_ind(c)(0, 0).real() > 0.5;
    std::vector<cplx> coef(ks.size());
    std::vector<double> weight(ks.size(), 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < ks.size(); ++i) {
      coef[i] = ws[i](c)(0, 0);
      if (inside && std::abs(coef[i]) > 0.5) {
        weight[i] = 0.05 + uniform01(rng);
        total += weight[i];
      }
    }
    for (std::size_t i = 0; i < ks.size(); ++i) {
      Mat v = Mat::Zero(1, 1);
      if (weight[i] > 0) v(0, 0) = weight[i] / total * height * std::conj(coef[i]);
      vals[i].push_back(v);
    }
  }
  L1Element s;
  for (std::size_t i = 0; i < ks.size(); ++i) s.coeffs.emplace(ks[i], MatStepFunction(theta, pts, vals[i]));
  return IntervalInstance{std::move(s), a_ind, eta, eps, x0};
}

IntervalDemo interval_demo(const cocycle::Cocycle& co, const Rational& eps, std::size_t instances,
                           std::uint64_t seed) {
  IntervalDemo demo;
  demo.eps = eps;
  demo.bound = 1.0 / std::sqrt(eps.convert_to<double>());
  demo.instances = instances;
  demo.all_hold = instances > 0;
  demo.min_l1 = instances > 0 ? INFINITY : 0.0;
  Rng rng(seed);
  for (std::size_t i = 0; i < instances; ++i) {
    const long support = 1 + static_cast<long>(uniform_index(rng, 3));
    const IntervalInstance inst = interval_instance(co, eps, support, rng);
    const LowerBoundReport rep = lower_bound_check(inst.s, co, inst.a_set, inst.eta);
    if (rep.applicable) ++demo.applicable;
    demo.min_l1 = std::min(demo.min_l1, rep.l1);
    demo.all_hold = demo.all_hold && rep.applicable && rep.chain_holds && rep.l1 >= demo.bound - 1e-9;
  }
  return demo;
}

AtomicReport atomic_obstruction(long k_max) {
  if (k_max < 1) throw InvalidArgument("atomic obstruction needs K >= 1");
  AtomicReport rep;
  rep.k_max = k_max;
  rep.bound = 0;
  for (long k = 1; k <= k_max; ++k) {
    rep.bound += Rational(1, k);
    rep.forced.push_back(Rational(1, k));
  }
  rep.bound_double = rep.bound.convert_to<double>();
  // minimal S: a_k = k^{-1} at the site k, zero elsewhere; applied to xi_0
  // on the window 0..K of l^2(Z)
  const std::size_t width = static_cast<std::size_t>(k_max) + 1;
  std::vector<Rational> xi0(width, 0), out(width, 0);
  xi0[0] = 1;
  rep.achieved = 0;
  for (long k = 1; k <= k_max; ++k) {
    std::vector<Rational> a(width, 0);
    a[static_cast<std::size_t>(k)] = Rational(1, k);
    rep.achieved += Rational(1, k);  // sup |a_k|
    for (std::size_t j = static_cast<std::size_t>(k); j < width; ++j) {
      out[j] += a[j] * xi0[j - static_cast<std::size_t>(k)];
    }
  }
  rep.target_matched = out[0] == 0;
  for (long k = 1; k <= k_max; ++k) {
    rep.target_matched = rep.target_matched && out[static_cast<std::size_t>(k)] == Rational(1, k);
  }
  return rep;
}

}  // namespace ergocycle::l1gap
