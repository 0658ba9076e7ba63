#include "ergocycle/cocycle.hpp"

#include "ergocycle/errors.hpp"
#include "ergocycle/numtheory.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <exception>
#include <thread>

namespace ergocycle::cocycle {

using clockshift::HeisenbergWord;
using dynsys::BernoulliPoint;
using dynsys::BernoulliSystem;
using dynsys::CircleSystem;
using dynsys::MatCylinderFunction;
using dynsys::MatStepFunction;

namespace {

cplx cpow(cplx z, long e) {
  if (e < 0) return cplx(1.0, 0.0) / cpow(z, -e);
  cplx out(1.0, 0.0);
  while (e > 0) {
    if (e & 1) out *= z;
    z *= z;
    e >>= 1;
  }
  return out;
}

long mod(long a, long n) {
  long r = a % n;
  return r < 0 ? r + n : r;
}

}  // namespace

Cocycle Cocycle::make(System system, int n, cplx lambda1, cplx lambda2) {
  if (std::abs(std::abs(lambda1) - 1.0) > 1e-12 || std::abs(std::abs(lambda2) - 1.0) > 1e-12) {
    throw InvalidArgument("cocycle phases must have modulus 1");
  }
  return Cocycle{std::move(system), clockshift::make_clock_pair(n), lambda1, lambda2, false};
}

Cocycle Cocycle::identity(System system, int n) {
  Cocycle c = make(std::move(system), n);
  c.degenerate = true;
  return c;
}

Mat Cocycle::w(const Point& x) const {
  if (degenerate) return Mat::Identity(pair.n, pair.n);
  if (dynsys::in_c(system, x, 0)) return lambda1 * pair.u.adjoint();
  return lambda2 * pair.v.adjoint();
}

Mat WordIterate::matrix(const Cocycle& co) const {
  if (co.degenerate) return Mat::Identity(co.n(), co.n());
  return cpow(co.lambda1, c) * cpow(co.lambda2, d) * word.matrix(co.pair);
}

Point shift_point(const System& sys, const Point& x, long j) {
  if (std::holds_alternative<BernoulliSystem>(sys)) return std::get<BernoulliPoint>(x).shifted(j);
  const Theta& theta = std::get<CircleSystem>(sys).theta;
  return theta.mod1(std::get<QTheta>(x) - QTheta(Rational(0), Rational(j)));
}

WordIterate w_word(const Cocycle& co, const Point& x, long k) {
  WordIterate out;
  if (co.degenerate || k == 0) return out;
  if (k < 0) {
    const long m = -k;
    WordIterate fwd = w_word(co, shift_point(co.system, x, -m), m);
    return {fwd.word.inverse(), -fwd.c, -fwd.d};
  }
  auto letter = [&](bool in) {
    if (in) {
      out.word = out.word * HeisenbergWord::u_star();
      ++out.c;
    } else {
      out.word = out.word * HeisenbergWord::v_star();
      ++out.d;
    }
  };
  if (auto* b = std::get_if<BernoulliSystem>(&co.system)) {
    const auto& p = std::get<BernoulliPoint>(x);
    for (long i = 0; i < k; ++i) {
      if (!p.has_coord(i)) throw DomainError("w_iterate: point lacks coordinate " + std::to_string(i));
      letter(b->in_c1(p.coord(i)));
    }
  } else {
    numtheory::CircleOrbit orbit(std::get<CircleSystem>(co.system).theta, std::get<QTheta>(x));
    for (long i = 0; i < k; ++i, orbit.step()) letter(orbit.in_c());
  }
  return out;
}

Mat w_iterate(const Cocycle& co, const Point& x, long k) { return w_word(co, x, k).matrix(co); }

Observable beta_apply(const Cocycle& co, const Observable& f) {
  const int n = co.n();
  auto conj = [](const Mat& w, const Mat& g) -> Mat { return w * g * w.adjoint(); };
  if (auto* g = std::get_if<MatCylinderFunction>(&f)) {
    if (g->dim() != n) throw InvalidArgument("observable dimension does not match cocycle");
    auto shifted = dynsys::shift_apply(*g, 1);
    if (co.degenerate) return shifted;
    const auto& sys = std::get<BernoulliSystem>(co.system);
    auto w = MatCylinderFunction::indicator(sys.alphabet_size(), 0, sys.c1(), co.lambda1 * co.pair.u.adjoint(),
                                            co.lambda2 * co.pair.v.adjoint());
    return dynsys::combine(w, shifted, conj);
  }
  const auto& g = std::get<MatStepFunction>(f);
  if (g.dim() != n) throw InvalidArgument("observable dimension does not match cocycle");
  auto shifted = dynsys::shift_apply(g, 1);
  if (co.degenerate) return shifted;
  const Theta& theta = std::get<CircleSystem>(co.system).theta;
  auto w = MatStepFunction::indicator(theta, QTheta(), QTheta::theta(), co.lambda1 * co.pair.u.adjoint(),
                                      co.lambda2 * co.pair.v.adjoint());
  return dynsys::combine(w, shifted, conj);
}

std::vector<Point> sample_points(const System& sys, std::size_t count, std::uint64_t seed) {
  std::vector<Point> out;
  out.reserve(count);
  Rng rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    if (auto* b = std::get_if<BernoulliSystem>(&sys)) {
      out.emplace_back(BernoulliPoint(*b, rng()));
    } else {
      const std::uint64_t u = rng() >> 32;
      out.emplace_back(QTheta(Rational(BigInt(u), BigInt(1) << 32)));
    }
  }
  return out;
}

namespace {

struct SampleResult {
  // [observable][checkpoint] deviation
  std::vector<std::vector<double>> dev;
};

// Adds Ad(u^a v^b)(m) into acc.
void add_conjugated(Mat& acc, const Mat& m, long a, long b, const std::vector<cplx>& wpow) {
  const long n = m.rows();
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) {
      acc(i, j) += wpow[static_cast<std::size_t>(mod(a * (i - j), n))] * m(mod(i + b, n), mod(j + b, n));
    }
  }
}

SampleResult run_sample(const Cocycle& co, const std::vector<const Observable*>& fs, const std::vector<cplx>& taus,
                        long n_iters, const std::vector<long>& checkpoints, const Point& x) {
  const int n = co.n();
  std::vector<cplx> wpow(static_cast<std::size_t>(n));
  for (int e = 0; e < n; ++e) wpow[static_cast<std::size_t>(e)] = co.pair.omega_pow(e);

  std::vector<Mat> acc(fs.size(), Mat::Zero(n, n));
  SampleResult res;
  res.dev.assign(fs.size(), std::vector<double>(checkpoints.size(), 0.0));
  std::size_t next_cp = 0;
  long a = 0, b = 0;

  auto record = [&](long terms) {
    while (next_cp < checkpoints.size() && checkpoints[next_cp] == terms) {
      for (std::size_t o = 0; o < fs.size(); ++o) {
        Mat avg = acc[o] / static_cast<double>(terms);
        avg -= taus[o] * Mat::Identity(n, n);
        res.dev[o][next_cp] = op_norm(avg);
      }
      ++next_cp;
    }
  };

  if (auto* bs = std::get_if<BernoulliSystem>(&co.system)) {
    const auto& p = std::get<BernoulliPoint>(x);
    for (long j = 0; j < n_iters; ++j) {
      for (std::size_t o = 0; o < fs.size(); ++o) {
        add_conjugated(acc[o], std::get<MatCylinderFunction>(*fs[o]).at_offset(p, j), a, b, wpow);
      }
      if (!co.degenerate) {
        if (bs->in_c1(p.coord(j))) --a;
        else --b;
      }
      record(j + 1);
    }
    return res;
  }

  const Theta& theta = std::get<CircleSystem>(co.system).theta;
  numtheory::CircleOrbit orbit(theta, std::get<QTheta>(x));
  const double x0 = theta.to_double(orbit.current());
  const double th = theta.value();
  for (long j = 0; j < n_iters; ++j) {
    double xd = x0 - static_cast<double>(j) * th;
    xd -= std::floor(xd);
    for (std::size_t o = 0; o < fs.size(); ++o) {
      const auto& g = std::get<MatStepFunction>(*fs[o]);
      const Mat* v;
      if (auto arc = g.arc_fast(xd)) v = &g.values()[*arc];
      else v = &g.values()[g.arc_of(orbit.current())];
      add_conjugated(acc[o], *v, a, b, wpow);
    }
    if (!co.degenerate) {
      if (orbit.in_c()) --a;
      else --b;
    }
    orbit.step();
    record(j + 1);
  }
  return res;
}

}  // namespace

std::vector<ErgodicityReport> birkhoff_suite(const Cocycle& co,
                                             const std::vector<std::pair<std::string, Observable>>& fs,
                                             long n_iters, const std::vector<Point>& samples,
                                             const BirkhoffOptions& opts) {
  if (n_iters < 1) throw InvalidArgument("birkhoff_test needs N >= 1");
  if (samples.empty()) throw InvalidArgument("birkhoff_test needs at least one sample point");
  const int n = co.n();

  std::vector<long> cps = opts.checkpoints;
  if (cps.empty()) {
    for (long c = 10; c < n_iters; c *= 10) cps.push_back(c);
  }
  cps.erase(std::remove_if(cps.begin(), cps.end(), [&](long c) { return c < 1 || c > n_iters; }), cps.end());
  cps.push_back(n_iters);
  std::sort(cps.begin(), cps.end());
  cps.erase(std::unique(cps.begin(), cps.end()), cps.end());

  std::vector<const Observable*> ptrs;
  std::vector<cplx> taus;
  for (const auto& [name, f] : fs) {
    if (std::holds_alternative<BernoulliSystem>(co.system) != std::holds_alternative<MatCylinderFunction>(f)) {
      throw InvalidArgument("observable '" + name + "' does not match the system type");
    }
    const Mat integral = dynsys::integrate(co.system, f);
    if (integral.rows() != n) throw InvalidArgument("observable '" + name + "' has the wrong fiber dimension");
    ptrs.push_back(&f);
    taus.push_back(integral.trace() / static_cast<double>(n));
  }

  std::vector<SampleResult> results(samples.size());
  unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(samples.size()));
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t s = t; s < samples.size(); s += threads) {
          results[s] = run_sample(co, ptrs, taus, n_iters, cps, samples[s]);
        }
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  const double tol = opts.tol > 0 ? opts.tol : 5.0 / std::sqrt(static_cast<double>(n_iters));
  std::vector<ErgodicityReport> out;
  for (std::size_t o = 0; o < fs.size(); ++o) {
    ErgodicityReport rep;
    rep.observable = fs[o].first;
    rep.n_iters = n_iters;
    rep.samples = samples.size();
    rep.tau = taus[o];
    rep.tol = tol;
    for (std::size_t c = 0; c < cps.size(); ++c) {
      double worst = 0.0;
      for (const auto& r : results) worst = std::max(worst, r.dev[o][c]);
      rep.trace.emplace_back(cps[c], worst);
    }
    rep.deviation = rep.trace.back().second;
    rep.ergodic_consistent = rep.deviation <= tol;
    out.push_back(std::move(rep));
  }
  return out;
}

ErgodicityReport birkhoff_test(const Cocycle& co, const Observable& f, long n_iters,
                               const std::vector<Point>& samples, const BirkhoffOptions& opts) {
  return birkhoff_suite(co, {{"f", f}}, n_iters, samples, opts).front();
}

PeriodicTrivialization trivialize_periodic(const std::vector<Mat>& w, double tol) {
  if (w.empty()) throw InvalidArgument("trivialize_periodic needs k >= 1");
  const long k = static_cast<long>(w.size());
  const auto n = w.front().rows();
  for (const auto& m : w) {
    if (m.rows() != n || !is_unitary(m)) throw DomainError("trivialize_periodic: inputs must be unitary n x n");
  }
  // P = W_k W_{k-1} ... W_1 with W_k = W_0
  Mat p = w[0];
  for (long i = k - 1; i >= 1; --i) p = p * w[static_cast<std::size_t>(i)];

  PeriodicTrivialization out;
  Eigen::ComplexSchur<Mat> schur(p);
  const Mat& t = schur.matrixT();
  Mat d = Mat::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double phase = std::arg(t(i, i));
    if (phase < 0) phase += 2.0 * std::numbers::pi;
    if (phase >= 2.0 * std::numbers::pi) phase = 0.0;
    const double root_phase = phase / static_cast<double>(k);
    d(i, i) = std::polar(1.0, root_phase);
    out.lambda.push_back(d(i, i));
    out.lambda_phase.push_back(root_phase);
  }
  out.z = schur.matrixU() * d * schur.matrixU().adjoint();

  Mat zk = Mat::Identity(n, n);
  for (long i = 0; i < k; ++i) zk = zk * out.z;
  out.max_error = mat_distance(zk, p);

  out.zeta.push_back(Mat::Identity(n, n));
  Mat prev = out.zeta.front();
  for (long i = 1; i <= k; ++i) {
    const Mat& wn = w[static_cast<std::size_t>(i % k)];
    Mat cur = out.z * prev * wn.adjoint();
    if (i == k) {
      // closes the cycle: zeta_k must return to zeta_0
      out.max_error = std::max(out.max_error, mat_distance(cur, out.zeta.front()));
      cur = out.zeta.front();
    } else {
      out.zeta.push_back(cur);
    }
    out.max_error = std::max(out.max_error, mat_distance(cur * wn * prev.adjoint(), out.z));
    prev = cur;
  }
  out.ok = out.max_error <= tol;
  return out;
}

AperiodicTrivialization trivialize_aperiodic(const std::vector<Mat>& w, long lo, double tol) {
  const long hi = lo + static_cast<long>(w.size()) - 1;
  if (w.empty() || lo > 0 || hi < 0) throw InvalidArgument("trivialize_aperiodic: window must contain 0");
  const auto n = w.front().rows();
  for (const auto& m : w) {
    if (m.rows() != n || !is_unitary(m)) throw DomainError("trivialize_aperiodic: inputs must be unitary n x n");
  }
  auto W = [&](long i) -> const Mat& { return w[static_cast<std::size_t>(i - lo)]; };

  AperiodicTrivialization out;
  out.lo = lo;
  out.zeta.assign(w.size(), Mat());
  auto Z = [&](long i) -> Mat& { return out.zeta[static_cast<std::size_t>(i - lo)]; };
  Z(0) = Mat::Identity(n, n);
  for (long i = 1; i <= hi; ++i) Z(i) = Z(i - 1) * W(i).adjoint();
  for (long i = -1; i >= lo; --i) Z(i) = Z(i + 1) * W(i + 1);

  for (long i = lo + 1; i <= hi; ++i) {
    out.max_error = std::max(out.max_error, mat_distance(Z(i) * W(i) * Z(i - 1).adjoint(), Mat::Identity(n, n)));
    ++out.identities;
  }
  out.ok = out.max_error <= tol;
  return out;
}

}  // namespace ergocycle::cocycle
