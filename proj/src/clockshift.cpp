#include "ergocycle/clockshift.hpp"

#include "ergocycle/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <cmath>
#include <numbers>

namespace ergocycle {

namespace {

long mod(long a, long n) {
  long r = a % n;
  return r < 0 ? r + n : r;
}

}  // namespace

double op_norm(const Mat& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(a);
  return svd.singularValues()(0);
}

bool is_unitary(const Mat& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return op_norm(a.adjoint() * a - Mat::Identity(a.rows(), a.cols())) <= tol;
}

Mat random_matrix(int n, Rng& rng) {
  Mat g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double re = normal01(rng);
      double im = normal01(rng);
      g(i, j) = cplx(re, im);
    }
  }
  return g;
}

Mat random_unitary(int n, Rng& rng) {
  Mat g = random_matrix(n, rng);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ() * Mat::Identity(n, n);
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

namespace clockshift {

cplx ClockPair::omega_pow(long j) const {
  const long e = mod(j, n);
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(e) / n);
}

Mat ClockPair::u_pow(long a) const {
  Mat out = Mat::Zero(n, n);
  for (int j = 0; j < n; ++j) out(j, j) = omega_pow(a * j);
  return out;
}

Mat ClockPair::v_pow(long b) const {
  Mat out = Mat::Zero(n, n);
  const long e = mod(b, n);
  // v^b e_j = e_{j-b}
  for (int j = 0; j < n; ++j) out(mod(j - e, n), j) = 1.0;
  return out;
}

ClockPair make_clock_pair(int n) {
  if (n < 1) throw InvalidArgument("clock pair dimension must be >= 1, got " + std::to_string(n));
  ClockPair p;
  p.n = n;
  p.omega = std::polar(1.0, 2.0 * std::numbers::pi / n);
  p.u = p.u_pow(1);
  p.v = p.v_pow(1);
  return p;
}

HeisenbergWord HeisenbergWord::reduced(int n) const { return {mod(s, n), mod(a, n), mod(b, n)}; }

Mat HeisenbergWord::matrix(const ClockPair& pair) const {
  return pair.omega_pow(s) * (pair.u_pow(a) * pair.v_pow(b));
}

HeisenbergWord reduce_word(const std::string& word) {
  HeisenbergWord w;
  for (char c : word) {
    switch (c) {
      case 'u': w = w * HeisenbergWord::u(); break;
      case 'v': w = w * HeisenbergWord::v(); break;
      case 'U': w = w * HeisenbergWord::u_star(); break;
      case 'V': w = w * HeisenbergWord::v_star(); break;
      default: throw InvalidArgument(std::string("word letter must be one of u,v,U,V, got '") + c + "'");
    }
  }
  return w;
}

Mat word_matrix(const std::string& word, const ClockPair& pair) {
  Mat out = Mat::Identity(pair.n, pair.n);
  for (char c : word) {
    switch (c) {
      case 'u': out = out * pair.u; break;
      case 'v': out = out * pair.v; break;
      case 'U': out = out * pair.u.adjoint(); break;
      case 'V': out = out * pair.v.adjoint(); break;
      default: throw InvalidArgument(std::string("word letter must be one of u,v,U,V, got '") + c + "'");
    }
  }
  return out;
}

std::size_t commutant_dim(const std::vector<Mat>& mats, int n) {
  if (mats.empty()) return static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  n = static_cast<int>(mats.front().rows());
  const int nn = n * n;
  Mat system(static_cast<Eigen::Index>(mats.size()) * nn, nn);
  const Mat id = Mat::Identity(n, n);
  for (std::size_t t = 0; t < mats.size(); ++t) {
    const Mat& m = mats[t];
    if (m.rows() != n || m.cols() != n) throw InvalidArgument("commutant_dim: matrices must share one size");
    // column-major vec: vec(XM - MX) = (M^T (x) I - I (x) M) vec(X)
    Mat block = Mat::Zero(nn, nn);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        block.block(i * n, j * n, n, n) += m(j, i) * id;
        if (i == j) block.block(i * n, j * n, n, n) -= m;
      }
    }
    system.block(static_cast<Eigen::Index>(t) * nn, 0, nn, nn) = block;
  }
  Eigen::JacobiSVD<Mat> svd(system);
  const auto& sv = svd.singularValues();
  const double cut = 1e-9 * std::max(1.0, sv(0));
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cut) ++rank;
  }
  return static_cast<std::size_t>(nn) - rank;
}

std::vector<Mat> gamma_orbit(const Mat& t0, const ClockPair& pair, double tol) {
  std::vector<Mat> out;
  for (int p = 0; p < pair.n; ++p) {
    for (int q = 0; q < pair.n; ++q) {
      Mat g = pair.u_pow(p) * pair.v_pow(q);
      Mat t = g * t0 * g.adjoint();
      bool seen = false;
      for (const auto& o : out) {
        if (mat_distance(o, t) <= tol) {
          seen = true;
          break;
        }
      }
      if (!seen) out.push_back(std::move(t));
    }
  }
  return out;
}

Mat phi_apply(int which, const Mat& zeta, const ClockPair& pair) {
  switch (which) {
    case 1: return pair.u * zeta * pair.u.adjoint();
    case 2: return pair.v * zeta * pair.v.adjoint();
    case 3: return pair.u * zeta * pair.v.adjoint();
    case 4: return pair.v * zeta * pair.u.adjoint();
    default: throw InvalidArgument("phi index must be 1..4, got " + std::to_string(which));
  }
}

Mat phi_power(int which, const Mat& zeta, const ClockPair& pair, long k) {
  switch (which) {
    case 1: return pair.u_pow(k) * zeta * pair.u_pow(-k);
    case 2: return pair.v_pow(k) * zeta * pair.v_pow(-k);
    case 3: return pair.u_pow(k) * zeta * pair.v_pow(-k);
    case 4: return pair.v_pow(k) * zeta * pair.u_pow(-k);
    default: throw InvalidArgument("phi index must be 1..4, got " + std::to_string(which));
  }
}

int phi_commutation_exponent(int i, int j) {
  static const int table[5][5] = {
      {0, 0, 0, 0, 0},
      {0, 0, 0, 1, -1},
      {0, 0, 0, 1, -1},
      {0, -1, -1, 0, -2},
      {0, 1, 1, 2, 0},
  };
  if (i < 1 || i > 4 || j < 1 || j > 4) throw InvalidArgument("phi index must be 1..4");
  return table[i][j];
}

PhiRelationsReport phi_relations_check(const ClockPair& pair, std::size_t trials, std::uint64_t seed,
                                       double tol) {
  PhiRelationsReport rep;
  rep.n = pair.n;
  rep.trials = trials;
  Rng rng(seed);

  std::vector<RelationCheck> checks;
  for (int i = 1; i <= 4; ++i) {
    for (int j = i + 1; j <= 4; ++j) {
      checks.push_back({"phi" + std::to_string(i) + "phi" + std::to_string(j), 0.0});
    }
  }
  for (int i = 1; i <= 4; ++i) checks.push_back({"phi" + std::to_string(i) + "^n=id", 0.0});
  checks.push_back({"phi3^k closed form", 0.0});
  checks.push_back({"phi4^k closed form", 0.0});

  auto iterate = [&](int which, const Mat& z, long k) {
    Mat out = z;
    for (long t = 0; t < k; ++t) out = phi_apply(which, out, pair);
    return out;
  };

  for (std::size_t t = 0; t < trials; ++t) {
    const Mat zeta = random_matrix(pair.n, rng);
    const double scale = std::max(1.0, op_norm(zeta));
    std::size_t c = 0;
    for (int i = 1; i <= 4; ++i) {
      for (int j = i + 1; j <= 4; ++j, ++c) {
        Mat lhs = phi_apply(i, phi_apply(j, zeta, pair), pair);
        Mat rhs = pair.omega_pow(phi_commutation_exponent(i, j)) * phi_apply(j, phi_apply(i, zeta, pair), pair);
        checks[c].max_error = std::max(checks[c].max_error, mat_distance(lhs, rhs) / scale);
      }
    }
    for (int i = 1; i <= 4; ++i, ++c) {
      checks[c].max_error = std::max(checks[c].max_error, mat_distance(iterate(i, zeta, pair.n), zeta) / scale);
    }
    for (int which : {3, 4}) {
      double worst = 0.0;
      for (long k = 1; k <= pair.n; ++k) {
        const Mat& a = which == 3 ? pair.u : pair.v;
        const Mat& b = which == 3 ? pair.v : pair.u;
        Mat ak = Mat::Identity(pair.n, pair.n), bk = ak;
        for (long s = 0; s < k; ++s) {
          ak = ak * a;
          bk = bk * b;
        }
        // phi^k(z) = Ad a^k (z) a^k b^{-k}
        Mat closed = ak * zeta * ak.adjoint() * ak * bk.adjoint();
        worst = std::max(worst, mat_distance(iterate(which, zeta, k), closed) / scale);
      }
      checks[c].max_error = std::max(checks[c].max_error, worst);
      ++c;
    }
  }
  rep.max_error = 0.0;
  for (const auto& ch : checks) rep.max_error = std::max(rep.max_error, ch.max_error);
  rep.checks = std::move(checks);
  rep.ok = rep.max_error <= tol;
  return rep;
}

Mat hadamard() {
  Mat h(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  h << s, s, s, -s;
  return h;
}

Mat matrix_kth_root(const Mat& p, long k) {
  if (k < 1) throw InvalidArgument("matrix_kth_root needs k >= 1");
  if (p.rows() != p.cols()) throw DomainError("matrix_kth_root: matrix is not square");
  if (!is_unitary(p)) throw DomainError("matrix_kth_root: input is not unitary");
  if (k == 1) return p;
  const Eigen::Index n = p.rows();
  Eigen::ComplexSchur<Mat> schur(p);
  const Mat& t = schur.matrixT();
  const Mat& q = schur.matrixU();
  Mat d = Mat::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double phase = std::arg(t(i, i));
    if (phase <= -std::numbers::pi + 1e-12) phase = std::numbers::pi;
    d(i, i) = std::polar(1.0, phase / static_cast<double>(k));
  }
  return q * d * q.adjoint();
}

}  // namespace clockshift
}  // namespace ergocycle
