#include "ergocycle/dynsys.hpp"

#include "ergocycle/errors.hpp"
#include "ergocycle/numtheory.hpp"
#include "ergocycle/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

namespace ergocycle::dynsys {

namespace {

std::vector<double> cumulative_of(const std::vector<Rational>& w) {
  std::vector<double> c;
  Rational acc = 0;
  for (const auto& x : w) {
    acc += x;
    c.push_back(acc.convert_to<double>());
  }
  c.back() = 1.0;
  return c;
}

int symbol_from(const std::vector<double>& cumulative, double u) {
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  if (it == cumulative.end()) --it;
  return static_cast<int>(it - cumulative.begin());
}

std::size_t ipow(std::size_t b, int e) {
  std::size_t out = 1;
  for (int i = 0; i < e; ++i) {
    if (out > SIZE_MAX / b) return SIZE_MAX;
    out *= b;
  }
  return out;
}

}  // namespace

BernoulliSystem::BernoulliSystem(std::vector<Rational> weights, std::set<int> c1)
    : weights_(std::move(weights)), c1_(std::move(c1)) {
  if (weights_.size() < 2) throw InvalidArgument("Bernoulli alphabet needs at least 2 symbols");
  Rational total = 0;
  for (const auto& w : weights_) {
    if (w <= 0) throw InvalidArgument("Bernoulli weights must be strictly positive");
    total += w;
  }
  if (total != 1) throw InvalidArgument("Bernoulli weights must sum to 1, got " + to_string(total));
  if (c1_.empty() || c1_.size() >= weights_.size()) {
    throw InvalidArgument("C_1 must be a proper non-empty subset of the alphabet");
  }
  member_.assign(weights_.size(), false);
  for (int s : c1_) {
    if (s < 0 || s >= alphabet_size()) throw InvalidArgument("C_1 symbol out of range: " + std::to_string(s));
    member_[static_cast<std::size_t>(s)] = true;
  }
  cumulative_ = cumulative_of(weights_);
}

BernoulliSystem BernoulliSystem::fair(int s, std::set<int> c1) {
  if (s < 2) throw InvalidArgument("Bernoulli alphabet needs at least 2 symbols");
  return BernoulliSystem(std::vector<Rational>(static_cast<std::size_t>(s), Rational(1, s)), std::move(c1));
}

int BernoulliSystem::symbol_for(double u) const { return symbol_from(cumulative_, u); }

BernoulliPoint::BernoulliPoint(const BernoulliSystem& sys, std::uint64_t seed)
    : seed_(seed), cumulative_(cumulative_of(sys.weights())) {}

BernoulliPoint::BernoulliPoint(std::vector<int> coords, long lo) {
  for (std::size_t i = 0; i < coords.size(); ++i) fixed_[lo + static_cast<long>(i)] = coords[i];
}

int BernoulliPoint::coord(long i) const {
  const long idx = i + offset_;
  if (auto it = fixed_.find(idx); it != fixed_.end()) return it->second;
  if (!seed_) {
    throw DomainError("Bernoulli point has no coordinate " + std::to_string(idx) +
                      " and no extension rule");
  }
  const std::uint64_t h = split_seed(*seed_, static_cast<std::uint64_t>(idx));
  return symbol_from(cumulative_, static_cast<double>(h >> 11) * 0x1p-53);
}

bool BernoulliPoint::has_coord(long i) const { return seed_.has_value() || fixed_.count(i + offset_) > 0; }

BernoulliPoint BernoulliPoint::shifted(long j) const {
  BernoulliPoint out = *this;
  out.offset_ += j;
  return out;
}

void BernoulliPoint::set(long i, int symbol) { fixed_[i + offset_] = symbol; }

Cylinder Cylinder::word(long lo, const std::vector<int>& symbols) {
  Cylinder c;
  for (std::size_t i = 0; i < symbols.size(); ++i) c.constraints[lo + static_cast<long>(i)] = {symbols[i]};
  return c;
}

Cylinder Cylinder::shifted(long k) const {
  Cylinder c;
  for (const auto& [i, s] : constraints) c.constraints[i + k] = s;
  return c;
}

std::optional<Cylinder> Cylinder::intersect(const Cylinder& o) const {
  Cylinder c = *this;
  for (const auto& [i, s] : o.constraints) {
    auto it = c.constraints.find(i);
    if (it == c.constraints.end()) {
      c.constraints[i] = s;
      continue;
    }
    std::set<int> both;
    std::set_intersection(it->second.begin(), it->second.end(), s.begin(), s.end(),
                          std::inserter(both, both.begin()));
    if (both.empty()) return std::nullopt;
    it->second = std::move(both);
  }
  return c;
}

bool Cylinder::contains(const BernoulliPoint& x) const {
  for (const auto& [i, s] : constraints) {
    if (!s.count(x.coord(i))) return false;
  }
  return true;
}

Rational measure(const BernoulliSystem& sys, const Cylinder& a) {
  Rational out = 1;
  for (const auto& [i, s] : a.constraints) {
    Rational site = 0;
    for (int sym : s) {
      if (sym < 0 || sym >= sys.alphabet_size()) throw InvalidArgument("cylinder symbol out of range");
      site += sys.weights()[static_cast<std::size_t>(sym)];
    }
    out *= site;
  }
  return out;
}

Rational mixing_gap(const BernoulliSystem& sys, const Cylinder& a, const Cylinder& b, long k) {
  auto both = a.intersect(b.shifted(k));
  Rational joint = both ? measure(sys, *both) : Rational(0);
  Rational gap = joint - measure(sys, a) * measure(sys, b);
  return gap < 0 ? Rational(-gap) : gap;
}

MatCylinderFunction::MatCylinderFunction(int alphabet, long lo, int len, std::vector<Mat> table)
    : alphabet_(alphabet), lo_(lo), len_(len), table_(std::move(table)) {
  if (alphabet < 2) throw InvalidArgument("cylinder function alphabet must have >= 2 symbols");
  if (len < 0) throw InvalidArgument("cylinder function window length must be >= 0");
  if (table_.size() != ipow(static_cast<std::size_t>(alphabet), len)) {
    throw InvalidArgument("cylinder function table size does not match window");
  }
  const auto n = table_.front().rows();
  for (const auto& m : table_) {
    if (m.rows() != n || m.cols() != n) throw InvalidArgument("cylinder function values must share one square size");
  }
}

MatCylinderFunction MatCylinderFunction::constant(int alphabet, const Mat& value) {
  return MatCylinderFunction(alphabet, 0, 0, {value});
}

MatCylinderFunction MatCylinderFunction::indicator(int alphabet, long at, const std::set<int>& symbols,
                                                   const Mat& value_if, const Mat& value_else) {
  std::vector<Mat> table;
  for (int s = 0; s < alphabet; ++s) table.push_back(symbols.count(s) ? value_if : value_else);
  return MatCylinderFunction(alphabet, at, 1, std::move(table));
}

const Mat& MatCylinderFunction::operator()(const BernoulliPoint& x) const { return at_offset(x, 0); }

const Mat& MatCylinderFunction::at_offset(const BernoulliPoint& x, long j) const {
  std::size_t idx = 0, place = 1;
  for (int i = 0; i < len_; ++i) {
    idx += static_cast<std::size_t>(x.coord(lo_ + j + i)) * place;
    place *= static_cast<std::size_t>(alphabet_);
  }
  return table_[idx];
}

MatCylinderFunction MatCylinderFunction::extended(long lo, int len, std::size_t budget) const {
  if (len_ > 0 && (lo > lo_ || lo + len < lo_ + len_)) {
    throw InvalidArgument("extended window must contain the current window");
  }
  const std::size_t s = static_cast<std::size_t>(alphabet_);
  const std::size_t size = ipow(s, len);
  if (size > budget) {
    throw BudgetExceeded("cylinder table of " + std::to_string(len) + " coordinates exceeds budget of " +
                         std::to_string(budget) + " entries");
  }
  std::vector<Mat> table;
  table.reserve(size);
  std::vector<int> digits(static_cast<std::size_t>(len), 0);
  for (std::size_t w = 0; w < size; ++w) {
    std::size_t rem = w, old = 0, place = 1;
    for (int i = 0; i < len; ++i) {
      digits[static_cast<std::size_t>(i)] = static_cast<int>(rem % s);
      rem /= s;
    }
    for (int i = 0; i < len_; ++i) {
      old += static_cast<std::size_t>(digits[static_cast<std::size_t>(lo_ + i - lo)]) * place;
      place *= s;
    }
    table.push_back(table_[old]);
  }
  return MatCylinderFunction(alphabet_, lo, len, std::move(table));
}

MatStepFunction::MatStepFunction(Theta theta, std::vector<QTheta> breakpoints, std::vector<Mat> values)
    : theta_(std::move(theta)), breaks_(std::move(breakpoints)), values_(std::move(values)) {
  if (breaks_.empty() || breaks_.size() != values_.size()) {
    throw InvalidArgument("step function needs one value per breakpoint");
  }
  if (!breaks_.front().is_zero()) throw InvalidArgument("step function breakpoints must start at 0");
  for (std::size_t i = 1; i < breaks_.size(); ++i) {
    if (!theta_.less(breaks_[i - 1], breaks_[i])) throw InvalidArgument("step function breakpoints must increase");
  }
  if (!theta_.less(breaks_.back(), QTheta(1))) throw InvalidArgument("step function breakpoints must lie in [0,1)");
  const auto n = values_.front().rows();
  for (const auto& m : values_) {
    if (m.rows() != n || m.cols() != n) throw InvalidArgument("step function values must share one square size");
  }
  for (const auto& b : breaks_) breaks_d_.push_back(theta_.to_double(b));
}

MatStepFunction MatStepFunction::constant(Theta theta, const Mat& value) {
  return MatStepFunction(std::move(theta), {QTheta()}, {value});
}

MatStepFunction MatStepFunction::indicator(Theta theta, const QTheta& a, const QTheta& b, const Mat& value_if,
                                           const Mat& value_else) {
  const QTheta len = b - a;
  if (theta.sign(len) < 0) throw InvalidArgument("indicator arc [a,b) needs a <= b");
  if (len.is_zero()) return constant(std::move(theta), value_else);
  if (theta.sign(len - QTheta(1)) >= 0) return constant(std::move(theta), value_if);
  const QTheta a1 = theta.mod1(a), b1 = theta.mod1(b);
  std::vector<QTheta> pts{QTheta()};
  for (const auto& p : {a1, b1}) {
    if (!p.is_zero() && std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
  }
  std::sort(pts.begin(), pts.end(), [&](const QTheta& x, const QTheta& y) { return theta.less(x, y); });
  const bool wraps = theta.less(b1, a1);
  std::vector<Mat> vals;
  for (const auto& c : pts) {
    bool inside = wraps ? (!theta.less(c, a1) || theta.less(c, b1)) : (!theta.less(c, a1) && theta.less(c, b1));
    vals.push_back(inside ? value_if : value_else);
  }
  return MatStepFunction(std::move(theta), std::move(pts), std::move(vals));
}

std::size_t MatStepFunction::arc_of(const QTheta& x) const {
  const QTheta y = theta_.mod1(x);
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), y,
                             [&](const QTheta& a, const QTheta& b) { return theta_.less(a, b); });
  return static_cast<std::size_t>(it - breaks_.begin()) - 1;
}

Mat MatStepFunction::operator()(const QTheta& x) const { return values_[arc_of(x)]; }

std::optional<std::size_t> MatStepFunction::arc_fast(double xd) const {
  constexpr double kGuard = 1e-9;
  if (xd < kGuard || xd > 1.0 - kGuard) return std::nullopt;
  auto it = std::upper_bound(breaks_d_.begin(), breaks_d_.end(), xd);
  const std::size_t j = static_cast<std::size_t>(it - breaks_d_.begin()) - 1;
  const bool near_left = xd - breaks_d_[j] < kGuard;
  const bool near_right = j + 1 < breaks_d_.size() && breaks_d_[j + 1] - xd < kGuard;
  if (near_left || near_right) return std::nullopt;
  return j;
}

const Mat& MatStepFunction::eval_near(const QTheta& x, double xd) const {
  if (auto j = arc_fast(xd)) return values_[*j];
  return values_[arc_of(x)];
}

std::vector<QTheta> MatStepFunction::arc_lengths() const {
  std::vector<QTheta> out;
  for (std::size_t j = 0; j < breaks_.size(); ++j) {
    const QTheta right = j + 1 < breaks_.size() ? breaks_[j + 1] : QTheta(1);
    out.push_back(right - breaks_[j]);
  }
  return out;
}

namespace {

std::vector<QTheta> sorted_unique(const Theta& theta, std::vector<QTheta> pts) {
  std::sort(pts.begin(), pts.end(), [&](const QTheta& a, const QTheta& b) { return theta.less(a, b); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace

MatStepFunction combine(const MatStepFunction& f, const MatStepFunction& g,
                        const std::function<Mat(const Mat&, const Mat&)>& op) {
  const Theta& theta = f.theta();
  std::vector<QTheta> pts = f.breakpoints();
  pts.insert(pts.end(), g.breakpoints().begin(), g.breakpoints().end());
  pts = sorted_unique(theta, std::move(pts));
  std::vector<Mat> vals;
  vals.reserve(pts.size());
  for (const auto& c : pts) vals.push_back(op(f(c), g(c)));
  return MatStepFunction(theta, std::move(pts), std::move(vals));
}

MatCylinderFunction combine(const MatCylinderFunction& f, const MatCylinderFunction& g,
                            const std::function<Mat(const Mat&, const Mat&)>& op, std::size_t budget) {
  if (f.alphabet() != g.alphabet()) throw InvalidArgument("cylinder functions over different alphabets");
  long lo, hi;
  if (f.len() == 0) {
    lo = g.lo();
    hi = g.lo() + g.len();
  } else if (g.len() == 0) {
    lo = f.lo();
    hi = f.lo() + f.len();
  } else {
    lo = std::min(f.lo(), g.lo());
    hi = std::max(f.lo() + f.len(), g.lo() + g.len());
  }
  const int len = static_cast<int>(hi - lo);
  auto fe = f.extended(lo, len, budget);
  auto ge = g.extended(lo, len, budget);
  std::vector<Mat> table;
  table.reserve(fe.table().size());
  for (std::size_t i = 0; i < fe.table().size(); ++i) table.push_back(op(fe.table()[i], ge.table()[i]));
  return MatCylinderFunction(f.alphabet(), lo, len, std::move(table));
}

MatCylinderFunction shift_apply(const MatCylinderFunction& f, long k) {
  return MatCylinderFunction(f.alphabet(), f.lo() + k, f.len(), f.table());
}

MatStepFunction shift_apply(const MatStepFunction& f, long k) {
  if (k == 0) return f;
  const Theta& theta = f.theta();
  const QTheta kt(Rational(0), Rational(k));
  std::vector<QTheta> pts{QTheta()};
  for (const auto& b : f.breakpoints()) pts.push_back(theta.mod1(b + kt));
  pts = sorted_unique(theta, std::move(pts));
  std::vector<Mat> vals;
  vals.reserve(pts.size());
  for (const auto& c : pts) vals.push_back(f(c - kt));
  return MatStepFunction(theta, std::move(pts), std::move(vals));
}

Observable shift_apply(const System& sys, const Observable& f, long k) {
  (void)sys;
  return std::visit([k](const auto& g) -> Observable { return shift_apply(g, k); }, f);
}

Mat integrate(const BernoulliSystem& sys, const MatCylinderFunction& f) {
  if (f.alphabet() != sys.alphabet_size()) throw InvalidArgument("observable alphabet does not match system");
  std::vector<double> w;
  for (const auto& x : sys.weights()) w.push_back(x.convert_to<double>());
  const std::size_t s = w.size();
  Mat out = Mat::Zero(f.dim(), f.dim());
  for (std::size_t idx = 0; idx < f.table().size(); ++idx) {
    double p = 1.0;
    std::size_t rem = idx;
    for (int i = 0; i < f.len(); ++i) {
      p *= w[rem % s];
      rem /= s;
    }
    out += p * f.table()[idx];
  }
  return out;
}

Mat integrate(const CircleSystem& sys, const MatStepFunction& f) {
  Mat out = Mat::Zero(f.dim(), f.dim());
  auto lens = f.arc_lengths();
  for (std::size_t j = 0; j < lens.size(); ++j) out += sys.theta.to_double(lens[j]) * f.values()[j];
  return out;
}

Mat integrate(const System& sys, const Observable& f) {
  if (auto* b = std::get_if<BernoulliSystem>(&sys)) {
    auto* g = std::get_if<MatCylinderFunction>(&f);
    if (!g) throw InvalidArgument("Bernoulli system needs a cylinder-function observable");
    return integrate(*b, *g);
  }
  auto* g = std::get_if<MatStepFunction>(&f);
  if (!g) throw InvalidArgument("circle system needs a step-function observable");
  return integrate(std::get<CircleSystem>(sys), *g);
}

Mat evaluate(const Observable& f, const Point& x) {
  if (auto* g = std::get_if<MatCylinderFunction>(&f)) {
    auto* p = std::get_if<BernoulliPoint>(&x);
    if (!p) throw InvalidArgument("cylinder function needs a Bernoulli point");
    return (*g)(*p);
  }
  auto* p = std::get_if<QTheta>(&x);
  if (!p) throw InvalidArgument("step function needs a circle point");
  return std::get<MatStepFunction>(f)(*p);
}

bool in_c(const System& sys, const Point& x, long i) {
  if (auto* b = std::get_if<BernoulliSystem>(&sys)) {
    return b->in_c1(std::get<BernoulliPoint>(x).coord(i));
  }
  const Theta& theta = std::get<CircleSystem>(sys).theta;
  const QTheta y = theta.mod1(std::get<QTheta>(x) - QTheta(Rational(0), Rational(i)));
  return theta.less(y, QTheta::theta());
}

std::pair<long, long> count_cd(const System& sys, const Point& x, long k) {
  if (k < 0) throw InvalidArgument("count_cd needs k >= 0");
  long c = 0;
  if (auto* b = std::get_if<BernoulliSystem>(&sys)) {
    const auto& p = std::get<BernoulliPoint>(x);
    for (long i = 0; i < k; ++i) {
      if (!p.has_coord(i)) throw DomainError("count_cd: point lacks coordinate " + std::to_string(i));
      if (b->in_c1(p.coord(i))) ++c;
    }
  } else {
    c = numtheory::rotation_count(std::get<CircleSystem>(sys).theta, std::get<QTheta>(x), k);
  }
  return {c, k - c};
}

SpecialCylinder special_cylinder_s(int n, const BernoulliSystem& sys) {
  if (n < 2) throw InvalidArgument("special cylinder needs n >= 2");
  int in_sym = *sys.c1().begin();
  int out_sym = -1;
  for (int s = 0; s < sys.alphabet_size(); ++s) {
    if (!sys.in_c1(s)) {
      out_sym = s;
      break;
    }
  }
  SpecialCylinder out;
  out.n = n;
  for (int i = 0; i < n; ++i) out.pattern.push_back(in_sym);
  for (int block = 1; block < n; ++block) {
    out.pattern.push_back(out_sym);
    for (int i = 0; i < n - 1; ++i) out.pattern.push_back(in_sym);
  }
  out.cylinder = Cylinder::word(0, out.pattern);

  std::set<std::pair<long, long>> seen;
  long c = 0;
  const long total = static_cast<long>(out.pattern.size());
  for (long k = 0; k <= total; ++k) {
    if (k > 0 && sys.in_c1(out.pattern[static_cast<std::size_t>(k - 1)])) ++c;
    std::pair<long, long> pr{c % n, (k - c) % n};
    out.pairs.push_back(pr);
    seen.insert(pr);
    if (seen.size() == static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
      out.k_needed = k;
      out.exhaustive = true;
      break;
    }
  }
  return out;
}

}  // namespace ergocycle::dynsys
