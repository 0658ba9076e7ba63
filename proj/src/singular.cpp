#include "ergocycle/singular.hpp"

#include "ergocycle/errors.hpp"
#include "ergocycle/numtheory.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ergocycle::singular {

namespace {

QTheta qabs(const Theta& theta, const QTheta& x) { return theta.abs(x); }

}  // namespace

CantorChart::CantorChart(Theta theta, std::size_t depth) : theta_(std::move(theta)) {
  if (depth < 1) throw InvalidArgument("chart depth must be >= 1");
  m_ = numtheory::select_mi(theta_, depth);
  build();
}

CantorChart::CantorChart(Theta theta, std::vector<BigInt> m_list) : theta_(std::move(theta)), m_(std::move(m_list)) {
  if (m_.empty()) throw InvalidArgument("chart needs at least one m_i");
  build();
}

void CantorChart::build() {
  t_.clear();
  td_.clear();
  QTheta bound(Rational(1, 3));
  for (std::size_t i = 0; i < m_.size(); ++i) {
    if (i > 0 && m_[i] <= m_[i - 1]) throw InvalidArgument("m_i must be strictly increasing");
    QTheta t = numtheory::signed_fraction(theta_, m_[i]);
    QTheta at = qabs(theta_, t);
    if (!theta_.less(at, bound)) {
      throw InvalidArgument("m_" + std::to_string(i + 1) + " = " + m_[i].str() + " violates the 1/3 contraction");
    }
    bound = at * Rational(1, 3);
    t_.push_back(t);
    td_.push_back(theta_.to_double(t));
  }
  const std::size_t d = m_.size();
  tail_.assign(d + 1, QTheta());
  tail_[d] = qabs(theta_, t_[d - 1]) * Rational(1, 2);
  for (std::size_t n = d; n-- > 0;) tail_[n] = tail_[n + 1] + qabs(theta_, t_[n]);
}

QTheta CantorChart::a_partial(std::size_t n) const {
  QTheta out;
  for (std::size_t i = n + 1; i <= depth(); ++i) {
    if (theta_.sign(t(i)) < 0) out += t(i);
  }
  return out;
}

QTheta CantorChart::b_partial(std::size_t n) const {
  QTheta out;
  for (std::size_t i = n + 1; i <= depth(); ++i) {
    if (theta_.sign(t(i)) > 0) out += t(i);
  }
  return out;
}

PhiValue phi_map(const CantorChart& chart, const std::vector<int>& bits, std::size_t depth) {
  if (depth > chart.depth()) throw InvalidArgument("phi_map depth exceeds chart depth");
  PhiValue out;
  for (std::size_t i = 1; i <= depth && i <= bits.size(); ++i) {
    const int b = bits[i - 1];
    if (b != 0 && b != 1) throw InvalidArgument("phi_map bits must be 0 or 1");
    if (b) out.value += chart.t(i);
  }
  out.value_double = chart.theta().to_double(out.value);
  out.error_bound = chart.tail_double(depth);
  return out;
}

PhiValue phi_map(const CantorChart& chart, const std::vector<int>& bits) {
  return phi_map(chart, bits, std::min(bits.size(), chart.depth()));
}

SignedDigits decode_digits(const CantorChart& chart, const QTheta& t) {
  const Theta& theta = chart.theta();
  QTheta r = theta.frac_rep(t);
  SignedDigits out;
  for (std::size_t i = 1; i <= chart.depth(); ++i) {
    if (r.is_zero()) break;
    const QTheta& ti = chart.t(i);
    const QTheta& tail = chart.tail(i);
    int chosen = 2;
    for (int lam : {0, 1, -1}) {
      QTheta rest = r - ti * Rational(lam);
      if (theta.sign(tail - theta.abs(rest)) >= 0) {
        chosen = lam;
        r = rest;
        break;
      }
    }
    if (chosen == 2) {
      out.status = DecodeStatus::NotRepresentable;
      out.failed_at = i;
      out.lambda.clear();
      return out;
    }
    out.lambda.push_back(chosen);
  }
  if (!r.is_zero()) {
    throw PrecisionError("decode: residual " + r.str() + " is within the tail bound at chart depth " +
                         std::to_string(chart.depth()) + "; deeper digits needed");
  }
  while (!out.lambda.empty() && out.lambda.back() == 0) out.lambda.pop_back();
  out.status = DecodeStatus::Finite;
  return out;
}

bool intersection_test(const CantorChart& chart, const QTheta& t) {
  try {
    return decode_digits(chart, t).status == DecodeStatus::Finite;
  } catch (const PrecisionError&) {
    // every finite signed-digit sum lies in Z + Z theta
    if (!t.in_lattice()) return false;
    throw;
  }
}

namespace {

// Bounding interval [A_n, B_n] for the level-n interval [a_n, b_n]: exact partial
// sums within the chart widened by |t_D|/2 on both sides.
std::pair<QTheta, QTheta> bounding_interval(const CantorChart& chart, std::size_t n) {
  const QTheta e = chart.theta().abs(chart.t(chart.depth())) * Rational(1, 2);
  return {chart.a_partial(n) - e, chart.b_partial(n) + e};
}

}  // namespace

bool level_disjoint_certificate(const CantorChart& chart, std::size_t n) {
  if (n >= chart.depth()) throw InvalidArgument("certificate level must be below chart depth");
  const Theta& theta = chart.theta();
  auto [a0, b0] = bounding_interval(chart, 0);
  // level 0 sits strictly inside (-1/2, 1/2), so no wrap-around overlap
  if (!theta.less(QTheta(Rational(-1, 2)), a0) || !theta.less(b0, QTheta(Rational(1, 2)))) return false;
  for (std::size_t level = 1; level <= n; ++level) {
    auto [ap, bp] = bounding_interval(chart, level - 1);
    auto [a, b] = bounding_interval(chart, level);
    const QTheta& t = chart.t(level);
    // children J+[a,b] and J+t+[a,b] are disjoint
    if (!theta.less(b - a, theta.abs(t))) return false;
    // and both lie in the parent J+[ap,bp]
    const QTheta lo = theta.sign(t) < 0 ? a + t : a;
    const QTheta hi = theta.sign(t) < 0 ? b : b + t;
    if (theta.less(lo, ap) || theta.less(bp, hi)) return false;
  }
  return true;
}

bool level_disjoint_enumerated(const CantorChart& chart, std::size_t n) {
  if (n >= chart.depth()) throw InvalidArgument("enumeration level must be below chart depth");
  if (n > 24) throw BudgetExceeded("level enumeration limited to N <= 24");
  const Theta& theta = chart.theta();
  auto [a, b] = bounding_interval(chart, n);
  const double width = theta.to_double(b - a);
  const std::size_t count = std::size_t(1) << n;
  std::vector<std::pair<double, std::uint32_t>> centres(count);
  centres[0] = {0.0, 0};
  for (std::size_t mask = 1; mask < count; ++mask) {
    const std::size_t low = mask & (~mask + 1);
    const std::size_t bit = static_cast<std::size_t>(__builtin_ctzll(low));
    centres[mask] = {centres[mask ^ low].first + chart.t_double(bit + 1), static_cast<std::uint32_t>(mask)};
  }
  std::sort(centres.begin(), centres.end());
  const double margin = 1e-13;
  auto exact_sum = [&](std::uint32_t mask) {
    QTheta s;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1U) s += chart.t(i + 1);
    }
    return s;
  };
  for (std::size_t i = 1; i < count; ++i) {
    const double gap = centres[i].first - centres[i - 1].first;
    if (gap > width + margin) continue;
    if (gap < width - margin) return false;
    const QTheta exact_gap = exact_sum(centres[i].second) - exact_sum(centres[i - 1].second);
    if (!theta.less(b - a, theta.abs(exact_gap))) return false;
  }
  return true;
}

double cover_bound(const CantorChart& chart, std::size_t n) {
  if (n > chart.depth()) throw InvalidArgument("cover_bound level exceeds chart depth");
  return std::ldexp(chart.tail_double(n), static_cast<int>(n));
}

ProductWeights::ProductWeights(std::vector<Rational> a) : a_(std::move(a)) {
  if (a_.empty()) throw InvalidArgument("product weights need at least one a_i");
  for (const auto& x : a_) {
    if (x <= 0 || x >= 1) throw InvalidArgument("product weights need 0 < a_i < 1, got " + to_string(x));
    ad_.push_back(x.convert_to<double>());
  }
}

ProductWeights ProductWeights::constant(const Rational& a, std::size_t depth) {
  return ProductWeights(std::vector<Rational>(depth, a));
}

ProductWeights ProductWeights::parse(const std::string& spec, std::size_t depth) {
  if (spec.rfind("const:", 0) == 0) return constant(parse_rational(spec.substr(6)), depth);
  std::vector<Rational> a;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) a.push_back(parse_rational(tok));
  }
  if (a.size() < depth) {
    throw InvalidArgument("weight list has " + std::to_string(a.size()) + " entries, chart depth is " +
                          std::to_string(depth));
  }
  return ProductWeights(std::move(a));
}

Rational rn_factor(const ProductWeights& w, const std::vector<std::size_t>& i0, const std::vector<std::size_t>& i1) {
  Rational c = 1;
  for (std::size_t i : i1) {
    if (std::find(i0.begin(), i0.end(), i) != i0.end()) throw InvalidArgument("I_0 and I_1 must be disjoint");
    c *= (1 - w.a(i)) / w.a(i);
  }
  for (std::size_t i : i0) c *= w.a(i) / (1 - w.a(i));
  return c;
}

Rational nu0_measure(const ProductWeights& w, const PCylinder& c) {
  Rational out = 1;
  for (const auto& [i, bit] : c) out *= bit ? Rational(1 - w.a(i)) : w.a(i);
  return out;
}

Rational nu0_independence_gap(const ProductWeights& w, const PCylinder& a, const PCylinder& c) {
  PCylinder both = a;
  for (const auto& [i, bit] : c) {
    auto it = both.find(i);
    if (it != both.end() && it->second != bit) return -nu0_measure(w, a) * nu0_measure(w, c);
    both[i] = bit;
  }
  return nu0_measure(w, both) - nu0_measure(w, a) * nu0_measure(w, c);
}

HpFloat gamma_hp() { return boost::multiprecision::sqrt(HpFloat(2)) - 1; }

double gamma_value() { return gamma_hp().convert_to<double>(); }

HpFloat gamma_mass(long k_max) {
  const HpFloat g = gamma_hp();
  HpFloat sum = g, p = g;
  for (long k = 1; k <= k_max; ++k) {
    p *= g;
    sum += 2 * p;
  }
  return sum;
}

double series_tail_bound(long k_max) {
  const double g = gamma_value();
  return std::pow(g, static_cast<double>(k_max + 1)) * (1 + g) / (1 - g);
}

long truncation_for(double eps) {
  long k = 0;
  while (series_tail_bound(k) >= eps) ++k;
  return k;
}

NuMeasure::NuMeasure(CantorChart chart, ProductWeights weights, long k_max)
    : chart_(std::move(chart)), weights_(std::move(weights)), k_max_(k_max < 0 ? truncation_for(1e-12) : k_max) {
  if (weights_.size() < chart_.depth()) throw InvalidArgument("need one weight per chart coordinate");
  cache_radius_ = 2 * k_max_ + 64;
  shift_digits_.reserve(static_cast<std::size_t>(2 * cache_radius_ + 1));
  for (long s = -cache_radius_; s <= cache_radius_; ++s) {
    auto d = decode_digits(chart_, QTheta(Rational(0), Rational(s)));
    if (d.status == DecodeStatus::Finite) shift_digits_.emplace_back(std::move(d.lambda));
    else shift_digits_.emplace_back(std::nullopt);
  }
}

const std::optional<std::vector<int>>& NuMeasure::digits_of_shift(long s) const {
  if (s < -cache_radius_ || s > cache_radius_) {
    throw InvalidArgument("shift " + std::to_string(s) + " outside the cached range");
  }
  return shift_digits_[static_cast<std::size_t>(s + cache_radius_)];
}

Rational NuMeasure::shifted_mass(const PCylinder& cyl, long s) const {
  std::optional<std::vector<int>> computed;
  const std::optional<std::vector<int>>* digits;
  if (s >= -cache_radius_ && s <= cache_radius_) {
    digits = &digits_of_shift(s);
  } else {
    auto d = decode_digits(chart_, QTheta(Rational(0), Rational(s)));
    if (d.status == DecodeStatus::Finite) computed = std::move(d.lambda);
    digits = &computed;
  }
  if (!digits->has_value()) return 0;
  const auto& lam = **digits;
  // y = x + lambda with x in cyl: constraints on y coordinate by coordinate
  Rational mass = 1;
  std::size_t top = lam.size();
  if (!cyl.empty()) top = std::max(top, cyl.rbegin()->first);
  for (std::size_t i = 1; i <= top; ++i) {
    const int l = i <= lam.size() ? lam[i - 1] : 0;
    auto it = cyl.find(i);
    if (l == 0) {
      if (it != cyl.end()) mass *= it->second ? Rational(1 - weights_.a(i)) : weights_.a(i);
      continue;
    }
    const int x_needed = l == 1 ? 0 : 1;
    if (it != cyl.end() && it->second != x_needed) return 0;
    mass *= l == 1 ? Rational(1 - weights_.a(i)) : weights_.a(i);
  }
  return mass;
}

HpFloat NuMeasure::measure(const ShiftedCylinder& a) const {
  if (a.full) return gamma_mass(k_max_);
  const HpFloat g = gamma_hp();
  std::vector<HpFloat> gp(static_cast<std::size_t>(k_max_) + 2);
  gp[0] = 1;
  for (std::size_t i = 1; i < gp.size(); ++i) gp[i] = gp[i - 1] * g;
  HpFloat sum = 0;
  for (long k = -k_max_; k <= k_max_; ++k) {
    Rational m = shifted_mass(a.cylinder, a.shift + k);
    if (m == 0) continue;
    sum += gp[static_cast<std::size_t>(1 + std::labs(k))] * to_hp(m);
  }
  return sum;
}

QuasiInvarianceReport quasi_invariance_check(const NuMeasure& nu, const std::vector<ShiftedCylinder>& sets,
                                             double tol) {
  QuasiInvarianceReport rep;
  rep.tolerance = tol > 0 ? tol : 2 * nu.tail_bound();
  const HpFloat g = gamma_hp();
  const HpFloat t = rep.tolerance;
  rep.ok = true;
  for (const auto& a : sets) {
    const HpFloat va = nu.measure(a);
    const HpFloat vs = nu.measure(a.sigma());
    QuasiInvarianceRow row;
    row.nu_a = va.convert_to<double>();
    row.nu_sigma_a = vs.convert_to<double>();
    row.lower_ok = g * va <= vs + t;
    row.upper_ok = vs <= va / g + t / g;
    rep.ok = rep.ok && row.lower_ok && row.upper_ok;
    rep.rows.push_back(row);
  }
  return rep;
}

Rational brute_force_shifted_mass(const CantorChart& chart, const ProductWeights& w, const PCylinder& cyl, long s,
                                  std::size_t d) {
  if (d > chart.depth() || d > 12) throw InvalidArgument("brute force depth must be <= min(chart depth, 12)");
  if (!cyl.empty() && cyl.rbegin()->first > d) throw InvalidArgument("cylinder reaches beyond brute-force depth");
  std::vector<long> m;
  for (std::size_t i = 1; i <= d; ++i) {
    if (chart.m(i) > BigInt(1) << 40) throw InvalidArgument("m_i too large for brute force");
    m.push_back(chart.m(i).convert_to<long>());
  }
  const std::size_t count = std::size_t(1) << d;
  Rational total = 0;
  for (std::size_t y = 0; y < count; ++y) {
    bool hit = false;
    for (std::size_t x = 0; x < count && !hit; ++x) {
      bool in_cyl = true;
      for (const auto& [i, bit] : cyl) {
        if (static_cast<int>(x >> (i - 1) & 1U) != bit) {
          in_cyl = false;
          break;
        }
      }
      if (!in_cyl) continue;
      long diff = 0;
      for (std::size_t i = 0; i < d; ++i) {
        diff += (static_cast<long>(y >> i & 1U) - static_cast<long>(x >> i & 1U)) * m[i];
      }
      hit = diff == s;
    }
    if (!hit) continue;
    Rational p = 1;
    for (std::size_t i = 0; i < d; ++i) p *= (y >> i & 1U) ? Rational(1 - w.a(i + 1)) : w.a(i + 1);
    total += p;
  }
  return total;
}

long sample_k(Rng& rng) {
  const double g = gamma_value();
  double u = uniform01(rng);
  if (u < g) return 0;
  u -= g;
  double p = g;
  for (long m = 1; m < 400; ++m) {
    p *= g;
    if (u < 2 * p) return u < p ? m : -m;
    u -= 2 * p;
  }
  return 0;
}

NuSample sample_nu(const NuMeasure& nu, Rng& rng) {
  NuSample s;
  s.k = sample_k(rng);
  const auto& chart = nu.chart();
  s.bits.resize(chart.depth());
  QTheta v;
  for (std::size_t i = 1; i <= chart.depth(); ++i) {
    const int bit = uniform01(rng) < nu.weights().a_double(i) ? 0 : 1;
    s.bits[i - 1] = bit;
    if (bit) v += chart.t(i);
  }
  v -= QTheta(Rational(0), Rational(s.k));
  s.point = chart.theta().mod1(v);
  s.point_double = chart.theta().to_double(s.point);
  return s;
}

std::string format_point(const Theta& theta, const QTheta& x) {
  return theta.to_hp(theta.mod1(x)).str(18, std::ios_base::fixed);
}

SpectralMoment spectral_moment(const NuMeasure& nu, long k, std::size_t n_samples, std::uint64_t seed) {
  SpectralMoment out;
  out.k = k;
  out.samples = n_samples;
  if (k == 0 || n_samples == 0) return out;
  const double g = gamma_value();
  const long radius = 2 * nu.k_max() + 64 - std::labs(k) > 0 ? 2 * nu.k_max() + 64 : 0;
  Rng rng(seed);
  double sum_sqrt = 0.0, sum_h = 0.0;
  for (std::size_t n = 0; n < n_samples; ++n) {
    const NuSample smp = sample_nu(nu, rng);
    double num = 0.0, den = 0.0;
    for (long s = -radius; s <= radius; ++s) {
      const auto& digits = nu.digits_of_shift(s);
      if (!digits) continue;
      // x lies on Phi(P) - j theta with j = k0 + s when y + lambda stays in {0,1}
      double r = 1.0;
      bool valid = true;
      for (std::size_t i = 1; i <= digits->size(); ++i) {
        const int l = (*digits)[i - 1];
        if (l == 0) continue;
        const int y = smp.bits[i - 1];
        if ((l == 1 && y != 0) || (l == -1 && y != 1)) {
          valid = false;
          break;
        }
        const double a = nu.weights().a_double(i);
        r *= l == 1 ? (1 - a) / a : a / (1 - a);
      }
      if (!valid) continue;
      const long j = smp.k + s;
      num += std::pow(g, 1.0 + static_cast<double>(std::labs(j + k))) * r;
      den += std::pow(g, 1.0 + static_cast<double>(std::labs(j))) * r;
    }
    const double h = num / den;
    sum_sqrt += std::sqrt(h);
    sum_h += h;
  }
  const double nn = static_cast<double>(n_samples);
  out.raw_mean = sum_sqrt / nn;
  out.mean_density = sum_h / nn;
  out.estimate = out.raw_mean / std::sqrt(out.mean_density);
  return out;
}

double spectral_moment_lebesgue(long k) {
  (void)k;
  return 1.0;
}

SingularityExperiment singularity_experiment(const CantorChart& chart, const Rational& a, const Rational& b,
                                             std::size_t n_samples, std::uint64_t seed) {
  if (a == b) throw InvalidArgument("singularity experiment needs a != b");
  const std::size_t d = chart.depth();
  NuMeasure nu_a(chart, ProductWeights::constant(a, d));
  SingularityExperiment out;
  out.a = a;
  out.b = b;
  const double ad = a.convert_to<double>(), bd = b.convert_to<double>();
  const double z0 = std::log(ad / bd), z1 = std::log((1 - ad) / (1 - bd));
  out.kl_per_digit = ad * z0 + (1 - ad) * z1;
  out.mean_llr.assign(d, 0.0);
  Rng rng(seed);
  double sum = 0.0, sum_sq = 0.0;
  std::size_t count = 0;
  for (std::size_t n = 0; n < n_samples; ++n) {
    const NuSample smp = sample_nu(nu_a, rng);
    if (smp.k != 0) continue;  // only points of Phi(P) are decoded
    const SignedDigits dg = decode_digits(chart, smp.point);
    if (dg.status != DecodeStatus::Finite) throw Error("sample on Phi(P) failed to decode");
    double llr = 0.0;
    for (std::size_t i = 1; i <= d; ++i) {
      const int bit = i <= dg.lambda.size() ? dg.lambda[i - 1] : 0;
      if (bit != 0 && bit != 1) throw Error("decoded digit of a Phi(P) point outside {0,1}");
      const double z = bit ? z1 : z0;
      llr += z;
      out.mean_llr[i - 1] += llr;
      sum += z;
      sum_sq += z * z;
      ++count;
    }
    ++out.samples_used;
  }
  if (out.samples_used == 0) return out;
  for (auto& v : out.mean_llr) v /= static_cast<double>(out.samples_used);
  const double mean = sum / static_cast<double>(count);
  const double var = std::max(0.0, sum_sq / static_cast<double>(count) - mean * mean);
  out.slope = mean;
  out.slope_stderr = std::sqrt(var / static_cast<double>(count));
  out.diverges = out.slope > 5 * out.slope_stderr;
  return out;
}

}  // namespace ergocycle::singular
