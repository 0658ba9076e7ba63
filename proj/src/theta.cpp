#include "ergocycle/theta.hpp"

#include "ergocycle/errors.hpp"

#include <atomic>
#include <cmath>
#include <iostream>
#include <string>

namespace ergocycle {

namespace {

std::atomic<std::size_t> g_fallbacks{0};

constexpr double kUlp = 0x1p-53;

// Canonical continued-fraction digits of r in (0,1): r = [0; c_1, ..., c_n].
std::vector<BigInt> rational_digits(const Rational& r) {
  std::vector<BigInt> out;
  BigInt num = boost::multiprecision::numerator(r);
  BigInt den = boost::multiprecision::denominator(r);
  // r in (0,1): first digit b_0 = 0, continue with den/num
  std::swap(num, den);
  while (den != 0) {
    BigInt q = num / den;
    BigInt rem = num - q * den;
    out.push_back(q);
    num = den;
    den = rem;
  }
  return out;
}

HpFloat hp_pow2(int e) { return boost::multiprecision::ldexp(HpFloat(1), e); }

}  // namespace

struct Theta::Impl {
  std::string name;
  std::vector<BigInt> prefix;
  std::vector<BigInt> period;
  std::size_t available = 0;
  bool quadratic = false;
  HpFloat witness;
  HpFloat witness_err;
  double value_d = 0.0;
  double err_d = 0.0;

  std::optional<BigInt> digit(std::size_t r) const {
    if (r == 0) return BigInt(0);
    if (r - 1 < prefix.size()) return prefix[r - 1];
    if (period.empty()) return std::nullopt;
    return period[(r - 1 - prefix.size()) % period.size()];
  }

  void finish_doubles() {
    value_d = witness.convert_to<double>();
    HpFloat diff = boost::multiprecision::abs(HpFloat(value_d) - witness) + witness_err;
    err_d = diff.convert_to<double>() * (1.0 + 1e-12) + 1e-300;
  }
};

namespace {

// Fill the witness of a digit-defined theta from its convergents.
void compute_witness(Theta::Impl& impl) {
  BigInt k2 = 0, k1 = 1, m2 = 1, m1 = 0;  // k_{r-2}, k_{r-1}, m_{r-2}, m_{r-1}
  const BigInt target = BigInt(1) << 200;
  std::size_t r = 0;
  for (;;) {
    auto b = impl.digit(r);
    if (!b) break;
    BigInt k = *b * k1 + k2;
    BigInt m = *b * m1 + m2;
    k2 = k1;
    k1 = k;
    m2 = m1;
    m1 = m;
    ++r;
    if (impl.available == Theta::kUnbounded && m1 > target) {
      // one more convergent brackets theta from the other side
      auto bn = impl.digit(r);
      BigInt kn = *bn * k1 + k2;
      BigInt mn = *bn * m1 + m2;
      Rational a(k1, m1), c(kn, mn);
      impl.witness = (to_hp(a) + to_hp(c)) / 2;
      impl.witness_err = boost::multiprecision::abs(to_hp(a) - to_hp(c)) / 2 + hp_pow2(-250);
      return;
    }
  }
  if (m1 == 0 || r < 2) throw InvalidArgument("theta needs at least one digit b_1 >= 1");
  // Finite supply: theta lies between k_R/m_R and (k_R + k_{R-1})/(m_R + m_{R-1}).
  Rational a(k1, m1), c(k1 + k2, m1 + m2);
  impl.witness = (to_hp(a) + to_hp(c)) / 2;
  impl.witness_err = boost::multiprecision::abs(to_hp(a) - to_hp(c)) / 2 + hp_pow2(-250);
}

void validate_digits(const std::vector<BigInt>& ds) {
  for (const auto& d : ds) {
    if (d < 1) throw InvalidArgument("continued-fraction digits must be >= 1");
  }
}

std::vector<BigInt> parse_digit_list(std::string_view text) {
  std::vector<BigInt> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string_view tok = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    if (!tok.empty()) {
      Rational v = parse_rational(tok);
      if (!is_integer(v)) throw InvalidArgument("non-integer continued-fraction digit");
      out.push_back(boost::multiprecision::numerator(v));
    }
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

Theta Theta::sqrt2_minus_1() { return from_digits({}, {BigInt(2)}, "sqrt2m1"); }

Theta Theta::golden() { return from_digits({}, {BigInt(1)}, "golden"); }

Theta Theta::from_digits(std::vector<BigInt> prefix, std::vector<BigInt> period, std::string name) {
  validate_digits(prefix);
  validate_digits(period);
  if (prefix.empty() && period.empty()) throw InvalidArgument("theta needs at least one digit");
  auto impl = std::make_shared<Impl>();
  impl->quadratic = !period.empty();
  impl->available = period.empty() ? prefix.size() : kUnbounded;
  if (name.empty()) {
    name = "cf:";
    for (std::size_t i = 0; i < prefix.size(); ++i) name += (i ? "," : "") + prefix[i].str();
    if (!period.empty()) {
      name += prefix.empty() ? "[" : ",[";
      for (std::size_t i = 0; i < period.size(); ++i) name += (i ? "," : "") + period[i].str();
      name += "]";
    }
  }
  impl->name = std::move(name);
  impl->prefix = std::move(prefix);
  impl->period = std::move(period);
  compute_witness(*impl);
  impl->finish_doubles();
  return Theta(std::move(impl));
}

Theta Theta::from_decimal(std::string_view decimal) {
  Rational x = parse_rational(decimal);
  long frac_digits = 0;
  if (auto dot = decimal.find('.'); dot != std::string_view::npos) {
    frac_digits = static_cast<long>(decimal.size() - dot - 1);
  }
  BigInt scale = 1;
  for (long i = 0; i < frac_digits; ++i) scale *= 10;
  Rational eps(BigInt(1), 2 * scale);
  Rational lo = x - eps, hi = x + eps;
  if (lo <= 0 || hi >= 1) throw InvalidArgument("decimal theta must lie in (0,1)");

  auto dl = rational_digits(lo);
  auto dh = rational_digits(hi);
  std::size_t common = 0;
  while (common < dl.size() && common < dh.size() && dl[common] == dh[common]) ++common;
  common = std::min({common, dl.size() - 1, dh.size() - 1});
  if (common == 0) throw PrecisionError("decimal theta too coarse to certify any digit");

  auto impl = std::make_shared<Impl>();
  impl->name = "num:" + std::string(decimal);
  impl->prefix.assign(dl.begin(), dl.begin() + static_cast<long>(common));
  impl->available = common;
  impl->witness = ergocycle::to_hp(x);
  impl->witness_err = ergocycle::to_hp(eps) + hp_pow2(-250);
  impl->finish_doubles();
  return Theta(std::move(impl));
}

Theta Theta::parse(std::string_view spec) {
  if (spec == "sqrt2m1") return sqrt2_minus_1();
  if (spec == "golden") return golden();
  if (spec.rfind("cf:", 0) == 0) {
    std::string_view body = spec.substr(3);
    std::vector<BigInt> period;
    if (auto open = body.find('['); open != std::string_view::npos) {
      auto close = body.find(']', open);
      if (close == std::string_view::npos) throw InvalidArgument("unterminated period in " + std::string(spec));
      period = parse_digit_list(body.substr(open + 1, close - open - 1));
      if (period.empty()) throw InvalidArgument("empty period in " + std::string(spec));
      body = body.substr(0, open);
    }
    return from_digits(parse_digit_list(body), std::move(period), std::string(spec));
  }
  if (spec.rfind("num:", 0) == 0) return from_decimal(spec.substr(4));
  throw InvalidArgument("unknown theta spec '" + std::string(spec) +
                        "' (expected sqrt2m1, golden, cf:..., num:...)");
}

const std::string& Theta::name() const { return impl_->name; }
std::optional<BigInt> Theta::digit(std::size_t r) const { return impl_->digit(r); }
std::size_t Theta::available_digits() const { return impl_->available; }
bool Theta::is_quadratic() const { return impl_->quadratic; }
double Theta::value() const { return impl_->value_d; }
const HpFloat& Theta::witness() const { return impl_->witness; }
const HpFloat& Theta::witness_error() const { return impl_->witness_err; }
std::size_t Theta::witness_fallbacks() { return g_fallbacks.load(); }

std::optional<int> Theta::fast_sign(double pd, double perr, double qd, double qerr) const {
  const double th = impl_->value_d;
  const double val = pd + qd * th;
  const double err = perr + std::fabs(qd) * impl_->err_d + qerr * (th + impl_->err_d) +
                     4 * kUlp * (std::fabs(pd) + std::fabs(qd * th) + std::fabs(val));
  if (!std::isfinite(val) || !(std::fabs(val) > err)) return std::nullopt;
  return val > 0 ? 1 : -1;
}

int Theta::compare_with(const Rational& r) const {
  if (r <= 0) return 1;
  if (r >= 1) return -1;
  auto cs = rational_digits(r);
  for (std::size_t i = 1;; ++i) {
    const bool odd = (i % 2) == 1;
    if (i > cs.size()) {
      // r has ended: its digit here is effectively infinite.
      if (!impl_->digit(i)) break;
      return odd ? 1 : -1;
    }
    auto b = impl_->digit(i);
    if (!b) break;
    const BigInt& c = cs[i - 1];
    if (*b == c) continue;
    const bool theta_digit_larger = *b > c;
    return (theta_digit_larger == odd) ? -1 : 1;
  }
  // digit supply exhausted: witness decides
  std::size_t n = ++g_fallbacks;
  if (n <= 10) {
    std::clog << "ergocycle: theta " << impl_->name
              << ": digit supply exhausted, ordering decided by numeric witness\n";
  }
  return impl_->witness > to_hp(r) ? 1 : -1;
}

int Theta::sign(const QTheta& x) const {
  if (x.q() == 0) return x.p() == 0 ? 0 : (x.p() > 0 ? 1 : -1);

  const double pd = x.p().convert_to<double>();
  const double qd = x.q().convert_to<double>();
  if (auto s = fast_sign(pd, std::fabs(pd) * kUlp, qd, std::fabs(qd) * kUlp)) return *s;

  const HpFloat ph = ergocycle::to_hp(x.p());
  const HpFloat qh = ergocycle::to_hp(x.q());
  const HpFloat val = ph + qh * impl_->witness;
  const HpFloat err = boost::multiprecision::abs(qh) * impl_->witness_err +
                      hp_pow2(-248) * (boost::multiprecision::abs(ph) +
                                       boost::multiprecision::abs(qh) +
                                       boost::multiprecision::abs(val));
  if (boost::multiprecision::abs(val) > err) return val > 0 ? 1 : -1;

  // sign(p + q theta) = sign(q) * sign(theta - (-p/q))
  const int qs = x.q() > 0 ? 1 : -1;
  return qs * compare_with(Rational(-x.p() / x.q()));
}

BigInt Theta::floor(const QTheta& x) const {
  if (x.q() == 0) return floor_of(x.p());
  HpFloat approx = boost::multiprecision::floor(to_hp(x));
  BigInt n = approx.convert_to<BigInt>();
  while (sign(x - QTheta(Rational(n))) < 0) n -= 1;
  while (sign(x - QTheta(Rational(n + 1))) >= 0) n += 1;
  return n;
}

QTheta Theta::mod1(const QTheta& x) const { return x - QTheta(Rational(floor(x))); }

QTheta Theta::frac_rep(const QTheta& x) const {
  // x - n with n = ceil(x - 1/2) = -floor(1/2 - x)
  BigInt n = -floor(QTheta(Rational(1, 2)) - x);
  return x - QTheta(Rational(n));
}

HpFloat Theta::to_hp(const QTheta& x) const {
  return ergocycle::to_hp(x.p()) + ergocycle::to_hp(x.q()) * impl_->witness;
}

double Theta::to_double(const QTheta& x) const {
  if (x.q() == 0) return x.p().convert_to<double>();
  return to_hp(x).convert_to<double>();
}

}  // namespace ergocycle
