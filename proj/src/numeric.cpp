#include "ergocycle/numeric.hpp"

#include "ergocycle/errors.hpp"
#include "ergocycle/qtheta.hpp"

#include <cctype>
#include <ostream>
#include <sstream>

namespace ergocycle {

BigInt floor_of(const Rational& r) {
  const BigInt& n = boost::multiprecision::numerator(r);
  const BigInt& d = boost::multiprecision::denominator(r);  // always > 0
  BigInt q = n / d;                                           // truncates toward zero
  if (n < 0 && q * d != n) q -= 1;
  return q;
}

namespace {

BigInt parse_integer(std::string_view digits) {
  if (digits.empty()) throw InvalidArgument("empty integer literal");
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw InvalidArgument("bad digit in number: " + std::string(digits));
    }
  }
  return BigInt(std::string(digits));
}

BigInt pow10(long e) {
  BigInt out = 1;
  for (long i = 0; i < e; ++i) out *= 10;
  return out;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw InvalidArgument("empty rational literal");

  bool negative = false;
  if (text.front() == '+' || text.front() == '-') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }

  Rational value;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_integer(text.substr(0, slash));
    BigInt den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw InvalidArgument("zero denominator in " + std::string(text));
    value = Rational(num, den);
  } else {
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
      std::string_view ex = text.substr(e + 1);
      bool eneg = false;
      if (!ex.empty() && (ex.front() == '+' || ex.front() == '-')) {
        eneg = ex.front() == '-';
        ex.remove_prefix(1);
      }
      exponent = parse_integer(ex).convert_to<long>();
      if (eneg) exponent = -exponent;
      text = text.substr(0, e);
    }
    std::string mantissa;
    long frac_digits = 0;
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
      mantissa = std::string(text.substr(0, dot)) + std::string(text.substr(dot + 1));
      frac_digits = static_cast<long>(text.size() - dot - 1);
    } else {
      mantissa = std::string(text);
    }
    if (mantissa.empty()) throw InvalidArgument("bad numeric literal");
    BigInt num = parse_integer(mantissa);
    long shift = exponent - frac_digits;
    value = shift >= 0 ? Rational(num * pow10(shift)) : Rational(num, pow10(-shift));
  }
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& r) {
  if (is_integer(r)) return boost::multiprecision::numerator(r).str();
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

std::string QTheta::str() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const QTheta& x) {
  return os << to_string(x.p()) << " + " << to_string(x.q()) << "*theta";
}

}  // namespace ergocycle
