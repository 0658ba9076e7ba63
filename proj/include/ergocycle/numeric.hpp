#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace ergocycle {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using HpFloat = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<256, boost::multiprecision::digit_base_2>,
    boost::multiprecision::et_off>;

/// Largest integer <= r.
BigInt floor_of(const Rational& r);

/// Parses "3", "-7/4", "0.125" or "1e-3" into an exact rational.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);

inline HpFloat to_hp(const BigInt& z) { return HpFloat(z); }
inline HpFloat to_hp(const Rational& r) {
  return HpFloat(boost::multiprecision::numerator(r)) /
         HpFloat(boost::multiprecision::denominator(r));
}

inline bool is_integer(const Rational& r) {
  return boost::multiprecision::denominator(r) == 1;
}

}  // namespace ergocycle
