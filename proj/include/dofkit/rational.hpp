#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

namespace dofkit {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Parses "p/q", "-p/q" or a bare integer. Throws Error{Parse} on malformed
/// input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" when the denominator is 1, "p/q" otherwise.
std::string to_string(const Rational& value);

double to_double(const Rational& value);

inline bool is_integer(const Rational& value) {
  return boost::multiprecision::denominator(value) == 1;
}

/// 2^exponent for any signed exponent.
Rational pow2(int exponent);

Rational pow(const Rational& base, unsigned exponent);

}  // namespace dofkit
