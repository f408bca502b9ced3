#pragma once

#include <string>
#include <string_view>

#include <gmpxx.h>

namespace clab {

/// Exact arbitrary-precision rational. Always kept in canonical form.
using Rational = mpq_class;
using Integer = mpz_class;

/// Formats as "num/den"; the denominator is always present ("1/1").
std::string to_string(const Rational& q);

/// Accepts "num/den" or a bare integer. Throws ParseError.
Rational parse_rational(std::string_view text);

inline Rational make_rational(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace clab
