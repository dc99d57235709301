#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace hopfflow {

// Exact coefficients everywhere except the floating-point quadrature and
// sequence-fit paths.
using Rational = mpq_class;
using Integer = mpz_class;

/// Accepts "p", "p/q", "-p/q"; throws Error(Parse) otherwise.
Rational parse_rational(std::string_view text);

/// Always "p/q" form, canonicalized (so "2/4" round-trips to "1/2").
std::string format_rational(const Rational& value);

/// "p" when the denominator is 1, else "p/q".
std::string format_rational_short(const Rational& value);

inline bool is_zero(const Rational& value) { return sgn(value) == 0; }

Rational factorial(unsigned n);

}  // namespace hopfflow
