#pragma once

// Exact integer and rational scalars. Both are thin aliases over GMP so that
// coefficient growth in long products never overflows.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace qeta {

using Integer = mpz_class;
using Rational = mpq_class;

/// Builds num/den in lowest terms. den must be nonzero.
Rational make_rational(std::int64_t num, std::int64_t den = 1);
Rational make_rational(const Integer& num, const Integer& den);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

/// Parses "p", "-p", "p/q". Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

Integer floor(const Rational& r);
Integer ceil(const Rational& r);

/// Fractional part {r} in [0, 1).
Rational frac(const Rational& r);

bool is_integer(const Rational& r);

/// Exact square root when r is the square of a rational.
std::optional<Rational> rational_sqrt(const Rational& r);

/// Narrowing that throws std::overflow_error when out of range.
std::int64_t to_int64(const Integer& z);

std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t lcm64(std::int64_t a, std::int64_t b);

}  // namespace qeta
