#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace formgate {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;

/// Parses an optionally signed decimal integer; throws Error(ParseError) on anything else.
[[nodiscard]] Integer parse_integer(std::string_view text);

/// Parses "p" or "p/q" into a canonicalized rational.
[[nodiscard]] Rational parse_rational(std::string_view text);

[[nodiscard]] inline std::string to_decimal(const Integer& value) { return value.get_str(10); }
[[nodiscard]] std::string to_decimal(const Rational& value);

/// Narrowing conversion that throws Error(InvalidArgument) when the value does not fit.
[[nodiscard]] std::int64_t to_int64(const Integer& value);

[[nodiscard]] inline bool is_even(const Integer& value) { return mpz_even_p(value.get_mpz_t()) != 0; }

}  // namespace formgate
