#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace lh {

/// Exact rational coefficient. mpq_class keeps values canonical as long as
/// every constructor path goes through make_rational or canonicalize().
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);

/// Parses "p" or "p/q" with optional sign; throws ParseError.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);

/// 4^e for any integer e, exact.
Rational pow4(int e);

}  // namespace lh
