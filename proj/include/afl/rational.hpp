#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace afl {

using Integer = mpz_class;
using Rational = mpq_class;  // always canonicalized
using Point = std::vector<Rational>;

inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

/// Parses "p" or "p/q"; throws afl::Error(InvalidArgument) on bad input.
Rational parse_rational(const std::string& text);

}  // namespace afl
