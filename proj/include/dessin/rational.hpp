#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace dessin {

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator. GMP canonicalizes every arithmetic result.
using Rat = mpq_class;
using Int = mpz_class;

/// Parses "n" or "n/d" (optional sign). Throws InvalidInput on bad text or d = 0.
Rat parse_rat(std::string_view text);

/// "n" when the denominator is 1, otherwise "n/d".
std::string to_string(const Rat& q);
std::string to_string(const Int& z);

inline Rat make_rat(long num, long den = 1) {
  Rat q{Int(num), Int(den)};
  q.canonicalize();
  return q;
}

}  // namespace dessin
