#pragma once

#include <gmpxx.h>

#include <string>

#include "nsl/errors.hpp"

namespace nsl {

// Exact arbitrary-precision rational. All arithmetic in the library is exact;
// there is no floating point anywhere.
using Rat = mpq_class;

// mpq_class(num, den) does not canonicalize, which breaks exact equality;
// always build fractions through this.
inline Rat rat_frac(long num, long den) {
  require(den != 0, Errc::Domain, "zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

// Parses "p", "-p" or "p/q" (q > 0 after normalization). Throws Schema on
// anything else.
Rat rat_parse(const std::string& s);

// Canonical form: "p" for integers, "p/q" otherwise (gcd(p,q)=1, q>0).
std::string rat_str(const Rat& q);

bool rat_is_integer(const Rat& q);

// Requires an integer value that fits in long.
long rat_to_long(const Rat& q);

}  // namespace nsl
