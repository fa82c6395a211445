#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace qexpand {

// Exact scalars. Int is an arbitrary-precision integer; Rat is kept reduced
// with positive denominator by gmp's canonical form, which is exactly the
// BigRat contract (gcd(|num|, den) = 1, den >= 1, zero is 0/1).
using Int = mpz_class;
using Rat = mpq_class;

// n-choose-k with the out-of-range convention: 0 for k < 0 or k > n.
// Requires n >= 0.
Int binomial(long n, long k);

// j! / (p1! p2! p3!) when all parts are nonnegative, 0 when any part is
// negative. The parts must sum to j; anything else is a caller bug and
// throws. The zero convention is what makes every S formula total.
Int multinomial3(long j, long p1, long p2, long p3);

inline bool is_integer(const Rat& x) { return x.get_den() == 1; }

// Decimal-string codecs used by the serializers (arbitrary precision safe).
std::string int_to_string(const Int& v);
std::optional<Int> int_from_string(const std::string& s);

// Rationals render as plain decimal when integral, "num/den" otherwise.
std::string rat_to_string(const Rat& v);
std::optional<Rat> rat_from_string(const std::string& s);

} // namespace qexpand
