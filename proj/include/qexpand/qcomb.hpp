#pragma once

#include "qexpand/qlaurent.hpp"

namespace qexpand {

// (q)_n = (1-q)(1-q^2)...(1-q^n), with (q)_0 = 1. Requires n >= 0.
QLaurent q_pochhammer(long n);

// Gaussian binomial {n brack k} = (q)_n / ((q)_k (q)_{n-k}) for 0 <= k <= n,
// 0 otherwise. The quotient is computed by exact division; a remainder would
// be an arithmetic bug and throws. Requires n >= 0.
QLaurent q_binomial(long n, long k);

// {j brack p1, p2, p3} = (q)_j / ((q)_{p1} (q)_{p2} (q)_{p3}) when all parts
// are nonnegative, 0 when any part is negative. Parts must sum to j.
QLaurent q_multinomial3(long j, long p1, long p2, long p3);

// (q)_a / (q)_b for a >= b >= 0, i.e. (1-q^{b+1})...(1-q^a). Always a
// polynomial; used to build scaling cofactors without any division.
QLaurent q_pochhammer_quotient(long a, long b);

} // namespace qexpand
