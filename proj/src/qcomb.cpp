#include "qexpand/qcomb.hpp"

#include "qexpand/errors.hpp"

#include <map>
#include <mutex>
#include <utility>
#include <vector>

namespace qexpand {

namespace {

QLaurent one_minus_q_to(long t) {
    QLaurent r(1);
    r -= QLaurent(Int(1), t);
    return r;
}

} // namespace

QLaurent q_pochhammer(long n) {
    if (n < 0) throw arithmetic_bug("q_pochhammer: negative n");
    static std::mutex mu;
    static std::vector<QLaurent> memo{QLaurent(1)};
    std::lock_guard lock(mu);
    while (static_cast<long>(memo.size()) <= n)
        memo.push_back(memo.back() * one_minus_q_to(static_cast<long>(memo.size())));
    return memo[static_cast<size_t>(n)];
}

QLaurent q_pochhammer_quotient(long a, long b) {
    if (b < 0 || a < b) throw arithmetic_bug("q_pochhammer_quotient: need a >= b >= 0");
    QLaurent r(1);
    for (long t = b + 1; t <= a; ++t) r = r * one_minus_q_to(t);
    return r;
}

QLaurent q_binomial(long n, long k) {
    if (n < 0) throw arithmetic_bug("q_binomial: negative n");
    if (k < 0 || k > n) return {};
    if (k > n - k) k = n - k;
    static std::mutex mu;
    static std::map<std::pair<long, long>, QLaurent> memo;
    {
        std::lock_guard lock(mu);
        if (auto it = memo.find({n, k}); it != memo.end()) return it->second;
    }
    // (q)_n / (q)_{n-k} is the polynomial (1-q^{n-k+1})...(1-q^n); one exact
    // division by (q)_k remains.
    auto quo = QLaurent::divide_exact(q_pochhammer_quotient(n, n - k), q_pochhammer(k));
    if (!quo) throw arithmetic_bug("q_binomial: division left a remainder");
    std::lock_guard lock(mu);
    return memo.emplace(std::make_pair(n, k), std::move(*quo)).first->second;
}

QLaurent q_multinomial3(long j, long p1, long p2, long p3) {
    if (p1 + p2 + p3 != j) throw arithmetic_bug("q_multinomial3: parts do not sum to j");
    if (j < 0) throw arithmetic_bug("q_multinomial3: negative j");
    if (p1 < 0 || p2 < 0 || p3 < 0) return {};
    return q_binomial(j, p1) * q_binomial(j - p1, p2);
}

} // namespace qexpand
