#include "qexpand/numeric.hpp"

#include "qexpand/errors.hpp"

namespace qexpand {

Int binomial(long n, long k) {
    if (n < 0) throw arithmetic_bug("binomial: negative n");
    if (k < 0 || k > n) return 0;
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

Int multinomial3(long j, long p1, long p2, long p3) {
    if (p1 + p2 + p3 != j) throw arithmetic_bug("multinomial3: parts do not sum to j");
    if (j < 0) throw arithmetic_bug("multinomial3: negative j");
    if (p1 < 0 || p2 < 0 || p3 < 0) return 0;
    return binomial(j, p1) * binomial(j - p1, p2);
}

std::string int_to_string(const Int& v) { return v.get_str(10); }

std::optional<Int> int_from_string(const std::string& s) {
    if (s.empty()) return std::nullopt;
    Int v;
    if (v.set_str(s, 10) != 0) return std::nullopt;
    return v;
}

std::string rat_to_string(const Rat& v) {
    return is_integer(v) ? v.get_num().get_str(10) : v.get_str(10);
}

std::optional<Rat> rat_from_string(const std::string& s) {
    if (s.empty()) return std::nullopt;
    Rat v;
    if (v.set_str(s, 10) != 0) return std::nullopt;
    if (v.get_den() == 0) return std::nullopt;
    v.canonicalize();
    return v;
}

} // namespace qexpand
