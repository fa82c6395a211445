#include "qexpand/families.hpp"

#include "qexpand/errors.hpp"
#include "qexpand/qcomb.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace qexpand {

namespace {

void require_nonneg(long v, const char* what) {
    if (v < 0)
        throw std::invalid_argument(std::string(what) + " must be nonnegative, got " +
                                    std::to_string(v));
}

Int factorial(long n) {
    require_nonneg(n, "factorial argument");
    Int r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

int parity_sign(long e) { return e % 2 == 0 ? 1 : -1; }

long checked_half(long value, const char* what) {
    if (value % 2 != 0)
        throw arithmetic_bug(std::string(what) + " is not an even integer: " +
                             std::to_string(value));
    return value / 2;
}

JRange standard_support(long k, long i) { return {std::max(i, k), i + k}; }

// ---- family builders ---------------------------------------------------

FamilySpec build_c211() {
    FamilySpec s;
    s.kind = FamilyKind::classical;
    // The -> Int returns matter: gmp's lazy expression temporaries must not
    // escape the lambda bodies.
    s.f_int = [](long n, long k) -> Int { return binomial(n, k) * binomial(n + k, k); };
    s.S_int = [](long k, long j, long i) -> Int {
        return binomial(i + k, i) * multinomial3(j, j - i, j - k, i + k - j);
    };
    s.j_support = standard_support;
    s.deg_f = [](long k) { return 2 * k; };
    return s;
}

FamilySpec build_c212(long c) {
    FamilySpec s;
    s.kind = FamilyKind::classical;
    s.f_int = [c](long n, long k) -> Int {
        return binomial(n, k + c) * binomial(n + k, k + c);
    };
    // (i+k+c)! (j+c)!^2 / ((i+c)! (k+c)! j! (j-i)! (j-k)! (i+k+c-j)!); the
    // quotient is an integer on the whole support, and a remainder anywhere
    // would mean the formula itself is wrong, so exactness is asserted.
    s.S_int = [c](long k, long j, long i) {
        if (j - i < 0 || j - k < 0 || i + k + c - j < 0)
            return Int(0);
        Int num = factorial(i + k + c) * factorial(j + c) * factorial(j + c);
        Int den = factorial(i + c) * factorial(k + c) * factorial(j) * factorial(j - i) *
                  factorial(j - k) * factorial(i + k + c - j);
        if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()))
            throw arithmetic_bug("shifted-column structure constant is not an integer");
        Int q;
        mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        return q;
    };
    s.j_support = [c](long k, long i) { return JRange{std::max(i, k), i + k + c}; };
    s.deg_f = [c](long k) { return 2 * (k + c); };
    return s;
}

FamilySpec build_c22() {
    FamilySpec s;
    s.kind = FamilyKind::classical;
    s.f_int = [](long n, long k) { return binomial(n, k); };
    s.S_int = [](long k, long j, long i) { return multinomial3(j, j - i, j - k, i + k - j); };
    s.j_support = standard_support;
    s.deg_f = [](long k) { return k; };
    return s;
}

FamilySpec build_c23() {
    FamilySpec s;
    s.kind = FamilyKind::classical;
    s.f_int = [](long n, long k) { return binomial(n + k, k); };
    s.S_int = [](long k, long j, long i) -> Int {
        return parity_sign(i + j + k) * multinomial3(j, j - i, j - k, i + k - j);
    };
    s.j_support = standard_support;
    s.deg_f = [](long k) { return k; };
    return s;
}

FamilySpec build_d(long d) {
    if (d == 0) {
        FamilySpec s = build_c22();
        return s;
    }
    if (d == 1) {
        FamilySpec s = build_c23();
        return s;
    }
    FamilySpec s;
    s.kind = FamilyKind::classical;
    s.f_int = [d](long n, long k) { return binomial(n + d * k, k); };
    // No closed form for the structure constants once d >= 2 — that is the
    // open part of the story; S_int stays empty and eval_S_int reports the
    // missing capability, pointing the caller at discovery instead.
    s.j_support = [](long k, long i) { return JRange{0, i + k}; };
    s.deg_f = [](long k) { return k; };
    return s;
}

FamilySpec build_q311() {
    FamilySpec s;
    s.kind = FamilyKind::q;
    s.f_q = [](long n, long k) { return q_binomial(n, k) * q_binomial(n + k, k); };
    s.S_q = [](long k, long j, long i) {
        return q_binomial(i + k, i) * q_multinomial3(j, j - i, j - k, i + k - j);
    };
    s.A = [](long k, long j, long i, long n) { return (n - j) * (k + i - j); };
    s.B = [](long k, long j, long i) { return -(k + i - j) * j; };
    s.C = [](long k, long j, long r, long n) { return (r * k - j) * n; };
    s.j_support = standard_support;
    s.deg_f = [](long k) { return 2 * k; };
    s.paired_classical = FamilyId{FamilyId::Base::C211, 0};
    s.staircase_shift = 0;
    return s;
}

FamilySpec build_q312(long c) {
    FamilySpec s;
    s.kind = FamilyKind::q;
    s.f_q = [c](long n, long k) { return q_binomial(n, k + c) * q_binomial(n + k, k + c); };
    // (q)_{i+k+c} (q)_{j+c}^2 / ((q)_{i+c} (q)_{k+c} (q)_j (q)_{j-i} (q)_{j-k}
    // (q)_{i+k+c-j}). Neither factor group is a Gaussian binomial on its own,
    // so the quotient is taken in one exact division; only the full quotient
    // is guaranteed to be a polynomial.
    s.S_q = [c](long k, long j, long i) {
        if (j - i < 0 || j - k < 0 || i + k + c - j < 0)
            return QLaurent();
        QLaurent num = q_pochhammer(i + k + c) * q_pochhammer(j + c) * q_pochhammer(j + c);
        QLaurent den = q_pochhammer(i + c) * q_pochhammer(k + c) * q_pochhammer(j) *
                       q_pochhammer(j - i) * q_pochhammer(j - k) *
                       q_pochhammer(i + k + c - j);
        auto quot = QLaurent::divide_exact(num, den);
        if (!quot)
            throw arithmetic_bug("shifted-column q structure constant is not a polynomial");
        return *quot;
    };
    s.A = [c](long k, long j, long i, long n) {
        return (n - j) * (k + i - j) + c * (n - k - i - c);
    };
    s.B = [c](long k, long j, long i) { return -(k + i - j) * j - c * (k + i + c); };
    s.C = [c](long k, long j, long r, long n) { return (r * k - j) * n + (r - 1) * c * n; };
    s.j_support = [c](long k, long i) { return JRange{std::max(i, k), i + k + c}; };
    s.deg_f = [c](long k) { return 2 * (k + c); };
    s.paired_classical = FamilyId{FamilyId::Base::C212, c};
    s.staircase_shift = c;
    return s;
}

FamilySpec build_q32() {
    FamilySpec s;
    s.kind = FamilyKind::q;
    s.f_q = [](long n, long k) { return q_binomial(n, k); };
    s.S_q = [](long k, long j, long i) { return q_multinomial3(j, j - i, j - k, i + k - j); };
    s.A = [](long k, long j, long i, long /*n*/) { return (j - i) * (j - k); };
    s.B = [](long k, long j, long i) { return (j - i) * (j - k); };
    s.C = [](long, long, long, long) { return 0L; };
    s.j_support = standard_support;
    s.deg_f = [](long k) { return k; };
    s.paired_classical = FamilyId{FamilyId::Base::C22, 0};
    s.staircase_shift = 0;
    return s;
}

FamilySpec build_q33() {
    FamilySpec s;
    s.kind = FamilyKind::q;
    s.f_q = [](long n, long k) { return q_binomial(n + k, k); };
    s.S_q = [](long k, long j, long i) {
        QLaurent m = q_multinomial3(j, j - i, j - k, i + k - j);
        return parity_sign(i + j + k) == 1 ? m : QLaurent(-1) * m;
    };
    s.A = [](long k, long j, long i, long n) {
        long m = k + i - j;
        return checked_half(m * (2 * n + m + 1), "triangular exponent");
    };
    s.B = [](long k, long j, long i) {
        long m = k + i - j;
        return checked_half(m * (m + 1), "triangular exponent");
    };
    s.C = [](long k, long j, long r, long n) { return (r * k - j) * n; };
    s.j_support = standard_support;
    s.deg_f = [](long k) { return k; };
    s.paired_classical = FamilyId{FamilyId::Base::C23, 0};
    // f(n, j) = {n+j brack j} never vanishes for n, j >= 0, so expansion
    // systems for this family have no triangular order; solves go through
    // the full Laurent-ring elimination.
    s.staircase_shift = std::nullopt;
    return s;
}

} // namespace

// ---- FamilyId ----------------------------------------------------------

std::string FamilyId::str() const {
    switch (base) {
    case Base::C211: return "C-2.1.1";
    case Base::C212: return "C-2.1.2:c=" + std::to_string(param);
    case Base::C22: return "C-2.2";
    case Base::C23: return "C-2.3";
    case Base::D: return "D:d=" + std::to_string(param);
    case Base::Q311: return "Q-3.1.1";
    case Base::Q312: return "Q-3.1.2:c=" + std::to_string(param);
    case Base::Q32: return "Q-3.2";
    case Base::Q33: return "Q-3.3";
    }
    throw std::logic_error("unreachable family base");
}

std::optional<FamilyId> FamilyId::parse(std::string_view s) {
    auto with_param = [&](Base b, std::string_view head,
                          std::string_view key) -> std::optional<FamilyId> {
        if (s == head)
            return FamilyId{b, 0};
        std::string prefix = std::string(head) + ":" + std::string(key) + "=";
        if (s.size() <= prefix.size() || s.substr(0, prefix.size()) != prefix)
            return std::nullopt;
        std::string_view digits = s.substr(prefix.size());
        long v = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
        if (ec != std::errc{} || ptr != digits.data() + digits.size() || v < 0)
            return std::nullopt;
        return FamilyId{b, v};
    };
    if (s == "C-2.1.1")
        return FamilyId{Base::C211, 0};
    if (s == "C-2.2")
        return FamilyId{Base::C22, 0};
    if (s == "C-2.3")
        return FamilyId{Base::C23, 0};
    if (s == "Q-3.1.1")
        return FamilyId{Base::Q311, 0};
    if (s == "Q-3.2")
        return FamilyId{Base::Q32, 0};
    if (s == "Q-3.3")
        return FamilyId{Base::Q33, 0};
    if (s.substr(0, 7) == "C-2.1.2")
        return with_param(Base::C212, "C-2.1.2", "c");
    if (s.substr(0, 7) == "Q-3.1.2")
        return with_param(Base::Q312, "Q-3.1.2", "c");
    if (s.substr(0, 1) == "D")
        return with_param(Base::D, "D", "d");
    return std::nullopt;
}

// ---- FamilySpec checked evaluators --------------------------------------

Int FamilySpec::eval_f_int(long n, long k) const {
    if (!f_int)
        throw capability_error("family " + id.str() + " has no integer base function");
    require_nonneg(n, "n");
    require_nonneg(k, "k");
    return f_int(n, k);
}

QLaurent FamilySpec::eval_f_q(long n, long k) const {
    if (!f_q)
        throw capability_error("family " + id.str() + " has no q base function");
    require_nonneg(n, "n");
    require_nonneg(k, "k");
    return f_q(n, k);
}

Int FamilySpec::eval_S_int(long k, long j, long i) const {
    if (!S_int)
        throw capability_error("family " + id.str() +
                               " has no closed-form structure constants; use discovery");
    require_nonneg(k, "k");
    require_nonneg(j, "j");
    require_nonneg(i, "i");
    return S_int(k, j, i);
}

QLaurent FamilySpec::eval_S_q(long k, long j, long i) const {
    if (!S_q)
        throw capability_error("family " + id.str() + " has no q structure constants");
    require_nonneg(k, "k");
    require_nonneg(j, "j");
    require_nonneg(i, "i");
    return S_q(k, j, i);
}

long FamilySpec::exp_a(long k, long j, long i, long n) const {
    if (!A)
        throw capability_error("family " + id.str() + " has no exponent forms");
    return A(k, j, i, n);
}

long FamilySpec::exp_b(long k, long j, long i) const {
    if (!B)
        throw capability_error("family " + id.str() + " has no exponent forms");
    return B(k, j, i);
}

long FamilySpec::exp_c(long k, long j, long r, long n) const {
    if (!C)
        throw capability_error("family " + id.str() + " has no exponent forms");
    if (r < 1)
        throw std::invalid_argument("composition depth r must be >= 1, got " +
                                    std::to_string(r));
    return C(k, j, r, n);
}

JRange FamilySpec::support(long k, long i) const {
    require_nonneg(k, "k");
    require_nonneg(i, "i");
    return j_support(k, i);
}

long FamilySpec::deg(long k) const {
    require_nonneg(k, "k");
    return deg_f(k);
}

// ---- factory -----------------------------------------------------------

FamilySpec make_family(FamilyId id) {
    if (id.parameterized() && id.param < 0)
        throw std::invalid_argument("family parameter must be nonnegative: " + id.str());
    FamilySpec s;
    switch (id.base) {
    case FamilyId::Base::C211: s = build_c211(); break;
    case FamilyId::Base::C212: s = build_c212(id.param); break;
    case FamilyId::Base::C22: s = build_c22(); break;
    case FamilyId::Base::C23: s = build_c23(); break;
    case FamilyId::Base::D: s = build_d(id.param); break;
    case FamilyId::Base::Q311: s = build_q311(); break;
    case FamilyId::Base::Q312: s = build_q312(id.param); break;
    case FamilyId::Base::Q32: s = build_q32(); break;
    case FamilyId::Base::Q33: s = build_q33(); break;
    }
    s.id = id;
    return s;
}

FamilySpec make_family(const std::string& id_string) {
    auto id = FamilyId::parse(id_string);
    if (!id)
        throw std::invalid_argument("unknown family id: " + id_string);
    return make_family(*id);
}

FamilySpec with_perturbed_S(FamilySpec spec, long k0, long j0, long i0, long delta) {
    if (spec.S_int) {
        auto inner = spec.S_int;
        spec.S_int = [=](long k, long j, long i) {
            Int v = inner(k, j, i);
            if (k == k0 && j == j0 && i == i0)
                v += delta;
            return v;
        };
    }
    if (spec.S_q) {
        auto inner = spec.S_q;
        spec.S_q = [=](long k, long j, long i) {
            QLaurent v = inner(k, j, i);
            if (k == k0 && j == j0 && i == i0)
                v = v + QLaurent(delta);
            return v;
        };
    }
    return spec;
}

} // namespace qexpand
