#pragma once

#include "qexpand/numeric.hpp"
#include "qexpand/qlaurent.hpp"

#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace qexpand {

enum class FamilyKind { classical, q };

// Stable identifier for a registered identity family. The parameterized
// kinds carry c (the shifted-column families) or d (the conjecture family
// binom(n+dk, k)).
struct FamilyId {
    enum class Base { C211, C212, C22, C23, D, Q311, Q312, Q32, Q33 };
    Base base = Base::C211;
    long param = 0;

    bool parameterized() const {
        return base == Base::C212 || base == Base::Q312 || base == Base::D;
    }
    std::string str() const;
    static std::optional<FamilyId> parse(std::string_view s);
    friend bool operator==(const FamilyId&, const FamilyId&) = default;
};

struct JRange {
    long lo = 0, hi = -1;
    bool contains(long j) const { return lo <= j && j <= hi; }
    friend bool operator==(const JRange&, const JRange&) = default;
};

// A registered family: the base function f(n,k), closed-form structure
// constants S(k,j,i) where available, the exponent forms A/B/C on the q
// side, the j-support of S, and the degree of f(n,k) — in n for classical
// kinds, in x = q^n for q kinds. The degree is what turns finite checking
// into proof, so it is stored, never estimated.
//
// Registration contract: A, B and C are polynomial forms of degree at most
// 2 in each argument (A and C at most linear in n). The verification module
// leans on this — its grid proofs and x-degree spans are sound exactly
// because the exponents are low-degree polynomials, and it spot-checks the
// linearity in n rather than trusting it.
class FamilySpec {
public:
    FamilyId id;
    FamilyKind kind = FamilyKind::classical;
    std::function<Int(long n, long k)> f_int;
    std::function<Int(long k, long j, long i)> S_int; // null: no closed form
    std::function<QLaurent(long n, long k)> f_q;
    std::function<QLaurent(long k, long j, long i)> S_q;
    std::function<long(long k, long j, long i, long n)> A;
    std::function<long(long k, long j, long i)> B;
    std::function<long(long k, long j, long r, long n)> C;
    std::function<JRange(long k, long i)> j_support;
    std::function<long(long k)> deg_f;
    std::optional<FamilyId> paired_classical; // q kinds only
    // f(n, j) == 0 exactly when n < j + *staircase_shift; disengaged for the
    // never-vanishing {n+k brack k} shapes, which need a full ring solve.
    std::optional<long> staircase_shift;

    bool has_closed_S() const { return static_cast<bool>(S_int) || static_cast<bool>(S_q); }

    // Checked evaluators: wrong-kind or missing-capability calls throw
    // capability_error instead of hitting an empty std::function.
    Int eval_f_int(long n, long k) const;
    QLaurent eval_f_q(long n, long k) const;
    Int eval_S_int(long k, long j, long i) const;
    QLaurent eval_S_q(long k, long j, long i) const;
    long exp_a(long k, long j, long i, long n) const;
    long exp_b(long k, long j, long i) const;
    long exp_c(long k, long j, long r, long n) const;
    JRange support(long k, long i) const;
    long deg(long k) const;
};

// Build the spec for an id. Throws std::invalid_argument for ids outside
// the registry's domain (negative c or d).
FamilySpec make_family(FamilyId id);
FamilySpec make_family(const std::string& id_string);

// Test hook: a copy of spec whose S gains +delta at exactly one (k, j, i)
// cell, used to demonstrate that verification actually has teeth.
FamilySpec with_perturbed_S(FamilySpec spec, long k0, long j0, long i0, long delta = 1);

} // namespace qexpand
