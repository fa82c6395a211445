#include "qexpand/verify.hpp"

#include "qexpand/coefficients.hpp"
#include "qexpand/errors.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace qexpand {

namespace {

void require_nonneg(const char* name, long value) {
    if (value < 0)
        throw std::invalid_argument(std::string(name) + " must be nonnegative, got " +
                                    std::to_string(value));
}

Int int_pow(const Int& base, long e) {
    Int out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
    return out;
}

// An exponent's dependence on n, e(n) = at0 + slope*n. The registration
// contract caps the degree in n at 2, so a single vanishing second
// difference proves the form is affine — which is what makes the slope
// usable in a rigorous x-degree window.
struct AffineExponent {
    long at0 = 0;
    long slope = 0;
};

AffineExponent affine_in_n(const std::function<long(long n)>& e, const char* label) {
    AffineExponent out;
    out.at0 = e(0);
    out.slope = e(1) - out.at0;
    if (e(2) - e(1) != out.slope)
        throw arithmetic_bug(std::string(label) +
                             " is not affine in n; the registration contract is violated");
    return out;
}

} // namespace

std::string to_string(ProofStatus status) {
    switch (status) {
    case ProofStatus::proved:
        return "proved";
    case ProofStatus::falsified:
        return "falsified";
    case ProofStatus::checked_only:
        return "checked-only";
    }
    throw std::invalid_argument("unknown ProofStatus");
}

bool ProofReport::structurally_sound() const {
    if (status == ProofStatus::proved && points_checked < degree_bound_used + 1)
        return false;
    if (status == ProofStatus::falsified && !counterexample.has_value())
        return false;
    return true;
}

ProofReport verify_product_identity_classical(const FamilySpec& fam, long k, long i) {
    require_nonneg("k", k);
    require_nonneg("i", i);

    ProofReport rep;
    rep.family = fam.id;
    rep.statement = "product-identity";
    rep.params = {{"k", k}, {"i", i}};

    const JRange range = fam.support(k, i);
    std::vector<Int> s;
    s.reserve(static_cast<size_t>(range.hi - range.lo + 1));
    for (long j = range.lo; j <= range.hi; ++j)
        s.push_back(fam.eval_S_int(k, j, i));

    // Both sides have degree <= deg_f(i) + deg_f(k); the basis term of
    // highest degree is folded in so the bound stays honest even for a
    // hypothetical family whose support outruns the product degree.
    const long bound = std::max(fam.deg(i) + fam.deg(k), fam.deg(range.hi));
    rep.degree_bound_used = bound;

    for (long n = 0; n <= bound; ++n) {
        Int lhs = fam.eval_f_int(n, i) * fam.eval_f_int(n, k);
        Int rhs = 0;
        for (long j = range.lo; j <= range.hi; ++j) {
            const Int& sj = s[static_cast<size_t>(j - range.lo)];
            if (sj != 0)
                rhs += sj * fam.eval_f_int(n, j);
        }
        ++rep.points_checked;
        if (lhs != rhs) {
            std::ostringstream os;
            os << "k=" << k << ", i=" << i << ", n=" << n << ": lhs=" << lhs.get_str()
               << ", rhs=" << rhs.get_str();
            rep.status = ProofStatus::falsified;
            rep.counterexample = os.str();
            return rep;
        }
    }
    rep.status = ProofStatus::proved;
    return rep;
}

ProofReport verify_product_identity_q(const FamilySpec& fam, long k, long i) {
    require_nonneg("k", k);
    require_nonneg("i", i);

    ProofReport rep;
    rep.family = fam.id;
    rep.statement = "product-identity";
    rep.params = {{"k", k}, {"i", i}};

    const JRange range = fam.support(k, i);
    std::vector<QLaurent> s;
    s.reserve(static_cast<size_t>(range.hi - range.lo + 1));

    // With x = q^n, term j occupies x-exponents [slope_j, slope_j + deg_f(j)]
    // and the product side occupies [0, deg_f(i) + deg_f(k)]. A Laurent
    // polynomial whose window spans W exponents and which vanishes at W
    // distinct nonzero points is zero, and q^0, q^1, ... are distinct in the
    // coefficient field; that window is the whole rigor argument.
    long span_lo = 0;
    long span_hi = fam.deg(i) + fam.deg(k);
    for (long j = range.lo; j <= range.hi; ++j) {
        s.push_back(fam.eval_S_q(k, j, i));
        const AffineExponent a =
            affine_in_n([&](long n) { return fam.exp_a(k, j, i, n); }, "exponent A");
        span_lo = std::min(span_lo, a.slope);
        span_hi = std::max(span_hi, a.slope + fam.deg(j));
    }
    const long bound = span_hi - span_lo;
    rep.degree_bound_used = bound;

    for (long n = 0; n <= bound; ++n) {
        QLaurent lhs = fam.eval_f_q(n, i) * fam.eval_f_q(n, k);
        QLaurent rhs;
        for (long j = range.lo; j <= range.hi; ++j) {
            const QLaurent& sj = s[static_cast<size_t>(j - range.lo)];
            if (!sj.is_zero())
                rhs += (sj * fam.eval_f_q(n, j)).shifted(fam.exp_a(k, j, i, n));
        }
        ++rep.points_checked;
        if (!(lhs == rhs)) {
            std::ostringstream os;
            os << "k=" << k << ", i=" << i << ", n=" << n << ": lhs=" << lhs.str()
               << ", rhs=" << rhs.str();
            rep.status = ProofStatus::falsified;
            rep.counterexample = os.str();
            return rep;
        }
    }
    rep.status = ProofStatus::proved;
    return rep;
}

ProofReport verify_exponent_laws(const FamilySpec& fam) {
    ProofReport rep;
    rep.family = fam.id;
    rep.statement = "exponent-law";
    rep.params = {{"grid_max", 3}};

    if (!fam.A || !fam.B || !fam.C)
        throw capability_error("family " + fam.id.str() +
                               " has no exponent data; the functional-equation laws "
                               "apply to q kinds");

    // The forms are polynomial of degree <= 2 in each argument, so 4 points
    // per variable overshoot per-variable degree + 1 and grid vanishing is a
    // proof. The raw forms are evaluated (not the checked wrappers) because
    // the grid legitimately probes the polynomial at r = 0.
    rep.degree_bound_used = 2;
    constexpr long grid = 3;

    for (long k = 0; k <= grid; ++k)
        for (long j = 0; j <= grid; ++j)
            for (long i = 0; i <= grid; ++i)
                for (long r = 0; r <= grid; ++r)
                    for (long n = 0; n <= grid; ++n) {
                        const long lhs = fam.B(k, j, i) + fam.C(k, j, r + 1, n);
                        const long rhs = fam.A(k, j, i, n) + fam.C(k, i, r, n);
                        ++rep.points_checked;
                        if (lhs != rhs) {
                            std::ostringstream os;
                            os << "(k,j,i,r,n)=(" << k << "," << j << "," << i << "," << r
                               << "," << n << "): B+C(k,j,r+1,n)=" << lhs
                               << ", A+C(k,i,r,n)=" << rhs;
                            rep.status = ProofStatus::falsified;
                            rep.counterexample = os.str();
                            return rep;
                        }
                    }

    for (long k = 0; k <= grid; ++k)
        for (long n = 0; n <= grid; ++n) {
            const long v = fam.C(k, k, 1, n);
            ++rep.points_checked;
            if (v != 0) {
                std::ostringstream os;
                os << "(k,n)=(" << k << "," << n << "): C(k,k,1,n)=" << v << ", expected 0";
                rep.status = ProofStatus::falsified;
                rep.counterexample = os.str();
                return rep;
            }
        }

    rep.status = ProofStatus::proved;
    return rep;
}

namespace {

ProofReport verify_expansion_classical(const FamilySpec& fam, long k, long r, long n_max,
                                       ProofReport rep) {
    const IntTable table =
        fam.S_int ? a_table_recursive(fam, k, r) : a_table_direct(fam, k, r);

    const long bound = std::max(r * fam.deg(k), fam.deg(table.range.hi));
    rep.degree_bound_used = bound;

    for (long n = 0; n <= n_max; ++n) {
        Int lhs = int_pow(fam.eval_f_int(n, k), r);
        Int rhs = 0;
        for (long j = table.range.lo; j <= table.range.hi; ++j) {
            const Int& aj = table.at(j);
            if (aj != 0)
                rhs += aj * fam.eval_f_int(n, j);
        }
        ++rep.points_checked;
        if (lhs != rhs) {
            std::ostringstream os;
            os << "k=" << k << ", r=" << r << ", n=" << n << ": lhs=" << lhs.get_str()
               << ", rhs=" << rhs.get_str();
            rep.status = ProofStatus::falsified;
            rep.counterexample = os.str();
            return rep;
        }
    }
    rep.status = n_max >= bound ? ProofStatus::proved : ProofStatus::checked_only;
    return rep;
}

ProofReport verify_expansion_q(const FamilySpec& fam, long k, long r, long n_max,
                               ProofReport rep) {
    const QTable table = p_table_q(fam, k, r);

    // Same windowing argument as the product identity, with C in place of A
    // and the r-th power on the left: x-window [0, r*deg_f(k)] against
    // [slope_j, slope_j + deg_f(j)] per basis term.
    long span_lo = 0;
    long span_hi = r * fam.deg(k);
    for (long j = table.range.lo; j <= table.range.hi; ++j) {
        const AffineExponent c =
            affine_in_n([&](long n) { return fam.exp_c(k, j, r, n); }, "exponent C");
        span_lo = std::min(span_lo, c.slope);
        span_hi = std::max(span_hi, c.slope + fam.deg(j));
    }
    const long bound = span_hi - span_lo;
    rep.degree_bound_used = bound;

    for (long n = 0; n <= n_max; ++n) {
        QLaurent lhs = fam.eval_f_q(n, k).pow(static_cast<unsigned long>(r));
        QLaurent rhs;
        for (long j = table.range.lo; j <= table.range.hi; ++j) {
            const QLaurent& pj = table.at(j);
            if (!pj.is_zero())
                rhs += (pj * fam.eval_f_q(n, j)).shifted(fam.exp_c(k, j, r, n));
        }
        ++rep.points_checked;
        if (!(lhs == rhs)) {
            std::ostringstream os;
            os << "k=" << k << ", r=" << r << ", n=" << n << ": lhs=" << lhs.str()
               << ", rhs=" << rhs.str();
            rep.status = ProofStatus::falsified;
            rep.counterexample = os.str();
            return rep;
        }
    }
    rep.status = n_max >= bound ? ProofStatus::proved : ProofStatus::checked_only;
    return rep;
}

} // namespace

ProofReport verify_expansion(const FamilySpec& fam, long k, long r, long n_max) {
    require_nonneg("k", k);
    require_nonneg("n_max", n_max);
    if (r < 1)
        throw std::invalid_argument("power r must be at least 1, got " + std::to_string(r));

    ProofReport rep;
    rep.family = fam.id;
    rep.statement = "expansion";
    rep.params = {{"k", k}, {"r", r}, {"n_max", n_max}};

    if (fam.kind == FamilyKind::q)
        return verify_expansion_q(fam, k, r, n_max, std::move(rep));
    return verify_expansion_classical(fam, k, r, n_max, std::move(rep));
}

} // namespace qexpand
