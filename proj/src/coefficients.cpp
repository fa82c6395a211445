#include "qexpand/coefficients.hpp"

#include "qexpand/errors.hpp"
#include "qexpand/linalg.hpp"

#include <algorithm>

namespace qexpand {

namespace {

void require_table_args(long k, long r) {
    if (k < 0)
        throw std::invalid_argument("k must be nonnegative, got " + std::to_string(k));
    if (r < 1)
        throw std::invalid_argument("r must be positive, got " + std::to_string(r));
}

Int int_pow(const Int& base, long e) {
    Int p;
    mpz_pow_ui(p.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
    return p;
}

template <typename V, typename StepS>
CoeffTable<V> run_recursion(const FamilySpec& fam, long k, long r, const V& one,
                            const StepS& step) {
    JRange cur_range{k, k};
    std::vector<V> cur{one};
    for (long t = 2; t <= r; ++t) {
        JRange next_range{fam.support(k, cur_range.lo).lo, fam.support(k, cur_range.hi).hi};
        std::vector<V> next(static_cast<size_t>(next_range.hi - next_range.lo + 1), V());
        for (long m = cur_range.lo; m <= cur_range.hi; ++m) {
            const V& w = cur[static_cast<size_t>(m - cur_range.lo)];
            if (w == V())
                continue;
            JRange cell = fam.support(k, m);
            for (long j = cell.lo; j <= cell.hi; ++j)
                next[static_cast<size_t>(j - next_range.lo)] += step(w, j, m);
        }
        cur_range = next_range;
        cur = std::move(next);
    }
    return CoeffTable<V>{fam.id, k, r, "recursive", cur_range, std::move(cur)};
}

} // namespace

JRange composed_support(const FamilySpec& fam, long k, long r) {
    require_table_args(k, r);
    JRange acc{k, k};
    for (long t = 2; t <= r; ++t)
        acc = JRange{fam.support(k, acc.lo).lo, fam.support(k, acc.hi).hi};
    return acc;
}

IntTable a_table_recursive(const FamilySpec& fam, long k, long r,
                           const std::function<Int(long, long, long)>& S) {
    require_table_args(k, r);
    return run_recursion<Int>(fam, k, r, Int(1), [&](const Int& w, long j, long m) -> Int {
        return w * S(k, j, m);
    });
}

IntTable a_table_recursive(const FamilySpec& fam, long k, long r) {
    return a_table_recursive(fam, k, r,
                             [&fam](long kk, long j, long i) { return fam.eval_S_int(kk, j, i); });
}

RatTable a_table_direct_rat(const FamilySpec& fam, long k, long r) {
    require_table_args(k, r);
    JRange range = composed_support(fam, k, r);
    long unknowns = range.hi - range.lo + 1;
    // Enough rows that polynomials of every involved degree are pinned, plus
    // two rows of pure consistency checking.
    long maxdeg = std::max(r * fam.deg(k), fam.deg(range.hi));
    long rows = std::max(unknowns, maxdeg + 1) + 2;
    DenseMatrix<Rat> m(rows, unknowns);
    std::vector<Rat> rhs(static_cast<size_t>(rows));
    for (long n = 0; n < rows; ++n) {
        for (long j = range.lo; j <= range.hi; ++j)
            m.at(n, j - range.lo) = Rat(fam.eval_f_int(n, j));
        rhs[static_cast<size_t>(n)] = Rat(int_pow(fam.eval_f_int(n, k), r));
    }
    SolveReport rep = solve_exact(m, rhs);
    if (rep.status == SolveStatus::inconsistent)
        throw falsification_error(
            "expansion of " + fam.id.str() + " (k=" + std::to_string(k) + ", r=" +
            std::to_string(r) + ") has no solution; first bad sample row n=" +
            std::to_string(rep.witness_row.value_or(-1)));
    if (rep.status == SolveStatus::underdetermined)
        throw arithmetic_bug("expansion system unexpectedly rank-deficient for " +
                             fam.id.str());
    return RatTable{fam.id, k, r, "direct-oracle", range, std::move(rep.solution)};
}

IntTable a_table_direct(const FamilySpec& fam, long k, long r) {
    RatTable rat = a_table_direct_rat(fam, k, r);
    std::vector<Int> values;
    values.reserve(rat.values.size());
    for (size_t idx = 0; idx < rat.values.size(); ++idx) {
        if (!is_integer(rat.values[idx]))
            throw falsification_error(
                "expansion coefficient of " + fam.id.str() + " at k=" + std::to_string(k) +
                ", r=" + std::to_string(r) + ", j=" +
                std::to_string(rat.range.lo + static_cast<long>(idx)) +
                " is not an integer: " + rat_to_string(rat.values[idx]));
        values.push_back(rat.values[idx].get_num());
    }
    return IntTable{rat.family, rat.k, rat.r, rat.provenance, rat.range, std::move(values)};
}

SchmidtRow schmidt_c(long r, long nmax) {
    if (r < 1)
        throw std::invalid_argument("r must be positive, got " + std::to_string(r));
    if (nmax < 0)
        throw std::invalid_argument("nmax must be nonnegative, got " + std::to_string(nmax));
    FamilySpec fam = make_family("C-2.1.1");
    SchmidtRow row;
    row.r = r;
    for (long n = 0; n <= nmax; ++n) {
        Int lhs(0);
        for (long k = 0; k <= n; ++k)
            lhs += int_pow(fam.eval_f_int(n, k), r);
        Rat rem(lhs);
        for (long k = 0; k < n; ++k)
            rem -= Rat(fam.eval_f_int(n, k)) * row.values[static_cast<size_t>(k)];
        Rat c = rem / Rat(fam.eval_f_int(n, n)); // leading coefficient binom(2n, n)
        c.canonicalize();
        if (!is_integer(c))
            row.non_integral.push_back(n);
        row.values.push_back(std::move(c));
    }
    return row;
}

QTable p_table_q(const FamilySpec& fam, long k, long r) {
    require_table_args(k, r);
    return run_recursion<QLaurent>(
        fam, k, r, QLaurent(1), [&](const QLaurent& w, long j, long m) -> QLaurent {
            return (w * fam.eval_S_q(k, j, m)).shifted(fam.exp_b(k, j, m));
        });
}

namespace {

// RHS and basis terms of the defining q-expansion at a fixed n.
QLaurent q_expansion_rhs(const FamilySpec& fam, long k, long r, long n) {
    return fam.eval_f_q(n, k).pow(static_cast<unsigned long>(r));
}

QLaurent q_basis_term(const FamilySpec& fam, long k, long r, long n, long j) {
    return fam.eval_f_q(n, j).shifted(fam.exp_c(k, j, r, n));
}

QTable p_table_q_staircase(const FamilySpec& fam, long k, long r, long shift) {
    JRange range = composed_support(fam, k, r);
    std::vector<QLaurent> values(static_cast<size_t>(range.hi - range.lo + 1));
    for (long j = range.lo; j <= range.hi; ++j) {
        long n = j + shift; // first row where f(n, j) is nonzero
        QLaurent num = q_expansion_rhs(fam, k, r, n);
        for (long jp = range.lo; jp < j; ++jp)
            num -= values[static_cast<size_t>(jp - range.lo)] * q_basis_term(fam, k, r, n, jp);
        num = num.shifted(-fam.exp_c(k, j, r, n));
        auto quot = QLaurent::divide_exact(num, fam.eval_f_q(n, j));
        if (!quot)
            throw falsification_error(
                "q-expansion of " + fam.id.str() + " (k=" + std::to_string(k) + ", r=" +
                std::to_string(r) + ") is not Laurent-polynomial at j=" + std::to_string(j));
        values[static_cast<size_t>(j - range.lo)] = std::move(*quot);
    }
    // Two rows past the staircase check full consistency.
    for (long n = range.hi + shift + 1; n <= range.hi + shift + 2; ++n) {
        QLaurent sum;
        for (long j = range.lo; j <= range.hi; ++j)
            sum += values[static_cast<size_t>(j - range.lo)] * q_basis_term(fam, k, r, n, j);
        if (sum != q_expansion_rhs(fam, k, r, n))
            throw falsification_error("q-expansion of " + fam.id.str() +
                                      " fails its consistency row at n=" + std::to_string(n));
    }
    return QTable{fam.id, k, r, "direct-oracle", range, std::move(values)};
}

QTable p_table_q_ring(const FamilySpec& fam, long k, long r) {
    JRange range = composed_support(fam, k, r);
    long unknowns = range.hi - range.lo + 1;
    long rows = unknowns + 2;
    DenseMatrix<QLaurent> m(rows, unknowns);
    std::vector<QLaurent> rhs(static_cast<size_t>(rows));
    for (long n = 0; n < rows; ++n) {
        for (long j = range.lo; j <= range.hi; ++j)
            m.at(n, j - range.lo) = q_basis_term(fam, k, r, n, j);
        rhs[static_cast<size_t>(n)] = q_expansion_rhs(fam, k, r, n);
    }
    RingSolveReport rep = ring_solve_exact(m, rhs);
    if (rep.status == SolveStatus::inconsistent)
        throw falsification_error(
            "q-expansion of " + fam.id.str() + " (k=" + std::to_string(k) + ", r=" +
            std::to_string(r) + ") has no solution; first bad sample row n=" +
            std::to_string(rep.witness_row.value_or(-1)));
    if (rep.division_failed)
        throw falsification_error("q-expansion of " + fam.id.str() +
                                  " is not Laurent-polynomial (k=" + std::to_string(k) +
                                  ", r=" + std::to_string(r) + ")");
    if (rep.status == SolveStatus::underdetermined)
        throw arithmetic_bug("q-expansion system unexpectedly rank-deficient for " +
                             fam.id.str());
    return QTable{fam.id, k, r, "direct-oracle", range, std::move(rep.solution)};
}

} // namespace

QTable p_table_q_direct(const FamilySpec& fam, long k, long r) {
    require_table_args(k, r);
    if (fam.kind != FamilyKind::q)
        throw capability_error("family " + fam.id.str() + " is not a q family");
    if (fam.staircase_shift)
        return p_table_q_staircase(fam, k, r, *fam.staircase_shift);
    return p_table_q_ring(fam, k, r);
}

IntegralityReport check_integrality(const IntTable&) { return {}; }

IntegralityReport check_integrality(const RatTable& t) {
    IntegralityReport rep;
    for (size_t idx = 0; idx < t.values.size(); ++idx)
        if (!is_integer(t.values[idx])) {
            rep.all_integral = false;
            rep.offenders.push_back(t.range.lo + static_cast<long>(idx));
        }
    return rep;
}

IntegralityReport check_integrality(const QTable& t) {
    IntegralityReport rep;
    for (const auto& v : t.values)
        if (!v.is_zero())
            rep.min_offset = std::min(rep.min_offset, v.lo());
    rep.polynomial = rep.min_offset >= 0;
    return rep;
}

} // namespace qexpand
