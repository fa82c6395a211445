#include "qexpand/linalg.hpp"

#include <algorithm>
#include <utility>

namespace qexpand {

namespace {

template <class T>
struct ring_traits;

template <>
struct ring_traits<Int> {
    static bool is_zero(const Int& v) { return v == 0; }
    // (a*b - c*d) / prev, exact by the Sylvester identity.
    static Int cross_div(const Int& a, const Int& b, const Int& c, const Int& d, const Int& prev) {
        Int num = a * b - c * d;
        if (prev == 1) return num;
        Int q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
        if (r != 0) throw arithmetic_bug("bareiss: inexact division over Z");
        return q;
    }
};

template <>
struct ring_traits<QLaurent> {
    static bool is_zero(const QLaurent& v) { return v.is_zero(); }
    static QLaurent cross_div(const QLaurent& a, const QLaurent& b, const QLaurent& c,
                              const QLaurent& d, const QLaurent& prev) {
        QLaurent num = a * b - c * d;
        if (prev == QLaurent(1)) return num;
        auto q = QLaurent::divide_exact(num, prev);
        if (!q) throw arithmetic_bug("bareiss: inexact division over the Laurent ring");
        return *q;
    }
};

template <class T>
struct Echelon {
    DenseMatrix<T> m;
    std::vector<long> pivot_col;  // pivot column per pivot row
    std::vector<long> row_origin; // original row index per current position
    long rank = 0;
};

// Fraction-free row echelon with row pivoting; columns >= elim_cols are
// carried along (right-hand sides) but never chosen as pivots.
template <class T>
Echelon<T> bareiss_echelon(DenseMatrix<T> m, long elim_cols) {
    using ops = ring_traits<T>;
    Echelon<T> e;
    e.row_origin.resize(static_cast<size_t>(m.rows()));
    for (long r = 0; r < m.rows(); ++r) e.row_origin[static_cast<size_t>(r)] = r;

    T prev{1};
    long row = 0;
    for (long col = 0; col < elim_cols && row < m.rows(); ++col) {
        long pr = row;
        while (pr < m.rows() && ops::is_zero(m.at(pr, col))) ++pr;
        if (pr == m.rows()) continue; // free column
        if (pr != row) {
            for (long c = 0; c < m.cols(); ++c) std::swap(m.at(row, c), m.at(pr, c));
            std::swap(e.row_origin[static_cast<size_t>(row)], e.row_origin[static_cast<size_t>(pr)]);
        }
        for (long rr = row + 1; rr < m.rows(); ++rr) {
            for (long cc = col + 1; cc < m.cols(); ++cc)
                m.at(rr, cc) = ops::cross_div(m.at(row, col), m.at(rr, cc), m.at(rr, col), m.at(row, cc), prev);
            m.at(rr, col) = T{0};
        }
        prev = m.at(row, col);
        e.pivot_col.push_back(col);
        ++row;
    }
    e.rank = row;
    e.m = std::move(m);
    return e;
}

DenseMatrix<Int> clear_denominators(const DenseMatrix<Rat>& a, const std::vector<Rat>& b) {
    DenseMatrix<Int> m(a.rows(), a.cols() + 1);
    for (long r = 0; r < a.rows(); ++r) {
        Int scale = 1;
        for (long c = 0; c < a.cols(); ++c) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), a.at(r, c).get_den_mpz_t());
        mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), b[static_cast<size_t>(r)].get_den_mpz_t());
        for (long c = 0; c < a.cols(); ++c) {
            const Rat& v = a.at(r, c);
            m.at(r, c) = v.get_num() * (scale / v.get_den());
        }
        const Rat& v = b[static_cast<size_t>(r)];
        m.at(r, a.cols()) = v.get_num() * (scale / v.get_den());
    }
    return m;
}

} // namespace

SolveReport solve_exact(const DenseMatrix<Rat>& a, const std::vector<Rat>& b) {
    if (static_cast<long>(b.size()) != a.rows()) throw arithmetic_bug("solve_exact: rhs size mismatch");
    const long n = a.cols();
    auto e = bareiss_echelon(clear_denominators(a, b), n);

    SolveReport rep;
    rep.rank = e.rank;
    for (long r = e.rank; r < a.rows(); ++r) {
        if (e.m.at(r, n) != 0) {
            rep.status = SolveStatus::inconsistent;
            rep.witness_row = e.row_origin[static_cast<size_t>(r)];
            return rep;
        }
    }
    if (e.rank < n) {
        rep.status = SolveStatus::underdetermined;
        return rep;
    }
    rep.solution.assign(static_cast<size_t>(n), Rat(0));
    for (long t = n - 1; t >= 0; --t) {
        Rat acc(e.m.at(t, n));
        for (long c = t + 1; c < n; ++c) acc -= Rat(e.m.at(t, c)) * rep.solution[static_cast<size_t>(c)];
        rep.solution[static_cast<size_t>(t)] = acc / Rat(e.m.at(t, t));
    }
    return rep;
}

std::vector<std::vector<Rat>> nullspace_exact(const DenseMatrix<Rat>& a) {
    const long n = a.cols();
    auto e = bareiss_echelon(clear_denominators(a, std::vector<Rat>(static_cast<size_t>(a.rows()), Rat(0))), n);

    std::vector<bool> is_pivot(static_cast<size_t>(n), false);
    for (long pc : e.pivot_col) is_pivot[static_cast<size_t>(pc)] = true;

    std::vector<std::vector<Rat>> basis;
    for (long f = 0; f < n; ++f) {
        if (is_pivot[static_cast<size_t>(f)]) continue;
        std::vector<Rat> x(static_cast<size_t>(n), Rat(0));
        x[static_cast<size_t>(f)] = 1;
        for (long t = e.rank - 1; t >= 0; --t) {
            long pc = e.pivot_col[static_cast<size_t>(t)];
            Rat acc(0);
            for (long c = pc + 1; c < n; ++c)
                if (e.m.at(t, c) != 0) acc -= Rat(e.m.at(t, c)) * x[static_cast<size_t>(c)];
            x[static_cast<size_t>(pc)] = acc / Rat(e.m.at(t, pc));
        }
        // Canonicalize: integer entries, content 1, first nonzero positive.
        Int den = 1;
        for (const Rat& v : x) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
        Int content = 0;
        for (Rat& v : x) {
            v *= Rat(den);
            v.canonicalize();
            mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_num_mpz_t());
        }
        int sign = 0;
        for (Rat& v : x) {
            if (v == 0) continue;
            v /= Rat(content);
            v.canonicalize();
            if (sign == 0) sign = sgn(v);
            if (sign < 0) v = -v;
        }
        basis.push_back(std::move(x));
    }
    return basis;
}

RingSolveReport ring_solve_exact(const DenseMatrix<QLaurent>& a, const std::vector<QLaurent>& b) {
    if (static_cast<long>(b.size()) != a.rows()) throw arithmetic_bug("ring_solve_exact: rhs size mismatch");
    const long n = a.cols();
    DenseMatrix<QLaurent> m(a.rows(), n + 1);
    for (long r = 0; r < a.rows(); ++r) {
        for (long c = 0; c < n; ++c) m.at(r, c) = a.at(r, c);
        m.at(r, n) = b[static_cast<size_t>(r)];
    }
    auto e = bareiss_echelon(std::move(m), n);

    RingSolveReport rep;
    rep.rank = e.rank;
    for (long r = e.rank; r < a.rows(); ++r) {
        if (!e.m.at(r, n).is_zero()) {
            rep.status = SolveStatus::inconsistent;
            rep.witness_row = e.row_origin[static_cast<size_t>(r)];
            return rep;
        }
    }
    if (e.rank < n) {
        rep.status = SolveStatus::underdetermined;
        return rep;
    }
    // Direct back-substitution; each step's division is exact in the ring
    // whenever the fraction-field solution is an integer-coefficient Laurent
    // polynomial, and fails (reported, not swallowed) when it is not.
    std::vector<QLaurent> x(static_cast<size_t>(n));
    for (long t = n - 1; t >= 0; --t) {
        QLaurent acc = e.m.at(t, n);
        for (long c = t + 1; c < n; ++c) acc -= e.m.at(t, c) * x[static_cast<size_t>(c)];
        auto quo = QLaurent::divide_exact(acc, e.m.at(t, t));
        if (!quo) {
            rep.division_failed = true;
            return rep;
        }
        x[static_cast<size_t>(t)] = std::move(*quo);
    }
    rep.solution = std::move(x);
    return rep;
}

} // namespace qexpand
