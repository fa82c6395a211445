#pragma once

#include "qexpand/errors.hpp"
#include "qexpand/numeric.hpp"
#include "qexpand/qlaurent.hpp"

#include <optional>
#include <vector>

namespace qexpand {

template <class T>
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(long rows, long cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows * cols)) {}

    long rows() const { return rows_; }
    long cols() const { return cols_; }
    T& at(long r, long c) { return a_[static_cast<size_t>(r * cols_ + c)]; }
    const T& at(long r, long c) const { return a_[static_cast<size_t>(r * cols_ + c)]; }

private:
    long rows_ = 0, cols_ = 0;
    std::vector<T> a_;
};

enum class SolveStatus { unique, inconsistent, underdetermined };

struct SolveReport {
    SolveStatus status = SolveStatus::unique;
    std::vector<Rat> solution; // populated only for unique
    long rank = 0;
    std::optional<long> witness_row; // an original row index violating consistency
};

// Exact solve of A x = b (rows >= cols expected; overdetermined rows are
// consistency-checked). Fraction-free Bareiss elimination after clearing row
// denominators, so intermediate growth stays polynomial.
SolveReport solve_exact(const DenseMatrix<Rat>& a, const std::vector<Rat>& b);

// Canonical basis of the right kernel: each vector has integer entries of
// content 1 with positive first nonzero entry; empty when A has full column
// rank. Basis vectors correspond to the free columns in ascending order.
std::vector<std::vector<Rat>> nullspace_exact(const DenseMatrix<Rat>& a);

struct RingSolveReport {
    SolveStatus status = SolveStatus::unique;
    std::vector<QLaurent> solution;
    long rank = 0;
    std::optional<long> witness_row;
    // Set when the unique solution exists over the fraction field but is not
    // an integer-coefficient Laurent polynomial; reported, never swallowed.
    bool division_failed = false;
};

// Bareiss elimination directly over the Laurent ring. Used where the q-side
// expansion system has no staircase to back-substitute along (the {n+k brack
// k} basis never vanishes). All divisions are exact by the Sylvester
// identity; the final back-substitution asserts Laurent divisibility.
RingSolveReport ring_solve_exact(const DenseMatrix<QLaurent>& a, const std::vector<QLaurent>& b);

} // namespace qexpand
