#pragma once

#include "qexpand/numeric.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qexpand {

// Laurent polynomial in q with exact integer coefficients, dense over the
// contiguous exponent window [offset, offset + coeffs.size()).
//
// Normal form: the first and last stored coefficients are nonzero; the zero
// polynomial is the unique empty representation with offset 0. Every
// operation returns normalized values, so equality is plain member equality.
class QLaurent {
public:
    QLaurent() = default; // zero
    QLaurent(long constant) : QLaurent(Int(constant), 0) {}
    QLaurent(Int constant) : QLaurent(std::move(constant), 0) {}
    QLaurent(Int coeff, long exponent); // coeff * q^exponent

    static QLaurent from_coeffs(long offset, std::vector<Int> coeffs);

    bool is_zero() const { return c_.empty(); }
    // Lowest / highest exponent present. Meaningful only for nonzero values.
    long lo() const;
    long hi() const;
    long offset() const { return off_; }
    const std::vector<Int>& coeffs() const { return c_; }

    // Coefficient of q^e (0 outside the stored window).
    Int coeff(long e) const;

    QLaurent shifted(long e) const; // multiply by q^e
    Int eval_at_one() const;        // the q -> 1 specialization
    QLaurent pow(unsigned long e) const;

    QLaurent operator-() const;
    QLaurent& operator+=(const QLaurent& o);
    QLaurent& operator-=(const QLaurent& o);
    friend QLaurent operator+(QLaurent a, const QLaurent& b) { return a += b; }
    friend QLaurent operator-(QLaurent a, const QLaurent& b) { return a -= b; }
    friend QLaurent operator*(const QLaurent& a, const QLaurent& b);
    friend QLaurent operator*(const Int& s, const QLaurent& a);
    friend bool operator==(const QLaurent& a, const QLaurent& b) = default;

    // Exact quotient num / den over integer-coefficient Laurent polynomials,
    // or nullopt when the division leaves a remainder or forces a
    // non-integer coefficient. Division by zero is a caller bug.
    static std::optional<QLaurent> divide_exact(const QLaurent& num, const QLaurent& den);

    // Ascending human-readable form, e.g. "q^-1 + 1" or "1 - q - q^2 + q^3".
    std::string str() const;

private:
    void normalize();

    long off_ = 0;
    std::vector<Int> c_;
};

} // namespace qexpand
