#include "qexpand/qlaurent.hpp"

#include "qexpand/errors.hpp"

#include <algorithm>
#include <sstream>

namespace qexpand {

QLaurent::QLaurent(Int coeff, long exponent) {
    if (coeff != 0) {
        off_ = exponent;
        c_.push_back(std::move(coeff));
    }
}

QLaurent QLaurent::from_coeffs(long offset, std::vector<Int> coeffs) {
    QLaurent r;
    r.off_ = offset;
    r.c_ = std::move(coeffs);
    r.normalize();
    return r;
}

void QLaurent::normalize() {
    size_t head = 0;
    while (head < c_.size() && c_[head] == 0) ++head;
    size_t tail = c_.size();
    while (tail > head && c_[tail - 1] == 0) --tail;
    if (head == tail) {
        c_.clear();
        off_ = 0;
        return;
    }
    if (head > 0) c_.erase(c_.begin(), c_.begin() + static_cast<long>(head));
    c_.resize(tail - head);
    off_ += static_cast<long>(head);
}

long QLaurent::lo() const {
    if (is_zero()) throw arithmetic_bug("QLaurent::lo on zero");
    return off_;
}

long QLaurent::hi() const {
    if (is_zero()) throw arithmetic_bug("QLaurent::hi on zero");
    return off_ + static_cast<long>(c_.size()) - 1;
}

Int QLaurent::coeff(long e) const {
    if (is_zero() || e < off_ || e >= off_ + static_cast<long>(c_.size())) return 0;
    return c_[static_cast<size_t>(e - off_)];
}

QLaurent QLaurent::shifted(long e) const {
    QLaurent r = *this;
    if (!r.is_zero()) r.off_ += e;
    return r;
}

Int QLaurent::eval_at_one() const {
    Int s = 0;
    for (const Int& v : c_) s += v;
    return s;
}

QLaurent QLaurent::pow(unsigned long e) const {
    QLaurent r(1);
    QLaurent base = *this;
    while (e > 0) {
        if (e & 1) r = r * base;
        base = (e >>= 1) ? base * base : base;
    }
    return r;
}

QLaurent QLaurent::operator-() const {
    QLaurent r = *this;
    for (Int& v : r.c_) v = -v;
    return r;
}

QLaurent& QLaurent::operator+=(const QLaurent& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    long lo = std::min(off_, o.off_);
    long hi = std::max(off_ + static_cast<long>(c_.size()), o.off_ + static_cast<long>(o.c_.size()));
    std::vector<Int> out(static_cast<size_t>(hi - lo));
    for (size_t t = 0; t < c_.size(); ++t) out[static_cast<size_t>(off_ - lo) + t] = std::move(c_[t]);
    for (size_t t = 0; t < o.c_.size(); ++t) out[static_cast<size_t>(o.off_ - lo) + t] += o.c_[t];
    off_ = lo;
    c_ = std::move(out);
    normalize();
    return *this;
}

QLaurent& QLaurent::operator-=(const QLaurent& o) { return *this += -o; }

QLaurent operator*(const QLaurent& a, const QLaurent& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Int> out(a.c_.size() + b.c_.size() - 1);
    for (size_t s = 0; s < a.c_.size(); ++s) {
        if (a.c_[s] == 0) continue;
        for (size_t t = 0; t < b.c_.size(); ++t)
            mpz_addmul(out[s + t].get_mpz_t(), a.c_[s].get_mpz_t(), b.c_[t].get_mpz_t());
    }
    return QLaurent::from_coeffs(a.off_ + b.off_, std::move(out));
}

QLaurent operator*(const Int& s, const QLaurent& a) {
    if (s == 0) return {};
    QLaurent r = a;
    for (Int& v : r.c_) v *= s;
    return r;
}

std::optional<QLaurent> QLaurent::divide_exact(const QLaurent& num, const QLaurent& den) {
    if (den.is_zero()) throw arithmetic_bug("QLaurent::divide_exact by zero");
    if (num.is_zero()) return QLaurent{};
    // Long division from the lowest exponent. Whenever the true quotient has
    // integer coefficients this terminates with remainder zero; any step
    // whose leading division fails proves the quotient is not an
    // integer-coefficient Laurent polynomial.
    QLaurent rem = num;
    const Int& dlead = den.c_.front();
    std::vector<Int> qc;
    long qlo = num.lo() - den.lo();
    long expect = num.lo();
    // Quotient exponents of an exact division lie in
    // [num.lo - den.lo, num.hi - den.hi]; a step below needs exponent
    // rem.lo - den.lo, so rem.lo beyond that window proves inexactness.
    while (!rem.is_zero()) {
        if (rem.lo() - den.lo() > num.hi() - den.hi()) return std::nullopt;
        while (expect < rem.lo()) {
            qc.emplace_back(0);
            ++expect;
        }
        Int q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), rem.c_.front().get_mpz_t(), dlead.get_mpz_t());
        if (r != 0) return std::nullopt;
        rem -= den * QLaurent(q, rem.lo() - den.lo());
        qc.push_back(std::move(q));
        ++expect;
    }
    return from_coeffs(qlo, std::move(qc));
}

std::string QLaurent::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t t = 0; t < c_.size(); ++t) {
        const Int& v = c_[t];
        if (v == 0) continue;
        long e = off_ + static_cast<long>(t);
        Int a = abs(v);
        if (first) {
            if (v < 0) os << "-";
            first = false;
        } else {
            os << (v < 0 ? " - " : " + ");
        }
        if (a != 1 || e == 0) os << a.get_str(10);
        if (e != 0) {
            if (a != 1) os << "*";
            os << "q";
            if (e != 1) os << "^" << e;
        }
    }
    return os.str();
}

} // namespace qexpand
