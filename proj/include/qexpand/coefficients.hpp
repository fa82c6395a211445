#pragma once

#include "qexpand/families.hpp"
#include "qexpand/numeric.hpp"
#include "qexpand/qlaurent.hpp"

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qexpand {

// One expansion coefficient row: the coefficients of f(n, k)^r in the graded
// basis {f(n, j)}, covering the contiguous j-range `range`.
template <typename V>
struct CoeffTable {
    FamilyId family;
    long k = 0;
    long r = 1;
    std::string provenance; // "recursive" or "direct-oracle"
    JRange range;
    std::vector<V> values; // indexed by j - range.lo

    const V& at(long j) const {
        if (!range.contains(j))
            throw std::out_of_range("coefficient index j=" + std::to_string(j) +
                                    " outside table range [" + std::to_string(range.lo) +
                                    ", " + std::to_string(range.hi) + "]");
        return values[static_cast<size_t>(j - range.lo)];
    }

    friend bool operator==(const CoeffTable&, const CoeffTable&) = default;
};

using IntTable = CoeffTable<Int>;
using RatTable = CoeffTable<Rat>;
using QTable = CoeffTable<QLaurent>;

// j-range of the expansion of f(n, k)^r, computed by iterating the family's
// one-step support (which is monotone in i at both ends). r = 1 is {k}.
JRange composed_support(const FamilySpec& fam, long k, long r);

// The recursion from the delta base case: row r+1 is row r pushed through the
// structure constants. The overload taking S lets discovered tables (for the
// families without closed forms) drive the same recursion.
IntTable a_table_recursive(const FamilySpec& fam, long k, long r);
IntTable a_table_recursive(const FamilySpec& fam, long k, long r,
                           const std::function<Int(long k, long j, long i)>& S);

// Independent oracle: solve the defining linear system f(n,k)^r = sum_j a_j
// f(n,j) exactly at enough sample points that the graded basis pins the
// answer. The rational form is the raw solution; the integer form asserts
// integrality and throws falsification_error when the claim fails.
RatTable a_table_direct_rat(const FamilySpec& fam, long k, long r);
IntTable a_table_direct(const FamilySpec& fam, long k, long r);

// Schmidt's numbers c^(r)_n: sum_k binom(n,k)^r binom(n+k,k)^r =
// sum_k binom(n,k) binom(n+k,k) c^(r)_k. Each n introduces exactly one new
// unknown with coefficient binom(2n,n), so the row solves progressively.
// Non-integrality is a finding to report, not an error, hence exact
// rationals plus the offender list.
struct SchmidtRow {
    long r = 1;
    std::vector<Rat> values; // c^(r)_0 .. c^(r)_nmax
    std::vector<long> non_integral;
    bool all_integral() const { return non_integral.empty(); }
    friend bool operator==(const SchmidtRow&, const SchmidtRow&) = default;
};
SchmidtRow schmidt_c(long r, long nmax);

// q-side tables P^(r)_{k,j}(q) by the q^B-weighted recursion, and the
// independent oracle that re-derives them from the defining q-expansion —
// back-substitution along the vanishing staircase where the basis has one,
// a full Laurent-ring solve where it does not. Oracle failures (remainders,
// inconsistent rows) throw falsification_error.
QTable p_table_q(const FamilySpec& fam, long k, long r);
QTable p_table_q_direct(const FamilySpec& fam, long k, long r);

// Integrality / polynomiality verdicts as data. For q tables, min_offset is
// the most negative lowest exponent across entries (0 when none dips below
// zero); polynomial means min_offset >= 0. Coefficient integrality is
// structural for QLaurent, so the q verdict is about exponents.
struct IntegralityReport {
    bool all_integral = true;
    bool polynomial = true;
    long min_offset = 0;
    std::vector<long> offenders; // j indices of non-integral entries
};
IntegralityReport check_integrality(const IntTable& t);
IntegralityReport check_integrality(const RatTable& t);
IntegralityReport check_integrality(const QTable& t);

} // namespace qexpand
