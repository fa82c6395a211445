#pragma once

#include "qexpand/families.hpp"
#include "qexpand/numeric.hpp"
#include "qexpand/verify.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qexpand {

// Minimal key-value seam for checkpointing long scans. The cache module
// provides a file-backed adapter; tests use an in-memory map. Absent (or
// with empty functions) everything is recomputed.
struct KVStore {
    std::function<std::optional<std::string>(const std::string& key)> get;
    std::function<void(const std::string& key, const std::string& value)> put;
};

// One recovered structure-constant row: the exact rational coefficients
// forced by the data f(n,i) f(n,k) = sum_j s_j f(n,j). The support is
// minimal (both endpoints nonzero); values may include interior zeros.
struct DiscoveredS {
    std::string family_tag; // registry id string, or a caller-supplied tag
    long k = 0;
    long i = 0;
    JRange support;
    std::map<long, Rat> values;
    bool integral = true;
    long consistency_margin = 0; // sample rows beyond the unknown count
    friend bool operator==(const DiscoveredS&, const DiscoveredS&) = default;
};

// Recovers S(k, ., i) from raw values of f alone, by exact linear solving
// against the graded basis {f(n, j)}. f_eval(., j) must be polynomial in n
// of strictly increasing degree in j (caller-asserted); under that grading
// the solution is unique whenever it exists. Starts from support_hint
// (clamped to [0, i+k]) or the full [0, i+k]; an inconsistent hint widens to
// the full range before giving up. Returns nullopt when even the maximal
// support admits no expansion — the rejection verdict for shapes that do
// not qualify. A system that stays rank-deficient after row widening throws
// arithmetic_bug (the grading precondition is violated).
std::optional<DiscoveredS> discover_S(const std::function<Int(long n, long k)>& f_eval,
                                      long k, long i,
                                      std::optional<JRange> support_hint = std::nullopt,
                                      const std::string& tag = "ad-hoc");

// Regression harness: re-derives S from raw f data across the grid
// k <= kmax, i <= imax and demands exact agreement with the family's closed
// form. Statement "rediscovery"; proved means the data forces exactly the
// published formulas on this grid.
ProofReport rediscover_closed_forms(const FamilySpec& fam, long kmax, long imax);

// Integrality scan for the family binom(n + d k, k): discovers the S_d
// table on the grid (extending i lazily as far as the power recursion
// reaches), reports non-integral cells, then rebuilds every a^(r) table
// both by the recursion-through-discovered-S and by the direct solver and
// reports disagreements and non-integral entries. Consistent data yields
// checked-only (a scan is evidence, not proof); any offender flips the
// report to falsified with the first finding as counterexample. Progress
// checkpoints through `checkpoint` when provided, so interrupted scans
// resume.
ProofReport conjecture_4_1_scan(long d, long kmax, long imax, long rmax,
                                const KVStore* checkpoint = nullptr);

// A fitted linear recurrence sum_l p_l(m) t(m+l) = 0 with exact integer
// polynomial coefficients. Canonical form: the gcd of all coefficients is
// 1 and the leading nonzero coefficient of p_order is positive. Both
// p_order and p_0 are nonzero polynomials, and the candidate annihilates
// fit_window and the held-out verify_window.
struct RecurrenceCandidate {
    long order = 1;
    long coeff_degree = 0;
    std::vector<std::vector<Int>> coefficients; // p_l as coeffs by power of m
    JRange fit_window;
    JRange verify_window;
    std::string str() const; // e.g. "(1 + m)*t(m+1) + (-2 - 4*m)*t(m) = 0"
    friend bool operator==(const RecurrenceCandidate&, const RecurrenceCandidate&) = default;
};

// Smallest (order, degree) in lexicographic order whose exact kernel is
// nonzero and whose candidate also annihilates the held-out last 5
// admissible indices. The sequence must carry at least
// (max_order+1)(max_coeff_degree+1) + max_order + 5 + 1 terms.
std::optional<RecurrenceCandidate> guess_recurrence(const std::vector<Int>& sequence,
                                                    long max_order, long max_coeff_degree);

enum class SliceAxis { k, j, i };

// A 1-dimensional slice through the discovered S_d table. Along axis k the
// running index is k itself with j tracking it at a fixed offset; the other
// axes run j or i with the remaining two indices pinned.
struct SliceSpec {
    SliceAxis axis = SliceAxis::k;
    long j_offset = 0; // axis k only: j = m + j_offset
    long k = 0;        // fixed k (axes j and i)
    long j = 0;        // fixed j (axis i only)
    long i = 0;        // fixed i (axes k and j)
    friend bool operator==(const SliceSpec&, const SliceSpec&) = default;
};

struct ProbeReport {
    long d = 0;
    SliceSpec slice;
    long length = 0;
    bool degenerate = false; // the slice was identically zero; nothing to fit
    std::vector<Rat> slice_values;
    std::optional<RecurrenceCandidate> candidate;
    friend bool operator==(const ProbeReport&, const ProbeReport&) = default;
};

// Extracts the slice from the discovered S_d table (scaling by a common
// denominator when values are rational) and runs the recurrence guesser.
// For the d = 0, 1 controls a first-order candidate must exist — its
// absence throws arithmetic_bug. For d >= 2 whatever is found is reported
// as experimental evidence, never asserted.
ProbeReport conjecture_4_2_probe(long d, const SliceSpec& slice, long length,
                                 long max_order, long max_coeff_degree,
                                 const KVStore* checkpoint = nullptr);

} // namespace qexpand
