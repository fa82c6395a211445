#pragma once

#include "qexpand/families.hpp"

#include <map>
#include <optional>
#include <string>

namespace qexpand {

enum class ProofStatus { proved, falsified, checked_only };

// "proved" | "falsified" | "checked-only"
std::string to_string(ProofStatus status);

// Outcome of one verification run. A `proved` verdict is backed by a degree
// bound: two polynomials of degree <= D that agree at D+1 distinct points are
// equal, so points_checked >= degree_bound_used + 1 turns finite checking
// into proof. `checked_only` means every sampled point agreed but the sample
// was too small to reach the bound.
struct ProofReport {
    FamilyId family;
    std::string statement; // "product-identity" | "exponent-law" | "expansion" | ...
    std::map<std::string, long> params;
    ProofStatus status = ProofStatus::checked_only;
    long degree_bound_used = 0;
    long points_checked = 0;
    std::optional<std::string> counterexample;

    // proved implies points_checked >= degree_bound_used + 1; falsified
    // implies a populated counterexample.
    bool structurally_sound() const;

    friend bool operator==(const ProofReport&, const ProofReport&) = default;
};

// Proves (or falsifies) f(n,i) f(n,k) = sum_j S(k,j,i) f(n,j) for one (k, i)
// cell of a classical family with closed-form S. Both sides are polynomials
// in n of degree <= deg_f(i) + deg_f(k), so exact agreement at n = 0..D is a
// complete proof.
ProofReport verify_product_identity_classical(const FamilySpec& fam, long k, long i);

// The q-side analog: f(n,i) f(n,k) = sum_j q^A(k,j,i,n) S(k,j,i) f(n,j).
// With x = q^n both sides are Laurent polynomials in x over the rational
// functions in q; the exponent A is affine in n (spot-checked), so the
// x-window of every term is computable and agreement at enough distinct
// points x = q^0, q^1, ... proves the identity for all n at once. Each per-n
// check is an exact Laurent-polynomial comparison in q.
ProofReport verify_product_identity_q(const FamilySpec& fam, long k, long i);

// Grid proof of the exponent functional equation
//   B(k,j,i) + C(k,j,r+1,n) = A(k,j,i,n) + C(k,i,r,n)
// together with C(k,k,1,n) = 0. The registered exponent forms are polynomial
// of degree <= 2 in each argument, so vanishing of the difference on the
// full {0,1,2,3}^5 grid (4 points per variable > per-variable degree) proves
// it identically.
ProofReport verify_exponent_laws(const FamilySpec& fam);

// Checks the expansion f(n,k)^r = sum_j a_j f(n,j) (classical; coefficient
// table from the recursion, or from the direct solver for families without
// closed S) or f(n,k)^r = sum_j q^C(k,j,r,n) P_j(q) f(n,j) (q kinds) for
// n = 0..n_max. Reports proved when n_max reaches the degree bound of both
// sides, checked-only when the sample is smaller.
ProofReport verify_expansion(const FamilySpec& fam, long k, long r, long n_max);

} // namespace qexpand
