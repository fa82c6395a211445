#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qexpand/discovery.hpp"
#include "qexpand/errors.hpp"
#include "qexpand/families.hpp"
#include "qexpand/numeric.hpp"

#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

using namespace qexpand;

namespace {

std::function<Int(long, long)> family_f(const FamilySpec& fam) {
    return [fam](long n, long j) -> Int { return fam.eval_f_int(n, j); };
}

Int eval_poly_at(const std::vector<Int>& p, long m) {
    Int acc = 0;
    for (size_t e = p.size(); e-- > 0;)
        acc = acc * m + p[e];
    return acc;
}

bool annihilates_all(const RecurrenceCandidate& cand, const std::vector<Int>& t) {
    const long last_m = static_cast<long>(t.size()) - 1 - cand.order;
    for (long m = 0; m <= last_m; ++m) {
        Int acc = 0;
        for (long l = 0; l <= cand.order; ++l)
            acc += eval_poly_at(cand.coefficients[static_cast<size_t>(l)], m) *
                   t[static_cast<size_t>(m + l)];
        if (acc != 0)
            return false;
    }
    return true;
}

} // namespace

TEST_CASE("discover_S recovers published rows from raw data") {
    const auto c22 = family_f(make_family("C-2.2"));
    auto found = discover_S(c22, 1, 1);
    REQUIRE(found.has_value());
    CHECK(found->support == JRange{1, 2});
    CHECK(found->values.at(1) == 1);
    CHECK(found->values.at(2) == 2);
    CHECK(found->integral);
    CHECK(found->consistency_margin >= 3);
    CHECK(found->k == 1);
    CHECK(found->i == 1);

    const auto d2 = family_f(make_family("D:d=2"));
    found = discover_S(d2, 1, 1);
    REQUIRE(found.has_value());
    CHECK(found->support == JRange{0, 2});
    CHECK(found->values.at(0) == -2);
    CHECK(found->values.at(1) == -3);
    CHECK(found->values.at(2) == 2);
    CHECK(found->integral);

    const auto d3 = family_f(make_family("D:d=3"));
    found = discover_S(d3, 1, 1);
    REQUIRE(found.has_value());
    CHECK(found->support == JRange{0, 2});
    CHECK(found->values.at(0) == -6);
    CHECK(found->values.at(1) == -5);
    CHECK(found->values.at(2) == 2);

    // i = 0 against any graded basis is the trivial row {k -> 1}.
    const auto c211 = family_f(make_family("C-2.1.1"));
    found = discover_S(c211, 4, 0);
    REQUIRE(found.has_value());
    CHECK(found->support == JRange{4, 4});
    CHECK(found->values.at(4) == 1);
}

TEST_CASE("discover_S reproduces the product on sample points plus margin") {
    const FamilySpec fam = make_family("D:d=2");
    const auto found = discover_S(family_f(fam), 2, 1);
    REQUIRE(found.has_value());
    for (long n = 0; n <= 12; ++n) {
        Int rhs = 0;
        for (const auto& [j, v] : found->values) {
            REQUIRE(is_integer(v));
            rhs += v.get_num() * fam.eval_f_int(n, j);
        }
        CHECK(rhs == fam.eval_f_int(n, 1) * fam.eval_f_int(n, 2));
    }
}

TEST_CASE("discover_S shrinks to minimal support") {
    // Pure monomials n^(2k): the product lands on a single basis element,
    // so the full starting range [0, i+k] must shrink to a point.
    const auto mono = [](long n, long k) -> Int {
        Int out;
        mpz_pow_ui(out.get_mpz_t(), Int(n).get_mpz_t(), static_cast<unsigned long>(2 * k));
        return out;
    };
    const auto found = discover_S(mono, 2, 1);
    REQUIRE(found.has_value());
    CHECK(found->support == JRange{3, 3});
    CHECK(found->values.size() == 1);
    CHECK(found->values.at(3) == 1);
}

TEST_CASE("discover_S widens an inconsistent support hint before solving") {
    const auto c22 = family_f(make_family("C-2.2"));
    const auto hinted = discover_S(c22, 1, 1, JRange{2, 2});
    const auto free = discover_S(c22, 1, 1);
    REQUIRE(hinted.has_value());
    REQUIRE(free.has_value());
    CHECK(hinted->support == free->support);
    CHECK(hinted->values == free->values);
}

TEST_CASE("discover_S rejects shapes that admit no expansion") {
    // binom(n,k)^2 has graded degrees but its products leave the span of the
    // basis: the honest verdict is "no such expansion", not an exception.
    const auto square = [](long n, long k) -> Int {
        const Int b = binomial(n, k);
        return b * b;
    };
    CHECK_FALSE(discover_S(square, 1, 1).has_value());

    // binom(n, 3k) forces the row-widening path (the j=2 column is zero on
    // the initial sample rows) and still ends at a clean rejection.
    const auto sparse = [](long n, long k) -> Int { return binomial(n, 3 * k); };
    CHECK_FALSE(discover_S(sparse, 1, 1).has_value());

    // A basis that is not graded at all can never reach full rank; that is a
    // precondition violation, not a finding.
    const auto zero = [](long, long) -> Int { return 0; };
    CHECK_THROWS_AS(discover_S(zero, 1, 1), arithmetic_bug);
}

TEST_CASE("discover_S is deterministic") {
    const auto d3 = family_f(make_family("D:d=3"));
    const auto a = discover_S(d3, 2, 2);
    const auto b = discover_S(d3, 2, 2);
    REQUIRE(a.has_value());
    REQUIRE(b.has_value());
    CHECK(a->support == b->support);
    CHECK(a->values == b->values);
    CHECK(a->consistency_margin == b->consistency_margin);
}

TEST_CASE("rediscovery regression: the data forces the published formulas") {
    auto rep = rediscover_closed_forms(make_family("C-2.1.1"), 8, 8);
    CHECK(rep.status == ProofStatus::proved);
    CHECK(rep.statement == "rediscovery");
    CHECK(rep.points_checked == 81);
    CHECK(rep.structurally_sound());

    rep = rediscover_closed_forms(make_family("C-2.3"), 8, 8);
    CHECK(rep.status == ProofStatus::proved);

    rep = rediscover_closed_forms(make_family("C-2.1.2:c=2"), 6, 6);
    CHECK(rep.status == ProofStatus::proved);
    CHECK(rep.points_checked == 49);

    CHECK_THROWS_AS(rediscover_closed_forms(make_family("D:d=2"), 3, 3), capability_error);
}

TEST_CASE("rediscovery falsifies a perturbed closed form") {
    const auto rep =
        rediscover_closed_forms(with_perturbed_S(make_family("C-2.2"), 1, 2, 1), 2, 2);
    CHECK(rep.status == ProofStatus::falsified);
    REQUIRE(rep.counterexample.has_value());
    CHECK(rep.counterexample->find("(k,j,i)=(1,2,1)") != std::string::npos);
    CHECK(rep.structurally_sound());
}

TEST_CASE("conjecture 4.1 scan: d = 0 control reproduces the closed family") {
    const auto rep = conjecture_4_1_scan(0, 4, 4, 3);
    CHECK(rep.status == ProofStatus::checked_only);
    CHECK(rep.statement == "integrality-scan");
    CHECK(rep.params.at("s_non_integral") == 0);
    CHECK(rep.params.at("a_non_integral") == 0);
    CHECK(rep.params.at("mismatches") == 0);
    CHECK(!rep.counterexample.has_value());
    // 25 grid cells plus 4 * 3 coefficient tables, each one checked point.
    CHECK(rep.points_checked == 25 + 15);
}

TEST_CASE("conjecture 4.1 scan: d = 2 integrality and oracle agreement") {
    const auto rep = conjecture_4_1_scan(2, 3, 3, 2);
    CHECK(rep.status == ProofStatus::checked_only);
    CHECK(rep.params.at("d") == 2);
    CHECK(rep.params.at("s_non_integral") == 0);
    CHECK(rep.params.at("a_non_integral") == 0);
    CHECK(rep.params.at("mismatches") == 0);
}

TEST_CASE("conjecture 4.1 scan checkpoints and resumes through the store") {
    std::map<std::string, std::string> blobs;
    long puts = 0;
    const KVStore store{
        [&](const std::string& key) -> std::optional<std::string> {
            const auto it = blobs.find(key);
            if (it == blobs.end())
                return std::nullopt;
            return it->second;
        },
        [&](const std::string& key, const std::string& value) {
            ++puts;
            blobs[key] = value;
        }};

    const auto first = conjecture_4_1_scan(2, 2, 2, 2, &store);
    CHECK(puts > 0);
    CHECK(blobs.size() == static_cast<size_t>(puts));
    const long after_first = puts;

    const auto second = conjecture_4_1_scan(2, 2, 2, 2, &store);
    CHECK(puts == after_first); // fully resumed, nothing recomputed
    CHECK(second.status == first.status);
    CHECK(second.params == first.params);
    CHECK(second.points_checked == first.points_checked);

    // A corrupt checkpoint is a miss: recomputed and rewritten, same result.
    blobs.begin()->second = "garbage";
    const auto third = conjecture_4_1_scan(2, 2, 2, 2, &store);
    CHECK(puts == after_first + 1);
    CHECK(third.params == first.params);
}

TEST_CASE("guess_recurrence: central binomial coefficients") {
    std::vector<Int> t;
    for (long m = 0; m <= 17; ++m)
        t.push_back(binomial(2 * m, m));
    const auto cand = guess_recurrence(t, 1, 1);
    REQUIRE(cand.has_value());
    CHECK(cand->order == 1);
    CHECK(cand->coeff_degree == 1);
    REQUIRE(cand->coefficients.size() == 2);
    CHECK(cand->coefficients[0] == std::vector<Int>{-2, -4});
    CHECK(cand->coefficients[1] == std::vector<Int>{1, 1});
    CHECK(cand->fit_window == JRange{0, 11});
    CHECK(cand->verify_window == JRange{12, 16});
    CHECK(cand->str() == "(1 + m)*t(m+1) + (-2 - 4*m)*t(m) = 0");
    CHECK(annihilates_all(*cand, t));

    // Wider bounds must still return the lexicographically smallest fit.
    const auto wide = guess_recurrence(t, 2, 2);
    REQUIRE(wide.has_value());
    CHECK(wide->order == 1);
    CHECK(wide->coeff_degree == 1);
}

TEST_CASE("guess_recurrence: constant sequence") {
    const std::vector<Int> ones(12, Int(1));
    const auto cand = guess_recurrence(ones, 1, 0);
    REQUIRE(cand.has_value());
    CHECK(cand->order == 1);
    CHECK(cand->coeff_degree == 0);
    CHECK(cand->coefficients[0] == std::vector<Int>{-1});
    CHECK(cand->coefficients[1] == std::vector<Int>{1});
    CHECK(cand->str() == "(1)*t(m+1) + (-1)*t(m) = 0");
}

TEST_CASE("guess_recurrence: a planted recurrence is annihilated") {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<long> coeff(-3, 3);
    const std::vector<Int> p0 = {coeff(rng), coeff(rng), coeff(rng)};
    const std::vector<Int> p1 = {coeff(rng), coeff(rng), coeff(rng)};
    std::vector<Int> t = {1, 1};
    for (long m = 0; m + 2 < 30; ++m)
        t.push_back(-(eval_poly_at(p0, m) * t[static_cast<size_t>(m)] +
                      eval_poly_at(p1, m) * t[static_cast<size_t>(m + 1)]));
    const auto cand = guess_recurrence(t, 2, 2);
    REQUIRE(cand.has_value());
    CHECK(annihilates_all(*cand, t));
}

TEST_CASE("guess_recurrence: random data admits nothing") {
    std::mt19937 rng(20260817);
    std::uniform_int_distribution<long> value(-50, 50);
    std::vector<Int> t;
    for (int m = 0; m < 30; ++m)
        t.push_back(value(rng));
    CHECK_FALSE(guess_recurrence(t, 2, 2).has_value());
}

TEST_CASE("guess_recurrence: argument validation") {
    const std::vector<Int> t(8, Int(1));
    CHECK_THROWS_AS(guess_recurrence(t, 2, 2), std::invalid_argument);
    const std::vector<Int> ok(30, Int(1));
    CHECK_THROWS_AS(guess_recurrence(ok, 0, 2), std::invalid_argument);
    CHECK_THROWS_AS(guess_recurrence(ok, 2, -1), std::invalid_argument);
}

TEST_CASE("probe: d = 1 control slice is first order") {
    SliceSpec slice;
    slice.axis = SliceAxis::k;
    slice.j_offset = 1;
    slice.i = 1;
    const auto rep = conjecture_4_2_probe(1, slice, 20, 2, 2);
    CHECK(rep.d == 1);
    CHECK_FALSE(rep.degenerate);
    REQUIRE(rep.candidate.has_value());
    CHECK(rep.candidate->order == 1);
    // The slice itself is the closed form S_1(k, k+1, 1) = k + 1.
    for (long m = 0; m < 20; ++m)
        CHECK(rep.slice_values[static_cast<size_t>(m)] == m + 1);
}

TEST_CASE("probe: d = 0 control slice is first order") {
    SliceSpec slice;
    slice.axis = SliceAxis::j;
    slice.k = 2;
    slice.i = 2;
    const auto rep = conjecture_4_2_probe(0, slice, 20, 2, 2);
    REQUIRE(rep.candidate.has_value());
    CHECK(rep.candidate->order == 1);
}

TEST_CASE("probe: degenerate all-zero slice is reported, not fitted") {
    SliceSpec slice;
    slice.axis = SliceAxis::k;
    slice.j_offset = -3;
    slice.i = 0;
    const auto rep = conjecture_4_2_probe(2, slice, 10, 2, 2);
    CHECK(rep.degenerate);
    CHECK_FALSE(rep.candidate.has_value());
}

TEST_CASE("probe: d = 2 exploratory slice reports without asserting") {
    SliceSpec slice;
    slice.axis = SliceAxis::k;
    slice.j_offset = 0;
    slice.i = 1;
    const auto rep = conjecture_4_2_probe(2, slice, 25, 3, 3);
    CHECK(rep.d == 2);
    CHECK_FALSE(rep.degenerate);
    CHECK(rep.slice_values.size() == 25);
    if (rep.candidate.has_value()) {
        // Whatever was found must at least annihilate the integerized slice.
        Int scale = 1;
        for (const Rat& v : rep.slice_values)
            mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), v.get_den().get_mpz_t());
        std::vector<Int> t;
        for (const Rat& v : rep.slice_values) {
            Rat scaled = v * Rat(scale);
            t.push_back(scaled.get_num());
        }
        CHECK(annihilates_all(*rep.candidate, t));
    }
}

TEST_CASE("probe: axis i slice exercises the lazy grid") {
    SliceSpec slice;
    slice.axis = SliceAxis::i;
    slice.k = 1;
    slice.j = 1;
    const auto rep = conjecture_4_2_probe(2, slice, 14, 1, 1);
    CHECK_FALSE(rep.degenerate);
    CHECK(rep.slice_values.size() == 14);
}
