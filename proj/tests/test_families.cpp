#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qexpand/errors.hpp"
#include "qexpand/families.hpp"

#include <algorithm>
#include <vector>

using namespace qexpand;

namespace {

QLaurent L(long offset, std::initializer_list<long> cs) {
    std::vector<Int> v;
    for (long c : cs)
        v.emplace_back(c);
    return QLaurent::from_coeffs(offset, v);
}

const std::vector<std::string> closed_classical = {"C-2.1.1", "C-2.1.2:c=1", "C-2.1.2:c=2",
                                                   "C-2.2", "C-2.3", "D:d=0", "D:d=1"};
const std::vector<std::string> all_q = {"Q-3.1.1", "Q-3.1.2:c=1", "Q-3.1.2:c=2", "Q-3.2",
                                        "Q-3.3"};

} // namespace

TEST_CASE("family ids round-trip and reject malformed strings") {
    const std::vector<std::string> canonical = {
        "C-2.1.1",       "C-2.1.2:c=0", "C-2.1.2:c=3", "C-2.2",       "C-2.3",
        "D:d=0",         "D:d=1",       "D:d=4",       "Q-3.1.1",     "Q-3.1.2:c=0",
        "Q-3.1.2:c=2",   "Q-3.2",       "Q-3.3"};
    for (const auto& s : canonical) {
        auto id = FamilyId::parse(s);
        REQUIRE(id.has_value());
        CHECK(id->str() == s);
    }
    // Bare parameterized names mean parameter zero.
    CHECK(FamilyId::parse("C-2.1.2")->str() == "C-2.1.2:c=0");
    CHECK(FamilyId::parse("Q-3.1.2")->str() == "Q-3.1.2:c=0");
    CHECK(FamilyId::parse("D")->str() == "D:d=0");

    for (const char* bad : {"", "C-2.1", "C-2.4", "Q-3.1.2:c=", "Q-3.1.2:c=-1",
                            "Q-3.1.2:d=2", "D:d=2x", "D:c=2", "d:d=2", "C-2.2:c=1"})
        CHECK_FALSE(FamilyId::parse(bad).has_value());

    CHECK_THROWS_AS(make_family("C-2.4"), std::invalid_argument);
    CHECK_THROWS_AS(make_family(FamilyId{FamilyId::Base::C212, -1}), std::invalid_argument);
    CHECK_THROWS_AS(make_family(FamilyId{FamilyId::Base::D, -3}), std::invalid_argument);
}

TEST_CASE("classical base functions match their binomial products") {
    auto c211 = make_family("C-2.1.1");
    CHECK(c211.eval_f_int(1, 1) == 2);
    CHECK(c211.eval_f_int(2, 1) == 6);
    CHECK(c211.eval_f_int(5, 3) == binomial(5, 3) * binomial(8, 3));
    CHECK(c211.eval_f_int(0, 2) == 0);
    CHECK(c211.eval_f_int(0, 0) == 1);

    auto c212 = make_family("C-2.1.2:c=1");
    CHECK(c212.eval_f_int(3, 1) == binomial(3, 2) * binomial(4, 2)); // 18
    CHECK(c212.eval_f_int(1, 1) == 0);
    CHECK(c212.eval_f_int(0, 0) == 0); // binom(0,1)^2

    CHECK(make_family("C-2.2").eval_f_int(7, 3) == 35);
    CHECK(make_family("C-2.3").eval_f_int(2, 2) == 6);
    CHECK(make_family("D:d=2").eval_f_int(0, 1) == 2);
    CHECK(make_family("D:d=3").eval_f_int(2, 2) == binomial(8, 2));
    CHECK_THROWS_AS(c211.eval_f_int(-1, 2), std::invalid_argument);
}

TEST_CASE("classical structure constants: spot values") {
    auto c211 = make_family("C-2.1.1");
    CHECK(c211.eval_S_int(1, 1, 1) == 2);
    CHECK(c211.eval_S_int(1, 2, 1) == 4);
    CHECK(c211.eval_S_int(2, 2, 1) == 6);
    CHECK(c211.eval_S_int(2, 3, 1) == 9);

    auto c212 = make_family("C-2.1.2:c=1");
    CHECK(c212.eval_S_int(1, 1, 1) == 3);
    // (i+k+c)! (j+c)!^2 / ... at k=i=1, j=2, c=1: 3!*3!*3!/(2!*2!*2!*1!*1!*1!) = 27
    CHECK(c212.eval_S_int(1, 2, 1) == 27);
    CHECK(c212.eval_S_int(1, 3, 1) == 36);

    auto c22 = make_family("C-2.2");
    CHECK(c22.eval_S_int(1, 1, 1) == 1);
    CHECK(c22.eval_S_int(1, 2, 1) == 2);
    CHECK(c22.eval_S_int(2, 3, 2) == 6);

    auto c23 = make_family("C-2.3");
    CHECK(c23.eval_S_int(1, 1, 1) == -1);
    CHECK(c23.eval_S_int(1, 2, 1) == 2);
    CHECK(c23.eval_S_int(2, 2, 2) == 1);
    CHECK(c23.eval_S_int(2, 3, 2) == -6);
}

TEST_CASE("missing capabilities are reported, not crashed") {
    auto d2 = make_family("D:d=2");
    CHECK_THROWS_AS(d2.eval_S_int(1, 1, 1), capability_error);
    CHECK_FALSE(d2.has_closed_S());
    CHECK_THROWS_AS(d2.eval_f_q(1, 1), capability_error);
    CHECK_THROWS_AS(d2.exp_a(1, 1, 1, 1), capability_error);

    auto q311 = make_family("Q-3.1.1");
    CHECK_THROWS_AS(q311.eval_f_int(1, 1), capability_error);
    CHECK_THROWS_AS(q311.eval_S_int(1, 1, 1), capability_error);
    CHECK_THROWS_AS(q311.exp_c(1, 1, 0, 1), std::invalid_argument);
}

TEST_CASE("D at d=0 and d=1 coincide with the plain and symmetric families") {
    auto d0 = make_family("D:d=0");
    auto d1 = make_family("D:d=1");
    auto c22 = make_family("C-2.2");
    auto c23 = make_family("C-2.3");
    CHECK(d0.id.str() == "D:d=0");
    for (long n = 0; n <= 20; ++n)
        for (long k = 0; k <= 20; ++k) {
            CHECK(d0.eval_f_int(n, k) == c22.eval_f_int(n, k));
            CHECK(d1.eval_f_int(n, k) == c23.eval_f_int(n, k));
        }
    for (long k = 0; k <= 8; ++k)
        for (long i = 0; i <= 8; ++i) {
            auto r = c22.support(k, i);
            CHECK(d0.support(k, i) == r);
            CHECK(d1.support(k, i) == r);
            for (long j = r.lo; j <= r.hi; ++j) {
                CHECK(d0.eval_S_int(k, j, i) == c22.eval_S_int(k, j, i));
                CHECK(d1.eval_S_int(k, j, i) == c23.eval_S_int(k, j, i));
            }
        }
}

TEST_CASE("q base functions: spot values") {
    CHECK(make_family("Q-3.1.1").eval_f_q(1, 1) == L(0, {1, 1}));
    CHECK(make_family("Q-3.2").eval_f_q(4, 2) == L(0, {1, 1, 2, 1, 1}));
    CHECK(make_family("Q-3.3").eval_f_q(2, 1) == L(0, {1, 1, 1}));
    CHECK(make_family("Q-3.1.2:c=1").eval_f_q(2, 1) == L(0, {1, 1, 1}));
    CHECK(make_family("Q-3.1.2:c=1").eval_f_q(1, 1).is_zero());
    CHECK(make_family("Q-3.1.1").eval_f_q(0, 0) == L(0, {1}));
}

TEST_CASE("q structure constants: spot values including the shifted family") {
    auto q311 = make_family("Q-3.1.1");
    CHECK(q311.eval_S_q(1, 1, 1) == L(0, {1, 1}));
    CHECK(q311.eval_S_q(1, 2, 1) == L(0, {1, 2, 1}));

    auto q33 = make_family("Q-3.3");
    CHECK(q33.eval_S_q(1, 1, 1) == L(0, {-1}));
    CHECK(q33.eval_S_q(1, 2, 1) == L(0, {1, 1}));

    auto q312 = make_family("Q-3.1.2:c=1");
    CHECK(q312.eval_S_q(1, 1, 1) == L(0, {1, 1, 1}));
    CHECK(q312.eval_S_q(1, 2, 1) == L(0, {1, 3, 6, 7, 6, 3, 1}));
    CHECK(q312.eval_S_q(1, 3, 1) == L(0, {1, 2, 5, 6, 8, 6, 5, 2, 1}));
}

TEST_CASE("q families reduce to their classical partners at q = 1") {
    for (const auto& name : all_q) {
        CAPTURE(name);
        auto fq = make_family(name);
        REQUIRE(fq.paired_classical.has_value());
        auto fc = make_family(*fq.paired_classical);
        for (long n = 0; n <= 10; ++n)
            for (long k = 0; k <= 10; ++k)
                CHECK(fq.eval_f_q(n, k).eval_at_one() == fc.eval_f_int(n, k));
        for (long k = 0; k <= 6; ++k)
            for (long i = 0; i <= 6; ++i) {
                auto r = fq.support(k, i);
                CHECK(r == fc.support(k, i));
                for (long j = std::max(0L, r.lo - 2); j <= r.hi + 2; ++j)
                    CHECK(fq.eval_S_q(k, j, i).eval_at_one() == fc.eval_S_int(k, j, i));
            }
    }
}

TEST_CASE("the shifted families at c = 0 coincide with the unshifted ones") {
    auto c212 = make_family("C-2.1.2:c=0");
    auto c211 = make_family("C-2.1.1");
    for (long n = 0; n <= 12; ++n)
        for (long k = 0; k <= 12; ++k)
            CHECK(c212.eval_f_int(n, k) == c211.eval_f_int(n, k));
    for (long k = 0; k <= 7; ++k)
        for (long i = 0; i <= 7; ++i)
            for (long j = 0; j <= k + i; ++j)
                CHECK(c212.eval_S_int(k, j, i) == c211.eval_S_int(k, j, i));

    auto q312 = make_family("Q-3.1.2:c=0");
    auto q311 = make_family("Q-3.1.1");
    for (long n = 0; n <= 8; ++n)
        for (long k = 0; k <= 8; ++k)
            CHECK(q312.eval_f_q(n, k) == q311.eval_f_q(n, k));
    for (long k = 0; k <= 5; ++k)
        for (long i = 0; i <= 5; ++i)
            for (long j = 0; j <= k + i; ++j)
                CHECK(q312.eval_S_q(k, j, i) == q311.eval_S_q(k, j, i));
    for (long k = 0; k <= 4; ++k)
        for (long j = 0; j <= 4; ++j)
            for (long i = 0; i <= 4; ++i)
                for (long n = 0; n <= 4; ++n) {
                    CHECK(q312.exp_a(k, j, i, n) == q311.exp_a(k, j, i, n));
                    CHECK(q312.exp_b(k, j, i) == q311.exp_b(k, j, i));
                    for (long r = 1; r <= 3; ++r)
                        CHECK(q312.exp_c(k, j, r, n) == q311.exp_c(k, j, r, n));
                }
}

TEST_CASE("structure constants are symmetric in i and k") {
    for (const auto& name : closed_classical) {
        CAPTURE(name);
        auto f = make_family(name);
        for (long k = 0; k <= 6; ++k)
            for (long i = 0; i <= 6; ++i)
                for (long j = 0; j <= f.support(k, i).hi; ++j)
                    CHECK(f.eval_S_int(k, j, i) == f.eval_S_int(i, j, k));
    }
    for (const auto& name : all_q) {
        CAPTURE(name);
        auto f = make_family(name);
        for (long k = 0; k <= 5; ++k)
            for (long i = 0; i <= 5; ++i)
                for (long j = 0; j <= f.support(k, i).hi; ++j)
                    CHECK(f.eval_S_q(k, j, i) == f.eval_S_q(i, j, k));
    }
}

TEST_CASE("structure constants vanish just outside the declared support") {
    auto off_support = [](long lo, long hi) {
        std::vector<long> js;
        for (long j : {lo - 2, lo - 1, hi + 1, hi + 2})
            if (j >= 0)
                js.push_back(j);
        return js;
    };
    for (const auto& name : closed_classical) {
        CAPTURE(name);
        auto f = make_family(name);
        for (long k = 0; k <= 6; ++k)
            for (long i = 0; i <= 6; ++i) {
                auto r = f.support(k, i);
                for (long j : off_support(r.lo, r.hi))
                    CHECK(f.eval_S_int(k, j, i) == 0);
            }
    }
    for (const auto& name : all_q) {
        CAPTURE(name);
        auto f = make_family(name);
        for (long k = 0; k <= 5; ++k)
            for (long i = 0; i <= 5; ++i) {
                auto r = f.support(k, i);
                for (long j : off_support(r.lo, r.hi))
                    CHECK(f.eval_S_q(k, j, i).is_zero());
            }
    }
}

TEST_CASE("multiplying by f(n, 0) = 1 is the identity step for unshifted families") {
    for (const char* name : {"C-2.1.1", "C-2.2", "C-2.3", "D:d=1"}) {
        CAPTURE(name);
        auto f = make_family(name);
        for (long n = 0; n <= 10; ++n)
            CHECK(f.eval_f_int(n, 0) == 1);
        for (long k = 0; k <= 8; ++k)
            for (long j = 0; j <= k + 2; ++j)
                CHECK(f.eval_S_int(k, j, 0) == (j == k ? 1 : 0));
    }
    for (const char* name : {"Q-3.1.1", "Q-3.2", "Q-3.3"}) {
        CAPTURE(name);
        auto f = make_family(name);
        for (long n = 0; n <= 10; ++n)
            CHECK(f.eval_f_q(n, 0) == QLaurent(1));
        for (long k = 0; k <= 8; ++k)
            for (long j = 0; j <= k + 2; ++j)
                CHECK(f.eval_S_q(k, j, 0) == (j == k ? QLaurent(1) : QLaurent()));
    }
    // The shifted family deliberately does not have this property.
    CHECK(make_family("C-2.1.2:c=1").eval_f_int(3, 0) == 9);
}

TEST_CASE("exponent forms: depth-one normalization and the composition law") {
    for (const auto& name : all_q) {
        CAPTURE(name);
        auto f = make_family(name);
        for (long k = 0; k <= 8; ++k)
            for (long n = 0; n <= 8; ++n)
                CHECK(f.exp_c(k, k, 1, n) == 0);
        for (long k = 0; k <= 4; ++k)
            for (long j = 0; j <= 4; ++j)
                for (long i = 0; i <= 4; ++i)
                    for (long n = 0; n <= 4; ++n)
                        for (long r = 1; r <= 3; ++r)
                            CHECK(f.exp_b(k, j, i) + f.exp_c(k, j, r + 1, n) ==
                                  f.exp_a(k, j, i, n) + f.exp_c(k, i, r, n));
    }
}

TEST_CASE("declared degrees and support shapes") {
    CHECK(make_family("C-2.1.1").deg(3) == 6);
    CHECK(make_family("C-2.1.2:c=2").deg(3) == 10);
    CHECK(make_family("C-2.2").deg(3) == 3);
    CHECK(make_family("C-2.3").deg(5) == 5);
    CHECK(make_family("D:d=4").deg(5) == 5);
    CHECK(make_family("Q-3.1.1").deg(3) == 6);
    CHECK(make_family("Q-3.1.2:c=1").deg(3) == 8);
    CHECK(make_family("Q-3.2").deg(4) == 4);
    CHECK(make_family("Q-3.3").deg(4) == 4);

    for (long k = 0; k <= 6; ++k)
        for (long i = 0; i <= 6; ++i) {
            auto std_r = make_family("C-2.1.1").support(k, i);
            CHECK(std_r.lo == std::max(i, k));
            CHECK(std_r.hi == i + k);
            auto sh = make_family("Q-3.1.2:c=2").support(k, i);
            CHECK(sh.lo == std::max(i, k));
            CHECK(sh.hi == i + k + 2);
            auto d = make_family("D:d=3").support(k, i);
            CHECK(d.lo == 0);
            CHECK(d.hi == i + k);
        }
}

TEST_CASE("the perturbation hook changes exactly one cell") {
    auto base = make_family("C-2.2");
    auto bad = with_perturbed_S(base, 2, 3, 2, 5);
    for (long k = 0; k <= 4; ++k)
        for (long j = 0; j <= 8; ++j)
            for (long i = 0; i <= 4; ++i) {
                Int expect = base.eval_S_int(k, j, i);
                if (k == 2 && j == 3 && i == 2)
                    expect += 5;
                CHECK(bad.eval_S_int(k, j, i) == expect);
            }

    auto qbase = make_family("Q-3.2");
    auto qbad = with_perturbed_S(qbase, 1, 2, 1);
    for (long k = 0; k <= 3; ++k)
        for (long j = 0; j <= 6; ++j)
            for (long i = 0; i <= 3; ++i) {
                QLaurent expect = qbase.eval_S_q(k, j, i);
                if (k == 1 && j == 2 && i == 1)
                    expect = expect + QLaurent(1);
                CHECK(qbad.eval_S_q(k, j, i) == expect);
            }
}

TEST_CASE("staircase metadata matches where the base function vanishes") {
    for (const auto& name : all_q) {
        CAPTURE(name);
        auto f = make_family(name);
        if (!f.staircase_shift) {
            for (long n = 0; n <= 8; ++n)
                for (long j = 0; j <= 8; ++j)
                    CHECK_FALSE(f.eval_f_q(n, j).is_zero());
            continue;
        }
        long s = *f.staircase_shift;
        for (long n = 0; n <= 8; ++n)
            for (long j = 0; j <= 8; ++j)
                CHECK(f.eval_f_q(n, j).is_zero() == (n < j + s));
    }
}
