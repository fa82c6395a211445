#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qexpand/errors.hpp"
#include "qexpand/linalg.hpp"
#include "qexpand/numeric.hpp"
#include "qexpand/qcomb.hpp"
#include "qexpand/qlaurent.hpp"

#include <random>

using namespace qexpand;

namespace {

QLaurent ql(long offset, std::vector<long> coeffs) {
    std::vector<Int> c(coeffs.begin(), coeffs.end());
    return QLaurent::from_coeffs(offset, std::move(c));
}

QLaurent random_laurent(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> off(-5, 5), len(0, 6), coeff(-9, 9);
    std::vector<Int> c;
    long n = len(rng);
    for (long t = 0; t < n; ++t) c.emplace_back(coeff(rng));
    return QLaurent::from_coeffs(off(rng), std::move(c));
}

} // namespace

TEST_CASE("binomial values and conventions") {
    CHECK(binomial(4, 2) == 6);
    CHECK(binomial(5, -1) == 0);
    CHECK(binomial(6, 3) == 20);
    CHECK(binomial(3, 5) == 0);
    CHECK(binomial(0, 0) == 1);
    CHECK(binomial(60, 30) == Int("118264581564861424"));
    CHECK_THROWS_AS(binomial(-1, 0), arithmetic_bug);
}

TEST_CASE("multinomial3 values, conventions, symmetry") {
    CHECK(multinomial3(2, 1, 1, 0) == 2);
    CHECK(multinomial3(1, 0, 0, 1) == 1);
    CHECK(multinomial3(2, -1, 2, 1) == 0);
    CHECK_THROWS_AS(multinomial3(3, 1, 1, 2), arithmetic_bug);
    for (long a = 0; a <= 4; ++a)
        for (long b = 0; b <= 4; ++b)
            for (long c = 0; c <= 4; ++c) {
                long j = a + b + c;
                Int v = multinomial3(j, a, b, c);
                CHECK(v == multinomial3(j, b, a, c));
                CHECK(v == multinomial3(j, c, b, a));
            }
}

TEST_CASE("QLaurent normal form") {
    CHECK(QLaurent{}.is_zero());
    CHECK(QLaurent{}.offset() == 0);
    CHECK(ql(2, {0, 0}) == QLaurent{});
    CHECK(ql(-3, {0, 1, 2, 0}) == ql(-2, {1, 2}));
    QLaurent a = ql(-1, {1, 1});
    CHECK(a.lo() == -1);
    CHECK(a.hi() == 0);
    CHECK(a.coeff(-1) == 1);
    CHECK(a.coeff(7) == 0);
    CHECK((a - a).is_zero());
    CHECK((a - a).offset() == 0);
}

TEST_CASE("QLaurent arithmetic basics") {
    QLaurent onepq = ql(0, {1, 1});
    CHECK(onepq * onepq == ql(0, {1, 2, 1}));
    CHECK(onepq.shifted(-1) == ql(-1, {1, 1}));
    CHECK(ql(0, {1, 1, 2, 1, 1}).eval_at_one() == 6);
    CHECK(onepq.pow(0) == QLaurent(1));
    CHECK(onepq.pow(3) == ql(0, {1, 3, 3, 1}));
    CHECK(Int(3) * onepq == ql(0, {3, 3}));
    CHECK((-onepq) == ql(0, {-1, -1}));
    CHECK(onepq.str() == "1 + q");
    CHECK(ql(-1, {1, 1}).str() == "q^-1 + 1");
    CHECK(ql(0, {1, -1, -1, 1}).str() == "1 - q - q^2 + q^3");
    CHECK(ql(2, {-2}).str() == "-2*q^2");
    CHECK(QLaurent{}.str() == "0");
}

TEST_CASE("QLaurent ring axioms on random values") {
    std::mt19937_64 rng(20260817);
    for (int t = 0; t < 200; ++t) {
        QLaurent a = random_laurent(rng), b = random_laurent(rng), c = random_laurent(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + QLaurent{} == a);
        CHECK(a * QLaurent(1) == a);
        CHECK((a - a).is_zero());
    }
}

TEST_CASE("QLaurent exact division") {
    QLaurent num = ql(0, {1, 0, -2, 1});
    QLaurent den = ql(0, {1, -1});
    auto quo = QLaurent::divide_exact(num * den, den);
    REQUIRE(quo.has_value());
    CHECK(*quo == num);
    CHECK_FALSE(QLaurent::divide_exact(ql(0, {1}), ql(0, {1, -1})).has_value());
    CHECK_FALSE(QLaurent::divide_exact(ql(0, {2, 1}), ql(0, {2})).has_value()); // quotient not integral
    CHECK(QLaurent::divide_exact(QLaurent{}, den) == QLaurent{});
    CHECK_THROWS_AS(QLaurent::divide_exact(num, QLaurent{}), arithmetic_bug);

    std::mt19937_64 rng(42);
    for (int t = 0; t < 200; ++t) {
        QLaurent a = random_laurent(rng), b = random_laurent(rng);
        if (b.is_zero()) continue;
        auto q2 = QLaurent::divide_exact(a * b, b);
        REQUIRE(q2.has_value());
        CHECK(*q2 == a);
    }
}

TEST_CASE("q_pochhammer values") {
    CHECK(q_pochhammer(0) == QLaurent(1));
    CHECK(q_pochhammer(1) == ql(0, {1, -1}));
    CHECK(q_pochhammer(2) == ql(0, {1, -1, -1, 1}));
    CHECK(q_pochhammer_quotient(5, 5) == QLaurent(1));
    CHECK(q_pochhammer_quotient(2, 0) == q_pochhammer(2));
    auto quo = QLaurent::divide_exact(q_pochhammer(7), q_pochhammer(4));
    REQUIRE(quo.has_value());
    CHECK(q_pochhammer_quotient(7, 4) == *quo);
}

TEST_CASE("q_binomial values and conventions") {
    CHECK(q_binomial(3, 1) == ql(0, {1, 1, 1}));
    CHECK(q_binomial(4, 2) == ql(0, {1, 1, 2, 1, 1}));
    CHECK(q_binomial(2, 3) == QLaurent{});
    CHECK(q_binomial(5, -1) == QLaurent{});
    CHECK(q_binomial(0, 0) == QLaurent(1));
}

TEST_CASE("q_binomial against the Pascal recurrence oracle") {
    // {n brack k} = {n-1 brack k} + q^{n-k} {n-1 brack k-1}, built without
    // any division, is an independent construction of the same table.
    std::vector<std::vector<QLaurent>> pascal(13);
    for (long n = 0; n <= 12; ++n) {
        pascal[static_cast<size_t>(n)].resize(static_cast<size_t>(n) + 1);
        for (long k = 0; k <= n; ++k) {
            QLaurent v;
            if (k == 0 || k == n) {
                v = QLaurent(1);
            } else {
                v = pascal[static_cast<size_t>(n - 1)][static_cast<size_t>(k)] +
                    pascal[static_cast<size_t>(n - 1)][static_cast<size_t>(k - 1)].shifted(n - k);
            }
            pascal[static_cast<size_t>(n)][static_cast<size_t>(k)] = v;
            CHECK(q_binomial(n, k) == v);
        }
    }
}

TEST_CASE("q_binomial q->1 and symmetry laws") {
    for (long n = 0; n <= 30; ++n)
        for (long k = 0; k <= n; ++k) {
            CHECK(q_binomial(n, k).eval_at_one() == binomial(n, k));
            CHECK(q_binomial(n, k) == q_binomial(n, n - k));
        }
}

TEST_CASE("q_multinomial3 values and symmetry") {
    CHECK(q_multinomial3(2, 1, 1, 0) == ql(0, {1, 1}));
    CHECK(q_multinomial3(1, 0, 0, 1) == QLaurent(1));
    CHECK(q_multinomial3(3, -1, 2, 2) == QLaurent{});
    CHECK_THROWS_AS(q_multinomial3(3, 1, 1, 2), arithmetic_bug);
    for (long a = 0; a <= 3; ++a)
        for (long b = 0; b <= 3; ++b)
            for (long c = 0; c <= 3; ++c) {
                long j = a + b + c;
                QLaurent v = q_multinomial3(j, a, b, c);
                CHECK(v == q_multinomial3(j, b, a, c));
                CHECK(v == q_multinomial3(j, c, b, a));
                CHECK(v.eval_at_one() == multinomial3(j, a, b, c));
            }
}

TEST_CASE("solve_exact: identity, derived overdetermined system, inconsistency") {
    DenseMatrix<Rat> id(3, 3);
    for (long t = 0; t < 3; ++t) id.at(t, t) = 1;
    auto rep = solve_exact(id, {Rat(5), Rat(-7, 3), Rat(0)});
    REQUIRE(rep.status == SolveStatus::unique);
    CHECK(rep.solution == std::vector<Rat>{Rat(5), Rat(-7, 3), Rat(0)});

    // binom(n,1)^2 = s1 binom(n,1) + s2 binom(n,2) sampled at n = 1, 2, 3.
    DenseMatrix<Rat> a(3, 2);
    a.at(0, 0) = 1; a.at(0, 1) = 0;
    a.at(1, 0) = 2; a.at(1, 1) = 1;
    a.at(2, 0) = 3; a.at(2, 1) = 3;
    auto rep2 = solve_exact(a, {Rat(1), Rat(4), Rat(9)});
    REQUIRE(rep2.status == SolveStatus::unique);
    CHECK(rep2.solution == std::vector<Rat>{Rat(1), Rat(2)});

    auto rep3 = solve_exact(a, {Rat(1), Rat(4), Rat(10)});
    CHECK(rep3.status == SolveStatus::inconsistent);
    CHECK(rep3.witness_row.has_value());

    DenseMatrix<Rat> wide(1, 2);
    wide.at(0, 0) = 1; wide.at(0, 1) = 1;
    CHECK(solve_exact(wide, {Rat(2)}).status == SolveStatus::underdetermined);
}

TEST_CASE("solve_exact reproduces rhs on random rational systems") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> num(-9, 9), den(1, 9);
    auto rr = [&] {
        Rat v(num(rng), den(rng));
        v.canonicalize();
        return v;
    };
    int solved = 0;
    for (int t = 0; t < 60; ++t) {
        DenseMatrix<Rat> a(5, 4);
        std::vector<Rat> x, b(5, Rat(0));
        for (long c = 0; c < 4; ++c) x.push_back(rr());
        for (long r = 0; r < 5; ++r)
            for (long c = 0; c < 4; ++c) {
                a.at(r, c) = rr();
                b[static_cast<size_t>(r)] += a.at(r, c) * x[static_cast<size_t>(c)];
            }
        auto rep = solve_exact(a, b);
        if (rep.status != SolveStatus::unique) continue; // randomly singular
        ++solved;
        CHECK(rep.solution == x);
    }
    CHECK(solved > 40);
}

TEST_CASE("nullspace_exact basics and canonical form") {
    DenseMatrix<Rat> full(2, 2);
    full.at(0, 0) = 1; full.at(0, 1) = 1;
    full.at(1, 0) = 0; full.at(1, 1) = 1;
    CHECK(nullspace_exact(full).empty());

    DenseMatrix<Rat> row(1, 2);
    row.at(0, 0) = 1; row.at(0, 1) = 1;
    auto basis = nullspace_exact(row);
    REQUIRE(basis.size() == 1);
    CHECK(basis[0] == std::vector<Rat>{Rat(1), Rat(-1)});

    // rank-1 3x3: kernel is 2-dimensional, content-normalized, first nonzero positive
    DenseMatrix<Rat> r1(3, 3);
    for (long r = 0; r < 3; ++r)
        for (long c = 0; c < 3; ++c) r1.at(r, c) = Rat((r + 1) * (c + 1));
    auto b2 = nullspace_exact(r1);
    REQUIRE(b2.size() == 2);
    for (const auto& v : b2) {
        Rat dot(0);
        for (long c = 0; c < 3; ++c) dot += r1.at(0, c) * v[static_cast<size_t>(c)];
        CHECK(dot == 0);
        for (const auto& e : v) CHECK(is_integer(e));
    }
    CHECK(b2[0] == std::vector<Rat>{Rat(2), Rat(-1), Rat(0)});
    CHECK(b2[1] == std::vector<Rat>{Rat(3), Rat(0), Rat(-1)});
}

TEST_CASE("ring_solve_exact over the Laurent ring") {
    // [1, q; q, 1] x = [1+q^2, 2q] has solution (1, q).
    DenseMatrix<QLaurent> a(2, 2);
    a.at(0, 0) = QLaurent(1);
    a.at(0, 1) = ql(1, {1});
    a.at(1, 0) = ql(1, {1});
    a.at(1, 1) = QLaurent(1);
    auto rep = ring_solve_exact(a, {ql(0, {1, 0, 1}), ql(1, {2})});
    REQUIRE(rep.status == SolveStatus::unique);
    CHECK(rep.solution[0] == QLaurent(1));
    CHECK(rep.solution[1] == ql(1, {1}));

    // Same matrix, rhs tweaked so the fraction-field solution is rational in q:
    // division failure must be reported.
    auto rep2 = ring_solve_exact(a, {QLaurent(1), QLaurent(1)});
    CHECK((rep2.division_failed || rep2.status != SolveStatus::unique));

    // Overdetermined consistent + inconsistent rows.
    DenseMatrix<QLaurent> o(3, 1);
    o.at(0, 0) = QLaurent(1);
    o.at(1, 0) = ql(1, {1});
    o.at(2, 0) = ql(0, {1, 1});
    auto rep3 = ring_solve_exact(o, {ql(0, {1, 1}), ql(1, {1, 1}), ql(0, {1, 2, 1})});
    REQUIRE(rep3.status == SolveStatus::unique);
    CHECK(rep3.solution[0] == ql(0, {1, 1}));
    auto rep4 = ring_solve_exact(o, {ql(0, {1, 1}), ql(1, {1, 1}), QLaurent(7)});
    CHECK(rep4.status == SolveStatus::inconsistent);
    CHECK(rep4.witness_row == 2);
}
