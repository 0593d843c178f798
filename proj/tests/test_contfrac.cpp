#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "montobs/contfrac.hpp"

using montobs::ContinuedFraction;
using montobs::evaluate;
using montobs::family_expansion;
using montobs::Int;
using montobs::Rational;
using montobs::rational_to_negcf;

TEST_CASE("evaluate: pinned examples") {
    CHECK(evaluate(ContinuedFraction{-1, -1, -2, -3, -2}) == Rational(5, 3));
    CHECK(evaluate(ContinuedFraction{2, 3}) == Rational(5, 3));
    CHECK(evaluate(ContinuedFraction{3, 3}) == Rational(8, 3));
    CHECK(evaluate(ContinuedFraction{2, 17}) == Rational(33, 17));
    CHECK(evaluate(ContinuedFraction{-7}) == Rational(-7));
    CHECK(evaluate(ContinuedFraction{1, 1}) == Rational(0));
    CHECK(evaluate(ContinuedFraction{-2, -2, -2, -2, -2}) == Rational(-6, 5));
}

TEST_CASE("evaluate: zero tail under a division is an error") {
    CHECK_THROWS_AS(evaluate(ContinuedFraction{2, 1, 1}), montobs::ZeroDenominator);
    CHECK_THROWS_AS(evaluate(ContinuedFraction{0, 5, 1, 1}), montobs::ZeroDenominator);
}

TEST_CASE("continued fractions must be nonempty") {
    CHECK_THROWS_AS(ContinuedFraction(std::vector<Int>{}), std::invalid_argument);
}

TEST_CASE("family expansion: shape and domain") {
    CHECK(family_expansion(1, 1) == ContinuedFraction{-1, -1, -2, -3, -2});
    CHECK(family_expansion(2, 3) == ContinuedFraction{-1, -1, -2, -2, -3, -2, -2, -2});
    for (long long m = 1; m <= 6; ++m)
        for (long long n = 1; n <= 6; ++n)
            CHECK(family_expansion(m, n).terms.size() == static_cast<std::size_t>(m + n + 3));
    CHECK_THROWS_AS(family_expansion(0, 1), montobs::DomainError);
    CHECK_THROWS_AS(family_expansion(1, 0), montobs::DomainError);
    CHECK_THROWS_AS(family_expansion(-2, 3), montobs::DomainError);
}

TEST_CASE("family expansion evaluates to the closed form ((m+1)(n+2)-1)/(n+2)") {
    for (long long m = 1; m <= 50; ++m)
        for (long long n = 1; n <= 50; ++n) {
            const Rational direct = evaluate(family_expansion(m, n));
            const Rational closed((m + 1) * (n + 2) - 1, n + 2);
            const Rational two_term = evaluate(ContinuedFraction{m + 1, n + 2});
            CHECK(direct == closed);
            CHECK(direct == two_term);
            // Already in lowest terms: the numerator is -1 mod the denominator.
            CHECK(direct.den() == montobs::int_from(n + 2));
        }
}

TEST_CASE("negative expansion: canonical form below -1") {
    CHECK(rational_to_negcf(Rational(-5, 3)) == ContinuedFraction{-2, -3});
    CHECK(rational_to_negcf(Rational(-2)) == ContinuedFraction{-2});
    CHECK(rational_to_negcf(Rational(-6, 5)) == ContinuedFraction{-2, -2, -2, -2, -2});
    CHECK(rational_to_negcf(Rational(-17, 5)) == ContinuedFraction{-4, -2, -3});
}

TEST_CASE("negative expansion: integers and shortest forms") {
    CHECK(rational_to_negcf(Rational(7)) == ContinuedFraction{7});
    CHECK(rational_to_negcf(Rational(-1)) == ContinuedFraction{-1});
    CHECK(rational_to_negcf(Rational(5, 3)) == ContinuedFraction{2, 3});
    CHECK(rational_to_negcf(Rational(-1, 2)) == ContinuedFraction{-1, -2});
    CHECK(rational_to_negcf(Rational(7, 5)).terms.size() == 3);
    CHECK_THROWS_AS(rational_to_negcf(Rational(0)), montobs::ZeroInput);
}

TEST_CASE("negative expansion: round trip on random rationals") {
    std::mt19937 rng(42u);
    std::uniform_int_distribution<long long> num(-3000, 3000);
    std::uniform_int_distribution<long long> den(1, 300);
    int done = 0;
    while (done < 1000) {
        const long long p = num(rng), q = den(rng);
        if (p == 0) continue;
        ++done;
        const Rational r(p, q);
        const ContinuedFraction cf = rational_to_negcf(r);
        CHECK(evaluate(cf) == r);
        if (r < Rational(-1)) {
            for (const Int& t : cf.terms) CHECK(t <= -2);
        }
    }
}

TEST_CASE("negative expansion: canonical form is minimal among <= -2 expansions") {
    // Uniqueness means re-expanding the evaluation reproduces the terms.
    std::mt19937 rng(77u);
    std::uniform_int_distribution<long long> num(2, 4000);
    std::uniform_int_distribution<long long> den(1, 200);
    for (int trial = 0; trial < 300; ++trial) {
        long long p = num(rng), q = den(rng);
        Rational r(-p, q);
        if (r >= Rational(-1)) continue;
        auto cf = rational_to_negcf(r);
        CHECK(rational_to_negcf(evaluate(cf)) == cf);
    }
}
