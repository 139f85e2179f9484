// Copyright The lbochner Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "lbochner/approx.hpp"
#include "lbochner/errors.hpp"
#include "lbochner/random.hpp"

using namespace lbtest;

TEST_SUITE("falgebra") {

TEST_CASE("rational parsing and normal form") {
    CHECK(q("6/4").to_string() == "3/2");
    CHECK(q("-2/-4").to_string() == "1/2");
    CHECK(q("5").to_string() == "5/1");
    CHECK(q("0/7").to_string() == "0/1");
    CHECK_THROWS_AS(q("1/0"), ParseError);
    CHECK_THROWS_AS(q("abc"), ParseError);
    CHECK(q("3/2").den() == 2);
}

TEST_CASE("pointwise operations") {
    CHECK(abs(el({-1, 2})) == el({1, 2}));
    CHECK(sup(el({1, 5}), el({3, 2})) == el({3, 5}));
    CHECK(inf(el({1, 5}), el({3, 2})) == el({1, 2}));
    CHECK(mul(el({2, 3}), el({4, 5})) == el({8, 15}));
    CHECK(add(el({2, 3}), el({4, 5})) == el({6, 8}));
    CHECK(neg(el({2, -3})) == el({-2, 3}));
    CHECK(sgn(el({-4, 0, 7})) == el({-1, 0, 1}));
    CHECK_THROWS_AS(add(el({1}), el({1, 2})), DimensionMismatch);
    CHECK_THROWS_AS(LElement(std::vector<Rational>{}), InvalidArgument);
}

TEST_CASE("partial order") {
    CHECK(leq(el({1, 2}), el({1, 3})));
    CHECK_FALSE(leq(el({1, 4}), el({2, 3})));
    CHECK_FALSE(leq(el({2, 3}), el({1, 4})));
    CHECK(leq(el({0, 0}), abs(el({-7, 3}))));
    CHECK_THROWS_AS(leq(el({1}), el({1, 2})), DimensionMismatch);
}

TEST_CASE("pow_int") {
    CHECK(pow_int(el({2, 3}), 2) == el({4, 9}));
    CHECK(pow_int(el({5, 7}), 0) == el({1, 1}));
    CHECK(pow_int(LElement{q("1/2"), Rational(2)}, 3) == LElement{q("1/8"), Rational(8)});
}

TEST_CASE("recip") {
    CHECK(recip(LElement{Rational(2), q("1/3")}) == LElement{q("1/2"), Rational(3)});
    CHECK(recip(el({1, 1})) == el({1, 1}));
    try {
        recip(el({1, 0}));
        FAIL("expected ZeroDivisor");
    } catch (const ZeroDivisor& e) {
        CHECK(e.coordinate() == 1);
    }
}

TEST_CASE("root of non-square against the square-root oracle") {
    ToleranceConfig cfg;
    const ApproxElement r = root(el({19, 6}), q("1/2"), cfg);
    REQUIRE(r.dim() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(r[i].error() <= cfg.root_tol);
        // Exact bracketing oracle: lower² ≤ a ≤ upper².
        const Rational a = i == 0 ? Rational(19) : Rational(6);
        CHECK(r[i].lower() * r[i].lower() <= a);
        CHECK(a <= r[i].upper() * r[i].upper());
    }
    CHECK(encloses(r[0], std::sqrt(19.0), 1e-9));
    CHECK(encloses(r[1], std::sqrt(6.0), 1e-9));
}

TEST_CASE("root of perfect powers is exact") {
    const ApproxElement r = root(el({4, 9}), q("1/2"));
    REQUIRE(r.exact());
    CHECK(*r.exact() == el({2, 3}));
    CHECK(*root(el({1, 1}), q("2/7")).exact() == el({1, 1}));
    CHECK(*root(el({1, 1}), q("3")).exact() == el({1, 1}));
    CHECK(*root(LElement{q("8/27")}, q("1/3")).exact() == LElement{q("2/3")});
    CHECK_THROWS_AS(root(el({-1, 4}), q("1/2")), NegativeCoordinate);
}

TEST_CASE("irrational powers against floating pow") {
    ToleranceConfig cfg;
    Rng rng(11);
    for (int s = 0; s < 200; ++s) {
        const Rational x = rng.rational(0, 50, 7);
        const Rational r = rng.rational(1, 4, 5);
        const ApproxReal y = pow_real(x, r, cfg.root_tol);
        CHECK(y.error() <= cfg.root_tol);
        const double oracle = std::pow(x.raw().get_d(), r.raw().get_d());
        CHECK(encloses(y, oracle, 1e-9 * std::max(1.0, oracle)));
    }
}

TEST_CASE("large exponents route through directed rounding") {
    ToleranceConfig cfg;
    const Rational s = Rational(2) - Rational::pow2(-20);  // 1 + 1/2 + ... + 1/2^20
    const ApproxReal y = pow_real(Rational(3), s, cfg.root_tol);
    CHECK(y.error() <= cfg.root_tol);
    CHECK(encloses(y, std::pow(3.0, s.raw().get_d()), 1e-9));
}

TEST_CASE("ring and lattice laws on random triples") {
    Rng rng(1);
    for (int s = 0; s < 500; ++s) {
        const std::size_t d = 1 + rng.below(8);
        const LElement a = rng.element(d, -9, 9, 6);
        const LElement b = rng.element(d, -9, 9, 6);
        const LElement c = rng.element(d, -9, 9, 6);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * b == b * a);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(abs(a * b) == abs(a) * abs(b));
        CHECK(sup(a, b) + inf(a, b) == a + b);
    }
}

TEST_CASE("root then pow_int round trip") {
    ToleranceConfig cfg;
    Rng rng(2);
    for (int s = 0; s < 100; ++s) {
        const std::size_t d = 1 + rng.below(4);
        const LElement a = rng.element(d, 0, 20, 5);
        const unsigned long n = 2 + rng.below(3);
        const ApproxElement back = pow_int(root(a, Rational(1, static_cast<long>(n)), cfg), n);
        for (std::size_t i = 0; i < d; ++i) {
            const Rational bound = Rational(static_cast<long>(n)) * pow(a[i] + Rational(1), n - 1) * cfg.root_tol;
            CHECK(abs(back[i].lower() - a[i]) <= bound);
            CHECK(abs(back[i].upper() - a[i]) <= bound);
        }
    }
}

TEST_CASE("leq is a partial order on samples") {
    Rng rng(3);
    std::vector<LElement> xs;
    for (int s = 0; s < 40; ++s) xs.push_back(rng.element(2, -2, 2, 1));
    for (const auto& a : xs) {
        CHECK(leq(a, a));
        for (const auto& b : xs) {
            if (leq(a, b) && leq(b, a)) CHECK(a == b);
            for (const auto& c : xs) {
                if (leq(a, b) && leq(b, c)) CHECK(leq(a, c));
            }
        }
    }
}

TEST_CASE("approx comparisons use the tolerance only for inexact sides") {
    const ApproxElement a(el({1, 2}));
    const ApproxElement b(el({1, 3}));
    CHECK(compare_leq(a, b, Rational::pow2(-30)).holds);
    CHECK_FALSE(compare_leq(b, a, Rational::pow2(-30)).holds);
    const ApproxElement r = root(el({2}), q("1/2"));
    const ApproxElement r2 = r * r;
    CHECK(compare_equal(r2, ApproxElement(el({2})), Rational::pow2(-30)).holds);
    CHECK_FALSE(compare_equal(r, ApproxElement(LElement{q("141421/100000")}), Rational::pow2(-30)).holds);
}

namespace {

std::vector<EnvelopeEntry> harmonic_envelope(std::size_t count, std::size_t d, long scale = 1) {
    std::vector<EnvelopeEntry> env;
    for (std::size_t k = 1; k <= count; ++k) {
        env.push_back({LElement::constant(d, Rational(scale, static_cast<long>(k))), k});
    }
    return env;
}

}  // namespace

TEST_CASE("order convergence certificates") {
    std::vector<LElement> seq;
    for (long n = 1; n <= 30; ++n) seq.push_back(LElement{Rational(1, n), Rational::pow2(-n)});
    auto env = harmonic_envelope(30, 2);
    auto cert = check_order_convergence(seq, el({0, 0}), env);
    CHECK(cert.passed);
    CHECK(cert.resolution == LElement::constant(2, Rational(1, 30)));

    std::vector<LElement> constant(10, el({5, 5}));
    CHECK(check_order_convergence(constant, el({5, 5}), env).passed);

    std::vector<LElement> flip;
    for (long n = 1; n <= 10; ++n) flip.push_back(el({n % 2 == 0 ? 1 : -1, 0}));
    cert = check_order_convergence(flip, el({0, 0}), env);
    CHECK_FALSE(cert.passed);
    REQUIRE(cert.first_violation);
    CHECK(cert.first_violation->coordinate == 0);
    CHECK(cert.first_violation->index == 2);  // ε_1 = 1 tolerates |±1|; ε_2 = 1/2 does not

    CHECK_THROWS_AS(check_order_convergence(std::vector<LElement>{}, el({0}), env), InvalidArgument);
    std::vector<EnvelopeEntry> increasing{{el({1, 1}), 1}, {el({2, 2}), 2}};
    CHECK_THROWS_AS(check_order_convergence(seq, el({0, 0}), increasing), InvalidArgument);
}

TEST_CASE("Cauchy certificates") {
    // Partial sums of Σ 2^-n; tail from index k on is below 2^(1-k).
    std::vector<LElement> sums;
    Rational acc;
    for (long n = 1; n <= 25; ++n) {
        acc += Rational::pow2(-n);
        sums.push_back(LElement::constant(2, acc));
    }
    std::vector<EnvelopeEntry> env;
    for (long k = 1; k <= 25; ++k) env.push_back({LElement::constant(2, Rational::pow2(1 - k)), static_cast<std::size_t>(k)});
    CHECK(check_cauchy(sums, env).passed);

    std::vector<LElement> constant(8, el({3}));
    CHECK(check_cauchy(constant, harmonic_envelope(8, 1)).passed);

    std::vector<LElement> unbounded;
    for (long n = 1; n <= 8; ++n) unbounded.push_back(el({n, 0}));
    auto cert = check_cauchy(unbounded, harmonic_envelope(8, 2));
    CHECK_FALSE(cert.passed);
    REQUIRE(cert.first_violation);
    CHECK(cert.first_violation->coordinate == 0);
}

TEST_CASE("order convergence implies Cauchy with doubled envelope") {
    Rng rng(4);
    for (int s = 0; s < 50; ++s) {
        const std::size_t d = 1 + rng.below(3);
        const LElement limit = rng.element(d, -3, 3, 4);
        std::vector<LElement> seq;
        for (long n = 1; n <= 12; ++n) {
            LElement noise = rng.element(d, -1, 1, 3);
            seq.push_back(limit + Rational(1, n) * noise);
        }
        auto env = harmonic_envelope(12, d);
        auto doubled = harmonic_envelope(12, d, 2);
        if (check_order_convergence(seq, limit, env).passed) {
            CHECK(check_cauchy(seq, doubled).passed);
        }
    }
}

}  // TEST_SUITE
