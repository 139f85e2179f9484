// Copyright The lbochner Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "lbochner/bochner.hpp"
#include "lbochner/errors.hpp"
#include "lbochner/generators.hpp"
#include "lbochner/random.hpp"

using namespace lbtest;

namespace {

const ModuleSpace kScalar2{1, 2, NormKind::Sup};

// d=2, k=1, μ=(1,2), f(a)=(1,2), f(b)=(3,1).
LFunction sample_f() {
    return LFunction(space({"a", "b"}, {1, 2}), kScalar2, {vec({el({1, 2})}), vec({el({3, 1})})});
}

LFunction constant_fn(const MeasureSpace& s, const ModuleSpace& x, const ModuleVector& v) {
    return LFunction(s, x, std::vector<ModuleVector>(s.size(), v));
}

}  // namespace

TEST_SUITE("bochner") {

TEST_CASE("exponents") {
    CHECK(LpExponent(Rational(2)).conjugate() == LpExponent(Rational(2)));
    CHECK(LpExponent(Rational(1)).conjugate().is_infinite());
    CHECK(LpExponent::infinity().conjugate() == LpExponent(Rational(1)));
    CHECK(LpExponent(Rational(3)).conjugate() == LpExponent(q("3/2")));
    CHECK(LpExponent::parse("inf").is_infinite());
    CHECK(LpExponent::parse("3/2").value() == q("3/2"));
    CHECK(are_conjugate(LpExponent(Rational(3)), LpExponent(q("3/2"))));
    CHECK_FALSE(are_conjugate(LpExponent(Rational(3)), LpExponent(Rational(3))));
    CHECK_THROWS_AS(LpExponent(q("1/2")), InvalidArgument);
    CHECK_THROWS_AS(LpExponent::infinity().value(), InvalidArgument);
}

TEST_CASE("integrate") {
    const LFunction f = sample_f();
    CHECK(integrate(f) == vec({el({7, 4})}));
    CHECK(integrate(LFunction::zero(f.space(), kScalar2)).is_zero());
    const LFunction ind = LFunction::indicator(MeasurableSet(f.space(), {1}), kScalar2, vec({el({3, 1})}));
    CHECK(integrate(ind) == vec({el({6, 2})}));
}

TEST_CASE("integrate_over") {
    const LFunction f = sample_f();
    CHECK(integrate_over(f, MeasurableSet::full(f.space())) == integrate(f));
    CHECK(integrate_over(f, MeasurableSet::empty(f.space())).is_zero());
    CHECK(integrate_over(f, MeasurableSet(f.space(), {0})) == vec({el({1, 2})}));
    const MeasureSpace other = space({"a", "b"}, {1, 3});
    CHECK_THROWS_AS(integrate_over(f, MeasurableSet(other, {0})), SpaceMismatch);
}

TEST_CASE("lp norms") {
    const LFunction f = sample_f();
    CHECK(*lp_norm(f, LpExponent(Rational(1))).exact() == el({7, 4}));
    const ApproxElement two = lp_norm(f, LpExponent(Rational(2)));
    // 1·(1,4) + 2·(9,1) = (19,6).
    CHECK(encloses(two[0], std::sqrt(19.0), 1e-9));
    CHECK(encloses(two[1], std::sqrt(6.0), 1e-9));
    CHECK(two[0].error() <= ToleranceConfig{}.root_tol);

    const LFunction g(space({"a", "b", "c"}, {1, 2, 0}), kScalar2,
                      {vec({el({1, 1})}), vec({el({2, 5})}), vec({el({9, 9})})});
    CHECK(*lp_norm(g, LpExponent::infinity()).exact() == el({2, 5}));
}

TEST_CASE("sup representation") {
    const LFunction f = sample_f();
    auto report = verify_sup_representation(f, LpExponent(Rational(2)));
    CHECK(report.passed());
    CHECK(report.subsets_checked == 4);

    const LFunction zero = LFunction::zero(f.space(), kScalar2);
    report = verify_sup_representation(zero, LpExponent(Rational(1)));
    CHECK(report.passed());
    CHECK(report.attaining_subsets == 4);

    // Single-atom support: exactly the subsets containing that atom attain.
    const MeasureSpace s = space({"a", "b", "c", "d"}, {1, 1, 2, 3});
    std::vector<ModuleVector> vals(4, ModuleVector::zero(1, 2));
    vals[2] = vec({el({1, 3})});
    report = verify_sup_representation(LFunction(s, kScalar2, vals), LpExponent(Rational(3)));
    CHECK(report.passed());
    CHECK(report.attaining_subsets == 8);

    CHECK_THROWS_AS(verify_sup_representation(f, LpExponent::infinity()), InvalidArgument);
}

TEST_CASE("sup representation monotone on random functions") {
    Rng rng(20);
    for (int s = 0; s < 40; ++s) {
        const std::size_t m = 1 + rng.below(6);
        const MeasureSpace sp = random_space(rng, m, m > 1 ? rng.below(2) : 0);
        const ModuleSpace x{1 + rng.below(2), 2, static_cast<NormKind>(rng.below(3))};
        const LFunction f = random_lfunction(rng, sp, x);
        const auto report = verify_sup_representation(f, LpExponent(Rational(1 + static_cast<long>(rng.below(3)))));
        CHECK(report.monotone);
        CHECK(report.max_at_full);
        CHECK(report.subsets_checked == (std::size_t{1} << m));
    }
}

TEST_CASE("Hoelder worked example") {
    const LFunction u = sample_f();
    const LFunction v = constant_fn(u.space(), kScalar2, vec({el({1, 1})}));
    const auto report = check_holder(u, v, LpExponent(Rational(2)), LpExponent(Rational(2)));
    CHECK(report.passed());
    CHECK(*report.lhs.exact() == el({7, 4}));
    CHECK(encloses(report.rhs[0], std::sqrt(19.0) * std::sqrt(3.0), 1e-8));
    CHECK(encloses(report.rhs[1], std::sqrt(6.0) * std::sqrt(3.0), 1e-8));
}

TEST_CASE("Hoelder degenerate cases") {
    const LFunction u = sample_f();
    const LFunction unit = constant_fn(u.space(), kScalar2, vec({el({1, 1})}));
    auto report = check_holder(u, unit, LpExponent(Rational(1)), LpExponent::infinity());
    CHECK(report.passed());
    CHECK(report.lhs == report.rhs);
    const LFunction zero = LFunction::zero(u.space(), kScalar2);
    report = check_holder(u, zero, LpExponent(Rational(2)), LpExponent(Rational(2)));
    CHECK(report.passed());
    CHECK(report.lhs.exact()->is_zero());
    CHECK_THROWS_AS(check_holder(u, unit, LpExponent(Rational(2)), LpExponent(Rational(3))), InvalidArgument);
}

TEST_CASE("Hoelder rank > 1 requires dual norms") {
    const MeasureSpace s = space({"a"}, {1});
    const LFunction u(s, {2, 1, NormKind::Sup}, {vec({el({1}), el({2})})});
    const LFunction bad(s, {2, 1, NormKind::Sup}, {vec({el({1}), el({2})})});
    const LFunction good(s, {2, 1, NormKind::One}, {vec({el({1}), el({2})})});
    CHECK_THROWS_AS(check_holder(u, bad, LpExponent(Rational(1)), LpExponent::infinity()), InvalidArgument);
    CHECK(check_holder(u, good, LpExponent(Rational(1)), LpExponent::infinity()).passed());
}

TEST_CASE("Hoelder is tight for aligned pairs") {
    ToleranceConfig cfg;
    Rng rng(21);
    const ModuleSpace x{1, 2, NormKind::Sup};
    for (int s = 0; s < 30; ++s) {
        const MeasureSpace sp = random_space(rng, 1 + rng.below(4));
        const LFunction u = random_lfunction(rng, sp, x);
        // p = q = 2: v = ‖u‖^{p-1}·sgn(u) = u.
        const auto report = check_holder(u, u, LpExponent(Rational(2)), LpExponent(Rational(2)), cfg);
        CHECK(report.passed());
        CHECK(compare_equal(report.lhs, report.rhs, cfg.compare_tol).holds);
    }
}

TEST_CASE("Minkowski") {
    const LFunction u = sample_f();
    const LpExponent two(Rational(2));
    auto report = check_minkowski(u, Rational(-1) * u, two);
    CHECK(report.passed());
    CHECK(report.lhs.exact()->is_zero());
    report = check_minkowski(u, u, two);
    CHECK(report.passed());
    CHECK(compare_equal(report.lhs, report.rhs, ToleranceConfig{}.compare_tol).holds);
    CHECK_THROWS_AS(check_minkowski(u, u, LpExponent::infinity()), InvalidArgument);
}

TEST_CASE("Hoelder and Minkowski on seeded pairs") {
    Rng rng(22);
    const std::pair<Rational, Rational> pairs[] = {{Rational(2), Rational(2)}, {Rational(3), q("3/2")}};
    for (int s = 0; s < 100; ++s) {
        const MeasureSpace sp = random_space(rng, 2 + rng.below(3), rng.below(2));
        const NormKind kind = static_cast<NormKind>(rng.below(3));
        const ModuleSpace x{1 + rng.below(2), 2, kind};
        const LFunction u = random_lfunction(rng, sp, x);
        const LFunction v = random_lfunction(rng, sp, x.dual());
        const LFunction w = random_lfunction(rng, sp, x);
        CHECK(check_holder(u, v, LpExponent(Rational(1)), LpExponent::infinity()).passed());
        CHECK(check_minkowski(u, w, LpExponent(Rational(1))).passed());
        for (const auto& [p, qq] : pairs) {
            CHECK(check_holder(u, v, LpExponent(p), LpExponent(qq)).passed());
            CHECK(check_minkowski(u, w, LpExponent(p)).passed());
        }
    }
}

TEST_CASE("Chebyshev step") {
    const MeasureSpace s = space({"a", "b"}, {1, 1});
    const ModuleSpace x{1, 1, NormKind::Sup};
    const LFunction h = LFunction::zero(s, x);
    const LFunction hn(s, x, {vec({LElement{q("1/2")}}), vec({LElement{q("1/20")}})});
    auto report = check_chebyshev_step(std::vector<LFunction>{hn}, h, q("1/10"));
    CHECK(report.passed);
    REQUIRE(report.rows.size() == 1);
    CHECK(report.rows[0].level_set == MeasurableSet(s, {0}));
    CHECK(report.rows[0].level_mass == Rational(1));
    CHECK(*report.rows[0].integral.exact() == q("11/20"));

    report = check_chebyshev_step(std::vector<LFunction>{h}, h, q("1/10"));
    CHECK(report.passed);
    CHECK(report.rows[0].level_set.is_empty());
    CHECK(report.integral_vanishes[0]);
    CHECK(report.measure_vanishes[0]);

    const LFunction tight = constant_fn(s, x, vec({LElement{q("1/10")}}));
    report = check_chebyshev_step(std::vector<LFunction>{tight}, h, q("1/10"));
    CHECK(report.passed);
    CHECK(q("1/10") * report.rows[0].level_mass == *report.rows[0].integral.exact());

    CHECK_THROWS_AS(check_chebyshev_step(std::vector<LFunction>{hn}, h, Rational(0)), InvalidArgument);
}

TEST_CASE("Chebyshev step on seeded sequences") {
    Rng rng(23);
    for (int s = 0; s < 100; ++s) {
        const MeasureSpace sp = random_space(rng, 2 + rng.below(4), rng.below(2));
        const ModuleSpace x{1 + rng.below(2), 2, static_cast<NormKind>(rng.below(3))};
        const LFunction h = random_lfunction(rng, sp, x);
        std::vector<LFunction> hs;
        for (long n = 1; n <= 4; ++n) hs.push_back(h + Rational(1, n) * random_lfunction(rng, sp, x));
        const auto report = check_chebyshev_step(hs, h, rng.rational(1, 3, 4));
        CHECK(report.passed);
        CHECK(report.rows.size() == 4 * 2);
    }
}

TEST_CASE("simple approximation") {
    Rng rng(24);
    const auto ts = truncated_geometric_space(8);
    const ModuleSpace x{2, 2, NormKind::One};
    const LFunction f = random_lfunction(rng, ts.space, x);
    CHECK(simple_approximation(f, 8) == f);
    CHECK(simple_approximation(f, 20) == f);
    CHECK(simple_approximation(f, 0).is_zero());
    for (std::size_t n = 0; n <= 8; ++n) {
        const LFunction gn = simple_approximation(f, n);
        LElement tail = LElement::zero(2);
        for (std::size_t t = n; t < 8; ++t) tail = tail + ts.space.mass(t) * *norm(x, f[t]).exact();
        CHECK(*lp_integral(gn - f, Rational(1)).exact() == tail);
        for (std::size_t t = 0; t < n; ++t) CHECK(gn[t] == f[t]);
    }
}

TEST_CASE("DCT truncation family against the geometric tail") {
    const auto ts = truncated_geometric_space(16);
    const ModuleSpace x{1, 1, NormKind::Sup};
    const Rational phi(1);
    Rng rng(25);
    std::vector<ModuleVector> g;
    for (std::size_t t = 0; t < 16; ++t) g.push_back(vec({rng.element(1, -1, 1, 4)}));
    const auto report = run_dct_experiment(truncation_family(ts, x, g, phi), 16);
    CHECK(report.passed);
    CHECK(report.tail_term == Rational(2) * ts.tail_mass);
    for (const auto& row : report.rows) {
        // Geometric tail oracle: e_n ≤ φ·Σ_{t>n} 2^-t + 2φ·tail = φ·2^-n + 2φ·tail.
        const Rational oracle = phi * Rational::pow2(-static_cast<long>(row.n)) + report.tail_term;
        CHECK(row.error.upper()[0] <= oracle);
        CHECK(row.within_bound);
    }
}

TEST_CASE("DCT constant sequence and dominator violation") {
    const auto ts = truncated_geometric_space(6);
    const ModuleSpace x{1, 2, NormKind::Sup};
    std::vector<ModuleVector> g(6, vec({el({1, -1})}));
    TruncatedSequenceSpec spec{ts, x, [&](std::size_t t, std::size_t) { return g[t]; }, g,
                               std::vector<LElement>(6, el({1, 1})), Rational(1)};
    const auto report = run_dct_experiment(spec, 6);
    CHECK(report.passed);
    for (const auto& row : report.rows) CHECK(row.error.exact()->is_zero());

    spec.dominator[3] = LElement{q("1/2"), Rational(1)};
    try {
        run_dct_experiment(spec, 6);
        FAIL("expected DominatorViolated");
    } catch (const DominatorViolated& e) {
        CHECK(e.atom() == 3);
        CHECK(e.n() == 0);
    }
    spec.dominator[3] = el({1, 1});
    spec.generator = [&](std::size_t t, std::size_t n) { return n == 4 && t == 2 ? vec({el({2, 0})}) : g[t]; };
    try {
        run_dct_experiment(spec, 6);
        FAIL("expected DominatorViolated");
    } catch (const DominatorViolated& e) {
        CHECK(e.atom() == 2);
        CHECK(e.n() == 4);
    }
    spec.dominator[0] = el({2, 2});
    CHECK_THROWS_AS(run_dct_experiment(spec, 6), DominatorViolated);
}

TEST_CASE("completeness harness") {
    Rng rng(26);
    const MeasureSpace s = random_space(rng, 3);
    const ModuleSpace x{2, 2, NormKind::Sup};
    const LFunction u = random_lfunction(rng, s, x);
    auto report = completeness_harness(u, LFunction::zero(s, x), LpExponent(Rational(1)), 8);
    CHECK(report.passed());
    for (const auto& row : report.rows) CHECK(row.residual.exact()->is_zero());

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        report = run_completeness_harness(random_space(rng, 1 + rng.below(4)), x, LpExponent(Rational(1)), seed, 10);
        CHECK(report.passed());
        CHECK(report.pairwise_envelope);
        CHECK(report.pointwise_limit);
        for (const auto& row : report.rows) {
            REQUIRE(row.residual.exact());
            CHECK(*row.residual.exact() == Rational::pow2(-static_cast<long>(row.n)) * *report.w_norm.exact());
        }
    }
    report = run_completeness_harness(s, {1, 2, NormKind::Two}, LpExponent(Rational(2)), 3, 8);
    CHECK(report.passed());
    CHECK_THROWS_AS(run_completeness_harness(s, x, LpExponent::infinity(), 1, 4), InvalidArgument);
}

TEST_CASE("integral is linear and bounded by the integral of the norm") {
    Rng rng(27);
    for (int s = 0; s < 200; ++s) {
        const MeasureSpace sp = random_space(rng, 2 + rng.below(4), rng.below(2));
        const NormKind kind = rng.chance(1, 2) ? NormKind::Sup : NormKind::One;
        const ModuleSpace x{1 + rng.below(3), 1 + rng.below(3), kind};
        const LFunction f = random_lfunction(rng, sp, x);
        const LFunction g = random_lfunction(rng, sp, x);
        const LElement alpha = rng.element(x.d, -3, 3, 4);
        CHECK(integrate(alpha * f + g) == alpha * integrate(f) + integrate(g));
        CHECK(leq(*norm(x, integrate(f)).exact(), *lp_integral(f, Rational(1)).exact()));
    }
}

TEST_CASE("lp norm satisfies the norm axioms on L^p") {
    ToleranceConfig cfg;
    Rng rng(28);
    for (int s = 0; s < 100; ++s) {
        const MeasureSpace sp = random_space(rng, 1 + rng.below(4));
        const ModuleSpace x{1 + rng.below(2), 2, static_cast<NormKind>(rng.below(3))};
        const LFunction f = random_lfunction(rng, sp, x);
        const LFunction g = random_lfunction(rng, sp, x);
        const LElement lambda = rng.element(2, -3, 3, 3);
        for (long pv : {1L, 2L, 3L}) {
            const LpExponent p{Rational(pv)};
            const Rational tol = pv == 1 && x.kind != NormKind::Two ? Rational(0) : cfg.compare_tol;
            CHECK(compare_equal(lp_norm(lambda * f, p, cfg), ApproxElement(abs(lambda)) * lp_norm(f, p, cfg), tol)
                      .holds);
            CHECK(compare_leq(lp_norm(f + g, p, cfg), lp_norm(f, p, cfg) + lp_norm(g, p, cfg), tol).holds);
        }
        CHECK(lp_norm(LFunction::zero(sp, x), LpExponent(Rational(2)), cfg).exact()->is_zero());
        if (!f.is_zero()) CHECK_FALSE(lp_norm(f, LpExponent(Rational(1)), cfg).upper().is_zero());
    }
}

}  // TEST_SUITE
