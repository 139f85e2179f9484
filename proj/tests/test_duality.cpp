// Copyright The lbochner Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "lbochner/duality.hpp"
#include "lbochner/errors.hpp"
#include "lbochner/random.hpp"

using namespace lbtest;

namespace {

Functional fn(std::initializer_list<LElement> xs) { return Functional(std::vector<LElement>(xs)); }

// p = 1, k = 1, μ = (1,1), v(a) = (3,1), v(b) = (4,1).
DualFunction sample_v() {
    return DualFunction(space({"a", "b"}, {1, 1}), {1, 2, NormKind::Sup}, {fn({el({3, 1})}), fn({el({4, 1})})});
}

}  // namespace

TEST_SUITE("duality") {

TEST_CASE("pairing") {
    const MeasureSpace s = space({"a", "b"}, {1, 1});
    const ModuleSpace x{1, 2, NormKind::Sup};
    const LFunction u(s, x, {vec({el({1, 0})}), vec({el({0, 1})})});
    const DualFunction v(s, x, {fn({el({2, 3})}), fn({el({2, 3})})});
    CHECK(pairing(u, v) == el({2, 3}));
    CHECK(pairing(u, DualFunction::zero(s, x)).is_zero());
}

TEST_CASE("pairing with indicators evaluates the induced measure") {
    Rng rng(40);
    for (int s = 0; s < 50; ++s) {
        const MeasureSpace sp = random_space(rng, 2 + rng.below(4), 1);
        const ModuleSpace x{1 + rng.below(3), 2, NormKind::Sup};
        const DualFunction v = random_dual_function(rng, sp, x);
        const ModuleVector xv = random_vector(rng, x.rank, 2);
        const MeasurableSet f = MeasurableSet::from_mask(sp, rng.below(std::uint64_t{1} << sp.size()));
        LElement expected = LElement::zero(2);
        for (auto t : f.members()) expected = expected + sp.mass(t) * apply(v[t], xv);
        CHECK(pairing(LFunction::indicator(f, x, xv), v) == expected);
    }
}

TEST_CASE("build_F agrees with the pairing") {
    Rng rng(41);
    const MeasureSpace sp = random_space(rng, 4, 1);
    const ModuleSpace x{2, 2, NormKind::One};
    const DualFunction v = random_dual_function(rng, sp, x);
    const LpOperator h = build_F(v, LpExponent(Rational(2)));
    for (int s = 0; s < 100; ++s) {
        const LFunction u = random_lfunction(rng, sp, x);
        CHECK(h.apply(u) == pairing(u, v));
    }
    const LpOperator zero = build_F(DualFunction::zero(sp, x), LpExponent(Rational(2)));
    for (const auto& row : zero.basis_action()) {
        for (const auto& a : row) CHECK(a.is_zero());
    }
    const MeasureSpace one = space({"a"}, {3});
    const DualFunction w(one, {1, 2, NormKind::Sup}, {fn({el({2, -1})})});
    CHECK(build_F(w, LpExponent(Rational(1))).action(0, 0) == el({6, -3}));
}

TEST_CASE("F is linear in v") {
    Rng rng(42);
    for (int s = 0; s < 50; ++s) {
        const MeasureSpace sp = random_space(rng, 3);
        const ModuleSpace x{2, 2, NormKind::Sup};
        const DualFunction v = random_dual_function(rng, sp, x);
        const DualFunction w = random_dual_function(rng, sp, x);
        const LElement alpha = rng.element(2, -3, 3, 4);
        std::vector<Functional> combo;
        for (std::size_t t = 0; t < sp.size(); ++t) combo.push_back(alpha * v[t] + w[t]);
        const DualFunction vw(sp, x, combo);
        const LFunction u = random_lfunction(rng, sp, x);
        CHECK(pairing(u, vw) == alpha * pairing(u, v) + pairing(u, w));
    }
}

TEST_CASE("operator norm for p = 1") {
    const DualFunction v = sample_v();
    const auto result = operator_norm(build_F(v, LpExponent(Rational(1))));
    CHECK(*result.closed_form.exact() == el({4, 1}));
    CHECK(result.sampled_lower == el({4, 1}));
    CHECK(result.interval_ok);
    const LpOperator zero = build_F(DualFunction::zero(v.space(), v.primal()), LpExponent(Rational(1)));
    CHECK(operator_norm(zero).closed_form.exact()->is_zero());
}

TEST_CASE("operator norm for p = 2 on a single atom") {
    const MeasureSpace one = space({"a"}, {1});
    const DualFunction v(one, {1, 1, NormKind::Sup}, {fn({el({-2})})});
    const auto result = operator_norm(build_F(v, LpExponent(Rational(2))));
    CHECK(*result.closed_form.exact() == el({2}));
    CHECK(result.sampled_lower == el({2}));
    const DualFunction w(one, {2, 1, NormKind::Two}, {fn({el({3}), el({4})})});
    const auto r2 = operator_norm(build_F(w, LpExponent(Rational(2))));
    CHECK(*r2.closed_form.exact() == el({5}));
    CHECK(r2.interval_ok);
}

TEST_CASE("operator norm rejects action on null atoms") {
    const MeasureSpace s = space({"a", "b"}, {1, 0});
    const LpOperator h(s, {1, 1, NormKind::Sup}, LpExponent(Rational(2)), {{el({1})}, {el({1})}});
    CHECK_THROWS_AS(operator_norm(h), NotAbsolutelyContinuous);
}

TEST_CASE("isometry for p = 1") {
    const DualFunction v = sample_v();
    const auto report = isometry_check(v, LpExponent(Rational(1)));
    CHECK(report.verdict);
    CHECK(*report.v_norm.exact() == el({4, 1}));
    CHECK(*report.fv_norm.closed_form.exact() == el({4, 1}));
    CHECK(report.gap.exact()->is_zero());
    const auto zero = isometry_check(DualFunction::zero(v.space(), v.primal()), LpExponent(Rational(1)));
    CHECK(zero.verdict);
    CHECK(zero.v_norm.exact()->is_zero());
}

TEST_CASE("isometry for p = 2 is Cauchy-Schwarz on a single atom") {
    const MeasureSpace one = space({"a"}, {1});
    const DualFunction v(one, {2, 1, NormKind::Two}, {fn({el({3}), el({4})})});
    const auto report = isometry_check(v, LpExponent(Rational(2)));
    CHECK(report.verdict);
    CHECK(*report.v_norm.exact() == el({5}));
    REQUIRE(report.bootstrap);
    CHECK(report.bootstrap->chain_holds());
}

TEST_CASE("isometry on seeded v") {
    ToleranceConfig cfg;
    for (NormKind kind : {NormKind::Sup, NormKind::One}) {
        Rng rng(43);
        for (int s = 0; s < 40; ++s) {
            const MeasureSpace sp = random_space(rng, 1 + rng.below(4));
            const DualFunction v = random_dual_function(rng, sp, {1 + rng.below(3), 2, kind});
            const auto report = isometry_check(v, LpExponent(Rational(1)), cfg, 5, s, 0);
            CHECK(report.verdict);
            CHECK(report.gap.exact()->is_zero());
        }
    }
    Rng rng(44);
    for (int s = 0; s < 40; ++s) {
        const MeasureSpace sp = random_space(rng, 1 + rng.below(4));
        const DualFunction v = random_dual_function(rng, sp, {1 + rng.below(3), 2, static_cast<NormKind>(rng.below(3))});
        const auto report = isometry_check(v, LpExponent(Rational(2)), cfg, 5, s, 5);
        CHECK(report.verdict);
        CHECK(leq(report.gap.upper(), LElement::constant(2, cfg.compare_tol)));
    }
}

TEST_CASE("bootstrap on a single atom") {
    const MeasureSpace one = space({"a"}, {1});
    const DualFunction v(one, {1, 1, NormKind::Sup}, {fn({el({2})})});
    const auto trace = bootstrap_lower_bound(v, LpExponent(Rational(2)), 20, ApproxElement(el({2})));
    CHECK(trace.passed());
    REQUIRE(trace.rows.size() == 21);
    Rational s;
    for (const auto& row : trace.rows) {
        s += Rational::pow2(-static_cast<long>(row.n));
        CHECK(row.s == s);
        // lhs = rhs = 2^{s_n}; both enclosures must contain the floating value.
        CHECK(encloses(row.lhs[0], std::pow(2.0, s.raw().get_d()), 1e-9));
        CHECK(encloses(row.rhs[0], std::pow(2.0, s.raw().get_d()), 1e-9));
    }
    CHECK(compare_equal(trace.limit, ApproxElement(el({2})), Rational::pow2(-20)).holds);
}

TEST_CASE("bootstrap with constant norm") {
    // ‖v(t)‖ = c everywhere: lhs_n = c^{s_n} μ(S), ‖v‖_q = c μ(S)^{1/q}.
    const MeasureSpace s = space({"a", "b", "c"}, {1, 1, 1});
    const DualFunction v(s, {1, 1, NormKind::Sup}, {fn({el({3})}), fn({el({-3})}), fn({el({3})})});
    const LpExponent p(Rational(3));
    const auto report = isometry_check(v, p, {}, 20, 0, 20);
    REQUIRE(report.bootstrap);
    CHECK(report.bootstrap->chain_holds());
    const double qv = 1.5;
    CHECK(encloses(report.v_norm[0], 3.0 * std::pow(3.0, 1.0 / qv), 1e-9));
    for (const auto& row : report.bootstrap->rows) {
        CHECK(encloses(row.lhs[0], 3.0 * std::pow(3.0, row.s.raw().get_d()), 1e-6));
    }
}

TEST_CASE("bootstrap n_max = 0 and error paths") {
    const DualFunction v = sample_v();
    const auto trace = bootstrap_lower_bound(v, LpExponent(Rational(2)), 0, lp_norm(v.as_lfunction(), LpExponent(Rational(2))));
    CHECK(trace.rows.size() == 1);
    CHECK(trace.chain_holds());
    CHECK_THROWS_AS(bootstrap_lower_bound(v, LpExponent(Rational(1)), 3, ApproxElement(el({4, 1}))), InvalidArgument);
    const DualFunction zero_coord(v.space(), v.primal(), {fn({el({3, 0})}), fn({el({4, 1})})});
    CHECK_THROWS_AS(bootstrap_lower_bound(zero_coord, LpExponent(Rational(2)), 3, ApproxElement(el({4, 1}))), ZeroNorm);
}

TEST_CASE("essential sup for p = 1") {
    const DualFunction v = sample_v();
    const std::vector<Rational> eps{q("1"), q("1/10"), q("1/1000")};
    auto report = ess_sup_lower_bound(v, eps);
    CHECK(report.passed());
    CHECK(report.fv_norm == el({4, 1}));
    for (const auto& row : report.rows) CHECK(row.set.is_empty());

    const MeasureSpace s = space({"a", "b"}, {1, 2});
    const DualFunction constant(s, {1, 2, NormKind::Sup}, {fn({el({2, 5})}), fn({el({2, 5})})});
    CHECK(ess_sup_lower_bound(constant, eps).passed());

    report = ess_sup_lower_bound(v, eps, el({2, 1}));
    CHECK_FALSE(report.passed());
    CHECK_FALSE(report.all_null);
}

TEST_CASE("null atoms do not enter the essential sup") {
    const MeasureSpace s = space({"a", "b"}, {1, 0});
    const DualFunction v(s, {1, 1, NormKind::Sup}, {fn({el({1})}), fn({el({100})})});
    const std::vector<Rational> eps{q("1/2")};
    const auto report = ess_sup_lower_bound(v, eps, el({1}));
    CHECK(report.passed());
    CHECK(report.rows[0].set == MeasurableSet(s, {1}));
    CHECK(report.rows[0].null);
}

TEST_CASE("represent") {
    Rng rng(45);
    const MeasureSpace sp = random_space(rng, 4, 1);
    const ModuleSpace x{2, 2, NormKind::Sup};
    const DualFunction v0 = random_dual_function(rng, sp, x);
    const auto result = represent(build_F(v0, LpExponent(Rational(2))), 100, 7);
    CHECK(result.matches);
    CHECK(result.basis_checked == 4 * 2);
    CHECK(result.random_checked == 100);
    for (std::size_t t = 0; t < sp.size(); ++t) {
        if (!sp.mass(t).is_zero()) CHECK(result.v[t] == v0[t]);
    }

    const auto zero = represent(build_F(DualFunction::zero(sp, x), LpExponent(Rational(2))));
    for (const auto& phi : zero.v.values()) CHECK(phi.is_zero());

    std::size_t null_atom = 0;
    while (!sp.mass(null_atom).is_zero()) ++null_atom;
    std::vector<std::vector<LElement>> action(sp.size(), std::vector<LElement>(2, LElement::zero(2)));
    action[null_atom][1] = el({1, 0});
    CHECK_THROWS_AS(represent(LpOperator(sp, x, LpExponent(Rational(2)), action)), NotAbsolutelyContinuous);
}

TEST_CASE("roundtrip") {
    for (NormKind kind : {NormKind::Sup, NormKind::One}) {
        RoundtripOptions options;
        options.primal = {2, 2, kind};
        const auto report = roundtrip_check(LpExponent(Rational(1)), 20, 3, options);
        CHECK(report.passed);
        CHECK(report.rows.size() == 20);
    }
    const auto two = roundtrip_check(LpExponent(Rational(2)), 20, 4);
    CHECK(two.passed);
    RoundtripOptions trivial;
    trivial.primal = {1, 1, NormKind::Sup};
    trivial.atoms = 1;
    trivial.null_atoms = 0;
    const auto scalar = roundtrip_check(LpExponent(Rational(2)), 10, 5, trivial);
    CHECK(scalar.passed);
}

TEST_CASE("boundedness of the pairing") {
    ToleranceConfig cfg;
    Rng rng(46);
    for (int s = 0; s < 100; ++s) {
        const MeasureSpace sp = random_space(rng, 2 + rng.below(3), rng.below(2));
        const ModuleSpace x{1 + rng.below(2), 2, static_cast<NormKind>(rng.below(3))};
        const LFunction u = random_lfunction(rng, sp, x);
        const DualFunction v = random_dual_function(rng, sp, x);
        for (const auto& p : {LpExponent(Rational(1)), LpExponent(Rational(2)), LpExponent::infinity()}) {
            const ApproxElement lhs(abs(pairing(u, v)));
            const ApproxElement rhs = lp_norm(u, p, cfg) * lp_norm(v.as_lfunction(), p.conjugate(), cfg);
            const Rational tol = p == LpExponent(Rational(1)) && x.kind != NormKind::Two ? Rational(0) : cfg.compare_tol;
            CHECK(compare_leq(lhs, rhs, tol).holds);
        }
    }
}

}  // TEST_SUITE
