// Copyright The lbochner Authors
// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"
#include "helpers.hpp"
#include "lbochner/errors.hpp"
#include "lbochner/generators.hpp"
#include "lbochner/random.hpp"
#include "lbochner/vecmeasure.hpp"

using namespace lbtest;

namespace {

const ModuleSpace kScalar2{1, 2, NormKind::Sup};

VectorMeasure sample_measure() {
    return VectorMeasure(space({"a", "b", "c"}, {1, 2, 0}), kScalar2,
                         {vec({el({2, 2})}), vec({el({4, 6})}), vec({el({0, 0})})});
}

}  // namespace

TEST_SUITE("vecmeasure") {

TEST_CASE("evaluate") {
    const VectorMeasure g = sample_measure();
    CHECK(evaluate(g, MeasurableSet::empty(g.space())).is_zero());
    CHECK(evaluate(g, MeasurableSet(g.space(), {0, 1})) == vec({el({6, 8})}));
    const MeasureSpace other = space({"a", "b", "c"}, {1, 2, 1});
    CHECK_THROWS_AS(evaluate(g, MeasurableSet(other, {0})), SpaceMismatch);
}

TEST_CASE("additivity over disjoint pairs") {
    Rng rng(30);
    for (std::size_t m = 1; m <= 6; ++m) {
        const MeasureSpace s = random_space(rng, m);
        const ModuleSpace x{2, 2, NormKind::One};
        std::vector<ModuleVector> atoms;
        for (std::size_t t = 0; t < m; ++t) atoms.push_back(random_vector(rng, 2, 2));
        const VectorMeasure g(s, x, atoms);
        const std::uint64_t count = std::uint64_t{1} << m;
        for (std::uint64_t a = 0; a < count; ++a) {
            for (std::uint64_t b = 0; b < count; ++b) {
                if ((a & b) != 0) continue;
                CHECK(evaluate(g, MeasurableSet::from_mask(s, a | b)) ==
                      evaluate(g, MeasurableSet::from_mask(s, a)) + evaluate(g, MeasurableSet::from_mask(s, b)));
            }
        }
    }
}

TEST_CASE("mu-continuity") {
    const VectorMeasure g = sample_measure();
    auto report = check_mu_continuity(g);
    CHECK(report.passed);
    CHECK(report.null_sets_null);
    CHECK(report.modulus_table.size() == 8);

    const VectorMeasure bad(g.space(), kScalar2, {vec({el({2, 2})}), vec({el({4, 6})}), vec({el({1, 0})})});
    report = check_mu_continuity(bad);
    CHECK_FALSE(report.passed);
    REQUIRE(report.witness_atom);
    CHECK(g.space().name(*report.witness_atom) == "c");
    CHECK_FALSE(report.null_sets_null);

    const VectorMeasure zero(g.space(), kScalar2, std::vector<ModuleVector>(3, ModuleVector::zero(1, 2)));
    CHECK(check_mu_continuity(zero).passed);
}

TEST_CASE("variation worked example") {
    const VectorMeasure g(space({"a", "b"}, {1, 1}), kScalar2, {vec({el({1, -1})}), vec({el({-2, 3})})});
    const auto result = variation(g);
    CHECK(*result.variation.exact() == el({3, 4}));
    CHECK(result.exhaustive_checked);
    CHECK(result.partitions_checked == 2);
    CHECK(result.dominates);
    const Partition coarse({MeasurableSet::full(g.space())});
    CHECK(*partition_sum(g, coarse).exact() == el({1, 2}));

    const VectorMeasure zero(g.space(), kScalar2, std::vector<ModuleVector>(2, ModuleVector::zero(1, 2)));
    CHECK(variation(zero).variation.exact()->is_zero());
    const VectorMeasure single(space({"a"}, {3}), kScalar2, {vec({el({-5, 2})})});
    CHECK(*variation(single).variation.exact() == el({5, 2}));
}

TEST_CASE("refinement monotonicity of partition sums") {
    Rng rng(31);
    for (int s = 0; s < 30; ++s) {
        const std::size_t m = 1 + rng.below(5);
        const MeasureSpace sp = random_space(rng, m);
        const ModuleSpace x{1 + rng.below(2), 2, rng.chance(1, 2) ? NormKind::Sup : NormKind::One};
        std::vector<ModuleVector> atoms;
        for (std::size_t t = 0; t < m; ++t) atoms.push_back(random_vector(rng, x.rank, 2));
        const VectorMeasure g(sp, x, atoms);
        const auto parts = enumerate_partitions(sp);
        std::vector<LElement> sums;
        for (const auto& p : parts) sums.push_back(*partition_sum(g, p).exact());
        for (std::size_t a = 0; a < parts.size(); ++a) {
            for (std::size_t b = 0; b < parts.size(); ++b) {
                if (parts[a].is_refined_by(parts[b])) CHECK(leq(sums[a], sums[b]));
            }
        }
    }
}

TEST_CASE("rn density worked example") {
    const VectorMeasure g = sample_measure();
    const auto result = rn_density(g);
    CHECK(result.density[0] == vec({el({2, 2})}));
    CHECK(result.density[1] == vec({el({2, 3})}));
    CHECK(result.density[2].is_zero());
    CHECK(result.verified);
    CHECK(result.exhaustive);
    CHECK(result.verified_sets == 8);

    const VectorMeasure bad(g.space(), kScalar2, {vec({el({2, 2})}), vec({el({4, 6})}), vec({el({1, 0})})});
    try {
        rn_density(bad);
        FAIL("expected NotAbsolutelyContinuous");
    } catch (const NotAbsolutelyContinuous& e) {
        CHECK(e.atom() == 2);
        CHECK(e.atom_name() == "c");
    }
}

TEST_CASE("rn density round trip from a known density") {
    Rng rng(32);
    for (int s = 0; s < 60; ++s) {
        const std::size_t m = 2 + rng.below(11);
        const MeasureSpace sp = random_space(rng, m, 1 + rng.below(m - 1));
        const ModuleSpace x{1 + rng.below(2), 1 + rng.below(2), static_cast<NormKind>(rng.below(3))};
        const LFunction g = random_lfunction(rng, sp, x);
        // The measure is built set by set through integrate_over, not through rn internals.
        std::vector<ModuleVector> atoms;
        for (std::size_t t = 0; t < m; ++t) atoms.push_back(integrate_over(g, MeasurableSet(sp, {t})));
        const auto result = rn_density(VectorMeasure(sp, x, atoms), s);
        CHECK(result.verified);
        CHECK(result.exhaustive == (m <= 10));
        for (std::size_t t = 0; t < m; ++t) {
            if (sp.mass(t).is_zero()) {
                CHECK(result.density[t].is_zero());
            } else {
                CHECK(result.density[t] == g[t]);
            }
        }
    }
}

TEST_CASE("RNP probe at three levels") {
    const auto report = rnp_probe(3, 3);
    CHECK(report.passed());
    REQUIRE(report.blocks.size() == 4);
    for (const auto& block : report.blocks) {
        CHECK(block.mass == q("1/4"));
        CHECK(block.value == LElement{q("1/4")});
        CHECK(block.value * block.value == LElement{block.mass * block.mass});
    }
    CHECK(report.claimed_separation == q("1/3"));
    CHECK(report.rademacher_separation == q("1/2"));
    CHECK(report.pairs.size() == 3);
    for (const auto& pair : report.pairs) {
        CHECK(pair.separation == q("1/2"));
        CHECK(pair.holds);
    }
    CHECK(report.distance_matrix.size() == 3);
    CHECK(report.unit_density_represents_T);
    CHECK(report.variation_exhaustive);
}

TEST_CASE("RNP probe against direct evaluation of T") {
    for (int levels = 1; levels <= 6; ++levels) {
        const auto report = rnp_probe(levels, static_cast<std::size_t>(levels));
        CHECK(report.passed());
        const auto s = dyadic_space(levels);
        for (std::size_t n = 0; n < report.n_sets; ++n) {
            // With G(F_j) = μ(F_j), T(I_F) = μ(F); Rademacher sets have μ = 1/2.
            CHECK(report.rademacher_values[n] == LElement{q("1/2")});
            const auto f = rademacher_set(s, static_cast<int>(n + 1));
            std::vector<LElement> u(s.size(), LElement::zero(1));
            for (auto t : f.members()) u[t] = LElement::unit(1);
            CHECK(rnp_operator(report, s, u) == LElement{measure_of(f)});
        }
    }
}

TEST_CASE("RNP probe edge cases") {
    const auto single = rnp_probe(4, 1);
    CHECK(single.passed());
    CHECK(single.pairs.empty());
    CHECK(rnp_probe(2, 2, 3).passed());
    CHECK_THROWS_AS(rnp_probe(3, 4), InvalidArgument);
    CHECK_THROWS_AS(rnp_probe(3, 0), InvalidArgument);
    const auto large = rnp_probe(6, 6);
    CHECK_FALSE(large.variation_exhaustive);
    CHECK(large.variation_bound);
}

}  // TEST_SUITE
