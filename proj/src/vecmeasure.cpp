// Copyright The lbochner Authors
// SPDX-License-Identifier: Apache-2.0

#include "lbochner/vecmeasure.hpp"

#include "lbochner/errors.hpp"
#include "lbochner/random.hpp"

namespace lbochner {

namespace {

MeasurableSet subset_from_mask(const MeasureSpace& space, std::uint64_t mask) {
    return MeasurableSet::from_mask(space, mask);
}

}  // namespace

VectorMeasure::VectorMeasure(MeasureSpace space, ModuleSpace codomain, std::vector<ModuleVector> atom_values)
    : space_(std::move(space)), codomain_(codomain), atom_values_(std::move(atom_values)) {
    if (atom_values_.size() != space_.size()) throw DimensionMismatch("vector measure needs one value per atom");
    for (std::size_t t = 0; t < atom_values_.size(); ++t) {
        if (!atom_values_[t].fits(codomain_)) {
            throw DimensionMismatch("value at atom '" + space_.name(t) + "' does not fit the codomain");
        }
    }
}

VectorMeasure VectorMeasure::from_density(const LFunction& g) {
    std::vector<ModuleVector> values;
    for (std::size_t t = 0; t < g.space().size(); ++t) values.push_back(g.space().mass(t) * g[t]);
    return VectorMeasure(g.space(), g.codomain(), std::move(values));
}

ModuleVector evaluate(const VectorMeasure& g, const MeasurableSet& set) {
    if (!(set.space() == g.space())) throw SpaceMismatch("set and measure live on different spaces");
    ModuleVector total = ModuleVector::zero(g.codomain().rank, g.codomain().d);
    for (auto t : set.members()) total = total + g.atom_value(t);
    return total;
}

MuContinuityReport check_mu_continuity(const VectorMeasure& g, std::size_t table_cap, const ToleranceConfig& cfg) {
    MuContinuityReport report;
    const MeasureSpace& space = g.space();
    for (std::size_t t = 0; t < space.size(); ++t) {
        if (space.mass(t).is_zero() && !g.atom_value(t).is_zero()) {
            report.passed = false;
            report.witness_atom = t;
            break;
        }
    }
    if (space.size() > table_cap || space.size() > 30) return report;
    const std::uint64_t count = std::uint64_t{1} << space.size();
    for (std::uint64_t mask = 0; mask < count; ++mask) {
        MeasurableSet set = subset_from_mask(space, mask);
        const ModuleVector value = evaluate(g, set);
        const Rational mass = measure_of(set);
        if (mass.is_zero() && !value.is_zero()) report.null_sets_null = false;
        report.modulus_table.push_back(ModulusRow{std::move(set), mass, norm(g.codomain(), value, cfg)});
    }
    return report;
}

ApproxElement partition_sum(const VectorMeasure& g, const Partition& partition, const ToleranceConfig& cfg) {
    ApproxElement total(LElement::zero(g.codomain().d));
    for (const auto& block : partition.blocks()) total = total + norm(g.codomain(), evaluate(g, block), cfg);
    return total;
}

VariationResult variation(const VectorMeasure& g, std::size_t exhaustive_cap, const ToleranceConfig& cfg) {
    Partition atomic = atomic_partition(g.space());
    VariationResult result{partition_sum(g, atomic, cfg), atomic, false, 0, true, std::nullopt};
    if (g.space().size() > exhaustive_cap) return result;
    result.exhaustive_checked = true;
    std::size_t index = 0;
    for (const auto& partition : enumerate_partitions(g.space(), exhaustive_cap)) {
        ++result.partitions_checked;
        if (!compare_leq(partition_sum(g, partition, cfg), result.variation, cfg.compare_tol).holds &&
            result.dominates) {
            result.dominates = false;
            result.witness_partition = index;
        }
        ++index;
    }
    return result;
}

DensityResult rn_density(const VectorMeasure& g, std::uint64_t seed, std::size_t exhaustive_cap, std::size_t samples) {
    const MeasureSpace& space = g.space();
    const ModuleSpace& x = g.codomain();
    std::vector<ModuleVector> values;
    for (std::size_t t = 0; t < space.size(); ++t) {
        const Rational& mass = space.mass(t);
        if (mass.is_zero()) {
            if (!g.atom_value(t).is_zero()) throw NotAbsolutelyContinuous(t, space.name(t));
            values.push_back(ModuleVector::zero(x.rank, x.d));
        } else {
            values.push_back(recip(LElement::constant(x.d, mass)) * g.atom_value(t));
        }
    }
    DensityResult result{LFunction(space, x, std::move(values)), 0, true, true};

    auto verify = [&](const MeasurableSet& set) {
        ++result.verified_sets;
        if (!(evaluate(g, set) == integrate_over(result.density, set))) result.verified = false;
    };
    if (space.size() <= exhaustive_cap && space.size() <= 30) {
        const std::uint64_t count = std::uint64_t{1} << space.size();
        for (std::uint64_t mask = 0; mask < count; ++mask) verify(subset_from_mask(space, mask));
    } else {
        result.exhaustive = false;
        Rng rng(seed);
        for (std::size_t s = 0; s < samples; ++s) {
            std::vector<std::size_t> members;
            for (std::size_t t = 0; t < space.size(); ++t) {
                if (rng.chance(1, 2)) members.push_back(t);
            }
            verify(MeasurableSet(space, std::move(members)));
        }
    }
    return result;
}

LElement rnp_operator(const RnpProbeReport& probe, const MeasureSpace& space, std::span<const LElement> u) {
    if (u.size() != space.size()) throw DimensionMismatch("u needs one value per atom");
    LElement total = LElement::zero(probe.d);
    for (const auto& block : probe.blocks) {
        LElement integral = LElement::zero(probe.d);
        for (auto t : block.set.members()) integral = integral + space.mass(t) * u[t];
        total = total + block.mass * integral * recip(block.value);
    }
    return total;
}

RnpProbeReport rnp_probe(int levels, std::size_t n_sets, std::size_t d, std::size_t subset_cap) {
    const MeasureSpace space = dyadic_space(levels);
    if (n_sets < 1 || n_sets > static_cast<std::size_t>(levels)) {
        throw InvalidArgument("n_sets must be in [1, levels]");
    }
    if (d == 0) throw InvalidArgument("d must be >= 1");
    const std::size_t m = space.size();
    RnpProbeReport report;
    report.levels = levels;
    report.n_sets = n_sets;
    report.d = d;
    report.claimed_separation = space.total_mass() / Rational(3);
    report.rademacher_separation = space.total_mass() / Rational(2);

    // G(F_j)² = μ(F_j)²·unit, positive root.
    for (std::size_t j = 0; j < m / 2; ++j) {
        MeasurableSet set(space, {2 * j, 2 * j + 1});
        const Rational mass = measure_of(set);
        const LElement square = LElement::constant(d, mass * mass);
        const ApproxElement solved = root(square, Rational(1, 2));
        const auto exact = solved.exact();
        LElement value = exact ? *exact : solved.values();
        const bool consistent = exact && value * value == square && value == LElement::constant(d, mass);
        report.fixed_point = report.fixed_point && consistent;
        report.blocks.push_back(RnpBlock{std::move(set), mass, std::move(value), consistent});
    }
    // Probe T against its own fixed point: T(I_{F_j}) must reproduce G(F_j).
    for (auto& block : report.blocks) {
        std::vector<LElement> u(m, LElement::zero(d));
        for (auto t : block.set.members()) u[t] = LElement::unit(d);
        block.self_consistent = block.self_consistent && rnp_operator(report, space, u) == block.value;
        report.fixed_point = report.fixed_point && block.self_consistent;
    }

    report.operator_norm = LElement::zero(d);
    for (const auto& block : report.blocks) {
        report.operator_norm = sup(report.operator_norm, abs(block.mass * recip(block.value)));
    }

    std::vector<LElement> atom_values;
    report.unit_density_represents_T = true;
    for (std::size_t t = 0; t < m; ++t) {
        std::vector<LElement> u(m, LElement::zero(d));
        u[t] = LElement::unit(d);
        atom_values.push_back(rnp_operator(report, space, u));
        if (!(atom_values.back() == LElement::constant(d, space.mass(t)))) report.unit_density_represents_T = false;
        if (space.mass(t).is_zero() && !atom_values.back().is_zero()) report.mu_continuous = false;
    }

    auto check_bound = [&](const LElement& value, const Rational& mass) {
        ++report.variation_sets_checked;
        if (!leq(abs(value), mass * report.operator_norm)) report.variation_bound = false;
    };
    if (m <= subset_cap && m <= 30) {
        report.variation_exhaustive = true;
        const std::uint64_t count = std::uint64_t{1} << m;
        std::vector<LElement> value(count, LElement::zero(d));
        std::vector<Rational> mass(count);
        for (std::uint64_t mask = 1; mask < count; ++mask) {
            const auto low = static_cast<std::size_t>(__builtin_ctzll(mask));
            value[mask] = value[mask & (mask - 1)] + atom_values[low];
            mass[mask] = mass[mask & (mask - 1)] + space.mass(low);
        }
        for (std::uint64_t mask = 0; mask < count; ++mask) check_bound(value[mask], mass[mask]);
    } else {
        for (int level = 0; level <= levels; ++level) {
            const std::size_t width = m >> level;
            for (std::size_t start = 0; start < m; start += width) {
                std::vector<LElement> u(m, LElement::zero(d));
                Rational mass;
                for (std::size_t t = start; t < start + width; ++t) {
                    u[t] = LElement::unit(d);
                    mass += space.mass(t);
                }
                check_bound(rnp_operator(report, space, u), mass);
            }
        }
    }

    std::vector<MeasurableSet> family;
    for (std::size_t n = 1; n <= n_sets; ++n) {
        family.push_back(rademacher_set(space, static_cast<int>(n)));
        std::vector<LElement> u(m, LElement::zero(d));
        for (auto t : family.back().members()) u[t] = LElement::unit(d);
        report.rademacher_values.push_back(rnp_operator(report, space, u));
    }
    report.distance_matrix.assign(n_sets, std::vector<LElement>(n_sets, LElement::zero(d)));
    for (std::size_t n = 0; n < n_sets; ++n) {
        for (std::size_t k = 0; k < n_sets; ++k) {
            report.distance_matrix[n][k] = abs(report.rademacher_values[n] - report.rademacher_values[k]);
        }
    }
    for (std::size_t n = 0; n < n_sets; ++n) {
        for (std::size_t k = n + 1; k < n_sets; ++k) {
            const Rational separation = measure_of(symmetric_difference_of(family[n], family[k]));
            const LElement& distance = report.distance_matrix[n][k];
            const bool holds = leq(distance, LElement::constant(d, separation));
            report.distance_bound = report.distance_bound && holds;
            report.pairs.push_back(RnpPair{n + 1, k + 1, distance, separation, holds});
        }
    }
    return report;
}

}  // namespace lbochner
