// Copyright The lbochner Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "lbochner/bochner.hpp"

namespace lbochner {

/// Finitely additive X-valued set function, given by its atom values:
/// G(F) = Σ_{t∈F} atom_values[t].
class VectorMeasure {
public:
    VectorMeasure(MeasureSpace space, ModuleSpace codomain, std::vector<ModuleVector> atom_values);
    /// F ↦ ∫_F g dμ.
    static VectorMeasure from_density(const LFunction& g);

    const MeasureSpace& space() const noexcept { return space_; }
    const ModuleSpace& codomain() const noexcept { return codomain_; }
    const ModuleVector& atom_value(std::size_t atom) const { return atom_values_.at(atom); }
    std::span<const ModuleVector> atom_values() const noexcept { return atom_values_; }

private:
    MeasureSpace space_;
    ModuleSpace codomain_;
    std::vector<ModuleVector> atom_values_;
};

/// G(F). Throws SpaceMismatch.
ModuleVector evaluate(const VectorMeasure& g, const MeasurableSet& set);

struct ModulusRow {
    MeasurableSet set;
    Rational mass;
    ApproxElement norm;
};

struct MuContinuityReport {
    bool passed = true;
    std::optional<std::size_t> witness_atom;
    /// (μ(F), ‖G(F)‖) over all F; empty above the table cap.
    std::vector<ModulusRow> modulus_table;
    /// Every F with μ(F) = 0 in the table has G(F) = 0.
    bool null_sets_null = true;
};

/// G ≪ μ: every null atom carries G = 0. The modulus table is built when
/// the space has at most table_cap atoms.
MuContinuityReport check_mu_continuity(const VectorMeasure& g, std::size_t table_cap = 10,
                                       const ToleranceConfig& cfg = {});

struct VariationResult {
    ApproxElement variation;  ///< Σ_t ‖G({t})‖ over the atomic partition
    Partition attaining_partition;
    bool exhaustive_checked = false;
    std::size_t partitions_checked = 0;
    /// The atomic sum dominates every enumerated partition.
    bool dominates = true;
    std::optional<std::size_t> witness_partition;
};

/// Σ_{B∈N} ‖G(B)‖ for one partition.
ApproxElement partition_sum(const VectorMeasure& g, const Partition& partition, const ToleranceConfig& cfg = {});

/// |G|(S) at the atomic partition; for m ≤ exhaustive_cap also enumerates
/// every partition and checks that the atomic value dominates.
VariationResult variation(const VectorMeasure& g, std::size_t exhaustive_cap = 5, const ToleranceConfig& cfg = {});

struct DensityResult {
    LFunction density;
    std::size_t verified_sets = 0;
    bool verified = true;
    bool exhaustive = true;
};

/// g(t) = G({t})/μ({t}) on positive-mass atoms and 0 on null atoms, then
/// checks G(F) = ∫_F g dμ on every subset (m ≤ exhaustive_cap) or on
/// `samples` seeded subsets. Throws NotAbsolutelyContinuous.
DensityResult rn_density(const VectorMeasure& g, std::uint64_t seed = 0, std::size_t exhaustive_cap = 10,
                         std::size_t samples = 1000);

struct RnpBlock {
    MeasurableSet set;
    Rational mass;
    LElement value;  ///< G(F_j), the positive root of G² = μ(F_j)²
    bool self_consistent = true;
};

struct RnpPair {
    std::size_t n = 0;  ///< 1-based Rademacher indices
    std::size_t m = 0;
    LElement distance;  ///< |T(I_{F_n}) - T(I_{F_m})|
    Rational separation;  ///< μ(F_n Δ F_m)
    bool holds = true;
};

struct RnpProbeReport {
    int levels = 0;
    std::size_t n_sets = 0;
    std::size_t d = 1;
    std::vector<RnpBlock> blocks;
    LElement operator_norm;  ///< ‖T‖
    bool fixed_point = true;
    bool mu_continuous = true;
    bool variation_bound = true;  ///< |G(B)| ≤ ‖T‖ μ(B)
    std::size_t variation_sets_checked = 0;
    bool variation_exhaustive = false;
    std::vector<LElement> rademacher_values;  ///< T(I_{F_n})
    std::vector<RnpPair> pairs;
    /// distance_matrix[n][m] = |T(I_{F_n}) - T(I_{F_m})|, diagonal included.
    std::vector<std::vector<LElement>> distance_matrix;
    bool distance_bound = true;
    Rational claimed_separation;       ///< μ(S)/3
    Rational rademacher_separation;  ///< μ(S)/2
    /// T(u) = ∫ u dμ on every atom indicator, i.e. the unit density represents T.
    bool unit_density_represents_T = false;
    bool passed() const { return fixed_point && mu_continuous && variation_bound && distance_bound; }
};

/// T(u) = Σ_j μ(F_j) ∫_{F_j} u dμ / G(F_j) for u : atoms → L.
LElement rnp_operator(const RnpProbeReport& probe, const MeasureSpace& space, std::span<const LElement> u);

/// Probe on dyadic_space(levels) with F_j = consecutive atom pairs and the
/// Rademacher family F_1..F_{n_sets}. Throws InvalidArgument unless
/// 1 ≤ n_sets ≤ levels; ZeroDivisor if some G(F_j) has a zero coordinate.
RnpProbeReport rnp_probe(int levels, std::size_t n_sets, std::size_t d = 1, std::size_t subset_cap = 16);

}  // namespace lbochner
