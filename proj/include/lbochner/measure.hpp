// Copyright The lbochner Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lbochner/rational.hpp"

namespace lbochner {

/// Finite atomic measure space; the σ-algebra is the power set of the atoms.
///
/// Cheap to copy: the atom table is shared and immutable. Atoms of mass zero
/// are allowed (they are what μ-continuity is about).
class MeasureSpace {
public:
    /// Throws InvalidArgument on length mismatch, duplicate or empty names,
    /// negative masses, or zero total mass.
    MeasureSpace(std::vector<std::string> atom_names, std::vector<Rational> masses);

    std::size_t size() const noexcept { return data_->names.size(); }
    const std::string& name(std::size_t atom) const { return data_->names.at(atom); }
    const Rational& mass(std::size_t atom) const { return data_->masses.at(atom); }
    std::span<const std::string> names() const noexcept { return data_->names; }
    std::span<const Rational> masses() const noexcept { return data_->masses; }
    const Rational& total_mass() const noexcept { return data_->total; }
    std::optional<std::size_t> index_of(const std::string& name) const;
    /// Smallest strictly positive atom mass.
    Rational min_positive_mass() const;

    friend bool operator==(const MeasureSpace& a, const MeasureSpace& b);

private:
    struct Data {
        std::vector<std::string> names;
        std::vector<Rational> masses;
        Rational total;
    };
    std::shared_ptr<const Data> data_;
};

/// Subset of the atoms of one space, stored as sorted atom indices.
class MeasurableSet {
public:
    MeasurableSet(MeasureSpace space, std::vector<std::size_t> members);

    static MeasurableSet empty(const MeasureSpace& space);
    static MeasurableSet full(const MeasureSpace& space);
    /// Bit i of mask selects atom i; requires space.size() ≤ 64.
    static MeasurableSet from_mask(const MeasureSpace& space, std::uint64_t mask);
    /// Throws InvalidArgument on an unknown atom name.
    static MeasurableSet from_names(const MeasureSpace& space, std::span<const std::string> names);

    const MeasureSpace& space() const noexcept { return space_; }
    std::span<const std::size_t> members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool is_empty() const noexcept { return members_.empty(); }
    bool contains(std::size_t atom) const;
    /// Member names in atom-index order.
    std::vector<std::string> names() const;

    friend bool operator==(const MeasurableSet& a, const MeasurableSet& b) {
        return a.space_ == b.space_ && a.members_ == b.members_;
    }

private:
    MeasureSpace space_;
    std::vector<std::size_t> members_;
};

Rational measure_of(const MeasurableSet& set);

MeasurableSet union_of(const MeasurableSet& a, const MeasurableSet& b);
MeasurableSet intersection_of(const MeasurableSet& a, const MeasurableSet& b);
MeasurableSet difference_of(const MeasurableSet& a, const MeasurableSet& b);
MeasurableSet symmetric_difference_of(const MeasurableSet& a, const MeasurableSet& b);
bool is_subset(const MeasurableSet& a, const MeasurableSet& b);

/// Pairwise disjoint blocks covering the space.
class Partition {
public:
    /// Throws InvalidArgument unless the blocks are disjoint, nonempty and cover S.
    explicit Partition(std::vector<MeasurableSet> blocks);

    std::span<const MeasurableSet> blocks() const noexcept { return blocks_; }
    std::size_t size() const noexcept { return blocks_.size(); }

    /// Every block of `this` is a union of blocks of `finer`.
    bool is_refined_by(const Partition& finer) const;

private:
    std::vector<MeasurableSet> blocks_;
};

/// Partition into single atoms.
Partition atomic_partition(const MeasureSpace& space);

/// Calls visit(labels, block_count) once per set partition of {0..m-1};
/// labels[i] is the block of atom i as a restricted growth string.
void for_each_set_partition(std::size_t m,
                            const std::function<void(std::span<const std::size_t>, std::size_t)>& visit);

/// Every partition of the atoms exactly once (Bell(m) of them).
/// Throws TooManyAtoms when the space has more than max_atoms atoms.
std::vector<Partition> enumerate_partitions(const MeasureSpace& space, std::size_t max_atoms = 10);

std::uint64_t bell_number(std::size_t m);

/// 2^levels atoms named by their binary digits, each of mass 2^-levels.
/// Throws InvalidArgument unless 1 ≤ levels ≤ 20.
MeasureSpace dyadic_space(int levels);

/// Number of binary levels of a dyadic space; throws InvalidArgument otherwise.
int dyadic_levels(const MeasureSpace& space);

/// Atoms whose n-th binary digit (from the most significant, n ≥ 1) is 0,
/// i.e. where the n-th Rademacher sign is +1.
MeasurableSet rademacher_set(const MeasureSpace& dyadic, int n);

/// Finite truncation of a countable atomic space with the mass it leaves out.
struct TruncatedSpace {
    MeasureSpace space;
    Rational tail_mass;
};

/// Atoms t = 1..n with mass 2^-t; tail_mass = 2^-n.
TruncatedSpace truncated_geometric_space(int atoms);

}  // namespace lbochner
