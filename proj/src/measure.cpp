// Copyright The lbochner Authors
// SPDX-License-Identifier: Apache-2.0

#include "lbochner/measure.hpp"

#include <algorithm>
#include <iterator>
#include <set>

#include "lbochner/errors.hpp"

namespace lbochner {

namespace {

void require_same_space(const MeasurableSet& a, const MeasurableSet& b) {
    if (!(a.space() == b.space())) throw SpaceMismatch("sets belong to different measure spaces");
}

template <typename Algo>
MeasurableSet combine(const MeasurableSet& a, const MeasurableSet& b, Algo algo) {
    require_same_space(a, b);
    std::vector<std::size_t> out;
    algo(a.members().begin(), a.members().end(), b.members().begin(), b.members().end(),
         std::back_inserter(out));
    return MeasurableSet(a.space(), std::move(out));
}

}  // namespace

MeasureSpace::MeasureSpace(std::vector<std::string> atom_names, std::vector<Rational> masses) {
    if (atom_names.size() != masses.size()) {
        throw DimensionMismatch("atoms and masses differ in length");
    }
    if (atom_names.empty()) throw InvalidArgument("a measure space needs at least one atom");
    std::set<std::string> seen;
    Rational total;
    for (std::size_t i = 0; i < atom_names.size(); ++i) {
        if (atom_names[i].empty()) throw InvalidArgument("empty atom name");
        if (!seen.insert(atom_names[i]).second) throw InvalidArgument("duplicate atom '" + atom_names[i] + "'");
        if (masses[i].sign() < 0) throw InvalidArgument("negative mass for atom '" + atom_names[i] + "'");
        total += masses[i];
    }
    if (total.sign() <= 0) throw InvalidArgument("total mass must be positive");
    data_ = std::make_shared<const Data>(Data{std::move(atom_names), std::move(masses), std::move(total)});
}

std::optional<std::size_t> MeasureSpace::index_of(const std::string& name) const {
    const auto& names = data_->names;
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names.begin());
}

Rational MeasureSpace::min_positive_mass() const {
    std::optional<Rational> best;
    for (const auto& m : data_->masses) {
        if (m.sign() > 0 && (!best || m < *best)) best = m;
    }
    return *best;  // total mass > 0 guarantees one
}

bool operator==(const MeasureSpace& a, const MeasureSpace& b) {
    if (a.data_ == b.data_) return true;
    return a.data_->names == b.data_->names && a.data_->masses == b.data_->masses;
}

MeasurableSet::MeasurableSet(MeasureSpace space, std::vector<std::size_t> members)
    : space_(std::move(space)), members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    if (!members_.empty() && members_.back() >= space_.size()) {
        throw InvalidArgument("atom index " + std::to_string(members_.back()) + " out of range");
    }
}

MeasurableSet MeasurableSet::empty(const MeasureSpace& space) { return MeasurableSet(space, {}); }

MeasurableSet MeasurableSet::full(const MeasureSpace& space) {
    std::vector<std::size_t> all(space.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return MeasurableSet(space, std::move(all));
}

MeasurableSet MeasurableSet::from_mask(const MeasureSpace& space, std::uint64_t mask) {
    if (space.size() > 64) throw TooManyAtoms("mask form needs at most 64 atoms");
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < space.size(); ++i) {
        if (mask >> i & 1U) members.push_back(i);
    }
    return MeasurableSet(space, std::move(members));
}

MeasurableSet MeasurableSet::from_names(const MeasureSpace& space, std::span<const std::string> names) {
    std::vector<std::size_t> members;
    for (const auto& n : names) {
        const auto i = space.index_of(n);
        if (!i) throw InvalidArgument("unknown atom '" + n + "'");
        members.push_back(*i);
    }
    return MeasurableSet(space, std::move(members));
}

bool MeasurableSet::contains(std::size_t atom) const {
    return std::binary_search(members_.begin(), members_.end(), atom);
}

std::vector<std::string> MeasurableSet::names() const {
    std::vector<std::string> out;
    out.reserve(members_.size());
    for (auto i : members_) out.push_back(space_.name(i));
    return out;
}

Rational measure_of(const MeasurableSet& set) {
    Rational total;
    for (auto i : set.members()) total += set.space().mass(i);
    return total;
}

MeasurableSet union_of(const MeasurableSet& a, const MeasurableSet& b) {
    return combine(a, b, [](auto... args) { return std::set_union(args...); });
}
MeasurableSet intersection_of(const MeasurableSet& a, const MeasurableSet& b) {
    return combine(a, b, [](auto... args) { return std::set_intersection(args...); });
}
MeasurableSet difference_of(const MeasurableSet& a, const MeasurableSet& b) {
    return combine(a, b, [](auto... args) { return std::set_difference(args...); });
}
MeasurableSet symmetric_difference_of(const MeasurableSet& a, const MeasurableSet& b) {
    return combine(a, b, [](auto... args) { return std::set_symmetric_difference(args...); });
}

bool is_subset(const MeasurableSet& a, const MeasurableSet& b) {
    require_same_space(a, b);
    return std::includes(b.members().begin(), b.members().end(), a.members().begin(), a.members().end());
}

Partition::Partition(std::vector<MeasurableSet> blocks) : blocks_(std::move(blocks)) {
    if (blocks_.empty()) throw InvalidArgument("a partition needs at least one block");
    const MeasureSpace& space = blocks_.front().space();
    std::vector<char> seen(space.size(), 0);
    for (const auto& b : blocks_) {
        if (!(b.space() == space)) throw SpaceMismatch("partition blocks from different spaces");
        if (b.is_empty()) throw InvalidArgument("partition blocks must be nonempty");
        for (auto i : b.members()) {
            if (seen[i]) throw InvalidArgument("partition blocks overlap at atom '" + space.name(i) + "'");
            seen[i] = 1;
        }
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
        throw InvalidArgument("partition blocks do not cover the space");
    }
}

bool Partition::is_refined_by(const Partition& finer) const {
    for (const auto& fine : finer.blocks()) {
        const bool inside_one = std::any_of(blocks_.begin(), blocks_.end(),
                                            [&](const MeasurableSet& coarse) { return is_subset(fine, coarse); });
        if (!inside_one) return false;
    }
    return true;
}

Partition atomic_partition(const MeasureSpace& space) {
    std::vector<MeasurableSet> blocks;
    blocks.reserve(space.size());
    for (std::size_t i = 0; i < space.size(); ++i) blocks.emplace_back(space, std::vector<std::size_t>{i});
    return Partition(std::move(blocks));
}

void for_each_set_partition(std::size_t m,
                            const std::function<void(std::span<const std::size_t>, std::size_t)>& visit) {
    if (m == 0) return;
    // Restricted growth strings: a[0] = 0, a[i] ≤ 1 + max(a[0..i-1]).
    std::vector<std::size_t> a(m, 0), prefix_max(m, 0);
    while (true) {
        visit(a, prefix_max[m - 1] + 1);
        std::size_t i = m - 1;
        while (i > 0 && a[i] == prefix_max[i - 1] + 1) --i;
        if (i == 0) return;
        ++a[i];
        prefix_max[i] = std::max(prefix_max[i - 1], a[i]);
        for (std::size_t j = i + 1; j < m; ++j) {
            a[j] = 0;
            prefix_max[j] = prefix_max[i];
        }
    }
}

std::vector<Partition> enumerate_partitions(const MeasureSpace& space, std::size_t max_atoms) {
    if (space.size() > max_atoms) {
        throw TooManyAtoms(std::to_string(space.size()) + " atoms exceed the partition cap of " +
                           std::to_string(max_atoms));
    }
    std::vector<Partition> out;
    out.reserve(bell_number(space.size()));
    for_each_set_partition(space.size(), [&](std::span<const std::size_t> labels, std::size_t count) {
        std::vector<std::vector<std::size_t>> members(count);
        for (std::size_t i = 0; i < labels.size(); ++i) members[labels[i]].push_back(i);
        std::vector<MeasurableSet> blocks;
        blocks.reserve(count);
        for (auto& m : members) blocks.emplace_back(space, std::move(m));
        out.emplace_back(std::move(blocks));
    });
    return out;
}

std::uint64_t bell_number(std::size_t m) {
    // Bell triangle.
    std::vector<std::uint64_t> row{1};
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<std::uint64_t> next{row.back()};
        for (auto v : row) next.push_back(next.back() + v);
        row = std::move(next);
    }
    return row.front();
}

MeasureSpace dyadic_space(int levels) {
    if (levels < 1 || levels > 20) throw InvalidArgument("dyadic levels must be in [1, 20]");
    const std::size_t m = std::size_t{1} << levels;
    std::vector<std::string> names(m);
    for (std::size_t i = 0; i < m; ++i) {
        std::string digits(static_cast<std::size_t>(levels), '0');
        for (int b = 0; b < levels; ++b) {
            if (i >> (levels - 1 - b) & 1U) digits[static_cast<std::size_t>(b)] = '1';
        }
        names[i] = std::move(digits);
    }
    return MeasureSpace(std::move(names), std::vector<Rational>(m, Rational::pow2(-levels)));
}

int dyadic_levels(const MeasureSpace& space) {
    const std::size_t m = space.size();
    if (m < 2 || (m & (m - 1)) != 0) throw InvalidArgument("not a dyadic space: atom count is not 2^levels");
    int levels = 0;
    while ((std::size_t{1} << levels) < m) ++levels;
    const Rational mass = Rational::pow2(-levels);
    for (const auto& mu : space.masses()) {
        if (mu != mass) throw InvalidArgument("not a dyadic space: unequal atom masses");
    }
    return levels;
}

MeasurableSet rademacher_set(const MeasureSpace& dyadic, int n) {
    const int levels = dyadic_levels(dyadic);
    if (n < 1 || n > levels) {
        throw InvalidArgument("Rademacher index " + std::to_string(n) + " outside [1, " +
                              std::to_string(levels) + "]");
    }
    std::vector<std::size_t> members;
    members.reserve(dyadic.size() / 2);
    for (std::size_t i = 0; i < dyadic.size(); ++i) {
        if ((i >> (levels - n) & 1U) == 0) members.push_back(i);
    }
    return MeasurableSet(dyadic, std::move(members));
}

TruncatedSpace truncated_geometric_space(int atoms) {
    if (atoms < 1 || atoms > 62) throw InvalidArgument("geometric truncation needs 1..62 atoms");
    std::vector<std::string> names;
    std::vector<Rational> masses;
    for (int t = 1; t <= atoms; ++t) {
        names.push_back("t" + std::to_string(t));
        masses.push_back(Rational::pow2(-t));
    }
    return TruncatedSpace{MeasureSpace(std::move(names), std::move(masses)), Rational::pow2(-atoms)};
}

}  // namespace lbochner
