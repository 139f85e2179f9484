// Copyright The lbochner Authors
// SPDX-License-Identifier: Apache-2.0

#include "lbochner/generators.hpp"

#include <numeric>

#include "lbochner/errors.hpp"

namespace lbochner {

ModuleVector random_vector(Rng& rng, std::size_t rank, std::size_t d, const GenRange& range) {
    std::vector<LElement> entries;
    entries.reserve(rank);
    for (std::size_t i = 0; i < rank; ++i) entries.push_back(rng.element(d, range.lo, range.hi, range.max_den));
    return ModuleVector(std::move(entries));
}

std::string atom_label(std::size_t index, std::size_t m) {
    if (m <= 26) return std::string(1, static_cast<char>('a' + index));
    return "t" + std::to_string(index + 1);
}

MeasureSpace random_space(Rng& rng, std::size_t m, std::size_t null_atoms) {
    if (m == 0 || null_atoms >= m) throw InvalidArgument("need m >= 1 and fewer null atoms than atoms");
    std::vector<std::string> names;
    std::vector<Rational> masses;
    for (std::size_t i = 0; i < m; ++i) {
        names.push_back(atom_label(i, m));
        const long den = rng.uniform(1, 4);
        masses.emplace_back(rng.uniform(1, 3 * den), den);
    }
    // Partial Fisher-Yates picks the null atoms.
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = 0; i < null_atoms; ++i) {
        const auto j = i + rng.below(m - i);
        std::swap(order[i], order[j]);
        masses[order[i]] = Rational(0);
    }
    return MeasureSpace(std::move(names), std::move(masses));
}

LFunction random_lfunction(Rng& rng, const MeasureSpace& space, const ModuleSpace& codomain, const GenRange& range) {
    std::vector<ModuleVector> values;
    values.reserve(space.size());
    for (std::size_t t = 0; t < space.size(); ++t) values.push_back(random_vector(rng, codomain.rank, codomain.d, range));
    return LFunction(space, codomain, std::move(values));
}

}  // namespace lbochner
