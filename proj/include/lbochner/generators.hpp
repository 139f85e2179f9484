// Copyright The lbochner Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>

#include "lbochner/bochner.hpp"
#include "lbochner/random.hpp"

namespace lbochner {

/// Coordinates are k/den with k/den ∈ [lo, hi] and den ≤ max_den.
struct GenRange {
    long lo = -4;
    long hi = 4;
    long max_den = 4;
};

ModuleVector random_vector(Rng& rng, std::size_t rank, std::size_t d, const GenRange& range = {});

/// m atoms named a, b, c, … (t1, t2, … past 26) with positive masses in
/// (0, 3]; `null_atoms` distinct atoms, chosen at random, get mass 0.
/// Throws InvalidArgument unless null_atoms < m.
MeasureSpace random_space(Rng& rng, std::size_t m, std::size_t null_atoms = 0);

LFunction random_lfunction(Rng& rng, const MeasureSpace& space, const ModuleSpace& codomain,
                           const GenRange& range = {});

/// Atom names used by random_space.
std::string atom_label(std::size_t index, std::size_t m);

}  // namespace lbochner
