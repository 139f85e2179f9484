// Copyright The lbochner Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>

#include "lbochner/falgebra.hpp"

namespace lbochner {

/// Seeded generator whose output is identical on every platform.
///
/// std::mt19937_64 is fully specified by the standard; the distributions
/// are not, so integer ranges are drawn here by rejection sampling.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Stream for sub-task `index`, independent of how many draws the parent made.
    static Rng stream(std::uint64_t seed, std::uint64_t index);

    std::uint64_t next() { return engine_(); }
    /// Uniform in [0, n), n > 0.
    std::uint64_t below(std::uint64_t n);
    /// Uniform in [lo, hi].
    long uniform(long lo, long hi);
    /// True with probability num/den.
    bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

    /// k/den with k uniform in [lo·den, hi·den] and den uniform in [1, max_den].
    Rational rational(long lo, long hi, long max_den);
    /// Element with coordinates from rational(lo, hi, max_den).
    LElement element(std::size_t d, long lo, long hi, long max_den);

private:
    std::mt19937_64 engine_;
};

}  // namespace lbochner
