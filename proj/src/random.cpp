// Copyright The lbochner Authors
// SPDX-License-Identifier: Apache-2.0

#include "lbochner/random.hpp"

#include <limits>

#include "lbochner/errors.hpp"

namespace lbochner {

namespace {

// splitmix64 finalizer; decorrelates per-stream seeds.
std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

Rng Rng::stream(std::uint64_t seed, std::uint64_t index) { return Rng(mix(mix(seed) ^ mix(index + 1))); }

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) throw InvalidArgument("empty range");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % n;
}

long Rng::uniform(long lo, long hi) {
    if (hi < lo) throw InvalidArgument("empty range");
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(below(span));
}

Rational Rng::rational(long lo, long hi, long max_den) {
    const long den = uniform(1, max_den);
    return Rational(uniform(lo * den, hi * den), den);
}

LElement Rng::element(std::size_t d, long lo, long hi, long max_den) {
    std::vector<Rational> coords;
    coords.reserve(d);
    for (std::size_t i = 0; i < d; ++i) coords.push_back(rational(lo, hi, max_den));
    return LElement(std::move(coords));
}

}  // namespace lbochner
