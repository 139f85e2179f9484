// Copyright The lbochner Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "lbochner/falgebra.hpp"
#include "lbochner/lmodule.hpp"
#include "lbochner/measure.hpp"

namespace lbtest {

using namespace lbochner;

inline Rational q(const char* text) { return Rational::parse(text); }

inline LElement el(std::initializer_list<long> xs) {
    std::vector<Rational> v;
    for (long x : xs) v.emplace_back(x);
    return LElement(std::move(v));
}

inline ModuleVector vec(std::initializer_list<LElement> xs) { return ModuleVector(std::vector<LElement>(xs)); }

inline MeasureSpace space(std::initializer_list<const char*> names, std::initializer_list<long> masses) {
    std::vector<std::string> n(names.begin(), names.end());
    std::vector<Rational> m;
    for (long x : masses) m.emplace_back(x);
    return MeasureSpace(std::move(n), std::move(m));
}

/// Independent floating oracle: the enclosure contains `x` up to `slack`.
inline bool encloses(const ApproxReal& a, double x, double slack = 1e-12) {
    return a.lower().raw().get_d() - slack <= x && x <= a.upper().raw().get_d() + slack;
}

}  // namespace lbtest
