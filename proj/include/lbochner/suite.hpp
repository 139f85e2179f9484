// Copyright The lbochner Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lbochner/serialize.hpp"

namespace lbochner {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    Json detail;
    /// Wall time; never written to reports.
    double seconds = 0.0;
};

struct SuiteOptions {
    std::uint64_t seed = 42;
    ToleranceConfig cfg;
};

/// Runs one criterion (1..12) on stream `id` of the seed.
CriterionResult run_criterion(int id, const SuiteOptions& options);

/// Criteria 1..12 in order; `on_done` sees each result as it completes.
std::vector<CriterionResult> run_suite(const SuiteOptions& options,
                                       const std::function<void(const CriterionResult&)>& on_done = {});

/// Deterministic report: no timings, rationals as strings.
Json suite_report(const SuiteOptions& options, const std::vector<CriterionResult>& results);

}  // namespace lbochner
