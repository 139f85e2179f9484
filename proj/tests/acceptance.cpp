// Copyright The lbochner Authors
// SPDX-License-Identifier: Apache-2.0

// Prints one PASS/FAIL line per acceptance criterion and exits non-zero on any FAIL.

#include <chrono>
#include <cstdio>
#include <string>

#include "lbochner/bochner.hpp"
#include "lbochner/generators.hpp"
#include "lbochner/suite.hpp"

using namespace lbochner;

namespace {

double elapsed_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Worst single m = 10 subset sweep over a few seeded functions.
double sup_rep_m10_seconds(const SuiteOptions& options, bool& exact) {
    double worst = 0.0;
    exact = true;
    for (std::uint64_t s = 0; s < 5; ++s) {
        Rng rng = Rng::stream(options.seed, 1000 + s);
        const LFunction f = random_lfunction(rng, random_space(rng, 10, 0), {2, 3, NormKind::Sup});
        const auto start = std::chrono::steady_clock::now();
        const auto report = verify_sup_representation(f, LpExponent(Rational(2)), options.cfg);
        worst = std::max(worst, elapsed_since(start));
        exact = exact && report.passed() && report.subsets_checked == 1024;
    }
    return worst;
}

}  // namespace

int main() {
    SuiteOptions options;
    bool all = true;
    auto line = [&](int id, const std::string& name, bool ok, const std::string& note) {
        std::printf("criterion %2d %-28s %s  %s\n", id, name.c_str(), ok ? "PASS" : "FAIL", note.c_str());
        std::fflush(stdout);
        all = all && ok;
    };

    const auto first_start = std::chrono::steady_clock::now();
    std::vector<CriterionResult> first;
    for (int id = 1; id <= 12; ++id) {
        CriterionResult r = run_criterion(id, options);
        bool ok = r.passed;
        char note[96];
        std::snprintf(note, sizeof note, "%.3fs", r.seconds);
        std::string extra = note;
        if (id == 1) {
            ok = ok && r.seconds < 5.0;
            extra += " (limit 5s)";
        } else if (id == 4) {
            bool exact = false;
            const double m10 = sup_rep_m10_seconds(options, exact);
            ok = ok && exact && m10 < 1.0;
            std::snprintf(note, sizeof note, " m=10 sweep %.3fs (limit 1s)", m10);
            extra += note;
        }
        line(id, r.name, ok, extra);
        first.push_back(std::move(r));
    }
    const double first_seconds = elapsed_since(first_start);
    const std::string dump_a = suite_report(options, first).dump(2);

    const auto second_start = std::chrono::steady_clock::now();
    const std::string dump_b = suite_report(options, run_suite(options)).dump(2);
    const double second_seconds = elapsed_since(second_start);

    char note[128];
    std::snprintf(note, sizeof note, "runs %.1fs and %.1fs (limit 120s), %zu report bytes", first_seconds,
                  second_seconds, dump_a.size());
    line(13, "determinism", dump_a == dump_b && first_seconds < 120.0 && second_seconds < 120.0, note);

    std::printf("%s\n", all ? "ALL PASS" : "SOME FAILED");
    return all ? 0 : 1;
}
