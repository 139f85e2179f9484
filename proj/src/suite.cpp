// Copyright The lbochner Authors
// SPDX-License-Identifier: Apache-2.0

#include "lbochner/suite.hpp"

#include <chrono>

#include "lbochner/errors.hpp"
#include "lbochner/generators.hpp"
#include "lbochner/random.hpp"

namespace lbochner {

namespace {

/// Counts checks and keeps the first failing witness.
struct Tally {
    std::size_t checked = 0;
    std::size_t failed = 0;
    Json witness;

    void record(bool ok, const std::function<Json()>& describe) {
        ++checked;
        if (ok) return;
        if (failed++ == 0) witness = describe();
    }
    bool ok() const { return failed == 0; }
    Json to_json() const {
        Json out = Json::object();
        out["checked"] = checked;
        out["failed"] = failed;
        out["witness"] = witness;
        return out;
    }
};

NormKind random_kind(Rng& rng) { return static_cast<NormKind>(rng.below(3)); }
NormKind exact_kind(Rng& rng) { return rng.chance(1, 2) ? NormKind::Sup : NormKind::One; }

ModuleSpace random_module(Rng& rng, NormKind kind, std::size_t max_rank = 3, std::size_t max_d = 3) {
    return {1 + rng.below(max_rank), 1 + rng.below(max_d), kind};
}

MeasureSpace space_with_nulls(Rng& rng, std::size_t max_atoms) {
    const std::size_t m = 1 + rng.below(max_atoms);
    return random_space(rng, m, m > 1 ? rng.below(m) : 0);
}

Json triple_json(const LElement& a, const LElement& b, const LElement& c) {
    return Json{{"a", to_json(a)}, {"b", to_json(b)}, {"c", to_json(c)}};
}

CriterionResult falgebra_laws(Rng& rng) {
    Tally tally;
    for (int s = 0; s < 10000; ++s) {
        const std::size_t d = 1 + rng.below(8);
        const LElement a = rng.element(d, -20, 20, 12);
        const LElement b = rng.element(d, -20, 20, 12);
        const LElement c = rng.element(d, -20, 20, 12);
        const bool ok = (a + b) + c == a + (b + c) && a + b == b + a && (a * b) * c == a * (b * c) &&
                        a * b == b * a && a * (b + c) == a * b + a * c && (a + b) * c == a * c + b * c &&
                        abs(a * b) == abs(a) * abs(b) && sup(a, b) + inf(a, b) == a + b &&
                        sup(a, b) == sup(b, a) && inf(a, inf(b, c)) == inf(inf(a, b), c) &&
                        sup(a, inf(a, b)) == a && leq(inf(a, b), sup(a, b)) &&
                        a * LElement::unit(d) == a && a + LElement::zero(d) == a;
        tally.record(ok, [&] { return triple_json(a, b, c); });
    }
    return {1, "f-algebra laws", tally.ok(), Json{{"triples", tally.to_json()}}, 0.0};
}

CriterionResult norm_axioms(Rng& rng, const ToleranceConfig& cfg) {
    Json detail = Json::object();
    bool passed = true;
    for (NormKind kind : {NormKind::Sup, NormKind::One, NormKind::Two}) {
        const ModuleSpace space{3, 3, kind};
        std::vector<NormSample> samples;
        for (int s = 0; s < 1000; ++s) {
            ModuleVector x = random_vector(rng, 3, 3);
            ModuleVector y = random_vector(rng, 3, 3);
            if (s % 100 == 0) x = ModuleVector::zero(3, 3);
            samples.push_back({rng.element(3, -5, 5, 4), std::move(x), std::move(y)});
        }
        const NormAxiomReport report = check_norm_axioms(space, samples, cfg);
        passed = passed && report.passed();
        detail[std::string(to_string(kind))] = to_json(report);
    }
    return {2, "norm axioms", passed, detail, 0.0};
}

CriterionResult holder_minkowski(Rng& rng, const ToleranceConfig& cfg) {
    struct Pair {
        LpExponent p;
        LpExponent q;
    };
    const Pair pairs[] = {{LpExponent(Rational(1)), LpExponent::infinity()},
                          {LpExponent(Rational(2)), LpExponent(Rational(2))},
                          {LpExponent(Rational(3)), LpExponent(Rational(3, 2))}};
    Json detail = Json::object();
    bool passed = true;
    for (const auto& [p, q] : pairs) {
        Tally holder, minkowski;
        std::size_t exact_cases = 0;
        for (int s = 0; s < 1000; ++s) {
            const MeasureSpace space = space_with_nulls(rng, 5);
            const ModuleSpace x = random_module(rng, random_kind(rng));
            const LFunction u = random_lfunction(rng, space, x);
            const LFunction v = random_lfunction(rng, space, x.dual());
            const LFunction w = random_lfunction(rng, space, x);
            const InequalityReport h = check_holder(u, v, p, q, cfg);
            const InequalityReport m = check_minkowski(u, w, p, cfg);
            if (h.lhs.is_exact() && h.rhs.is_exact()) ++exact_cases;
            holder.record(h.passed(), [&] { return Json{{"u", to_json(u)}, {"v", to_json(v)}, {"report", to_json(h)}}; });
            minkowski.record(m.passed(),
                             [&] { return Json{{"u", to_json(u)}, {"v", to_json(w)}, {"report", to_json(m)}}; });
        }
        passed = passed && holder.ok() && minkowski.ok();
        detail["p=" + p.to_string()] = Json{{"q", q.to_string()},
                                            {"holder", holder.to_json()},
                                            {"minkowski", minkowski.to_json()},
                                            {"exact_holder_cases", exact_cases}};
    }
    return {3, "Hoelder and Minkowski", passed, detail, 0.0};
}

CriterionResult sup_representation(Rng& rng, const ToleranceConfig& cfg) {
    Tally tally;
    std::size_t subsets = 0;
    for (std::size_t m = 1; m <= 10; ++m) {
        for (int s = 0; s < 5; ++s) {
            const MeasureSpace space = random_space(rng, m, m > 1 ? rng.below(2) : 0);
            // Integer p with SUP/ONE norms, or p = 2 with TWO, keeps every integral rational.
            const bool euclid = rng.chance(1, 3);
            const ModuleSpace x = random_module(rng, euclid ? NormKind::Two : exact_kind(rng));
            const LpExponent p(euclid ? Rational(2) : Rational(1 + static_cast<long>(rng.below(3))));
            const LFunction f = random_lfunction(rng, space, x);
            const SupRepresentationReport report = verify_sup_representation(f, p, cfg);
            subsets += report.subsets_checked;
            tally.record(report.passed() && report.full_integral.is_exact() &&
                             report.subsets_checked == (std::size_t{1} << m),
                         [&] { return Json{{"f", to_json(f)}, {"p", to_json(p)}, {"report", to_json(report)}}; });
        }
    }
    return {4, "sup representation", tally.ok(), Json{{"functions", tally.to_json()}, {"subsets", subsets}}, 0.0};
}

CriterionResult chebyshev(Rng& rng, const ToleranceConfig& cfg) {
    Tally random_cases, tight_cases;
    for (int s = 0; s < 1000; ++s) {
        const MeasureSpace space = space_with_nulls(rng, 5);
        const ModuleSpace x = random_module(rng, exact_kind(rng));
        const LFunction h = random_lfunction(rng, space, x);
        const LFunction hn = h + Rational(1, 1 + static_cast<long>(rng.below(4))) * random_lfunction(rng, space, x);
        const Rational gamma = rng.rational(0, 3, 6) + Rational(1, 8);
        const ChebyshevReport report = check_chebyshev_step(std::vector<LFunction>{hn}, h, gamma, cfg);
        random_cases.record(report.passed, [&] {
            return Json{{"h", to_json(h)}, {"h_n", to_json(hn)}, {"report", to_json(report)}};
        });
    }
    for (int s = 0; s < 100; ++s) {
        // ‖h_n(t) - h(t)‖ = γ in every coordinate: A = S and γ μ(S) = ∫ exactly.
        const MeasureSpace space = space_with_nulls(rng, 5);
        const ModuleSpace x = random_module(rng, NormKind::Sup, 3, 3);
        const LFunction h = random_lfunction(rng, space, x);
        const Rational gamma = rng.rational(1, 3, 6);
        const ModuleVector bump = ModuleVector::basis(x.rank, rng.below(x.rank), LElement::constant(x.d, gamma));
        const LFunction hn = h + LFunction(space, x, std::vector<ModuleVector>(space.size(), bump));
        const ChebyshevReport report = check_chebyshev_step(std::vector<LFunction>{hn}, h, gamma, cfg);
        bool equal = report.passed;
        for (const auto& row : report.rows) {
            equal = equal && row.integral.is_exact() && gamma * row.level_mass == row.integral.value() &&
                    row.level_mass == space.total_mass();
        }
        tight_cases.record(equal, [&] { return Json{{"h", to_json(h)}, {"gamma", to_json(gamma)}}; });
    }
    const bool passed = random_cases.ok() && tight_cases.ok();
    return {5, "Chebyshev step", passed, Json{{"random", random_cases.to_json()}, {"tight", tight_cases.to_json()}}, 0.0};
}

CriterionResult dct(Rng& rng, const ToleranceConfig& cfg) {
    const TruncatedSpace space = truncated_geometric_space(20);
    const Rational phi(1);
    const Rational target = Rational(2) * phi * space.tail_mass + Rational::pow2(-10);
    Tally families;
    Json series = Json::array();
    for (int s = 0; s < 20; ++s) {
        const ModuleSpace x = random_module(rng, random_kind(rng));
        std::vector<ModuleVector> g;
        for (std::size_t t = 0; t < space.space.size(); ++t) {
            // Entries in [-1, 1] scaled so ‖g(t)‖ ≤ 1 under every norm kind.
            g.push_back(Rational(1, static_cast<long>(x.rank)) * random_vector(rng, x.rank, x.d, {-1, 1, 8}));
        }
        const TruncatedSequenceSpec spec = truncation_family(space, x, g, phi);
        const DctReport report = run_dct_experiment(spec, 20, cfg);
        const bool below = leq(report.rows.at(11).error.upper(), LElement::constant(x.d, target));
        families.record(report.passed && below, [&] { return Json{{"codomain", to_json(x)}, {"report", to_json(report)}}; });
        if (s == 0) {
            for (const auto& row : report.rows) series.push_back(Json{{"n", row.n}, {"error", to_json(row.error)}});
        }
    }
    // Negative control: shrink the dominator under one value.
    bool control = false;
    Json control_detail;
    {
        const ModuleSpace x{1, 1, NormKind::Sup};
        std::vector<ModuleVector> g(space.space.size(), ModuleVector(std::vector<LElement>{LElement{Rational(1)}}));
        TruncatedSequenceSpec spec = truncation_family(space, x, g, phi);
        spec.dominator[5] = LElement{Rational(1, 2)};
        try {
            run_dct_experiment(spec, 20, cfg);
        } catch (const DominatorViolated& e) {
            control = e.atom() == 5;
            control_detail = Json{{"n", e.n()}, {"atom", space.space.name(e.atom())}, {"message", e.what()}};
        }
    }
    return {6, "dominated convergence", families.ok() && control,
            Json{{"target", to_json(target)},
                 {"families", families.to_json()},
                 {"series", series},
                 {"negative_control", control_detail}},
            0.0};
}

CriterionResult completeness(Rng& rng, const ToleranceConfig& cfg) {
    Tally tally;
    for (int s = 0; s < 100; ++s) {
        const MeasureSpace space = space_with_nulls(rng, 5);
        const ModuleSpace x = random_module(rng, exact_kind(rng));
        const CompletenessReport report = run_completeness_harness(space, x, LpExponent(Rational(1)), rng.next(), 12, cfg);
        bool exact = report.w_norm.is_exact();
        for (const auto& row : report.rows) {
            exact = exact && row.residual.is_exact() && row.expected.is_exact() &&
                    *row.residual.exact() == Rational::pow2(-static_cast<long>(row.n)) * *report.w_norm.exact();
        }
        tally.record(exact && report.pairwise_envelope && report.pointwise_limit && report.passed(),
                     [&] { return Json{{"space", to_json(space)}, {"report", to_json(report)}}; });
    }
    return {7, "completeness harness", tally.ok(), Json{{"instances", tally.to_json()}}, 0.0};
}

CriterionResult variation_criterion(Rng& rng, const ToleranceConfig& cfg) {
    Tally tally;
    std::size_t partitions = 0;
    for (int s = 0; s < 200; ++s) {
        const std::size_t m = 1 + rng.below(5);
        const MeasureSpace space = random_space(rng, m, m > 1 ? rng.below(2) : 0);
        const ModuleSpace x = random_module(rng, exact_kind(rng));
        std::vector<ModuleVector> atoms;
        for (std::size_t t = 0; t < m; ++t) {
            atoms.push_back(space.mass(t).is_zero() ? ModuleVector::zero(x.rank, x.d) : random_vector(rng, x.rank, x.d));
        }
        const VectorMeasure g(space, x, atoms);
        const VariationResult result = variation(g, 5, cfg);
        partitions += result.partitions_checked;
        tally.record(result.dominates && result.exhaustive_checked && result.variation.is_exact() &&
                         result.partitions_checked == bell_number(m),
                     [&] { return Json{{"measure", to_json(g)}, {"result", to_json(result)}}; });
    }
    return {8, "variation", tally.ok(), Json{{"measures", tally.to_json()}, {"partitions", partitions}}, 0.0};
}

CriterionResult rn_density_criterion(Rng& rng) {
    Tally roundtrip, controls;
    for (int s = 0; s < 500; ++s) {
        const std::size_t m = 2 + rng.below(11);
        const MeasureSpace space = random_space(rng, m, 1 + rng.below(m - 1));
        const ModuleSpace x = random_module(rng, random_kind(rng));
        const LFunction g = random_lfunction(rng, space, x);
        std::vector<ModuleVector> atoms;
        for (std::size_t t = 0; t < m; ++t) atoms.push_back(integrate_over(g, MeasurableSet(space, {t})));
        const VectorMeasure measure(space, x, atoms);
        const DensityResult result = rn_density(measure, rng.next());
        bool ok = result.verified;
        for (std::size_t t = 0; t < m; ++t) {
            ok = ok && (space.mass(t).is_zero() ? result.density[t].is_zero() : result.density[t] == g[t]);
        }
        roundtrip.record(ok, [&] { return Json{{"g", to_json(g)}, {"result", to_json(result)}}; });
    }
    for (int s = 0; s < 100; ++s) {
        const std::size_t m = 2 + rng.below(9);
        const MeasureSpace space = random_space(rng, m, 1 + rng.below(m - 1));
        const ModuleSpace x = random_module(rng, random_kind(rng));
        std::vector<ModuleVector> atoms;
        std::vector<std::size_t> nulls;
        for (std::size_t t = 0; t < m; ++t) {
            if (space.mass(t).is_zero()) {
                nulls.push_back(t);
                atoms.push_back(ModuleVector::zero(x.rank, x.d));
            } else {
                atoms.push_back(random_vector(rng, x.rank, x.d));
            }
        }
        const std::size_t bad = nulls[rng.below(nulls.size())];
        atoms[bad] = ModuleVector::basis(x.rank, rng.below(x.rank), LElement::unit(x.d));
        const VectorMeasure measure(space, x, atoms);
        bool raised = false;
        try {
            rn_density(measure, 0);
        } catch (const NotAbsolutelyContinuous& e) {
            raised = space.mass(e.atom()).is_zero();
        }
        controls.record(raised, [&] { return Json{{"measure", to_json(measure)}}; });
    }
    return {9, "Radon-Nikodym density", roundtrip.ok() && controls.ok(),
            Json{{"roundtrip", roundtrip.to_json()}, {"corrupted", controls.to_json()}}, 0.0};
}

CriterionResult isometry_criterion(Rng& rng, const ToleranceConfig& cfg) {
    Json detail = Json::object();
    bool passed = true;
    for (NormKind kind : {NormKind::Sup, NormKind::One}) {
        Tally tally;
        for (int s = 0; s < 500; ++s) {
            const MeasureSpace space = space_with_nulls(rng, 4);
            const DualFunction v = random_dual_function(rng, space, random_module(rng, kind));
            const IsometryReport report = isometry_check(v, LpExponent(Rational(1)), cfg, 5, rng.next(), 0);
            const bool exact = report.gap.is_exact() && report.gap.exact()->is_zero();
            tally.record(report.verdict && exact, [&] { return Json{{"v", to_json(v)}, {"report", to_json(report)}}; });
        }
        passed = passed && tally.ok();
        detail["p=1," + std::string(to_string(kind))] = tally.to_json();
    }
    {
        Tally tally;
        for (int s = 0; s < 500; ++s) {
            const MeasureSpace space = space_with_nulls(rng, 4);
            const ModuleSpace x = random_module(rng, random_kind(rng), 2, 2);
            const DualFunction v = random_dual_function(rng, space, x);
            const IsometryReport report = isometry_check(v, LpExponent(Rational(2)), cfg, 5, rng.next(), 0);
            const bool within = leq(report.gap.upper(), LElement::constant(x.d, cfg.compare_tol));
            tally.record(report.verdict && within, [&] { return Json{{"v", to_json(v)}, {"report", to_json(report)}}; });
        }
        passed = passed && tally.ok();
        detail["p=2"] = tally.to_json();
    }
    {
        // Bootstrap family: k = 1, |v(t)| ∈ [1, 2], μ(S) = 1.
        Tally tally;
        const Rational limit_tol = Rational::pow2(-20);
        for (int s = 0; s < 50; ++s) {
            const std::size_t m = 1 + rng.below(4);
            const MeasureSpace raw = random_space(rng, m);
            std::vector<Rational> masses;
            for (std::size_t t = 0; t < m; ++t) masses.push_back(raw.mass(t) / raw.total_mass());
            const MeasureSpace space(std::vector<std::string>(raw.names().begin(), raw.names().end()), masses);
            const ModuleSpace x{1, 1 + rng.below(2), random_kind(rng)};
            std::vector<Functional> values;
            for (std::size_t t = 0; t < m; ++t) {
                LElement c = rng.element(x.d, 1, 2, 8);
                if (rng.chance(1, 2)) c = -c;
                values.emplace_back(std::vector<LElement>{c});
            }
            const DualFunction v(space, x, values);
            const LpExponent p(Rational(2));
            const IsometryReport iso = isometry_check(v, p, cfg, 5, rng.next(), 0);
            const BootstrapTrace trace = bootstrap_lower_bound(v, p, 20, iso.fv_norm.closed_form, cfg, limit_tol);
            tally.record(iso.verdict && trace.passed() && trace.rows.size() == 21,
                         [&] { return Json{{"v", to_json(v)}, {"trace", to_json(trace)}}; });
        }
        passed = passed && tally.ok();
        detail["bootstrap"] = tally.to_json();
    }
    return {10, "duality isometry", passed, detail, 0.0};
}

CriterionResult surjectivity(std::uint64_t seed, const ToleranceConfig& cfg) {
    Json detail = Json::object();
    bool passed = true;
    const std::pair<LpExponent, NormKind> runs[] = {{LpExponent(Rational(1)), NormKind::Sup},
                                                    {LpExponent(Rational(2)), NormKind::Two}};
    std::uint64_t sub = 0;
    for (const auto& [p, kind] : runs) {
        RoundtripOptions options;
        options.primal = {2, 2, kind};
        options.atoms = 4;
        options.null_atoms = 1;
        options.operator_trials = 5;
        options.bootstrap_n = 0;
        const RoundtripReport report = roundtrip_check(p, 250, seed + sub++, options, cfg);
        std::size_t represent_ok = 0, operator_ok = 0;
        for (const auto& row : report.rows) {
            represent_ok += row.represent_ok;
            operator_ok += row.operator_ok;
        }
        const bool ok = represent_ok == report.rows.size() && operator_ok == report.rows.size();
        passed = passed && ok;
        detail["p=" + p.to_string()] = Json{{"trials", report.rows.size()},
                                            {"represent_ok", represent_ok},
                                            {"operator_ok", operator_ok},
                                            {"isometry_all", report.passed}};
    }
    return {11, "surjectivity round trip", passed, detail, 0.0};
}

CriterionResult rnp() {
    Json detail = Json::array();
    bool passed = true;
    for (int levels = 1; levels <= 6; ++levels) {
        const RnpProbeReport report = rnp_probe(levels, static_cast<std::size_t>(levels));
        bool exact = report.fixed_point;
        for (const auto& b : report.blocks) exact = exact && b.value == LElement{b.mass};
        bool pairs = report.distance_bound;
        for (const auto& pair : report.pairs) pairs = pairs && pair.holds;
        const bool ok = exact && pairs && report.passed() &&
                        report.distance_matrix.size() == static_cast<std::size_t>(levels);
        passed = passed && ok;
        Json row{{"levels", levels}, {"passed", ok}, {"fixed_point", exact}, {"pairs", report.pairs.size()}};
        if (levels == 6) row["report"] = to_json(report);
        detail.push_back(std::move(row));
    }
    return {12, "RNP probe", passed, detail, 0.0};
}

}  // namespace

CriterionResult run_criterion(int id, const SuiteOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    Rng rng = Rng::stream(options.seed, static_cast<std::uint64_t>(id));
    const ToleranceConfig& cfg = options.cfg;
    CriterionResult result;
    switch (id) {
        case 1: result = falgebra_laws(rng); break;
        case 2: result = norm_axioms(rng, cfg); break;
        case 3: result = holder_minkowski(rng, cfg); break;
        case 4: result = sup_representation(rng, cfg); break;
        case 5: result = chebyshev(rng, cfg); break;
        case 6: result = dct(rng, cfg); break;
        case 7: result = completeness(rng, cfg); break;
        case 8: result = variation_criterion(rng, cfg); break;
        case 9: result = rn_density_criterion(rng); break;
        case 10: result = isometry_criterion(rng, cfg); break;
        case 11: result = surjectivity(rng.next(), cfg); break;
        case 12: result = rnp(); break;
        default: throw InvalidArgument("criterion id must be in [1, 12]");
    }
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

std::vector<CriterionResult> run_suite(const SuiteOptions& options,
                                       const std::function<void(const CriterionResult&)>& on_done) {
    std::vector<CriterionResult> results;
    for (int id = 1; id <= 12; ++id) {
        results.push_back(run_criterion(id, options));
        if (on_done) on_done(results.back());
    }
    return results;
}

Json suite_report(const SuiteOptions& options, const std::vector<CriterionResult>& results) {
    Json out = Json::object();
    out["tool"] = "lbochner";
    out["command"] = "suite all";
    out["config"] = Json{{"seed", options.seed},
                         {"root_tol", to_json(options.cfg.root_tol)},
                         {"compare_tol", to_json(options.cfg.compare_tol)}};
    bool passed = true;
    Json criteria = Json::array();
    for (const auto& r : results) {
        passed = passed && r.passed;
        criteria.push_back(Json{{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    }
    out["passed"] = passed;
    out["criteria"] = std::move(criteria);
    return out;
}

}  // namespace lbochner
