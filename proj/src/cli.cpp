// Copyright The lbochner Authors
// SPDX-License-Identifier: Apache-2.0

#include "lbochner/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "lbochner/errors.hpp"
#include "lbochner/generators.hpp"
#include "lbochner/serialize.hpp"
#include "lbochner/suite.hpp"

namespace lbochner {

namespace {

namespace fs = std::filesystem;

using Table = std::vector<std::vector<std::string>>;

struct Common {
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    std::string tol;
    std::string out;
    std::string format = "json";
};

/// Random-instance shape used when no input documents are given.
struct Shape {
    std::size_t atoms = 4;
    std::size_t nulls = 0;
    std::size_t rank = 1;
    std::size_t d = 2;
    std::string norm = "sup";

    ModuleSpace module() const { return {rank, d, parse_norm_kind(norm)}; }
};

struct Outcome {
    bool passed = true;
    Json inputs = Json::object();
    Json result;
    Table csv;
};

struct Context {
    Common common;
    ToleranceConfig cfg;
    std::size_t trials(std::size_t fallback) const { return common.trials == 0 ? fallback : common.trials; }
};

using Runner = std::function<Outcome(const Context&)>;

struct Leaf {
    CLI::App* app = nullptr;
    std::string name;
    Runner run;
};

std::string cell(const ApproxReal& a) { return a.to_string(); }
std::string cell(const Rational& r) { return r.to_string(); }
std::string cell(const LElement& x) {
    std::string s;
    for (std::size_t i = 0; i < x.dim(); ++i) s += (i ? ";" : "") + x[i].to_string();
    return s;
}

void append_coords(std::vector<std::string>& row, const ApproxElement& x) {
    for (const auto& c : x.coords()) row.push_back(cell(c));
}

std::vector<std::string> coord_header(const std::string& name, std::size_t d) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < d; ++i) out.push_back(name + "_" + std::to_string(i));
    return out;
}

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

void add_common(CLI::App* app, Common& c) {
    app->add_option("--seed", c.seed, "Seed for every random choice");
    app->add_option("--trials", c.trials, "Number of trials (command default when omitted)");
    app->add_option("--tol", c.tol, "Comparison tolerance as a rational, e.g. 2^-30 or 1/1000000");
    app->add_option("--out", c.out, "Write the report here instead of stdout");
    app->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
}

void add_shape(CLI::App* app, Shape& s) {
    app->add_option("--atoms", s.atoms, "Atoms of random spaces")->check(CLI::Range(1, 64));
    app->add_option("--nulls", s.nulls, "Null atoms of random spaces");
    app->add_option("--rank", s.rank, "Module rank k")->check(CLI::Range(1, 16));
    app->add_option("--d", s.d, "Coordinates of L")->check(CLI::Range(1, 16));
    app->add_option("--norm", s.norm, "Module norm")->check(CLI::IsMember({"sup", "one", "two"}));
}

Json shape_json(const Shape& s) {
    return Json{{"atoms", s.atoms}, {"nulls", s.nulls}, {"rank", s.rank}, {"d", s.d}, {"norm", s.norm}};
}

ToleranceConfig tolerance_from(const std::string& tol) {
    ToleranceConfig cfg;
    if (tol.empty()) return cfg;
    cfg.compare_tol = Rational::parse(tol);
    if (cfg.compare_tol.sign() <= 0) throw ParseError("--tol: must be positive");
    cfg.root_tol = min(cfg.root_tol, cfg.compare_tol * Rational::pow2(-10));
    cfg.validate();
    return cfg;
}

std::optional<MeasureSpace> load_space(const std::string& path) {
    if (path.empty()) return std::nullopt;
    const Json j = read_json_file(path);
    try {
        return measure_space_from_json(j, "");
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

SpaceSource source_for(const std::optional<MeasureSpace>& space, const std::string& path) {
    return {space, fs::path(path).parent_path()};
}

template <typename T, typename Read>
T load_doc(const std::string& path, const std::optional<MeasureSpace>& space, Read read) {
    try {
        return read(read_json_file(path), source_for(space, path));
    } catch (const ParseError& e) {
        const std::string what = e.what();
        if (what.rfind(path, 0) == 0) throw;
        throw ParseError(path + ": " + what);
    }
}

MeasureSpace random_shape_space(Rng& rng, const Shape& s) {
    if (s.nulls >= s.atoms) throw InvalidArgument("--nulls must be below --atoms");
    return random_space(rng, s.atoms, s.nulls);
}

/// Seeded sweep over `trials` random instances; keeps the first failing witness.
struct Sweep {
    std::size_t checked = 0;
    std::size_t failed = 0;
    Json witness;
    void record(bool ok, std::size_t trial, const std::function<Json()>& describe) {
        ++checked;
        if (ok || failed++ > 0) return;
        witness = describe();
        witness["trial"] = trial;
    }
    Json to_json() const {
        Json out = Json::object();
        out["checked"] = checked;
        out["failed"] = failed;
        out["witness"] = witness;
        return out;
    }
};

Json error_witness(const Error& e) {
    Json out = Json::object();
    out["error"] = e.what();
    if (auto* n = dynamic_cast<const NotAbsolutelyContinuous*>(&e)) {
        out["atom"] = n->atom_name();
    } else if (auto* dv = dynamic_cast<const DominatorViolated*>(&e)) {
        out["n"] = dv->n();
        out["atom_index"] = dv->atom();
    } else if (auto* z = dynamic_cast<const ZeroNorm*>(&e)) {
        out["atom_index"] = z->atom();
        out["coordinate"] = z->coordinate();
    } else if (auto* zd = dynamic_cast<const ZeroDivisor*>(&e)) {
        out["coordinate"] = zd->coordinate();
    }
    return out;
}

// ---- check ----

Runner norm_axioms_cmd(CLI::App* app, Shape& shape) {
    shape.rank = 2;
    add_shape(app, shape);
    return [&shape](const Context& ctx) {
        const ModuleSpace x = shape.module();
        Rng rng(ctx.common.seed);
        std::vector<NormSample> samples;
        const std::size_t n = ctx.trials(1000);
        for (std::size_t s = 0; s < n; ++s) {
            samples.push_back({rng.element(x.d, -5, 5, 4), random_vector(rng, x.rank, x.d), random_vector(rng, x.rank, x.d)});
        }
        samples.push_back({LElement::unit(x.d), ModuleVector::zero(x.rank, x.d), ModuleVector::zero(x.rank, x.d)});
        const NormAxiomReport report = check_norm_axioms(x, samples, ctx.cfg);
        Outcome o;
        o.passed = report.passed();
        o.inputs = Json{{"space", to_json(x)}, {"samples", samples.size()}};
        o.result = to_json(report);
        o.csv = {{"axiom", "passed", "checked"},
                 {"definiteness", report.definiteness.passed ? "1" : "0", std::to_string(report.definiteness.checked)},
                 {"homogeneity", report.homogeneity.passed ? "1" : "0", std::to_string(report.homogeneity.checked)},
                 {"triangle", report.triangle.passed ? "1" : "0", std::to_string(report.triangle.checked)}};
        return o;
    };
}

struct PairFiles {
    std::string space, u, v, p = "2", q;
};

Runner inequality_cmd(CLI::App* app, Shape& shape, PairFiles& files, bool holder) {
    add_shape(app, shape);
    app->add_option("--space", files.space, "Measure-space document");
    app->add_option("--u", files.u, "Function document u");
    app->add_option("--v", files.v, "Function document v");
    app->add_option("--p", files.p, "Exponent p (rational or inf)");
    if (holder) app->add_option("--q", files.q, "Conjugate exponent (default: from p)");
    return [&shape, &files, holder](const Context& ctx) {
        const LpExponent p = LpExponent::parse(files.p);
        const LpExponent q = files.q.empty() ? p.conjugate() : LpExponent::parse(files.q);
        auto check = [&](const LFunction& u, const LFunction& v) {
            return holder ? check_holder(u, v, p, q, ctx.cfg) : check_minkowski(u, v, p, ctx.cfg);
        };
        Outcome o;
        o.inputs = Json{{"p", p.to_string()}};
        if (holder) o.inputs["q"] = q.to_string();
        const std::size_t d = shape.d;
        if (!files.u.empty() || !files.v.empty()) {
            if (files.u.empty() || files.v.empty()) throw ParseError("--u and --v must be given together");
            const auto space = load_space(files.space);
            const LFunction u = load_doc<LFunction>(files.u, space, lfunction_from_json);
            const LFunction v = load_doc<LFunction>(files.v, space, lfunction_from_json);
            const InequalityReport report = check(u, v);
            o.passed = report.passed();
            o.inputs["u"] = files.u;
            o.inputs["v"] = files.v;
            o.result = to_json(report);
            o.csv.push_back(concat(concat({"trial", "passed"}, coord_header("lhs", report.lhs.dim())),
                                   coord_header("rhs", report.rhs.dim())));
            std::vector<std::string> row{"0", report.passed() ? "1" : "0"};
            append_coords(row, report.lhs);
            append_coords(row, report.rhs);
            o.csv.push_back(row);
            return o;
        }
        const ModuleSpace x = shape.module();
        Sweep sweep;
        o.inputs["random"] = shape_json(shape);
        o.csv.push_back(concat(concat({"trial", "passed"}, coord_header("lhs", d)), coord_header("rhs", d)));
        for (std::size_t t = 0; t < ctx.trials(100); ++t) {
            Rng rng = Rng::stream(ctx.common.seed, t);
            const MeasureSpace space = random_shape_space(rng, shape);
            const LFunction u = random_lfunction(rng, space, x);
            const LFunction v = random_lfunction(rng, space, holder ? x.dual() : x);
            const InequalityReport report = check(u, v);
            sweep.record(report.passed(), t, [&] {
                return Json{{"u", to_json(u)}, {"v", to_json(v)}, {"report", to_json(report)}};
            });
            std::vector<std::string> row{std::to_string(t), report.passed() ? "1" : "0"};
            append_coords(row, report.lhs);
            append_coords(row, report.rhs);
            o.csv.push_back(row);
        }
        o.passed = sweep.failed == 0;
        o.result = sweep.to_json();
        return o;
    };
}

struct FunctionFiles {
    std::string space, f, p = "2";
};

Runner sup_rep_cmd(CLI::App* app, Shape& shape, FunctionFiles& files) {
    shape.atoms = 10;
    add_shape(app, shape);
    app->add_option("--space", files.space, "Measure-space document");
    app->add_option("--f", files.f, "Function document");
    app->add_option("--p", files.p, "Finite exponent p");
    return [&shape, &files](const Context& ctx) {
        const LpExponent p = LpExponent::parse(files.p);
        Outcome o;
        o.inputs = Json{{"p", p.to_string()}};
        o.csv.push_back({"trial", "subsets", "attaining", "monotone", "max_at_full"});
        auto add_row = [&](std::size_t t, const SupRepresentationReport& r) {
            o.csv.push_back({std::to_string(t), std::to_string(r.subsets_checked), std::to_string(r.attaining_subsets),
                             r.monotone ? "1" : "0", r.max_at_full ? "1" : "0"});
        };
        if (!files.f.empty()) {
            const LFunction f = load_doc<LFunction>(files.f, load_space(files.space), lfunction_from_json);
            const auto report = verify_sup_representation(f, p, ctx.cfg);
            o.passed = report.passed();
            o.inputs["f"] = files.f;
            o.result = to_json(report);
            add_row(0, report);
            return o;
        }
        Sweep sweep;
        o.inputs["random"] = shape_json(shape);
        for (std::size_t t = 0; t < ctx.trials(10); ++t) {
            Rng rng = Rng::stream(ctx.common.seed, t);
            const LFunction f = random_lfunction(rng, random_shape_space(rng, shape), shape.module());
            const auto report = verify_sup_representation(f, p, ctx.cfg);
            sweep.record(report.passed(), t, [&] { return Json{{"f", to_json(f)}, {"report", to_json(report)}}; });
            add_row(t, report);
        }
        o.passed = sweep.failed == 0;
        o.result = sweep.to_json();
        return o;
    };
}

struct ChebyshevFiles {
    std::string space, h, gamma = "1/10";
    std::vector<std::string> hs;
};

Runner chebyshev_cmd(CLI::App* app, Shape& shape, ChebyshevFiles& files) {
    add_shape(app, shape);
    app->add_option("--space", files.space, "Measure-space document");
    app->add_option("--limit", files.h, "Limit function document");
    app->add_option("--hs", files.hs, "Sequence documents h_1 h_2 ...");
    app->add_option("--gamma", files.gamma, "Level gamma > 0");
    return [&shape, &files](const Context& ctx) {
        const Rational gamma = Rational::parse(files.gamma);
        std::vector<LFunction> hs;
        std::optional<LFunction> h;
        Outcome o;
        o.inputs = Json{{"gamma", gamma.to_string()}};
        if (!files.h.empty()) {
            const auto space = load_space(files.space);
            h = load_doc<LFunction>(files.h, space, lfunction_from_json);
            for (const auto& path : files.hs) hs.push_back(load_doc<LFunction>(path, space, lfunction_from_json));
            o.inputs["h"] = files.h;
            o.inputs["hs"] = files.hs;
        } else {
            // h_n = h + 2^-n w, so ∫‖h_n - h‖ → 0 and the level sets empty out.
            Rng rng(ctx.common.seed);
            const MeasureSpace space = random_shape_space(rng, shape);
            h = random_lfunction(rng, space, shape.module());
            const LFunction w = random_lfunction(rng, space, shape.module());
            for (std::size_t n = 1; n <= ctx.trials(12); ++n) hs.push_back(*h + Rational::pow2(-static_cast<long>(n)) * w);
            o.inputs["random"] = shape_json(shape);
            o.inputs["h"] = to_json(*h);
            o.inputs["w"] = to_json(w);
        }
        if (hs.empty()) throw ParseError("--hs: at least one sequence document is required");
        const ChebyshevReport report = check_chebyshev_step(hs, *h, gamma, ctx.cfg);
        o.passed = report.passed;
        o.result = to_json(report);
        o.csv.push_back({"n", "coordinate", "level_mass", "integral", "holds"});
        for (const auto& row : report.rows) {
            o.csv.push_back({std::to_string(row.n), std::to_string(row.coordinate), cell(row.level_mass),
                             cell(row.integral), row.holds ? "1" : "0"});
        }
        return o;
    };
}

// ---- run ----

struct DctOptions {
    std::size_t n_max = 20;
    std::string phi = "1";
    std::optional<std::size_t> shrink;
};

Runner dct_cmd(CLI::App* app, Shape& shape, DctOptions& opt) {
    shape.atoms = 20;
    shape.d = 1;
    add_shape(app, shape);
    app->add_option("--n-max", opt.n_max, "Last n of the sequence");
    app->add_option("--phi", opt.phi, "Constant bound phi on the dominator");
    app->add_option("--shrink-dominator", opt.shrink, "Negative control: halve the dominator at this atom index");
    return [&shape, &opt](const Context& ctx) {
        const TruncatedSpace space = truncated_geometric_space(static_cast<int>(shape.atoms));
        const ModuleSpace x = shape.module();
        const Rational phi = Rational::parse(opt.phi);
        Rng rng(ctx.common.seed);
        std::vector<ModuleVector> g;
        for (std::size_t t = 0; t < shape.atoms; ++t) {
            g.push_back((phi / Rational(static_cast<long>(x.rank))) * random_vector(rng, x.rank, x.d, {-1, 1, 8}));
        }
        TruncatedSequenceSpec spec = truncation_family(space, x, g, phi);
        Outcome o;
        o.inputs = Json{{"random", shape_json(shape)},
                        {"n_max", opt.n_max},
                        {"phi", phi.to_string()},
                        {"tail_mass", space.tail_mass.to_string()}};
        if (opt.shrink) {
            if (*opt.shrink >= shape.atoms) throw InvalidArgument("--shrink-dominator: atom index out of range");
            spec.dominator[*opt.shrink] = Rational(1, 2) * spec.dominator[*opt.shrink];
            o.inputs["shrink_dominator"] = *opt.shrink;
        }
        try {
            const DctReport report = run_dct_experiment(spec, opt.n_max, ctx.cfg);
            o.passed = report.passed;
            o.result = to_json(report);
            o.csv.push_back(concat(concat({"n"}, coord_header("error", x.d)), coord_header("bound", x.d)));
            for (const auto& row : report.rows) {
                std::vector<std::string> r{std::to_string(row.n)};
                append_coords(r, row.error);
                append_coords(r, row.bound);
                o.csv.push_back(r);
            }
        } catch (const DominatorViolated& e) {
            o.passed = false;
            o.result = Json{{"passed", false}, {"witness", error_witness(e)}};
            o.result["witness"]["atom"] = space.space.name(e.atom());
            o.csv = {{"n", "atom", "error"}, {std::to_string(e.n()), space.space.name(e.atom()), "dominator violated"}};
        }
        return o;
    };
}

struct CompletenessOptions {
    std::string p = "1";
    std::size_t n_terms = 12;
};

Runner completeness_cmd(CLI::App* app, Shape& shape, CompletenessOptions& opt) {
    add_shape(app, shape);
    app->add_option("--p", opt.p, "Finite exponent p");
    app->add_option("--n-terms", opt.n_terms, "Length of the sequence u_n");
    return [&shape, &opt](const Context& ctx) {
        const LpExponent p = LpExponent::parse(opt.p);
        Rng rng(ctx.common.seed);
        const MeasureSpace space = random_shape_space(rng, shape);
        const CompletenessReport report =
            run_completeness_harness(space, shape.module(), p, rng.next(), opt.n_terms, ctx.cfg);
        Outcome o;
        o.passed = report.passed();
        o.inputs = Json{{"random", shape_json(shape)}, {"p", p.to_string()}, {"n_terms", opt.n_terms}};
        o.result = to_json(report);
        o.csv.push_back(concat(concat({"n"}, coord_header("residual", shape.d)), coord_header("expected", shape.d)));
        for (const auto& row : report.rows) {
            std::vector<std::string> r{std::to_string(row.n)};
            append_coords(r, row.residual);
            append_coords(r, row.expected);
            o.csv.push_back(r);
        }
        return o;
    };
}

struct BootstrapOptions {
    std::string space, v, p = "2", limit_tol = "2^-20";
    std::size_t n_max = 20;
};

Runner bootstrap_cmd(CLI::App* app, Shape& shape, BootstrapOptions& opt) {
    shape.d = 1;
    add_shape(app, shape);
    app->add_option("--space", opt.space, "Measure-space document");
    app->add_option("--v", opt.v, "Dual function document");
    app->add_option("--p", opt.p, "Exponent 1 < p < inf");
    app->add_option("--n-max", opt.n_max, "Last bootstrap step");
    app->add_option("--limit-tol", opt.limit_tol, "Tolerance for the limit at n-max");
    return [&shape, &opt](const Context& ctx) {
        const LpExponent p = LpExponent::parse(opt.p);
        Outcome o;
        o.inputs = Json{{"p", p.to_string()}, {"n_max", opt.n_max}, {"limit_tol", opt.limit_tol}};
        std::optional<DualFunction> v;
        if (!opt.v.empty()) {
            v = load_doc<DualFunction>(opt.v, load_space(opt.space), dual_function_from_json);
            o.inputs["v"] = opt.v;
        } else {
            // k = 1, |v(t)| ∈ [1, 2] per coordinate, μ(S) = 1.
            Rng rng(ctx.common.seed);
            const MeasureSpace raw = random_shape_space(rng, shape);
            std::vector<Rational> masses;
            for (const auto& m : raw.masses()) masses.push_back(m / raw.total_mass());
            const MeasureSpace space(std::vector<std::string>(raw.names().begin(), raw.names().end()), masses);
            const ModuleSpace x{1, shape.d, parse_norm_kind(shape.norm)};
            std::vector<Functional> values;
            for (std::size_t t = 0; t < space.size(); ++t) {
                values.emplace_back(std::vector<LElement>{rng.element(x.d, 1, 2, 8)});
            }
            v = DualFunction(space, x, values);
            o.inputs["random"] = shape_json(shape);
            o.inputs["v"] = to_json(*v);
        }
        try {
            const auto fv = operator_norm(build_F(*v, p), 20, ctx.common.seed, ctx.cfg);
            const BootstrapTrace trace =
                bootstrap_lower_bound(*v, p, opt.n_max, fv.closed_form, ctx.cfg, Rational::parse(opt.limit_tol));
            o.passed = trace.passed();
            o.result = to_json(trace);
            o.result["fv_norm"] = to_json(fv);
            const std::size_t d = v->primal().d;
            o.csv.push_back(concat(concat({"n", "s"}, coord_header("lhs", d)), concat(coord_header("rhs", d), {"holds"})));
            for (const auto& row : trace.rows) {
                std::vector<std::string> r{std::to_string(row.n), cell(row.s)};
                append_coords(r, row.lhs);
                append_coords(r, row.rhs);
                r.push_back(row.holds ? "1" : "0");
                o.csv.push_back(r);
            }
        } catch (const ZeroNorm& e) {
            o.passed = false;
            o.result = Json{{"passed", false}, {"witness", error_witness(e)}};
            o.csv = {{"atom_index", "coordinate", "error"},
                     {std::to_string(e.atom()), std::to_string(e.coordinate()), "zero norm"}};
        }
        return o;
    };
}

struct RnpOptions {
    int levels = 4;
    std::size_t sets = 4;
    std::size_t d = 1;
};

Runner rnp_cmd(CLI::App* app, RnpOptions& opt) {
    app->add_option("--levels", opt.levels, "Dyadic levels")->check(CLI::Range(1, 20));
    app->add_option("--sets", opt.sets, "Rademacher sets F_1..F_n");
    app->add_option("--d", opt.d, "Coordinates of L")->check(CLI::Range(1, 16));
    return [&opt](const Context&) {
        const RnpProbeReport report = rnp_probe(opt.levels, opt.sets, opt.d);
        Outcome o;
        o.passed = report.passed();
        o.inputs = Json{{"levels", opt.levels}, {"sets", opt.sets}, {"d", opt.d}};
        o.result = to_json(report);
        std::vector<std::string> header{"n"};
        for (std::size_t m = 1; m <= report.n_sets; ++m) header.push_back("F" + std::to_string(m));
        o.csv.push_back(header);
        for (std::size_t n = 0; n < report.n_sets; ++n) {
            std::vector<std::string> row{"F" + std::to_string(n + 1)};
            for (const auto& x : report.distance_matrix[n]) row.push_back(cell(x));
            o.csv.push_back(row);
        }
        return o;
    };
}

// ---- dual ----

struct DualFiles {
    std::string space, v, h, p = "2";
    std::size_t bootstrap_n = 20;
    bool null_action = false;
};

Runner isometry_cmd(CLI::App* app, Shape& shape, DualFiles& files) {
    add_shape(app, shape);
    app->add_option("--space", files.space, "Measure-space document");
    app->add_option("--v", files.v, "Dual function document");
    app->add_option("--p", files.p, "Exponent 1 <= p < inf");
    app->add_option("--bootstrap-n", files.bootstrap_n, "Bootstrap steps (0 skips)");
    return [&shape, &files](const Context& ctx) {
        const LpExponent p = LpExponent::parse(files.p);
        Outcome o;
        o.inputs = Json{{"p", p.to_string()}, {"bootstrap_n", files.bootstrap_n}};
        auto row_of = [](std::size_t t, const IsometryReport& r) {
            std::vector<std::string> row{std::to_string(t), r.p.to_string()};
            append_coords(row, r.gap);
            row.push_back(r.verdict ? "1" : "0");
            return row;
        };
        if (!files.v.empty()) {
            const DualFunction v = load_doc<DualFunction>(files.v, load_space(files.space), dual_function_from_json);
            const auto report = isometry_check(v, p, ctx.cfg, ctx.trials(20), ctx.common.seed, files.bootstrap_n);
            o.passed = report.verdict;
            o.inputs["v"] = files.v;
            o.result = to_json(report);
            o.csv.push_back(concat(concat({"trial", "p"}, coord_header("gap", v.primal().d)), {"passed"}));
            o.csv.push_back(row_of(0, report));
            return o;
        }
        const ModuleSpace x = shape.module();
        Sweep sweep;
        o.inputs["random"] = shape_json(shape);
        o.csv.push_back(concat(concat({"trial", "p"}, coord_header("gap", x.d)), {"passed"}));
        for (std::size_t t = 0; t < ctx.trials(20); ++t) {
            Rng rng = Rng::stream(ctx.common.seed, t);
            const DualFunction v = random_dual_function(rng, random_shape_space(rng, shape), x);
            const auto report = isometry_check(v, p, ctx.cfg, 20, rng.next(), files.bootstrap_n);
            sweep.record(report.verdict, t, [&] { return Json{{"v", to_json(v)}, {"report", to_json(report)}}; });
            o.csv.push_back(row_of(t, report));
        }
        o.passed = sweep.failed == 0;
        o.result = sweep.to_json();
        return o;
    };
}

Runner represent_cmd(CLI::App* app, Shape& shape, DualFiles& files) {
    add_shape(app, shape);
    app->add_option("--space", files.space, "Measure-space document");
    app->add_option("--operator", files.h, "Operator document");
    app->add_option("--p", files.p, "Exponent of the random operator");
    app->add_flag("--null-action", files.null_action, "Negative control: let the random operator act on a null atom");
    return [&shape, &files](const Context& ctx) {
        Outcome o;
        std::optional<LpOperator> h;
        if (!files.h.empty()) {
            h = load_doc<LpOperator>(files.h, load_space(files.space), operator_from_json);
            o.inputs = Json{{"h", files.h}};
        } else {
            Rng rng(ctx.common.seed);
            const MeasureSpace space = random_shape_space(rng, shape);
            h = random_operator(rng, space, shape.module(), LpExponent::parse(files.p));
            if (files.null_action) {
                std::size_t t = 0;
                while (t < space.size() && !space.mass(t).is_zero()) ++t;
                if (t == space.size()) throw InvalidArgument("--null-action needs --nulls >= 1");
                auto action = h->basis_action();
                action[t][0] = LElement::unit(shape.d);
                h = LpOperator(space, h->primal(), h->p(), action);
            }
            o.inputs = Json{{"random", shape_json(shape)}, {"p", files.p}, {"null_action", files.null_action},
                            {"h", to_json(*h)}};
        }
        o.csv.push_back({"atom", "represented"});
        try {
            const RepresentResult result = represent(*h, ctx.trials(100), ctx.common.seed);
            o.passed = result.matches;
            o.result = to_json(result);
            for (std::size_t t = 0; t < h->space().size(); ++t) {
                o.csv.push_back({h->space().name(t), result.matches ? "1" : "0"});
            }
        } catch (const NotAbsolutelyContinuous& e) {
            o.passed = false;
            o.result = Json{{"passed", false}, {"witness", error_witness(e)}};
            o.csv.push_back({e.atom_name(), "0"});
        }
        return o;
    };
}

struct RoundtripCli {
    std::string p = "2";
    std::size_t bootstrap_n = 5;
};

Runner roundtrip_cmd(CLI::App* app, Shape& shape, RoundtripCli& opt) {
    shape.atoms = 3;
    shape.nulls = 1;
    shape.rank = 2;
    add_shape(app, shape);
    app->add_option("--p", opt.p, "Exponent 1 <= p < inf");
    app->add_option("--bootstrap-n", opt.bootstrap_n, "Bootstrap steps per trial (0 skips)");
    return [&shape, &opt](const Context& ctx) {
        const LpExponent p = LpExponent::parse(opt.p);
        RoundtripOptions options;
        options.primal = shape.module();
        options.atoms = shape.atoms;
        options.null_atoms = shape.nulls;
        options.bootstrap_n = opt.bootstrap_n;
        const RoundtripReport report = roundtrip_check(p, ctx.trials(100), ctx.common.seed, options, ctx.cfg);
        Outcome o;
        o.passed = report.passed;
        o.inputs = Json{{"random", shape_json(shape)}, {"p", p.to_string()}, {"bootstrap_n", opt.bootstrap_n}};
        o.result = to_json(report);
        o.csv.push_back(concat(concat({"trial", "p"}, coord_header("gap", shape.d)),
                               {"represent_ok", "operator_ok", "isometry_ok"}));
        for (const auto& row : report.rows) {
            std::vector<std::string> r{std::to_string(row.trial), p.to_string()};
            append_coords(r, row.gap);
            r.push_back(row.represent_ok ? "1" : "0");
            r.push_back(row.operator_ok ? "1" : "0");
            r.push_back(row.isometry_ok ? "1" : "0");
            o.csv.push_back(r);
        }
        return o;
    };
}

// ---- rn ----

struct MeasureFiles {
    std::string space, g;
    bool corrupt = false;
    std::size_t exhaustive_cap = 5;
};

VectorMeasure random_measure(const Context& ctx, const Shape& shape, bool corrupt, Outcome& o) {
    Rng rng(ctx.common.seed);
    const MeasureSpace space = random_shape_space(rng, shape);
    const ModuleSpace x = shape.module();
    const LFunction g = random_lfunction(rng, space, x);
    std::vector<ModuleVector> atoms;
    for (std::size_t t = 0; t < space.size(); ++t) atoms.push_back(integrate_over(g, MeasurableSet(space, {t})));
    if (corrupt) {
        std::size_t t = 0;
        while (t < space.size() && !space.mass(t).is_zero()) ++t;
        if (t == space.size()) throw InvalidArgument("--corrupt needs --nulls >= 1");
        atoms[t] = ModuleVector::basis(x.rank, 0, LElement::unit(x.d));
    }
    VectorMeasure measure(space, x, atoms);
    o.inputs = Json{{"random", shape_json(shape)}, {"corrupt", corrupt}, {"measure", to_json(measure)}};
    return measure;
}

Runner density_cmd(CLI::App* app, Shape& shape, MeasureFiles& files) {
    shape.nulls = 1;
    add_shape(app, shape);
    app->add_option("--space", files.space, "Measure-space document");
    app->add_option("--g", files.g, "Vector-measure document");
    app->add_flag("--corrupt", files.corrupt, "Negative control: put mass on a null atom");
    return [&shape, &files](const Context& ctx) {
        Outcome o;
        std::optional<VectorMeasure> g;
        if (!files.g.empty()) {
            g = load_doc<VectorMeasure>(files.g, load_space(files.space), vector_measure_from_json);
            o.inputs = Json{{"g", files.g}};
        } else {
            g = random_measure(ctx, shape, files.corrupt, o);
        }
        o.csv.push_back(concat({"atom"}, coord_header("density", g->codomain().rank)));
        try {
            const DensityResult result = rn_density(*g, ctx.common.seed, 10, ctx.trials(1000));
            o.passed = result.verified;
            o.result = to_json(result);
            for (std::size_t t = 0; t < g->space().size(); ++t) {
                std::vector<std::string> row{g->space().name(t)};
                for (const auto& e : result.density[t].entries()) row.push_back(cell(e));
                o.csv.push_back(row);
            }
        } catch (const NotAbsolutelyContinuous& e) {
            o.passed = false;
            o.result = Json{{"passed", false}, {"witness", error_witness(e)}};
        }
        return o;
    };
}

Runner variation_cmd(CLI::App* app, Shape& shape, MeasureFiles& files) {
    add_shape(app, shape);
    app->add_option("--space", files.space, "Measure-space document");
    app->add_option("--g", files.g, "Vector-measure document");
    app->add_option("--exhaustive-cap", files.exhaustive_cap, "Enumerate all partitions up to this many atoms")
        ->check(CLI::Range(1, 10));
    return [&shape, &files](const Context& ctx) {
        Outcome o;
        std::optional<VectorMeasure> g;
        if (!files.g.empty()) {
            g = load_doc<VectorMeasure>(files.g, load_space(files.space), vector_measure_from_json);
            o.inputs = Json{{"g", files.g}};
        } else {
            g = random_measure(ctx, shape, false, o);
        }
        const VariationResult result = variation(*g, files.exhaustive_cap, ctx.cfg);
        const MuContinuityReport mu = check_mu_continuity(*g, 10, ctx.cfg);
        o.passed = result.dominates;
        o.result = to_json(result);
        o.result["mu_continuous"] = mu.passed;
        o.csv.push_back(concat({"block"}, coord_header("norm", g->codomain().d)));
        for (const auto& block : result.attaining_partition.blocks()) {
            std::vector<std::string> row{block.names().front()};
            append_coords(row, norm(g->codomain(), evaluate(*g, block), ctx.cfg));
            o.csv.push_back(row);
        }
        return o;
    };
}

Runner suite_cmd(CLI::App*) {
    return [](const Context& ctx) {
        SuiteOptions options;
        options.seed = ctx.common.seed;
        options.cfg = ctx.cfg;
        const auto results = run_suite(options);
        Outcome o;
        const Json report = suite_report(options, results);
        o.passed = report["passed"].get<bool>();
        o.result = report["criteria"];
        o.csv.push_back({"id", "name", "passed"});
        for (const auto& r : results) o.csv.push_back({std::to_string(r.id), r.name, r.passed ? "1" : "0"});
        return o;
    };
}

std::string render_csv(const Table& table) {
    std::string s;
    for (const auto& row : table) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) s += ',';
            s += row[i];
        }
        s += '\n';
    }
    return s;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact verification kernel for L-valued Bochner spaces and their duals", "lbochner"};
    app.set_version_flag("--version", std::string("lbochner ") + kToolVersion);
    app.require_subcommand(1);

    Common common;
    std::vector<Leaf> leaves;
    // Option storage must outlive parsing; one slot per leaf keeps defaults independent.
    std::map<std::string, Shape> shapes;
    PairFiles holder_files, minkowski_files;
    FunctionFiles sup_files;
    ChebyshevFiles cheb_files;
    DctOptions dct_opt;
    CompletenessOptions comp_opt;
    BootstrapOptions boot_opt;
    RnpOptions rnp_opt;
    DualFiles iso_files, rep_files;
    RoundtripCli rt_opt;
    MeasureFiles density_files, variation_files;

    auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help) {
        CLI::App* sub = parent->add_subcommand(name, help);
        add_common(sub, common);
        return sub;
    };
    auto add = [&](CLI::App* sub, const std::string& full, Runner run) { leaves.push_back({sub, full, std::move(run)}); };

    CLI::App* check = app.add_subcommand("check", "Inequality and axiom checkers");
    check->require_subcommand(1);
    CLI::App* s = leaf(check, "norm-axioms", "L-norm axioms on seeded samples");
    add(s, "check norm-axioms", norm_axioms_cmd(s, shapes["norm-axioms"]));
    s = leaf(check, "holder", "Hoelder inequality");
    add(s, "check holder", inequality_cmd(s, shapes["holder"], holder_files, true));
    s = leaf(check, "minkowski", "Minkowski inequality");
    add(s, "check minkowski", inequality_cmd(s, shapes["minkowski"], minkowski_files, false));
    s = leaf(check, "sup-rep", "Subset representation of the p-norm integral");
    add(s, "check sup-rep", sup_rep_cmd(s, shapes["sup-rep"], sup_files));
    s = leaf(check, "chebyshev", "Chebyshev step per coordinate");
    add(s, "check chebyshev", chebyshev_cmd(s, shapes["chebyshev"], cheb_files));

    CLI::App* run = app.add_subcommand("run", "Experiments and harnesses");
    run->require_subcommand(1);
    s = leaf(run, "dct", "Dominated convergence on a truncated geometric space");
    add(s, "run dct", dct_cmd(s, shapes["dct"], dct_opt));
    s = leaf(run, "completeness", "Completeness harness for u_n = u* + 2^-n w");
    add(s, "run completeness", completeness_cmd(s, shapes["completeness"], comp_opt));
    s = leaf(run, "bootstrap", "Exponent bootstrap chain");
    add(s, "run bootstrap", bootstrap_cmd(s, shapes["bootstrap"], boot_opt));
    s = leaf(run, "rnp-probe", "Dyadic probe with Rademacher sets");
    add(s, "run rnp-probe", rnp_cmd(s, rnp_opt));

    CLI::App* dual = app.add_subcommand("dual", "Dual representation");
    dual->require_subcommand(1);
    s = leaf(dual, "isometry", "Compare the operator norm of F_v with the q-norm of v");
    add(s, "dual isometry", isometry_cmd(s, shapes["isometry"], iso_files));
    s = leaf(dual, "represent", "Recover the density of an operator");
    add(s, "dual represent", represent_cmd(s, shapes["represent"], rep_files));
    s = leaf(dual, "roundtrip", "Seeded round trips v -> F_v -> v and H -> v -> F_v");
    add(s, "dual roundtrip", roundtrip_cmd(s, shapes["roundtrip"], rt_opt));

    CLI::App* rn = app.add_subcommand("rn", "Vector measures");
    rn->require_subcommand(1);
    s = leaf(rn, "density", "Radon-Nikodym density of a vector measure");
    add(s, "rn density", density_cmd(s, shapes["density"], density_files));
    s = leaf(rn, "variation", "Variation over partitions");
    add(s, "rn variation", variation_cmd(s, shapes["variation"], variation_files));

    CLI::App* suite = app.add_subcommand("suite", "Acceptance suite");
    suite->require_subcommand(1);
    s = leaf(suite, "all", "Criteria 1-12");
    add(s, "suite all", suite_cmd(s));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    const auto chosen = std::find_if(leaves.begin(), leaves.end(), [](const Leaf& l) { return l.app->parsed(); });
    if (chosen == leaves.end()) {
        err << "error: no command selected\n";
        return 2;
    }

    Outcome outcome;
    Context ctx;
    ctx.common = common;
    try {
        ctx.cfg = tolerance_from(common.tol);
        outcome = chosen->run(ctx);
    } catch (const Error& e) {
        err << "error: " << chosen->name << ": " << e.what() << '\n';
        return 2;
    } catch (const CLI::Error& e) {
        err << "error: " << chosen->name << ": " << e.what() << '\n';
        return 2;
    }

    std::string text;
    if (common.format == "csv") {
        text = render_csv(outcome.csv);
    } else {
        Json report = Json::object();
        report["tool"] = "lbochner";
        report["version"] = kToolVersion;
        report["command"] = chosen->name;
        Json config = Json::object();
        config["seed"] = common.seed;
        config["trials"] = common.trials;
        config["root_tol"] = to_json(ctx.cfg.root_tol);
        config["compare_tol"] = to_json(ctx.cfg.compare_tol);
        config["inputs"] = outcome.inputs;
        report["config"] = std::move(config);
        report["passed"] = outcome.passed;
        report["result"] = std::move(outcome.result);
        text = report.dump(2) + "\n";
    }

    if (common.out.empty()) {
        out << text;
    } else {
        std::ofstream file(common.out, std::ios::binary);
        if (!file) {
            err << "error: cannot write " << common.out << '\n';
            return 2;
        }
        file << text;
        out << chosen->name << ": " << (outcome.passed ? "PASS" : "FAIL") << " -> " << common.out << '\n';
    }
    return outcome.passed ? 0 : 1;
}

}  // namespace lbochner
