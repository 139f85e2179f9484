// Copyright The lbochner Authors
// SPDX-License-Identifier: Apache-2.0

#include "lbochner/serialize.hpp"

#include <fstream>
#include <sstream>

#include "lbochner/errors.hpp"

namespace lbochner {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ParseError((where.empty() ? std::string("/") : where) + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object()) fail(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(where, std::string("missing field \"") + key + "\"");
    return *it;
}

std::size_t size_from_json(const Json& j, const std::string& where) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
        fail(where, "expected a nonnegative integer");
    }
    return j.get<std::size_t>();
}

template <typename T>
Json array_of(std::span<const T> xs) {
    Json out = Json::array();
    for (const auto& x : xs) out.push_back(to_json(x));
    return out;
}

Json slack_json(const std::vector<ApproxReal>& slack) {
    Json out = Json::array();
    for (const auto& s : slack) out.push_back(to_json(s));
    return out;
}

Json optional_index(const std::optional<std::size_t>& i) { return i ? Json(*i) : Json(nullptr); }

MeasureSpace resolve_space(const Json& j, const SpaceSource& source) {
    auto it = j.find("space");
    if (it == j.end()) {
        if (!source.fallback) fail("", "missing field \"space\" and no space supplied");
        return *source.fallback;
    }
    if (it->is_string()) {
        const std::filesystem::path path = source.base_dir / it->get<std::string>();
        return measure_space_from_json(read_json_file(path), path.string());
    }
    MeasureSpace space = measure_space_from_json(*it, "/space");
    if (source.fallback && !(space == *source.fallback)) fail("/space", "differs from the supplied space");
    return space;
}

/// Reads {atom name: value} covering every atom exactly once.
template <typename T, typename Read>
std::vector<T> per_atom(const Json& j, const MeasureSpace& space, const std::string& where, Read read) {
    if (!j.is_object()) fail(where, "expected an object keyed by atom name");
    std::vector<std::optional<T>> slots(space.size());
    for (auto it = j.begin(); it != j.end(); ++it) {
        const auto atom = space.index_of(it.key());
        const std::string here = where + "/" + it.key();
        if (!atom) fail(here, "unknown atom");
        slots[*atom] = read(it.value(), here);
    }
    std::vector<T> out;
    for (std::size_t t = 0; t < space.size(); ++t) {
        if (!slots[t]) fail(where, "no value for atom \"" + space.name(t) + "\"");
        out.push_back(std::move(*slots[t]));
    }
    return out;
}

template <typename T>
Json keyed_by_atom(const MeasureSpace& space, std::span<const T> values) {
    Json out = Json::object();
    for (std::size_t t = 0; t < space.size(); ++t) out[space.name(t)] = to_json(values[t]);
    return out;
}

}  // namespace

Json to_json(const Rational& r) { return r.to_string(); }

Json to_json(const ApproxReal& a) {
    if (a.is_exact()) return a.value().to_string();
    Json out = Json::object();
    out["value"] = a.value().to_string();
    out["error"] = a.error().to_string();
    return out;
}

Json to_json(const LElement& x) { return array_of(x.coords()); }
Json to_json(const ApproxElement& x) { return array_of(x.coords()); }
Json to_json(const ModuleVector& x) { return array_of(x.entries()); }
Json to_json(const Functional& phi) { return array_of(phi.coeffs()); }

Json to_json(const ModuleSpace& space) {
    Json out = Json::object();
    out["rank"] = space.rank;
    out["d"] = space.d;
    out["norm_kind"] = std::string(to_string(space.kind));
    return out;
}

Json to_json(const MeasureSpace& space) {
    Json out = Json::object();
    out["atoms"] = Json(std::vector<std::string>(space.names().begin(), space.names().end()));
    out["masses"] = array_of(space.masses());
    return out;
}

Json to_json(const MeasurableSet& set) { return Json(set.names()); }

Json to_json(const Partition& partition) { return array_of(partition.blocks()); }

Json to_json(const LpExponent& p) { return p.is_infinite() ? Json("inf") : to_json(p.value()); }

Json to_json(const LFunction& f) {
    Json out = Json::object();
    out["space"] = to_json(f.space());
    out["codomain"] = to_json(f.codomain());
    out["values"] = keyed_by_atom(f.space(), f.values());
    return out;
}

Json to_json(const DualFunction& v) {
    Json out = Json::object();
    out["space"] = to_json(v.space());
    out["codomain"] = to_json(v.primal());
    out["values"] = keyed_by_atom(v.space(), v.values());
    return out;
}

Json to_json(const VectorMeasure& g) {
    Json out = Json::object();
    out["space"] = to_json(g.space());
    out["codomain"] = to_json(g.codomain());
    out["atom_values"] = keyed_by_atom(g.space(), g.atom_values());
    return out;
}

Json to_json(const LpOperator& h) {
    Json out = Json::object();
    out["space"] = to_json(h.space());
    out["codomain"] = to_json(h.primal());
    out["p"] = to_json(h.p());
    Json action = Json::object();
    for (std::size_t t = 0; t < h.space().size(); ++t) {
        action[h.space().name(t)] = array_of(std::span<const LElement>(h.basis_action()[t]));
    }
    out["basis_action"] = std::move(action);
    return out;
}

Json to_json(const OrderComparison& c) {
    Json out = Json::object();
    out["holds"] = c.holds;
    out["slack"] = slack_json(c.slack);
    out["first_violation"] = optional_index(c.first_violation);
    return out;
}

Json to_json(const ConvergenceCertificate& cert) {
    Json out = Json::object();
    out["verdict"] = cert.passed ? "pass" : "fail";
    Json env = Json::array();
    for (const auto& e : cert.envelope) env.push_back({{"epsilon", to_json(e.epsilon)}, {"index", e.index_threshold}});
    out["envelope"] = std::move(env);
    if (cert.resolution.dim() > 0) out["resolution"] = to_json(cert.resolution);
    if (cert.first_violation) {
        const auto& v = *cert.first_violation;
        out["first_violation"] = {{"index", v.index}, {"other_index", v.other_index},
                                  {"coordinate", v.coordinate}, {"envelope_entry", v.envelope_entry}};
    } else {
        out["first_violation"] = nullptr;
    }
    return out;
}

namespace {

Json axiom_json(const AxiomOutcome& a) {
    Json out = Json::object();
    out["passed"] = a.passed;
    out["checked"] = a.checked;
    if (a.witness) {
        out["witness"] = {{"sample", a.witness->sample},
                          {"coordinate", optional_index(a.witness->coordinate)},
                          {"detail", a.witness->detail}};
    }
    return out;
}

}  // namespace

Json to_json(const NormAxiomReport& r) {
    Json out = Json::object();
    out["passed"] = r.passed();
    out["definiteness"] = axiom_json(r.definiteness);
    out["homogeneity"] = axiom_json(r.homogeneity);
    out["triangle"] = axiom_json(r.triangle);
    return out;
}

Json to_json(const InequalityReport& r) {
    Json out = Json::object();
    out["passed"] = r.passed();
    out["lhs"] = to_json(r.lhs);
    out["rhs"] = to_json(r.rhs);
    out["slack"] = slack_json(r.comparison.slack);
    out["first_violation"] = optional_index(r.comparison.first_violation);
    return out;
}

Json to_json(const SupRepresentationReport& r) {
    Json out = Json::object();
    out["passed"] = r.passed();
    out["subsets_checked"] = r.subsets_checked;
    out["monotone"] = r.monotone;
    out["max_at_full"] = r.max_at_full;
    out["attaining_subsets"] = r.attaining_subsets;
    out["full_integral"] = to_json(r.full_integral);
    if (r.witness) out["witness_masks"] = {r.witness->first, r.witness->second};
    return out;
}

Json to_json(const ChebyshevReport& r) {
    Json out = Json::object();
    out["passed"] = r.passed;
    out["gamma"] = to_json(r.gamma);
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        Json j = Json::object();
        j["n"] = row.n;
        j["coordinate"] = row.coordinate;
        j["level_set"] = to_json(row.level_set);
        j["level_mass"] = to_json(row.level_mass);
        j["integral"] = to_json(row.integral);
        j["holds"] = row.holds;
        rows.push_back(std::move(j));
    }
    out["rows"] = std::move(rows);
    out["integral_vanishes"] = Json(std::vector<bool>(r.integral_vanishes.begin(), r.integral_vanishes.end()));
    out["measure_vanishes"] = Json(std::vector<bool>(r.measure_vanishes.begin(), r.measure_vanishes.end()));
    return out;
}

Json to_json(const DctReport& r) {
    Json out = Json::object();
    out["passed"] = r.passed;
    out["tail_term"] = to_json(r.tail_term);
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        rows.push_back({{"n", row.n},
                        {"error", to_json(row.error)},
                        {"bound", to_json(row.bound)},
                        {"within_bound", row.within_bound},
                        {"bound_nonincreasing", row.bound_nonincreasing}});
    }
    out["rows"] = std::move(rows);
    return out;
}

Json to_json(const CompletenessReport& r) {
    Json out = Json::object();
    out["passed"] = r.passed();
    out["p"] = to_json(r.p);
    out["w_norm"] = to_json(r.w_norm);
    out["pairwise_envelope"] = r.pairwise_envelope;
    out["pointwise_limit"] = r.pointwise_limit;
    out["pointwise_estimate"] = r.pointwise_estimate;
    out["literal_pointwise_estimate"] = r.literal_pointwise_estimate;
    out["scaled_bound_everywhere"] = r.scaled_bound_everywhere;
    if (r.envelope_violation) out["envelope_violation"] = {r.envelope_violation->first, r.envelope_violation->second};
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        rows.push_back({{"n", row.n},
                        {"residual", to_json(row.residual)},
                        {"expected", to_json(row.expected)},
                        {"residual_matches", row.residual_matches},
                        {"sharp_bound", row.sharp_bound},
                        {"scaled_bound", row.scaled_bound}});
    }
    out["rows"] = std::move(rows);
    return out;
}

Json to_json(const MuContinuityReport& r) {
    Json out = Json::object();
    out["passed"] = r.passed;
    out["witness_atom"] = optional_index(r.witness_atom);
    out["null_sets_null"] = r.null_sets_null;
    Json table = Json::array();
    for (const auto& row : r.modulus_table) {
        table.push_back({{"set", to_json(row.set)}, {"mass", to_json(row.mass)}, {"norm", to_json(row.norm)}});
    }
    out["modulus_table"] = std::move(table);
    return out;
}

Json to_json(const VariationResult& r) {
    Json out = Json::object();
    out["passed"] = r.dominates;
    out["variation"] = to_json(r.variation);
    out["attaining_partition"] = to_json(r.attaining_partition);
    out["exhaustive_checked"] = r.exhaustive_checked;
    out["partitions_checked"] = r.partitions_checked;
    out["witness_partition"] = optional_index(r.witness_partition);
    return out;
}

Json to_json(const DensityResult& r) {
    Json out = Json::object();
    out["passed"] = r.verified;
    out["density"] = to_json(r.density);
    out["verified_sets"] = r.verified_sets;
    out["exhaustive"] = r.exhaustive;
    return out;
}

Json to_json(const RnpProbeReport& r) {
    Json out = Json::object();
    out["passed"] = r.passed();
    out["levels"] = r.levels;
    out["n_sets"] = r.n_sets;
    out["d"] = r.d;
    Json blocks = Json::array();
    for (const auto& b : r.blocks) {
        blocks.push_back({{"set", to_json(b.set)},
                          {"mass", to_json(b.mass)},
                          {"value", to_json(b.value)},
                          {"self_consistent", b.self_consistent}});
    }
    out["blocks"] = std::move(blocks);
    out["operator_norm"] = to_json(r.operator_norm);
    out["fixed_point"] = r.fixed_point;
    out["mu_continuous"] = r.mu_continuous;
    out["variation_bound"] = r.variation_bound;
    out["variation_sets_checked"] = r.variation_sets_checked;
    out["variation_exhaustive"] = r.variation_exhaustive;
    out["rademacher_values"] = array_of(std::span<const LElement>(r.rademacher_values));
    Json pairs = Json::array();
    for (const auto& p : r.pairs) {
        pairs.push_back({{"n", p.n},
                         {"m", p.m},
                         {"distance", to_json(p.distance)},
                         {"separation", to_json(p.separation)},
                         {"holds", p.holds}});
    }
    out["pairs"] = std::move(pairs);
    Json matrix = Json::array();
    for (const auto& row : r.distance_matrix) matrix.push_back(array_of(std::span<const LElement>(row)));
    out["distance_matrix"] = std::move(matrix);
    out["distance_bound"] = r.distance_bound;
    out["claimed_separation"] = to_json(r.claimed_separation);
    out["rademacher_separation"] = to_json(r.rademacher_separation);
    out["unit_density_represents_T"] = r.unit_density_represents_T;
    return out;
}

Json to_json(const OperatorNormResult& r) {
    Json out = Json::object();
    out["passed"] = r.interval_ok;
    out["closed_form"] = to_json(r.closed_form);
    out["sampled_lower"] = to_json(r.sampled_lower);
    out["gap"] = to_json(r.gap);
    out["candidates"] = r.candidates;
    return out;
}

Json to_json(const BootstrapTrace& r) {
    Json out = Json::object();
    out["passed"] = r.passed();
    out["chain_holds"] = r.chain_holds();
    out["limit_ok"] = r.limit_ok;
    out["limit"] = to_json(r.limit);
    out["target"] = to_json(r.target);
    out["limit_tol"] = to_json(r.limit_tol);
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        rows.push_back({{"n", row.n},
                        {"s", to_json(row.s)},
                        {"lhs", to_json(row.lhs)},
                        {"rhs", to_json(row.rhs)},
                        {"holds", row.holds}});
    }
    out["rows"] = std::move(rows);
    return out;
}

Json to_json(const EssSupReport& r) {
    Json out = Json::object();
    out["passed"] = r.passed();
    out["fv_norm"] = to_json(r.fv_norm);
    out["all_null"] = r.all_null;
    out["concluded"] = r.concluded;
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        rows.push_back({{"epsilon", to_json(row.epsilon)},
                        {"coordinate", row.coordinate},
                        {"set", to_json(row.set)},
                        {"mass", to_json(row.mass)},
                        {"null", row.null}});
    }
    out["rows"] = std::move(rows);
    return out;
}

Json to_json(const IsometryReport& r) {
    Json out = Json::object();
    out["passed"] = r.verdict;
    out["p"] = to_json(r.p);
    out["q"] = to_json(r.p.conjugate());
    out["fv_norm"] = to_json(r.fv_norm);
    out["v_norm"] = to_json(r.v_norm);
    out["gap"] = to_json(r.gap);
    out["equality"] = to_json(r.equality);
    out["bootstrap"] = r.bootstrap ? to_json(*r.bootstrap) : Json(nullptr);
    if (!r.bootstrap_note.empty()) out["bootstrap_note"] = r.bootstrap_note;
    return out;
}

Json to_json(const RepresentResult& r) {
    Json out = Json::object();
    out["passed"] = r.matches;
    out["v"] = to_json(r.v);
    out["basis_checked"] = r.basis_checked;
    out["random_checked"] = r.random_checked;
    return out;
}

Json to_json(const RoundtripReport& r) {
    Json out = Json::object();
    out["passed"] = r.passed;
    out["p"] = to_json(r.p);
    out["primal"] = to_json(r.primal);
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        rows.push_back({{"trial", row.trial},
                        {"gap", to_json(row.gap)},
                        {"represent_ok", row.represent_ok},
                        {"operator_ok", row.operator_ok},
                        {"isometry_ok", row.isometry_ok}});
    }
    out["rows"] = std::move(rows);
    return out;
}

Rational rational_from_json(const Json& j, const std::string& where) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_number_float()) fail(where, "binary floating point is not accepted; write a rational string");
    if (!j.is_string()) fail(where, "expected a rational string such as \"3/2\"");
    try {
        return Rational::parse(j.get<std::string>());
    } catch (const ParseError& e) {
        fail(where, e.what());
    }
}

LElement element_from_json(const Json& j, std::size_t d, const std::string& where) {
    if (!j.is_array()) fail(where, "expected an array of " + std::to_string(d) + " rationals");
    if (j.size() != d) fail(where, "expected " + std::to_string(d) + " coordinates, got " + std::to_string(j.size()));
    std::vector<Rational> coords;
    for (std::size_t i = 0; i < d; ++i) coords.push_back(rational_from_json(j[i], where + "/" + std::to_string(i)));
    return LElement(std::move(coords));
}

ModuleVector vector_from_json(const Json& j, const ModuleSpace& space, const std::string& where) {
    if (!j.is_array() || j.size() != space.rank) {
        fail(where, "expected a " + std::to_string(space.rank) + "x" + std::to_string(space.d) + " array");
    }
    std::vector<LElement> entries;
    for (std::size_t i = 0; i < space.rank; ++i) {
        entries.push_back(element_from_json(j[i], space.d, where + "/" + std::to_string(i)));
    }
    return ModuleVector(std::move(entries));
}

ModuleSpace module_space_from_json(const Json& j, const std::string& where) {
    ModuleSpace space;
    space.rank = size_from_json(field(j, "rank", where), where + "/rank");
    space.d = size_from_json(field(j, "d", where), where + "/d");
    if (space.rank == 0 || space.d == 0) fail(where, "rank and d must be >= 1");
    const Json& kind = field(j, "norm_kind", where);
    if (!kind.is_string()) fail(where + "/norm_kind", "expected \"sup\", \"one\" or \"two\"");
    try {
        space.kind = parse_norm_kind(kind.get<std::string>());
    } catch (const ParseError& e) {
        fail(where + "/norm_kind", e.what());
    }
    return space;
}

MeasureSpace measure_space_from_json(const Json& j, const std::string& where) {
    const Json& atoms = field(j, "atoms", where);
    const Json& masses = field(j, "masses", where);
    if (!atoms.is_array()) fail(where + "/atoms", "expected an array of names");
    if (!masses.is_array()) fail(where + "/masses", "expected an array of rationals");
    std::vector<std::string> names;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (!atoms[i].is_string()) fail(where + "/atoms/" + std::to_string(i), "expected a string");
        names.push_back(atoms[i].get<std::string>());
    }
    std::vector<Rational> ms;
    for (std::size_t i = 0; i < masses.size(); ++i) {
        ms.push_back(rational_from_json(masses[i], where + "/masses/" + std::to_string(i)));
    }
    try {
        return MeasureSpace(std::move(names), std::move(ms));
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        fail(where, e.what());
    }
}

MeasurableSet set_from_json(const Json& j, const MeasureSpace& space, const std::string& where) {
    if (!j.is_array()) fail(where, "expected an array of atom names");
    std::vector<std::string> names;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_string()) fail(where + "/" + std::to_string(i), "expected an atom name");
        names.push_back(j[i].get<std::string>());
    }
    try {
        return MeasurableSet::from_names(space, names);
    } catch (const Error& e) {
        fail(where, e.what());
    }
}

LpExponent exponent_from_json(const Json& j, const std::string& where) {
    if (j.is_string()) {
        try {
            return LpExponent::parse(j.get<std::string>());
        } catch (const Error& e) {
            fail(where, e.what());
        }
    }
    try {
        return LpExponent(rational_from_json(j, where));
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        fail(where, e.what());
    }
}

LFunction lfunction_from_json(const Json& j, const SpaceSource& source) {
    MeasureSpace space = resolve_space(j, source);
    const ModuleSpace codomain = module_space_from_json(field(j, "codomain", ""), "/codomain");
    auto values = per_atom<ModuleVector>(field(j, "values", ""), space, "/values",
                                         [&](const Json& v, const std::string& w) {
                                             return vector_from_json(v, codomain, w);
                                         });
    return LFunction(std::move(space), codomain, std::move(values));
}

DualFunction dual_function_from_json(const Json& j, const SpaceSource& source) {
    MeasureSpace space = resolve_space(j, source);
    const ModuleSpace primal = module_space_from_json(field(j, "codomain", ""), "/codomain");
    auto values = per_atom<Functional>(field(j, "values", ""), space, "/values",
                                       [&](const Json& v, const std::string& w) {
                                           return Functional(vector_from_json(v, primal, w));
                                       });
    return DualFunction(std::move(space), primal, std::move(values));
}

VectorMeasure vector_measure_from_json(const Json& j, const SpaceSource& source) {
    MeasureSpace space = resolve_space(j, source);
    const ModuleSpace codomain = module_space_from_json(field(j, "codomain", ""), "/codomain");
    auto values = per_atom<ModuleVector>(field(j, "atom_values", ""), space, "/atom_values",
                                         [&](const Json& v, const std::string& w) {
                                             return vector_from_json(v, codomain, w);
                                         });
    return VectorMeasure(std::move(space), codomain, std::move(values));
}

LpOperator operator_from_json(const Json& j, const SpaceSource& source) {
    MeasureSpace space = resolve_space(j, source);
    const ModuleSpace primal = module_space_from_json(field(j, "codomain", ""), "/codomain");
    const LpExponent p = exponent_from_json(field(j, "p", ""), "/p");
    auto action = per_atom<std::vector<LElement>>(field(j, "basis_action", ""), space, "/basis_action",
                                                  [&](const Json& v, const std::string& w) {
                                                      const ModuleVector row = vector_from_json(v, primal, w);
                                                      return std::vector<LElement>(row.entries().begin(),
                                                                                   row.entries().end());
                                                  });
    return LpOperator(std::move(space), primal, p, std::move(action));
}

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path.string() + ": cannot open file");
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
        return Json::parse(buffer.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path.string() + ": byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

}  // namespace lbochner
