// Copyright The lbochner Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "lbochner/duality.hpp"

namespace lbochner {

/// Key order is insertion order, so dumps are reproducible byte for byte.
using Json = nlohmann::ordered_json;

// Writers. Rationals are "num/den" strings; exact approximations collapse
// to their rational, the others become {"value", "error"}.
Json to_json(const Rational& r);
Json to_json(const ApproxReal& a);
Json to_json(const LElement& x);
Json to_json(const ApproxElement& x);
Json to_json(const ModuleVector& x);
Json to_json(const Functional& phi);
Json to_json(const ModuleSpace& space);
Json to_json(const MeasureSpace& space);
Json to_json(const MeasurableSet& set);
Json to_json(const Partition& partition);
Json to_json(const LpExponent& p);
Json to_json(const LFunction& f);
Json to_json(const DualFunction& v);
Json to_json(const VectorMeasure& g);
Json to_json(const LpOperator& h);
Json to_json(const OrderComparison& c);
Json to_json(const ConvergenceCertificate& cert);

Json to_json(const NormAxiomReport& r);
Json to_json(const InequalityReport& r);
Json to_json(const SupRepresentationReport& r);
Json to_json(const ChebyshevReport& r);
Json to_json(const DctReport& r);
Json to_json(const CompletenessReport& r);
Json to_json(const MuContinuityReport& r);
Json to_json(const VariationResult& r);
Json to_json(const DensityResult& r);
Json to_json(const RnpProbeReport& r);
Json to_json(const OperatorNormResult& r);
Json to_json(const BootstrapTrace& r);
Json to_json(const EssSupReport& r);
Json to_json(const IsometryReport& r);
Json to_json(const RepresentResult& r);
Json to_json(const RoundtripReport& r);

// Readers. Every failure is a ParseError naming the JSON location.
Rational rational_from_json(const Json& j, const std::string& where);
LElement element_from_json(const Json& j, std::size_t d, const std::string& where);
ModuleVector vector_from_json(const Json& j, const ModuleSpace& space, const std::string& where);
ModuleSpace module_space_from_json(const Json& j, const std::string& where);
MeasureSpace measure_space_from_json(const Json& j, const std::string& where = "");
MeasurableSet set_from_json(const Json& j, const MeasureSpace& space, const std::string& where);
LpExponent exponent_from_json(const Json& j, const std::string& where);

/// Where a function document finds its measure space: the document's
/// "space" field (embedded object, or a path relative to base_dir), else
/// `fallback`.
struct SpaceSource {
    std::optional<MeasureSpace> fallback;
    std::filesystem::path base_dir;
};

LFunction lfunction_from_json(const Json& j, const SpaceSource& source);
DualFunction dual_function_from_json(const Json& j, const SpaceSource& source);
VectorMeasure vector_measure_from_json(const Json& j, const SpaceSource& source);
LpOperator operator_from_json(const Json& j, const SpaceSource& source);

/// Reads and parses a UTF-8 JSON file; ParseError with the byte position on failure.
Json read_json_file(const std::filesystem::path& path);

}  // namespace lbochner
