#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "imago/update.hpp"
#include "imago/verifier.hpp"

namespace imago {

using Json = nlohmann::ordered_json;

inline constexpr const char* kModelSchemaVersion = "imago-model/1";
inline constexpr const char* kReportSchemaVersion = "imago-report/1";

/// A complete checkable model: algebra, selection table, prior, and an
/// optional lambda.
struct Model {
    Algebra algebra;
    SelectionFunction selection;
    ProbabilityDist prior;
    std::optional<DistributionFunction> lambda;
};

/// Object key for an event: atom names joined by commas in atom order,
/// empty string for bottom.
std::string event_key(const Algebra& algebra, Event e);

/// Event from a JSON array of atom names (any order; normalized on output).
Event event_from_names(const Algebra& algebra, const Json& names);

/// JSON array of atom names in atom order.
Json event_to_names(const Algebra& algebra, Event e);

Json model_to_json(const Model& model);

/// Parses and validates a model document. Shape problems raise ParseError,
/// semantic ones (probability/lambda invariants) ValidationError; both carry
/// the offending field.
Model model_from_json(const Json& doc);

Model load_model_file(const std::string& path);
void save_model_file(const Model& model, const std::string& path);

Json report_to_json(const Report& report);

/// Writes to the path, or standard output when path is empty.
void write_report(const Json& report, const std::string& path);

} // namespace imago
