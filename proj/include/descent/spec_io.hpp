#pragma once

#include "descent/json_util.hpp"
#include "descent/operators.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace descent {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : std::runtime_error(what), line(line), column(column) {}
    std::size_t line, column;  // 1-based; 0 when unknown
};

// Parsed space-spec document. Unnamed singletons map to default names:
// "generator" -> "L", "metric" -> "m", "neighborhoods" -> "D".
struct SpaceSpec {
    SpacePtr space;
    std::map<std::string, Generator> generators;
    std::map<std::string, MetricMatrix> metrics;
    std::map<std::string, NeighborhoodSystem> systems;
    std::map<std::string, MeasureMatrix> measures;
    std::map<std::string, ScalarField> functions;
    std::map<std::string, Json> operators;
    Json extra = Json::object();  // any other top-level keys, kept verbatim

    const Generator& generator(const std::string& name) const;
    const ScalarField& function(const std::string& name) const;
};

// JSON text -> Json, reporting syntax errors with line and column.
Json parse_json_text(const std::string& text, const std::string& source);
Json read_json_file(const std::string& path);

SpaceSpec parse_space_spec(const Json& doc);
SpaceSpec load_space_spec(const std::string& path);
Json space_spec_json(const SpaceSpec& spec);

NeighborhoodSystem neighborhoods_from_json(const SpacePtr& space, const Json& j);
ScalarField field_from_json(const SpacePtr& space, const Json& j);  // array or label map
VertexSet set_from_json(const FiniteSpace& space, const Json& j);

// Operator expression tree; names resolve against the spec.
OperatorHandle parse_operator(const Json& expr, const SpaceSpec& spec);
Phi phi_from_json(const Json& j);

}  // namespace descent
