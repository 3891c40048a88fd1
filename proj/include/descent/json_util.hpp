#pragma once

#include "descent/matrices.hpp"

#include <json.hpp>

namespace descent {

using Json = nlohmann::json;

Json rational_json(const Rational& q);  // "p/q" string
Rational rational_from_json(const Json& j);  // string or integer
Json matrix_json(const RationalMatrix& m);
RationalMatrix matrix_from_json(const Json& j);
Json value_json(const ExtValue& v);
Json extended_field_json(const FiniteSpace& space, const ExtendedField& t);
Json field_json(const FiniteSpace& space, const ScalarField& f);
Json set_json(const FiniteSpace& space, const VertexSet& s);  // label list
Json neighborhoods_json(const NeighborhoodSystem& d);

}  // namespace descent
