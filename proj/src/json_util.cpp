#include "descent/json_util.hpp"

#include <cstdio>

namespace descent {

Json rational_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(std::to_string(j.get<long long>()));
    throw std::invalid_argument("expected a rational as a \"p/q\" string, got " + j.dump());
}

Json matrix_json(const RationalMatrix& m) {
    Json out = Json::array();
    for (const auto& row : m) {
        Json r = Json::array();
        for (const auto& q : row) r.push_back(rational_json(q));
        out.push_back(std::move(r));
    }
    return out;
}

RationalMatrix matrix_from_json(const Json& j) {
    if (!j.is_array()) throw std::invalid_argument("expected a matrix (array of rows)");
    RationalMatrix m;
    for (const auto& row : j) {
        if (!row.is_array()) throw std::invalid_argument("matrix row must be an array");
        std::vector<Rational> r;
        for (const auto& q : row) r.push_back(rational_from_json(q));
        m.push_back(std::move(r));
    }
    return m;
}

Json value_json(const ExtValue& v) {
    if (v.is_infinite()) return "inf";
    if (v.is_rational()) return rational_json(v.as_rational());
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v.to_double());
    Json o = {{"approx", buf}};
    if (v.is_exact())
        o["exact"] = v.key();
    else
        o["enclosure"] = v.key();
    return o;
}

Json extended_field_json(const FiniteSpace& space, const ExtendedField& t) {
    Json o = Json::object();
    for (std::size_t i = 0; i < t.size(); ++i) o[space.label(i)] = value_json(t[i]);
    return o;
}

Json field_json(const FiniteSpace& space, const ScalarField& f) {
    Json o = Json::object();
    for (std::size_t i = 0; i < f.size(); ++i) o[space.label(i)] = rational_json(f[i]);
    return o;
}

Json set_json(const FiniteSpace& space, const VertexSet& s) {
    Json a = Json::array();
    for (auto i : members(s)) a.push_back(space.label(i));
    return a;
}

Json neighborhoods_json(const NeighborhoodSystem& d) {
    Json o = Json::object();
    for (std::size_t x = 0; x < d.sets().size(); ++x) o[d.space().label(x)] = set_json(d.space(), d[x]);
    return o;
}

}  // namespace descent
