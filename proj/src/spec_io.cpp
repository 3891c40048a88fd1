#include "descent/spec_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace descent {

namespace {

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < end; ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

template <class Map>
const typename Map::mapped_type& lookup(const Map& m, const std::string& name, const char* what) {
    auto it = m.find(name);
    if (it == m.end()) throw std::invalid_argument(std::string("unknown ") + what + " '" + name + "'");
    return it->second;
}

Generator generator_ref(const Json& j, const SpaceSpec& spec) {
    if (j.is_string()) return lookup(spec.generators, j.get<std::string>(), "generator");
    return validate_generator(spec.space, matrix_from_json(j));
}

NeighborhoodSystem system_ref(const Json& j, const SpaceSpec& spec) {
    if (j.is_string()) return lookup(spec.systems, j.get<std::string>(), "neighborhood system");
    if (j.is_object() && j.contains("active")) return generator_ref(j.at("active"), spec).active_system();
    if (j.is_object() && j.contains("complete")) return NeighborhoodSystem::complete(spec.space);
    return neighborhoods_from_json(spec.space, j);
}

MetricMatrix metric_ref(const Json& j, const SpaceSpec& spec) {
    if (j.is_string()) {
        if (j.get<std::string>() == "unit") return MetricMatrix::unit(spec.space);
        return lookup(spec.metrics, j.get<std::string>(), "metric");
    }
    return MetricMatrix(spec.space, matrix_from_json(j));
}

MeasureMatrix measure_ref(const Json& j, const SpaceSpec& spec) {
    if (j.is_string()) {
        std::string name = j.get<std::string>();
        if (auto it = spec.measures.find(name); it != spec.measures.end()) return it->second;
        if (auto it = spec.generators.find(name); it != spec.generators.end()) return MeasureMatrix::from_generator(it->second);
        throw std::invalid_argument("unknown measure or generator '" + name + "'");
    }
    return MeasureMatrix(spec.space, matrix_from_json(j));
}

std::vector<OperatorHandle> parse_terms(const Json& expr, const SpaceSpec& spec, int depth);

OperatorHandle parse_op(const Json& expr, const SpaceSpec& spec, int depth) {
    if (depth > 64) throw std::invalid_argument("operator expression nested too deeply");
    if (expr.is_string()) return parse_op(lookup(spec.operators, expr.get<std::string>(), "operator"), spec, depth + 1);
    if (!expr.is_object()) throw std::invalid_argument("operator expression must be an object, got " + expr.dump());
    if (expr.contains("ref")) return parse_op(lookup(spec.operators, expr.at("ref").get<std::string>(), "operator"), spec, depth + 1);
    if (!expr.contains("op")) throw std::invalid_argument("operator expression lacks \"op\": " + expr.dump());
    const std::string op = expr.at("op").get<std::string>();
    auto arg = [&]() {
        if (!expr.contains("arg")) throw std::invalid_argument(op + " needs \"arg\"");
        return parse_op(expr.at("arg"), spec, depth + 1);
    };
    auto gen = [&]() { return generator_ref(expr.value("L", Json("L")), spec); };

    if (op == "TL") return make_TL(gen());
    if (op == "TLinf") return make_TLm(gen(), Exponent::inf());
    if (op == "TLm") {
        if (!expr.contains("m")) throw std::invalid_argument("TLm needs \"m\"");
        const Json& m = expr.at("m");
        Generator L = gen();
        if (m.is_object()) {
            std::vector<Exponent> per(spec.space->size(), Exponent::of(1));
            std::vector<bool> seen(per.size(), false);
            for (auto it = m.begin(); it != m.end(); ++it) {
                std::size_t x = spec.space->index(it.key());
                per[x] = Exponent::parse(it.value().is_string() ? it.value().get<std::string>() : it.value().dump());
                seen[x] = true;
            }
            for (std::size_t x = 0; x < seen.size(); ++x)
                if (!seen[x]) throw std::invalid_argument("per-vertex exponent table misses '" + spec.space->label(x) + "'");
            return make_TLm(std::move(L), std::move(per));
        }
        return make_TLm(std::move(L), Exponent::parse(m.is_string() ? m.get<std::string>() : m.dump()));
    }
    if (op == "TD") return make_TD(system_ref(expr.value("D", Json("D")), spec));
    if (op == "SemiGlobalSlope")
        return make_semiglobal_slope(system_ref(expr.value("D", Json("D")), spec), metric_ref(expr.value("metric", Json("m")), spec));
    if (op == "Nonlocal") {
        Phi phi = expr.contains("phi") ? phi_from_json(expr.at("phi")) : Phi::power(1);
        return make_nonlocal(measure_ref(expr.value("mu", Json("L")), spec), phi, expr.value("oriented", false));
    }
    if (op == "Zero") return make_zero(spec.space);
    if (op == "Indicator") return make_indicator(arg());
    if (op == "NeighborMaxGap") return make_neighbor_max_gap(system_ref(expr.value("D", Json("D")), spec));
    if (op == "Sum") return make_sum(parse_terms(expr, spec, depth));
    if (op == "Sup") return make_sup(parse_terms(expr, spec, depth));
    if (op == "Inf") return make_inf(parse_terms(expr, spec, depth));
    if (op == "PostCompose") {
        if (!expr.contains("phi")) throw std::invalid_argument("PostCompose needs \"phi\"");
        return make_post_compose(phi_from_json(expr.at("phi")), arg());
    }
    if (op == "Scale") return make_scale(rational_from_json(expr.at("r")), arg());
    if (op == "TruncateEps") return make_truncate_eps(rational_from_json(expr.at("eps")), arg());
    if (op == "RestrictK") return make_restrict(set_from_json(*spec.space, expr.at("K")), arg());
    throw std::invalid_argument("unknown operator '" + op + "'");
}

std::vector<OperatorHandle> parse_terms(const Json& expr, const SpaceSpec& spec, int depth) {
    if (!expr.contains("terms") || !expr.at("terms").is_array())
        throw std::invalid_argument(expr.at("op").get<std::string>() + " needs a \"terms\" array");
    std::vector<OperatorHandle> out;
    for (const auto& t : expr.at("terms")) out.push_back(parse_op(t, spec, depth + 1));
    return out;
}

}  // namespace

const Generator& SpaceSpec::generator(const std::string& name) const { return lookup(generators, name, "generator"); }
const ScalarField& SpaceSpec::function(const std::string& name) const { return lookup(functions, name, "function"); }

Json parse_json_text(const std::string& text, const std::string& source) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        auto [line, col] = line_column(text, e.byte);
        std::string msg = e.what();
        if (auto p = msg.find("parse error"); p != std::string::npos) msg = msg.substr(p);
        throw ParseError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg, line, col);
    }
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'", 0, 0);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str(), path);
}

NeighborhoodSystem neighborhoods_from_json(const SpacePtr& space, const Json& j) {
    if (!j.is_object()) throw std::invalid_argument("neighborhoods must map labels to label lists");
    std::size_t n = space->size();
    std::vector<VertexSet> sets(n, VertexSet(n));
    std::vector<bool> seen(n, false);
    for (auto it = j.begin(); it != j.end(); ++it) {
        std::size_t x = space->index(it.key());
        sets[x] = set_from_json(*space, it.value());
        seen[x] = true;
    }
    for (std::size_t x = 0; x < n; ++x)
        if (!seen[x]) throw std::invalid_argument("neighborhoods miss vertex '" + space->label(x) + "'");
    return NeighborhoodSystem(space, std::move(sets));
}

VertexSet set_from_json(const FiniteSpace& space, const Json& j) {
    if (!j.is_array()) throw std::invalid_argument("vertex set must be a label array");
    VertexSet s(space.size());
    for (const auto& l : j) s.set(space.index(l.is_string() ? l.get<std::string>() : l.dump()));
    return s;
}

ScalarField field_from_json(const SpacePtr& space, const Json& j) {
    std::vector<Rational> v(space->size());
    if (j.is_array()) {
        if (j.size() != space->size()) throw std::invalid_argument("function has " + std::to_string(j.size()) + " values for " + std::to_string(space->size()) + " vertices");
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = rational_from_json(j[i]);
    } else if (j.is_object()) {
        std::vector<bool> seen(v.size(), false);
        for (auto it = j.begin(); it != j.end(); ++it) {
            std::size_t x = space->index(it.key());
            v[x] = rational_from_json(it.value());
            seen[x] = true;
        }
        for (std::size_t x = 0; x < v.size(); ++x)
            if (!seen[x]) throw std::invalid_argument("function misses vertex '" + space->label(x) + "'");
    } else {
        throw std::invalid_argument("function must be an array or a label map");
    }
    return ScalarField(space, std::move(v));
}

Phi phi_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kind")) throw std::invalid_argument("phi must be an object with \"kind\"");
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "power") return Phi::power(rational_from_json(j.value("p", Json("1"))));
    if (kind == "threshold") return Phi::threshold(rational_from_json(j.at("eps")));
    if (kind == "table") {
        std::vector<std::pair<Rational, Rational>> e;
        for (const auto& row : j.at("entries")) {
            if (!row.is_array() || row.size() != 2) throw std::invalid_argument("table phi entries are [t, phi(t)] pairs");
            e.emplace_back(rational_from_json(row[0]), rational_from_json(row[1]));
        }
        return Phi::table(std::move(e));
    }
    throw std::invalid_argument("unknown phi kind '" + kind + "'");
}

SpaceSpec parse_space_spec(const Json& doc) {
    if (!doc.is_object()) throw std::invalid_argument("space spec must be a JSON object");
    if (!doc.contains("vertices")) throw std::invalid_argument("space spec needs \"vertices\"");
    SpaceSpec spec;
    std::vector<std::string> labels;
    for (const auto& l : doc.at("vertices")) labels.push_back(l.is_string() ? l.get<std::string>() : l.dump());
    spec.space = FiniteSpace::make(std::move(labels));

    auto named = [&](const char* single, const char* plural, const char* dflt, auto&& build, auto& into) {
        if (doc.contains(single)) into.emplace(dflt, build(doc.at(single)));
        if (doc.contains(plural))
            for (auto it = doc.at(plural).begin(); it != doc.at(plural).end(); ++it) into.emplace(it.key(), build(it.value()));
    };
    named("generator", "generators", "L", [&](const Json& j) { return validate_generator(spec.space, matrix_from_json(j)); }, spec.generators);
    named("metric", "metrics", "m", [&](const Json& j) { return MetricMatrix(spec.space, matrix_from_json(j)); }, spec.metrics);
    named("neighborhoods", "systems", "D", [&](const Json& j) { return neighborhoods_from_json(spec.space, j); }, spec.systems);
    if (doc.contains("measures"))
        for (auto it = doc.at("measures").begin(); it != doc.at("measures").end(); ++it)
            spec.measures.emplace(it.key(), MeasureMatrix(spec.space, matrix_from_json(it.value())));
    if (doc.contains("functions"))
        for (auto it = doc.at("functions").begin(); it != doc.at("functions").end(); ++it)
            spec.functions.emplace(it.key(), field_from_json(spec.space, it.value()));
    if (doc.contains("operators"))
        for (auto it = doc.at("operators").begin(); it != doc.at("operators").end(); ++it) spec.operators.emplace(it.key(), it.value());

    static const char* known[] = {"vertices", "generator", "generators", "metric", "metrics", "neighborhoods",
                                  "systems", "measures", "functions", "operators"};
    for (auto it = doc.begin(); it != doc.end(); ++it)
        if (std::find(std::begin(known), std::end(known), it.key()) == std::end(known)) spec.extra[it.key()] = it.value();
    return spec;
}

SpaceSpec load_space_spec(const std::string& path) {
    Json doc = read_json_file(path);
    try {
        return parse_space_spec(doc);
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(path + ": " + e.what(), 0, 0);
    }
}

Json space_spec_json(const SpaceSpec& spec) {
    Json doc = spec.extra;
    doc["vertices"] = spec.space->labels();
    if (!spec.generators.empty()) {
        Json g = Json::object();
        for (const auto& [k, v] : spec.generators) g[k] = matrix_json(v.matrix());
        doc["generators"] = g;
    }
    if (!spec.metrics.empty()) {
        Json g = Json::object();
        for (const auto& [k, v] : spec.metrics) g[k] = matrix_json(v.matrix());
        doc["metrics"] = g;
    }
    if (!spec.systems.empty()) {
        Json g = Json::object();
        for (const auto& [k, v] : spec.systems) g[k] = neighborhoods_json(v);
        doc["systems"] = g;
    }
    if (!spec.measures.empty()) {
        Json g = Json::object();
        for (const auto& [k, v] : spec.measures) g[k] = matrix_json(v.matrix());
        doc["measures"] = g;
    }
    if (!spec.functions.empty()) {
        Json g = Json::object();
        for (const auto& [k, f] : spec.functions) {
            Json a = Json::array();
            for (const auto& q : f.values()) a.push_back(rational_json(q));
            g[k] = a;
        }
        doc["functions"] = g;
    }
    if (!spec.operators.empty()) doc["operators"] = spec.operators;
    return doc;
}

OperatorHandle parse_operator(const Json& expr, const SpaceSpec& spec) { return parse_op(expr, spec, 0); }

}  // namespace descent
