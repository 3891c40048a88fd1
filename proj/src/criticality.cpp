#include "descent/criticality.hpp"

#include <map>
#include <set>
#include <stdexcept>

namespace descent {

VertexSet critical_set(const OperatorHandle& t, const ScalarField& f) { return (*t)(f).zero_set(); }

DescentOrder::DescentOrder(const Generator& L, const ScalarField& f) {
    require_same_space(L.space(), f.space(), "descent order");
    std::size_t n = L.size();
    edges_.assign(n, {});
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            if (y != x && sgn(L(x, y)) > 0 && f[y] <= f[x]) edges_[x].push_back(y);
    cond_ = condense(edges_);
    for (std::size_t x = 0; x < n; ++x) reach_.push_back(reachable_from(edges_, x));
}

VertexSet DescentOrder::minima() const {
    VertexSet m(edges_.size());
    for (std::size_t c = 0; c < cond_.members.size(); ++c)
        if (cond_.is_sink[c])
            for (std::size_t v : cond_.members[c]) m.set(v);
    return m;
}

VertexSet minima_set(const Generator& L, const ScalarField& f) { return DescentOrder(L, f).minima(); }

namespace {

bool agree_on(const ScalarField& f, const ScalarField& g, const VertexSet& s) {
    for (std::size_t x = s.find_first(); x != VertexSet::npos; x = s.find_next(x))
        if (f[x] != g[x]) return false;
    return true;
}

bool constant_difference_on(const ScalarField& f, const ScalarField& g, const VertexSet& s) {
    std::size_t first = s.find_first();
    if (first == VertexSet::npos) return true;
    Rational c = f[first] - g[first];
    for (std::size_t x = s.find_next(first); x != VertexSet::npos; x = s.find_next(x))
        if (f[x] - g[x] != c) return false;
    return true;
}

// Shared pair loop: fields with equal T-keys are compared pairwise; `agreement`
// returns the set on which f and g must coincide.
template <class Agreement>
DeterminationReport run_determination(const std::vector<ScalarField>& fields,
                                      const std::vector<std::optional<std::string>>& keys, Agreement agreement,
                                      std::size_t max_witnesses) {
    DeterminationReport rep;
    rep.fields = fields.size();
    rep.pairs = fields.size() * (fields.size() + 1) / 2;
    std::map<std::string, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < fields.size(); ++i)
        if (keys[i]) groups[*keys[i]].push_back(i);
    std::set<std::pair<std::size_t, std::size_t>> found;
    std::map<std::pair<std::size_t, std::size_t>, VertexSet> found_sets;
    for (const auto& [key, idx] : groups)
        for (std::size_t a = 0; a < idx.size(); ++a)
            for (std::size_t b = a + 1; b < idx.size(); ++b) {
                std::size_t i = idx[a], j = idx[b];
                ++rep.equal_value_pairs;
                VertexSet s = agreement(i, j);
                const ScalarField& f = fields[i];
                const ScalarField& g = fields[j];
                bool differ = !(f == g);
                if (differ && agree_on(f, g, s)) {
                    ++rep.violations;
                    if (found.size() < max_witnesses || (!found.empty() && *found.rbegin() > std::make_pair(i, j))) {
                        found.emplace(i, j);
                        found_sets[{i, j}] = s;
                        if (found.size() > max_witnesses) {
                            found_sets.erase(*found.rbegin());
                            found.erase(std::prev(found.end()));
                        }
                    }
                }
                if (constant_difference_on(f, g, s) && !constant_difference_on(f, g, full_set(f.size())))
                    ++rep.shifted_violations;
            }
    for (const auto& p : found) rep.witnesses.push_back({fields[p.first], fields[p.second], found_sets[p]});
    return rep;
}

}  // namespace

Json DeterminationReport::to_json(const FiniteSpace& space) const {
    Json w = Json::array();
    for (const auto& p : witnesses)
        w.push_back({{"f", field_json(space, p.f)}, {"g", field_json(space, p.g)}, {"agreement", set_json(space, p.agreement)}});
    return {{"fields", fields},
            {"pairs", pairs},
            {"equal_value_pairs", equal_value_pairs},
            {"excluded_infinite", excluded_infinite},
            {"undecided_fields", undecided_fields},
            {"violations", violations},
            {"shifted_violations", shifted_violations},
            {"witnesses", w}};
}

DeterminationReport check_determination(const OperatorHandle& t, const FunctionGrid& grid, std::uint64_t pair_cap,
                                        std::size_t max_witnesses) {
    require_same_space(t->space(), grid.space(), "determination");
    std::uint64_t m = grid.size();
    check_budget(saturating_mul(m, m + 1) / 2, pair_cap, "determination pair enumeration");
    std::vector<ScalarField> fields = enumerate_fields(grid);
    std::vector<std::optional<std::string>> keys(fields.size());
    std::vector<VertexSet> zero(fields.size());
    std::uint64_t inf = 0, undecided = 0;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        ExtendedField v = (*t)(fields[i]);
        zero[i] = v.zero_set();
        if (v.has_infinite()) {
            ++inf;
            continue;
        }
        if (!v.all_exact()) {
            ++undecided;
            continue;
        }
        keys[i] = v.key();
    }
    DeterminationReport rep =
        run_determination(fields, keys, [&](std::size_t i, std::size_t) { return zero[i]; }, max_witnesses);
    rep.excluded_infinite = inf;
    rep.undecided_fields = undecided;
    return rep;
}

DeterminationReport check_probabilistic_determination(const Generator& L, const FunctionGrid& grid,
                                                      std::uint64_t pair_cap, std::size_t max_witnesses) {
    require_same_space(L.space(), grid.space(), "probabilistic determination");
    std::uint64_t m = grid.size();
    check_budget(saturating_mul(m, m + 1) / 2, pair_cap, "determination pair enumeration");
    std::vector<ScalarField> fields = enumerate_fields(grid);
    std::vector<std::optional<std::string>> keys(fields.size());
    std::vector<VertexSet> minima(fields.size());
    for (std::size_t i = 0; i < fields.size(); ++i) {
        keys[i] = eval_TL(L, fields[i]).key();
        minima[i] = minima_set(L, fields[i]);
    }
    return run_determination(
        fields, keys, [&](std::size_t i, std::size_t j) { return minima[i] | minima[j]; }, max_witnesses);
}

const char* comparison_verdict_name(ComparisonVerdict v) {
    switch (v) {
        case ComparisonVerdict::HypothesesFail: return "hypotheses-fail";
        case ComparisonVerdict::ConclusionHolds: return "conclusion-holds";
        case ComparisonVerdict::TheoremViolation: return "THEOREM-VIOLATION";
    }
    return "?";
}

ComparisonVerdict check_comparison(const OperatorHandle& t, const ScalarField& f, const ScalarField& g,
                                   const Rational& c) {
    require_same_space(f.space(), g.space(), "comparison");
    ExtendedField tf = (*t)(f), tg = (*t)(g);
    if (tf.has_infinite() || tg.has_infinite()) return ComparisonVerdict::HypothesesFail;
    for (std::size_t x = 0; x < f.size(); ++x) {
        auto o = compare(tf[x], tg[x]);
        if (!(o == std::partial_ordering::greater || o == std::partial_ordering::equivalent))
            return ComparisonVerdict::HypothesesFail;
    }
    VertexSet z = tf.zero_set();
    for (std::size_t x = z.find_first(); x != VertexSet::npos; x = z.find_next(x))
        if (f[x] < g[x] + c) return ComparisonVerdict::HypothesesFail;
    for (std::size_t x = 0; x < f.size(); ++x)
        if (f[x] < g[x] + c) return ComparisonVerdict::TheoremViolation;
    return ComparisonVerdict::ConclusionHolds;
}

}  // namespace descent
