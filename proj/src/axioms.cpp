#include "descent/axioms.hpp"

#include <algorithm>
#include <stdexcept>

namespace descent {

namespace {

using PO = std::partial_ordering;

struct Tally {
    AxiomResult r;
    explicit Tally(std::string name) { r.axiom = std::move(name); }

    // Keeps the first witness in iteration order; callers iterate in the
    // canonical (vertex, field, parameter) order.
    void fail(Witness w) {
        ++r.violations;
        r.verdict = Verdict::Fails;
        if (!r.witness) r.witness = std::move(w);
    }
    AxiomResult done() { return std::move(r); }
};

bool dominates_at(const ScalarField& f, const ScalarField& g, std::size_t x) {
    for (std::size_t z = 0; z < f.size(); ++z)
        if (positive_part(f[x] - f[z]) < positive_part(g[x] - g[z])) return false;
    return true;
}

bool one_step_exists(const ScalarField& f, const ScalarField& g, std::size_t x) {
    for (std::size_t z = 0; z < f.size(); ++z)
        if (f[z] < f[x] && f[x] - f[z] > g[x] - g[z]) return true;
    return false;
}

ExtValue scaled_power(const ExtValue& v, const Rational& r, const Rational& p) {
    if (p == 1) return v.scaled(r);
    return v * ExtValue::from_rational(r).pow(p);
}

std::vector<Rational> c3_factors(const std::vector<Rational>& rset) {
    Rational rmax = 1;
    for (const auto& r : rset) rmax = std::max(rmax, r);
    std::vector<Rational> out;
    for (int k = 0; k <= 4; ++k) out.push_back(1 + (rmax - 1) * Rational(k) / 4);
    return out;
}

}  // namespace

const char* verdict_name(Verdict v) { return v == Verdict::HoldsOnGrid ? "holds-on-grid" : "fails"; }

Json AxiomResult::to_json(const FiniteSpace& space) const {
    Json o = {{"axiom", axiom}, {"verdict", verdict_name(verdict)}, {"checked", checked},
              {"violations", violations}, {"undecided", undecided}};
    if (witness) {
        Json w = {{"x", space.label(witness->x)}};
        if (witness->f) w["f"] = field_json(space, *witness->f);
        if (witness->g) w["g"] = field_json(space, *witness->g);
        if (witness->r) w["r"] = rational_json(*witness->r);
        if (witness->r_low) w["r_low"] = rational_json(*witness->r_low);
        if (witness->c) w["c"] = rational_json(*witness->c);
        if (witness->degree) w["degree"] = rational_json(*witness->degree);
        if (!witness->detail.empty()) w["detail"] = witness->detail;
        o["witness"] = w;
    }
    return o;
}

bool AxiomReport::all_hold() const {
    return std::all_of(results.begin(), results.end(), [](const AxiomResult& r) { return r.holds(); });
}

const AxiomResult* AxiomReport::find(const std::string& axiom) const {
    for (const auto& r : results)
        if (r.axiom == axiom) return &r;
    return nullptr;
}

Json AxiomReport::to_json(const FiniteSpace& space) const {
    Json a = Json::array();
    for (const auto& r : results) a.push_back(r.to_json(space));
    return a;
}

GridEvaluation evaluate_grid(const OperatorHandle& t, const FunctionGrid& grid) {
    require_same_space(t->space(), grid.space(), "grid evaluation");
    GridEvaluation ev;
    ev.fields = enumerate_fields(grid);
    ev.values.reserve(ev.fields.size());
    for (const auto& f : ev.fields) ev.values.push_back((*t)(f));
    return ev;
}

AxiomResult check_D1(const OperatorHandle&, const GridEvaluation& ev) {
    Tally tally("D1");
    if (ev.fields.empty()) return tally.done();
    std::size_t n = ev.fields[0].size();
    std::vector<VertexSet> argmins;
    for (const auto& f : ev.fields) argmins.push_back(f.argmin());
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t i = 0; i < ev.fields.size(); ++i) {
            if (!argmins[i].test(x)) continue;
            ++tally.r.checked;
            if (!ev.values[i][x].is_zero())
                tally.fail({ev.fields[i], std::nullopt, x, std::nullopt, std::nullopt, std::nullopt, std::nullopt,
                            "T[f](x) = " + ev.values[i][x].to_string() + " at a global minimum"});
        }
    return tally.done();
}

AxiomResult check_D2(const OperatorHandle&, const GridEvaluation& ev, std::uint64_t pair_cap) {
    Tally tally("D2");
    std::uint64_t m = ev.fields.size();
    check_budget(saturating_mul(m, m), pair_cap, "D2 pair enumeration");
    if (m == 0) return tally.done();
    std::size_t n = ev.fields[0].size();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                const ScalarField& f = ev.fields[i];
                const ScalarField& g = ev.fields[j];
                PO c = compare(ev.values[i][x], ev.values[j][x]);
                if (c == PO::unordered) {
                    if (dominates_at(f, g, x)) ++tally.r.undecided;
                    continue;
                }
                if (c == PO::greater) {
                    // One-step descent form of monotonicity.
                    ++tally.r.checked;
                    if (!one_step_exists(f, g, x))
                        tally.fail({f, g, x, std::nullopt, std::nullopt, std::nullopt, std::nullopt,
                                    "one-step: T[f](x) > T[g](x) without a descent direction z"});
                    continue;
                }
                if (!dominates_at(f, g, x)) continue;
                ++tally.r.checked;
                if (c == PO::less)
                    tally.fail({f, g, x, std::nullopt, std::nullopt, std::nullopt, std::nullopt,
                                "monotonicity: f dominates g at x but T[f](x) < T[g](x)"});
            }
    return tally.done();
}

AxiomResult check_D3(const OperatorHandle& t, const GridEvaluation& ev, const std::vector<Rational>& rset) {
    Tally tally("D3");
    for (const auto& r : rset)
        if (!(r > 1)) throw std::invalid_argument("D3 scaling factors must exceed 1");
    if (ev.fields.empty()) return tally.done();
    std::size_t n = ev.fields[0].size();
    std::vector<Rational> c3 = c3_factors(rset);
    // Scaled evaluations, indexed [field][rset..., c3...].
    std::vector<std::vector<ExtendedField>> scaled(ev.fields.size());
    for (std::size_t i = 0; i < ev.fields.size(); ++i) {
        for (const auto& r : rset) scaled[i].push_back((*t)(ev.fields[i] * r));
        for (std::size_t k = 1; k < c3.size(); ++k) scaled[i].push_back((*t)(ev.fields[i] * c3[k]));
    }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t i = 0; i < ev.fields.size(); ++i) {
            const ExtValue& v = ev.values[i][x];
            if (v.is_zero() || v.is_infinite()) continue;
            for (std::size_t k = 0; k < rset.size(); ++k) {
                ++tally.r.checked;
                PO c = compare(v, scaled[i][k][x]);
                if (c == PO::unordered)
                    ++tally.r.undecided;
                else if (c != PO::less)
                    tally.fail({ev.fields[i], std::nullopt, x, rset[k], std::nullopt, std::nullopt, std::nullopt,
                                "scalar: T[f](x) = " + v.to_string() + " but T[rf](x) = " + scaled[i][k][x].to_string()});
            }
            // (c3): delta -> T[(1+delta) f](x) strictly increasing on [0, r-1].
            if (scaled[i].back()[x].is_infinite()) continue;
            const ExtValue* prev = &v;
            for (std::size_t k = 1; k < c3.size(); ++k) {
                const ExtValue& cur = scaled[i][rset.size() + k - 1][x];
                ++tally.r.checked;
                PO c = compare(*prev, cur);
                if (c == PO::unordered)
                    ++tally.r.undecided;
                else if (c != PO::less)
                    tally.fail({ev.fields[i], std::nullopt, x, c3[k], c3[k - 1], std::nullopt, std::nullopt,
                                "c3: T[(1+delta)f](x) not strictly increasing"});
                prev = &cur;
            }
        }
    return tally.done();
}

AxiomResult check_translation_invariance(const OperatorHandle& t, const GridEvaluation& ev, const std::vector<Rational>& cset) {
    Tally tally("translation");
    if (ev.fields.empty()) return tally.done();
    std::size_t n = ev.fields[0].size();
    std::vector<std::vector<ExtendedField>> shifted(ev.fields.size());
    for (std::size_t i = 0; i < ev.fields.size(); ++i)
        for (const auto& c : cset) shifted[i].push_back((*t)(ev.fields[i] + c));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t i = 0; i < ev.fields.size(); ++i)
            for (std::size_t k = 0; k < cset.size(); ++k) {
                ++tally.r.checked;
                PO c = compare(ev.values[i][x], shifted[i][k][x]);
                if (c == PO::unordered)
                    ++tally.r.undecided;
                else if (c != PO::equivalent)
                    tally.fail({ev.fields[i], std::nullopt, x, std::nullopt, std::nullopt, cset[k], std::nullopt,
                                "T[f+c](x) = " + shifted[i][k][x].to_string() + " differs from T[f](x) = " +
                                    ev.values[i][x].to_string()});
            }
    return tally.done();
}

AxiomResult check_homogeneity(const OperatorHandle& t, const GridEvaluation& ev, const Rational& p,
                              const std::vector<Rational>& rset) {
    Tally tally("homogeneity");
    for (const auto& r : rset)
        if (sgn(r) <= 0) throw std::invalid_argument("homogeneity factors must be positive");
    if (sgn(p) <= 0) throw std::invalid_argument("homogeneity degree must be positive");
    if (ev.fields.empty()) return tally.done();
    std::size_t n = ev.fields[0].size();
    std::vector<std::vector<ExtendedField>> scaled(ev.fields.size());
    for (std::size_t i = 0; i < ev.fields.size(); ++i)
        for (const auto& r : rset) scaled[i].push_back((*t)(ev.fields[i] * r));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t i = 0; i < ev.fields.size(); ++i)
            for (std::size_t k = 0; k < rset.size(); ++k) {
                ++tally.r.checked;
                ExtValue expect = scaled_power(ev.values[i][x], rset[k], p);
                PO c = compare(expect, scaled[i][k][x]);
                if (c == PO::unordered)
                    ++tally.r.undecided;
                else if (c != PO::equivalent)
                    tally.fail({ev.fields[i], std::nullopt, x, rset[k], std::nullopt, std::nullopt, p,
                                "T[rf](x) = " + scaled[i][k][x].to_string() + " but r^p T[f](x) = " + expect.to_string()});
            }
    return tally.done();
}

AxiomResult check_D1(const OperatorHandle& t, const FunctionGrid& grid) { return check_D1(t, evaluate_grid(t, grid)); }

AxiomResult check_D2(const OperatorHandle& t, const FunctionGrid& grid, std::uint64_t pair_cap) {
    check_budget(saturating_mul(grid.size(), grid.size()), pair_cap, "D2 pair enumeration");
    return check_D2(t, evaluate_grid(t, grid), pair_cap);
}

AxiomResult check_D3(const OperatorHandle& t, const FunctionGrid& grid, const std::vector<Rational>& rset) {
    return check_D3(t, evaluate_grid(t, grid), rset);
}

AxiomResult check_translation_invariance(const OperatorHandle& t, const FunctionGrid& grid, const std::vector<Rational>& cset) {
    return check_translation_invariance(t, evaluate_grid(t, grid), cset);
}

AxiomResult check_homogeneity(const OperatorHandle& t, const FunctionGrid& grid, const Rational& p,
                              const std::vector<Rational>& rset) {
    return check_homogeneity(t, evaluate_grid(t, grid), p, rset);
}

AxiomReport run_audit(const OperatorHandle& t, const FunctionGrid& grid, const AuditOptions& opt) {
    auto wants = [&](const char* a) { return std::find(opt.axioms.begin(), opt.axioms.end(), a) != opt.axioms.end(); };
    if (wants("D2")) check_budget(saturating_mul(grid.size(), grid.size()), opt.pair_cap, "D2 pair enumeration");
    GridEvaluation ev = evaluate_grid(t, grid);
    AxiomReport rep;
    if (wants("D1")) rep.results.push_back(check_D1(t, ev));
    if (wants("D2")) rep.results.push_back(check_D2(t, ev, opt.pair_cap));
    if (wants("D3")) rep.results.push_back(check_D3(t, ev, opt.d3_rset));
    if (wants("translation")) rep.results.push_back(check_translation_invariance(t, ev, opt.cset));
    if (wants("homogeneity")) {
        auto p = opt.homogeneity_degree ? opt.homogeneity_degree : t->homogeneity_degree();
        if (p) rep.results.push_back(check_homogeneity(t, ev, *p, opt.homogeneity_rset));
    }
    return rep;
}

bool recheck_witness(const OperatorHandle& t, const AxiomResult& res) {
    if (!res.witness || !res.witness->f) return false;
    const Witness& w = *res.witness;
    const ScalarField& f = *w.f;
    std::size_t x = w.x;
    ExtendedField tf = (*t)(f);
    if (res.axiom == "D1") return f.argmin().test(x) && !tf[x].is_zero();
    if (res.axiom == "D2") {
        if (!w.g) return false;
        ExtendedField tg = (*t)(*w.g);
        PO c = compare(tf[x], tg[x]);
        if (w.detail.rfind("one-step", 0) == 0) return c == PO::greater && !one_step_exists(f, *w.g, x);
        return dominates_at(f, *w.g, x) && c == PO::less;
    }
    if (res.axiom == "D3") {
        if (!w.r) return false;
        ExtValue hi = (*t)(f * *w.r)[x];
        ExtValue lo = w.r_low ? (*t)(f * *w.r_low)[x] : tf[x];
        if (lo.is_zero() && !w.r_low) return false;
        PO c = compare(lo, hi);
        return c == PO::greater || c == PO::equivalent;
    }
    if (res.axiom == "translation") {
        if (!w.c) return false;
        PO c = compare(tf[x], (*t)(f + *w.c)[x]);
        return c == PO::less || c == PO::greater;
    }
    if (res.axiom == "homogeneity") {
        if (!w.r || !w.degree) return false;
        PO c = compare(scaled_power(tf[x], *w.r, *w.degree), (*t)(f * *w.r)[x]);
        return c == PO::less || c == PO::greater;
    }
    return false;
}

}  // namespace descent
