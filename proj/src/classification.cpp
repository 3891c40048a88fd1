#include "descent/classification.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace descent {

std::uint64_t subset_mask(const VertexSet& k) {
    if (k.size() > 63) throw std::length_error("subset too large for a mask");
    std::uint64_t m = 0;
    for (std::size_t i = k.find_first(); i != VertexSet::npos; i = k.find_next(i)) m |= std::uint64_t{1} << i;
    return m;
}

VertexSet subset_from_mask(std::size_t n, std::uint64_t mask) {
    VertexSet s(n);
    for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1) s.set(i);
    return s;
}

namespace {

void require_cap(std::size_t n, std::size_t cap) {
    if (n > cap) throw BudgetError("subset enumeration needs |V| <= " + std::to_string(cap), n, cap);
}

VertexSet level_set(const ScalarField& f, const Rational& v, int cmp) {
    VertexSet s(f.size());
    for (std::size_t x = 0; x < f.size(); ++x) {
        int c = ::cmp(f[x], v);
        if ((cmp == 0 && c == 0) || (cmp < 0 && c <= 0) || (cmp > 0 && c > 0)) s.set(x);
    }
    return s;
}

}  // namespace

VertexSet eval_Z_recursive(const IndicatorTable& table, const ScalarField& f) {
    std::size_t n = f.size();
    std::vector<Rational> vals = f.distinct_values();
    if (vals.size() == 1) return full_set(n);
    if (vals.size() == 2) {
        std::uint64_t m = subset_mask(level_set(f, vals[1], 0));
        if (m >= table.size() || table[m].size() != n)
            throw std::out_of_range("indicator table has no entry for mask " + std::to_string(m));
        return table[m];
    }
    std::size_t k = (vals.size() + 1) / 2;  // 1-based median index
    const Rational& r = vals[k - 1];
    VertexSet lower = eval_Z_recursive(table, f.min_with(r)) & level_set(f, r, -1);
    VertexSet upper = eval_Z_recursive(table, f.max_with(r)) & level_set(f, r, 1);
    return lower | upper;
}

CriticalMapOracle CriticalMapOracle::from_operator(OperatorHandle t) {
    CriticalMapOracle z;
    z.space_ = t->space_ptr();
    z.op_ = std::move(t);
    return z;
}

CriticalMapOracle CriticalMapOracle::from_table(SpacePtr space, IndicatorTable table) {
    std::size_t n = space->size();
    if (n > 63 || table.size() != (std::size_t{1} << n))
        throw std::invalid_argument("indicator table must have 2^|V| entries");
    for (std::size_t m = 0; m < table.size(); ++m) {
        if (table[m].size() != n) throw std::invalid_argument("indicator table entry " + std::to_string(m) + " has the wrong size");
        if (table[m].none()) throw std::invalid_argument("critical map values must be nonempty");
    }
    CriticalMapOracle z;
    z.space_ = std::move(space);
    z.table_ = std::move(table);
    return z;
}

VertexSet CriticalMapOracle::operator()(const ScalarField& f) const {
    require_same_space(*space_, f.space(), "critical map");
    VertexSet s = op_ ? (*op_)(f).zero_set() : eval_Z_recursive(table_, f);
    if (s.none()) throw std::logic_error("critical map returned the empty set at " + f.to_string());
    return s;
}

VertexSet CriticalMapOracle::on_indicator(std::uint64_t mask) const {
    if (!op_) return table_.at(mask);
    return (*this)(ScalarField::indicator(space_, subset_from_mask(space_->size(), mask)));
}

const IndicatorTable& CriticalMapOracle::table(std::size_t cap) const {
    if (table_.empty()) {
        require_cap(space_->size(), cap);
        std::size_t count = std::size_t{1} << space_->size();
        table_.reserve(count);
        for (std::size_t m = 0; m < count; ++m) table_.push_back(on_indicator(m));
    }
    return table_;
}

IndicatorTable indicator_table(const CriticalMapOracle& z, std::size_t cap) { return z.table(cap); }

bool ExtractedSystem::all_h() const { return !first_h_failure(); }

std::optional<std::size_t> ExtractedSystem::first_h_failure() const {
    for (std::size_t x = 0; x < hypothesis_h.size(); ++x)
        if (!hypothesis_h[x]) return x;
    return std::nullopt;
}

NeighborhoodSystem ExtractedSystem::system() const { return NeighborhoodSystem(space, d); }

Json ExtractedSystem::to_json() const {
    Json sys = Json::object(), h = Json::object();
    for (std::size_t x = 0; x < d.size(); ++x) {
        sys[space->label(x)] = set_json(*space, d[x]);
        h[space->label(x)] = static_cast<bool>(hypothesis_h[x]);
    }
    return {{"neighborhoods", sys}, {"hypothesis_h", h}};
}

ExtractedSystem extract_system(const CriticalMapOracle& z, std::size_t cap) {
    std::size_t n = z.space().size();
    const IndicatorTable& table = z.table(cap);
    ExtractedSystem out;
    out.space = z.space_ptr();
    for (std::size_t x = 0; x < n; ++x) {
        std::uint64_t bit = std::uint64_t{1} << x;
        std::uint64_t inter = (std::uint64_t{1} << n) - 1;
        for (std::uint64_t m = 0; m < table.size(); ++m)
            if ((m & bit) && table[m].test(x)) inter &= m;
        VertexSet dx = subset_from_mask(n, inter);
        out.d.push_back(dx);
        out.hypothesis_h.push_back(table[inter].test(x));
    }
    return out;
}

namespace {

struct ZTally {
    AxiomResult r;
    explicit ZTally(std::string name) { r.axiom = std::move(name); }
    void fail(Witness w) {
        ++r.violations;
        r.verdict = Verdict::Fails;
        if (!r.witness) r.witness = std::move(w);
    }
    void check(bool ok, const std::function<Witness()>& w) {
        ++r.checked;
        if (!ok) fail(w());
    }
};

std::size_t first_difference(const VertexSet& a, const VertexSet& b) {
    std::size_t x = (a ^ b).find_first();
    return x == VertexSet::npos ? 0 : x;
}

std::string set_pair(const FiniteSpace& s, const VertexSet& a, const VertexSet& b) {
    return format_set(s, a) + " vs " + format_set(s, b);
}

}  // namespace

AxiomReport check_Z_axioms(const CriticalMapOracle& z, const FunctionGrid& grid, const ZAxiomOptions& opt) {
    require_same_space(z.space(), grid.space(), "Z-axiom audit");
    const FiniteSpace& space = z.space();
    std::size_t n = space.size();
    const IndicatorTable& table = z.table(opt.cap);
    std::vector<ScalarField> fields = enumerate_fields(grid);
    std::vector<VertexSet> zf;
    for (const auto& f : fields) zf.push_back(z(f));

    std::vector<Rational> cut_values;
    if (grid.is_product()) {
        cut_values = grid.value_set();
    } else {
        std::set<Rational> all;
        for (const auto& f : fields)
            for (const auto& v : f.values()) all.insert(v);
        cut_values.assign(all.begin(), all.end());
    }
    std::optional<Rational> eps = z.op() ? z.op()->truncation_eps() : std::nullopt;

    ZTally z1("Z1"), z2("Z2"), z3("Z3"), z4("Z4"), z5("Z5");
    auto z2_probe = [&](std::size_t i, const Rational& r) {
        const ScalarField& f = fields[i];
        VertexSet s = z(f * r);
        z2.check(s == zf[i], [&] {
            return Witness{f, std::nullopt, first_difference(s, zf[i]), r, std::nullopt, std::nullopt, std::nullopt,
                           set_pair(space, zf[i], s)};
        });
    };
    // The sub-unit scale eps/alpha, alpha = max f - min f, squeezes f into the
    // truncation band; these probes run first so their witness is reported.
    if (eps)
        for (std::size_t i = 0; i < fields.size(); ++i) {
            Rational alpha = fields[i].max() - fields[i].min();
            if (alpha > *eps) z2_probe(i, *eps / alpha);
        }
    for (std::size_t i = 0; i < fields.size(); ++i) {
        const ScalarField& f = fields[i];
        for (const auto& c : opt.cset) {
            VertexSet s = z(f + c);
            z1.check(s == zf[i], [&] {
                return Witness{f, std::nullopt, first_difference(s, zf[i]), std::nullopt, std::nullopt, c, std::nullopt,
                               set_pair(space, zf[i], s)};
            });
        }
        for (const auto& r : opt.rset) z2_probe(i, r);
        for (const auto& r : cut_values) {
            VertexSet split = (z(f.min_with(r)) & level_set(f, r, -1)) | (z(f.max_with(r)) & level_set(f, r, 1));
            z3.check(split == zf[i], [&] {
                return Witness{f, std::nullopt, first_difference(split, zf[i]), r, std::nullopt, std::nullopt,
                               std::nullopt, set_pair(space, zf[i], split)};
            });
        }
    }
    std::uint64_t all = (std::uint64_t{1} << n) - 1;
    auto indicator = [&](std::uint64_t m) { return ScalarField::indicator(z.space_ptr(), subset_from_mask(n, m)); };
    for (std::uint64_t m = 0; m < table.size(); ++m) {
        VertexSet comp = subset_from_mask(n, all & ~m);
        bool ok = comp.is_subset_of(table[m]);
        z4.check(ok, [&] {
            std::size_t x = (comp - table[m]).find_first();
            return Witness{indicator(m), std::nullopt, x, std::nullopt, std::nullopt, std::nullopt, std::nullopt,
                           "complement of K not contained in Z[1_K]"};
        });
    }
    ExtractedSystem ex = extract_system(z, opt.cap);
    for (std::size_t x = 0; x < n; ++x) {
        std::uint64_t bit = std::uint64_t{1} << x, dx = subset_mask(ex.d[x]);
        for (std::uint64_t m = 0; m < table.size(); ++m) {
            if (!(m & bit)) continue;
            bool in_k = table[m].test(x), contains_d = (m & dx) == dx;
            z5.check(in_k == contains_d, [&] {
                return Witness{indicator(m), std::nullopt, x, std::nullopt, std::nullopt, std::nullopt, std::nullopt,
                               in_k ? "K in K_x but D_x not contained in K" : "D_x contained in K but K not in K_x"};
            });
        }
    }
    AxiomReport rep;
    for (auto* t : {&z1, &z2, &z3, &z4, &z5}) rep.results.push_back(std::move(t->r));
    return rep;
}

const char* classify_verdict_name(ClassifyVerdict v) {
    switch (v) {
        case ClassifyVerdict::Certified: return "certified";
        case ClassifyVerdict::HypothesisFails: return "hypothesis-h-fails";
        case ClassifyVerdict::Counterexample: return "counterexample";
        case ClassifyVerdict::NotHomogeneous: return "not-homogeneous";
    }
    return "?";
}

Json Classification::to_json() const {
    const FiniteSpace& space = *extracted.space;
    Json o = {{"verdict", classify_verdict_name(verdict)},
              {"extracted", extracted.to_json()},
              {"fields_checked", fields_checked},
              {"mismatches", mismatches},
              {"reconstruction_contains", reconstruction_contains}};
    if (auto x = extracted.first_h_failure()) {
        o["h_failure"] = {{"x", space.label(*x)}, {"D_x", set_json(space, extracted.d[*x])}};
    }
    if (verdict == ClassifyVerdict::Certified) o["certified"] = neighborhoods_json(extracted.system());
    if (homogeneity) o["homogeneity"] = homogeneity->to_json(space);
    if (counterexample) o["counterexample"] = field_json(space, *counterexample);
    return o;
}

Classification classify(const OperatorHandle& t, const FunctionGrid& grid, const ClassifyOptions& opt) {
    require_same_space(t->space(), grid.space(), "classification");
    Classification out;
    CriticalMapOracle z = CriticalMapOracle::from_operator(t);
    out.extracted = extract_system(z, opt.cap);
    GridEvaluation ev = evaluate_grid(t, grid);
    if (opt.audit_homogeneity) {
        Rational p = t->homogeneity_degree().value_or(Rational(1));
        out.homogeneity = check_homogeneity(t, ev, p, opt.homogeneity_rset);
        if (!out.homogeneity->holds()) {
            out.verdict = ClassifyVerdict::NotHomogeneous;
            return out;
        }
    }
    OperatorHandle td = make_TD(out.extracted.system());
    for (std::size_t i = 0; i < ev.fields.size(); ++i) {
        ++out.fields_checked;
        VertexSet zt = ev.values[i].zero_set();
        VertexSet zd = (*td)(ev.fields[i]).zero_set();
        if (zt != zd) {
            ++out.mismatches;
            if (!out.counterexample) out.counterexample = ev.fields[i];
        }
        if (!zt.is_subset_of(zd)) out.reconstruction_contains = false;
    }
    if (!out.extracted.all_h())
        out.verdict = ClassifyVerdict::HypothesisFails;
    else if (out.mismatches > 0)
        out.verdict = ClassifyVerdict::Counterexample;
    return out;
}

}  // namespace descent
