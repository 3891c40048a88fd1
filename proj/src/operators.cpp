#include "descent/operators.hpp"

#include "descent/json_util.hpp"

#include <algorithm>
#include <stdexcept>

namespace descent {

Exponent Exponent::of(const Rational& m) {
    if (sgn(m) <= 0) throw std::invalid_argument("exponent m must be positive, got " + descent::to_string(m));
    return {false, m};
}

Exponent Exponent::parse(const std::string& text) {
    if (text == "inf" || text == "infinity") return inf();
    return of(parse_rational(text));
}

Phi Phi::power(const Rational& p) {
    if (sgn(p) <= 0) throw std::invalid_argument("power phi needs p > 0");
    Phi phi;
    phi.kind_ = Kind::Power;
    phi.param_ = p;
    return phi;
}

Phi Phi::threshold(const Rational& eps) {
    if (sgn(eps) < 0) throw std::invalid_argument("threshold phi needs eps >= 0");
    Phi phi;
    phi.kind_ = Kind::Threshold;
    phi.param_ = eps;
    return phi;
}

Phi Phi::table(std::vector<std::pair<Rational, Rational>> entries) {
    std::sort(entries.begin(), entries.end());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (sgn(entries[i].first) < 0 || sgn(entries[i].second) < 0)
            throw std::invalid_argument("table phi maps R+ to R+");
        if (i && entries[i].first == entries[i - 1].first) throw std::invalid_argument("duplicate table phi input");
        if (sgn(entries[i].first) == 0 && sgn(entries[i].second) != 0) throw std::invalid_argument("table phi needs phi(0) = 0");
        if (i && entries[i].second < entries[i - 1].second) throw std::invalid_argument("table phi must be non-decreasing");
    }
    Phi phi;
    phi.kind_ = Kind::Table;
    phi.table_ = std::move(entries);
    return phi;
}

ExtValue Phi::apply(const Rational& t) const {
    if (sgn(t) < 0) throw std::invalid_argument("phi is defined on R+ only");
    switch (kind_) {
        case Kind::Power: return sgn(t) == 0 ? ExtValue::zero() : ExtValue::from_rational(t).pow(param_);
        case Kind::Threshold: return t > param_ ? ExtValue::from_rational(t) : ExtValue::zero();
        case Kind::Table: break;
    }
    if (sgn(t) == 0) return ExtValue::zero();
    auto it = std::lower_bound(table_.begin(), table_.end(), t, [](const auto& e, const Rational& v) { return e.first < v; });
    if (it == table_.end() || it->first != t) throw std::out_of_range("table phi has no entry for " + descent::to_string(t));
    return ExtValue::from_rational(it->second);
}

ExtValue Phi::apply(const ExtValue& v) const {
    if (v.is_infinite()) return v;
    if (v.is_zero()) return v;
    switch (kind_) {
        case Kind::Power: return v.pow(param_);
        case Kind::Threshold: {
            auto c = compare(v, ExtValue::from_rational(param_));
            if (c == std::partial_ordering::unordered) throw std::domain_error("threshold phi undecided at " + v.to_string());
            return c == std::partial_ordering::greater ? v : ExtValue::zero();
        }
        case Kind::Table: break;
    }
    if (!v.is_rational()) throw std::domain_error("table phi needs exact rational inputs, got " + v.to_string());
    return apply(v.as_rational());
}

bool Phi::strictly_increasing() const {
    switch (kind_) {
        case Kind::Power: return true;
        case Kind::Threshold: return sgn(param_) == 0;
        case Kind::Table: break;
    }
    for (std::size_t i = 1; i < table_.size(); ++i)
        if (!(table_[i].second > table_[i - 1].second)) return false;
    return table_.empty() || sgn(table_.front().first) == 0 || sgn(table_.front().second) > 0;
}

std::optional<Rational> Phi::power_degree() const {
    if (kind_ == Kind::Power) return param_;
    if (kind_ == Kind::Threshold && sgn(param_) == 0) return Rational(1);
    return std::nullopt;
}

Json Phi::to_json() const {
    switch (kind_) {
        case Kind::Power: return {{"kind", "power"}, {"p", rational_json(param_)}};
        case Kind::Threshold: return {{"kind", "threshold"}, {"eps", rational_json(param_)}};
        case Kind::Table: break;
    }
    Json entries = Json::array();
    for (const auto& [t, v] : table_) entries.push_back({rational_json(t), rational_json(v)});
    return {{"kind", "table"}, {"entries", entries}};
}

ExtendedField OperatorNode::operator()(const ScalarField& f) const {
    require_same_space(*space_, f.space(), "operator evaluation");
    ExtendedField t = evaluate(f);
    if (t.size() != f.size()) throw std::logic_error("operator returned a field of the wrong size");
    return t;
}

// ---------------------------------------------------------------- primitives

ExtendedField eval_TL(const Generator& L, const ScalarField& f) {
    require_same_space(L.space(), f.space(), "eval_TL");
    std::size_t n = f.size();
    std::vector<ExtValue> out(n);
    for (std::size_t x = 0; x < n; ++x) {
        Rational s = 0;
        for (std::size_t y = 0; y < n; ++y)
            if (y != x && sgn(L(x, y)) > 0 && f[x] > f[y]) s += L(x, y) * (f[x] - f[y]);
        out[x] = ExtValue::from_rational(s);
    }
    return ExtendedField(std::move(out));
}

namespace {

ExtValue tlm_at(const Generator& L, const Exponent& m, const ScalarField& f, std::size_t x) {
    std::size_t n = f.size();
    if (m.infinite) {
        Rational best = 0;
        for (std::size_t y = 0; y < n; ++y)
            if (y != x && sgn(L(x, y)) > 0 && f[x] - f[y] > best) best = f[x] - f[y];
        return ExtValue::from_rational(best);
    }
    if (m.value == 1) {
        Rational s = 0;
        for (std::size_t y = 0; y < n; ++y)
            if (y != x && sgn(L(x, y)) > 0 && f[x] > f[y]) s += L(x, y) * (f[x] - f[y]);
        return ExtValue::from_rational(s);
    }
    ExtValue s;
    for (std::size_t y = 0; y < n; ++y)
        if (y != x && sgn(L(x, y)) > 0 && f[x] > f[y])
            s += ExtValue::from_rational(f[x] - f[y]).pow(m.value).scaled(L(x, y));
    return s.pow(1 / m.value);
}

}  // namespace

ExtendedField eval_TLm(const Generator& L, const Exponent& m, const ScalarField& f) {
    require_same_space(L.space(), f.space(), "eval_TLm");
    if (!m.infinite && sgn(m.value) <= 0) throw std::invalid_argument("exponent m must be positive");
    std::vector<ExtValue> out(f.size());
    for (std::size_t x = 0; x < f.size(); ++x) out[x] = tlm_at(L, m, f, x);
    return ExtendedField(std::move(out));
}

ExtendedField eval_TLm(const Generator& L, const std::vector<Exponent>& m, const ScalarField& f) {
    require_same_space(L.space(), f.space(), "eval_TLm");
    if (m.size() != f.size()) throw std::invalid_argument("per-vertex exponent table has the wrong size");
    std::vector<ExtValue> out(f.size());
    for (std::size_t x = 0; x < f.size(); ++x) {
        if (!m[x].infinite && sgn(m[x].value) <= 0) throw std::invalid_argument("exponent m must be positive");
        out[x] = tlm_at(L, m[x], f, x);
    }
    return ExtendedField(std::move(out));
}

ExtendedField eval_TD(const NeighborhoodSystem& D, const ScalarField& f) {
    require_same_space(D.space(), f.space(), "eval_TD");
    std::size_t n = f.size();
    std::vector<ExtValue> out(n);
    for (std::size_t x = 0; x < n; ++x) {
        Rational best = 0;
        const VertexSet& d = D[x];
        for (auto y = d.find_first(); y != VertexSet::npos; y = d.find_next(y))
            if (f[x] - f[y] > best) best = f[x] - f[y];
        out[x] = ExtValue::from_rational(best);
    }
    return ExtendedField(std::move(out));
}

ExtendedField eval_semiglobal_slope(const NeighborhoodSystem& D, const MetricMatrix& m, const ScalarField& f) {
    require_same_space(D.space(), f.space(), "eval_semiglobal_slope");
    require_same_space(m.space(), f.space(), "eval_semiglobal_slope");
    std::size_t n = f.size();
    std::vector<ExtValue> out(n);
    for (std::size_t x = 0; x < n; ++x) {
        Rational best = 0;
        const VertexSet& d = D[x];
        for (auto y = d.find_first(); y != VertexSet::npos; y = d.find_next(y)) {
            if (y == x || !(f[x] > f[y])) continue;
            Rational q = (f[x] - f[y]) / m(x, y);
            if (q > best) best = q;
        }
        out[x] = ExtValue::from_rational(best);
    }
    return ExtendedField(std::move(out));
}

ExtendedField eval_nonlocal(const MeasureMatrix& mu, const Phi& phi, const ScalarField& f, bool oriented) {
    require_same_space(mu.space(), f.space(), "eval_nonlocal");
    std::size_t n = f.size();
    std::vector<ExtValue> out(n);
    for (std::size_t x = 0; x < n; ++x) {
        ExtValue s;
        for (std::size_t y = 0; y < n; ++y) {
            if (y == x || sgn(mu(x, y)) == 0) continue;
            Rational d = oriented ? positive_part(f[x] - f[y]) : rational_abs(f[x] - f[y]);
            if (sgn(d) == 0) continue;
            s += phi.apply(d).scaled(mu(x, y));
        }
        out[x] = s;
    }
    return ExtendedField(std::move(out));
}

namespace {

Json exponent_json(const Exponent& m) { return m.to_string(); }

class TLNode final : public OperatorNode {
public:
    explicit TLNode(Generator L) : OperatorNode(L.space_ptr()), L_(std::move(L)) {}
    ExtendedField evaluate(const ScalarField& f) const override { return eval_TL(L_, f); }
    Json to_json() const override { return {{"op", "TL"}, {"L", matrix_json(L_.matrix())}}; }
    std::optional<Rational> homogeneity_degree() const override { return Rational(1); }

private:
    Generator L_;
};

class TLmNode final : public OperatorNode {
public:
    TLmNode(Generator L, std::vector<Exponent> m, bool per_vertex)
        : OperatorNode(L.space_ptr()), L_(std::move(L)), m_(std::move(m)), per_vertex_(per_vertex) {}
    ExtendedField evaluate(const ScalarField& f) const override {
        return per_vertex_ ? eval_TLm(L_, m_, f) : eval_TLm(L_, m_[0], f);
    }
    Json to_json() const override {
        Json m;
        if (per_vertex_) {
            m = Json::object();
            for (std::size_t x = 0; x < m_.size(); ++x) m[space().label(x)] = exponent_json(m_[x]);
        } else {
            m = exponent_json(m_[0]);
        }
        return {{"op", "TLm"}, {"m", m}, {"L", matrix_json(L_.matrix())}};
    }
    std::optional<Rational> homogeneity_degree() const override { return Rational(1); }

private:
    Generator L_;
    std::vector<Exponent> m_;
    bool per_vertex_;
};

class TDNode final : public OperatorNode {
public:
    explicit TDNode(NeighborhoodSystem D) : OperatorNode(D.space_ptr()), D_(std::move(D)) {}
    ExtendedField evaluate(const ScalarField& f) const override { return eval_TD(D_, f); }
    Json to_json() const override { return {{"op", "TD"}, {"D", neighborhoods_json(D_)}}; }
    std::optional<Rational> homogeneity_degree() const override { return Rational(1); }

private:
    NeighborhoodSystem D_;
};

class SemiGlobalNode final : public OperatorNode {
public:
    SemiGlobalNode(NeighborhoodSystem D, MetricMatrix m) : OperatorNode(D.space_ptr()), D_(std::move(D)), m_(std::move(m)) {
        require_same_space(D_.space(), m_.space(), "semiglobal slope");
    }
    ExtendedField evaluate(const ScalarField& f) const override { return eval_semiglobal_slope(D_, m_, f); }
    Json to_json() const override {
        return {{"op", "SemiGlobalSlope"}, {"D", neighborhoods_json(D_)}, {"metric", matrix_json(m_.matrix())}};
    }
    std::optional<Rational> homogeneity_degree() const override { return Rational(1); }

private:
    NeighborhoodSystem D_;
    MetricMatrix m_;
};

class NonlocalNode final : public OperatorNode {
public:
    NonlocalNode(MeasureMatrix mu, Phi phi, bool oriented)
        : OperatorNode(mu.space_ptr()), mu_(std::move(mu)), phi_(std::move(phi)), oriented_(oriented) {}
    ExtendedField evaluate(const ScalarField& f) const override { return eval_nonlocal(mu_, phi_, f, oriented_); }
    Json to_json() const override {
        return {{"op", "Nonlocal"}, {"mu", matrix_json(mu_.matrix())}, {"phi", phi_.to_json()}, {"oriented", oriented_}};
    }
    std::optional<Rational> homogeneity_degree() const override { return phi_.power_degree(); }

private:
    MeasureMatrix mu_;
    Phi phi_;
    bool oriented_;
};

class ZeroNode final : public OperatorNode {
public:
    using OperatorNode::OperatorNode;
    ExtendedField evaluate(const ScalarField& f) const override { return ExtendedField(std::vector<ExtValue>(f.size())); }
    Json to_json() const override { return {{"op", "Zero"}}; }
    bool is_zero_operator() const override { return true; }
};

class IndicatorNode final : public OperatorNode {
public:
    explicit IndicatorNode(OperatorHandle t) : OperatorNode(t->space_ptr()), t_(std::move(t)) {}
    ExtendedField evaluate(const ScalarField& f) const override {
        ExtendedField v = (*t_)(f);
        for (std::size_t x = 0; x < v.size(); ++x) v[x] = v[x].is_zero() ? ExtValue::zero() : ExtValue::from_rational(1);
        return v;
    }
    Json to_json() const override { return {{"op", "Indicator"}, {"arg", t_->to_json()}}; }

private:
    OperatorHandle t_;
};

class NeighborMaxGapNode final : public OperatorNode {
public:
    explicit NeighborMaxGapNode(NeighborhoodSystem d) : OperatorNode(d.space_ptr()), d_(std::move(d)) {}
    ExtendedField evaluate(const ScalarField& f) const override {
        std::vector<ExtValue> out(f.size());
        for (std::size_t x = 0; x < f.size(); ++x) {
            std::optional<Rational> top;
            const VertexSet& s = d_[x];
            for (auto y = s.find_first(); y != VertexSet::npos; y = s.find_next(y))
                if (y != x && (!top || f[y] > *top)) top = f[y];
            if (top) out[x] = ExtValue::from_rational(positive_part(f[x] - *top));
        }
        return ExtendedField(std::move(out));
    }
    Json to_json() const override { return {{"op", "NeighborMaxGap"}, {"D", neighborhoods_json(d_)}}; }
    std::optional<Rational> homogeneity_degree() const override { return Rational(1); }

private:
    NeighborhoodSystem d_;
};

SpacePtr common_space(const std::vector<OperatorHandle>& ops, const char* what) {
    if (ops.empty()) throw std::invalid_argument(std::string(what) + " needs at least one operand");
    for (const auto& op : ops) {
        if (!op) throw std::invalid_argument(std::string(what) + " has a null operand");
        require_same_space(ops[0]->space(), op->space(), what);
    }
    return ops[0]->space_ptr();
}

std::optional<Rational> common_degree(const std::vector<OperatorHandle>& ops) {
    std::optional<Rational> deg;
    for (const auto& op : ops) {
        if (op->is_zero_operator()) continue;
        auto d = op->homogeneity_degree();
        if (!d || (deg && *deg != *d)) return std::nullopt;
        deg = d;
    }
    return deg;
}

Json children_json(const std::vector<OperatorHandle>& ops) {
    Json a = Json::array();
    for (const auto& op : ops) a.push_back(op->to_json());
    return a;
}

class SumNode final : public OperatorNode {
public:
    explicit SumNode(std::vector<OperatorHandle> t) : OperatorNode(common_space(t, "Sum")), terms_(std::move(t)) {}
    ExtendedField evaluate(const ScalarField& f) const override {
        ExtendedField acc = (*terms_[0])(f);
        for (std::size_t i = 1; i < terms_.size(); ++i) {
            ExtendedField v = (*terms_[i])(f);
            for (std::size_t x = 0; x < acc.size(); ++x) acc[x] += v[x];
        }
        return acc;
    }
    Json to_json() const override { return {{"op", "Sum"}, {"terms", children_json(terms_)}}; }
    std::optional<Rational> homogeneity_degree() const override { return common_degree(terms_); }
    bool is_zero_operator() const override {
        return std::all_of(terms_.begin(), terms_.end(), [](const OperatorHandle& t) { return t->is_zero_operator(); });
    }

private:
    std::vector<OperatorHandle> terms_;
};

class PostComposeNode final : public OperatorNode {
public:
    PostComposeNode(Phi phi, OperatorHandle t) : OperatorNode(t->space_ptr()), phi_(std::move(phi)), t_(std::move(t)) {
        if (!phi_.strictly_increasing()) throw std::invalid_argument("PostCompose needs a strictly increasing phi");
    }
    ExtendedField evaluate(const ScalarField& f) const override {
        ExtendedField v = (*t_)(f);
        for (std::size_t x = 0; x < v.size(); ++x) v[x] = phi_.apply(v[x]);
        return v;
    }
    Json to_json() const override { return {{"op", "PostCompose"}, {"phi", phi_.to_json()}, {"arg", t_->to_json()}}; }
    std::optional<Rational> homogeneity_degree() const override {
        auto d = t_->homogeneity_degree();
        auto q = phi_.power_degree();
        if (d && q) return *d * *q;
        return std::nullopt;
    }

private:
    Phi phi_;
    OperatorHandle t_;
};

class ScaleNode final : public OperatorNode {
public:
    ScaleNode(Rational r, OperatorHandle t) : OperatorNode(t->space_ptr()), r_(std::move(r)), t_(std::move(t)) {
        if (sgn(r_) < 0) throw std::invalid_argument("Scale needs r >= 0");
    }
    ExtendedField evaluate(const ScalarField& f) const override {
        ExtendedField v = (*t_)(f);
        for (std::size_t x = 0; x < v.size(); ++x) v[x] = v[x].scaled(r_);
        return v;
    }
    Json to_json() const override { return {{"op", "Scale"}, {"r", rational_json(r_)}, {"arg", t_->to_json()}}; }
    std::optional<Rational> homogeneity_degree() const override { return t_->homogeneity_degree(); }
    bool is_zero_operator() const override { return sgn(r_) == 0 || t_->is_zero_operator(); }

private:
    Rational r_;
    OperatorHandle t_;
};

class TruncateNode final : public OperatorNode {
public:
    TruncateNode(Rational eps, OperatorHandle t) : OperatorNode(t->space_ptr()), eps_(std::move(eps)), t_(std::move(t)) {
        if (sgn(eps_) <= 0) throw std::invalid_argument("TruncateEps needs eps > 0");
    }
    ExtendedField evaluate(const ScalarField& f) const override {
        ExtendedField v = (*t_)(f);
        Rational level = f.min() + eps_;
        for (std::size_t x = 0; x < v.size(); ++x)
            if (f[x] <= level) v[x] = ExtValue::zero();
        return v;
    }
    Json to_json() const override { return {{"op", "TruncateEps"}, {"eps", rational_json(eps_)}, {"arg", t_->to_json()}}; }
    std::optional<Rational> truncation_eps() const override { return eps_; }

private:
    Rational eps_;
    OperatorHandle t_;
};

class RestrictNode final : public OperatorNode {
public:
    RestrictNode(VertexSet k, OperatorHandle t) : OperatorNode(t->space_ptr()), k_(std::move(k)), t_(std::move(t)) {
        if (k_.size() != space().size()) throw std::invalid_argument("RestrictK set has the wrong universe size");
    }
    ExtendedField evaluate(const ScalarField& f) const override {
        ExtendedField v = (*t_)(f);
        for (std::size_t x = 0; x < v.size(); ++x)
            if (!k_.test(x)) v[x] = ExtValue::zero();
        return v;
    }
    Json to_json() const override { return {{"op", "RestrictK"}, {"K", set_json(space(), k_)}, {"arg", t_->to_json()}}; }
    std::optional<Rational> homogeneity_degree() const override { return t_->homogeneity_degree(); }

private:
    VertexSet k_;
    OperatorHandle t_;
};

class ExtremumNode final : public OperatorNode {
public:
    ExtremumNode(std::vector<OperatorHandle> fam, bool sup)
        : OperatorNode(common_space(fam, sup ? "Sup" : "Inf")), fam_(std::move(fam)), sup_(sup) {}
    ExtendedField evaluate(const ScalarField& f) const override {
        ExtendedField acc = (*fam_[0])(f);
        for (std::size_t i = 1; i < fam_.size(); ++i) {
            ExtendedField v = (*fam_[i])(f);
            for (std::size_t x = 0; x < acc.size(); ++x) acc[x] = sup_ ? max_value(acc[x], v[x]) : min_value(acc[x], v[x]);
        }
        return acc;
    }
    Json to_json() const override { return {{"op", sup_ ? "Sup" : "Inf"}, {"terms", children_json(fam_)}}; }
    std::optional<Rational> homogeneity_degree() const override { return common_degree(fam_); }

private:
    std::vector<OperatorHandle> fam_;
    bool sup_;
};

}  // namespace

OperatorHandle make_TL(Generator L) { return std::make_shared<TLNode>(std::move(L)); }

OperatorHandle make_TLm(Generator L, Exponent m) {
    if (!m.infinite && sgn(m.value) <= 0) throw std::invalid_argument("exponent m must be positive");
    return std::make_shared<TLmNode>(std::move(L), std::vector<Exponent>{m}, false);
}

OperatorHandle make_TLm(Generator L, std::vector<Exponent> m) {
    if (m.size() != L.size()) throw std::invalid_argument("per-vertex exponent table has the wrong size");
    for (const auto& e : m)
        if (!e.infinite && sgn(e.value) <= 0) throw std::invalid_argument("exponent m must be positive");
    return std::make_shared<TLmNode>(std::move(L), std::move(m), true);
}

OperatorHandle make_TD(NeighborhoodSystem D) { return std::make_shared<TDNode>(std::move(D)); }

OperatorHandle make_semiglobal_slope(NeighborhoodSystem D, MetricMatrix m) {
    return std::make_shared<SemiGlobalNode>(std::move(D), std::move(m));
}

OperatorHandle make_nonlocal(MeasureMatrix mu, Phi phi, bool oriented) {
    return std::make_shared<NonlocalNode>(std::move(mu), std::move(phi), oriented);
}

OperatorHandle make_zero(SpacePtr space) { return std::make_shared<ZeroNode>(std::move(space)); }
OperatorHandle make_indicator(OperatorHandle t) { return std::make_shared<IndicatorNode>(std::move(t)); }
OperatorHandle make_neighbor_max_gap(NeighborhoodSystem d) { return std::make_shared<NeighborMaxGapNode>(std::move(d)); }
OperatorHandle make_sum(std::vector<OperatorHandle> t) { return std::make_shared<SumNode>(std::move(t)); }
OperatorHandle make_post_compose(Phi phi, OperatorHandle t) { return std::make_shared<PostComposeNode>(std::move(phi), std::move(t)); }
OperatorHandle make_scale(Rational r, OperatorHandle t) { return std::make_shared<ScaleNode>(std::move(r), std::move(t)); }
OperatorHandle make_truncate_eps(Rational eps, OperatorHandle t) { return std::make_shared<TruncateNode>(std::move(eps), std::move(t)); }
OperatorHandle make_restrict(VertexSet k, OperatorHandle t) { return std::make_shared<RestrictNode>(std::move(k), std::move(t)); }
OperatorHandle make_sup(std::vector<OperatorHandle> fam) { return std::make_shared<ExtremumNode>(std::move(fam), true); }
OperatorHandle make_inf(std::vector<OperatorHandle> fam) { return std::make_shared<ExtremumNode>(std::move(fam), false); }

}  // namespace descent
