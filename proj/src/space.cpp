#include "descent/space.hpp"

#include <algorithm>
#include <stdexcept>

namespace descent {

FiniteSpace::FiniteSpace(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) throw std::invalid_argument("a finite space needs at least one vertex");
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (!index_.emplace(labels_[i], i).second)
            throw std::invalid_argument("duplicate vertex label '" + labels_[i] + "'");
}

SpacePtr FiniteSpace::make(std::vector<std::string> labels) {
    return SpacePtr(new FiniteSpace(std::move(labels)));
}

SpacePtr FiniteSpace::integers(std::size_t n) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    return make(std::move(labels));
}

std::size_t FiniteSpace::index(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) throw std::out_of_range("unknown vertex '" + label + "'");
    return it->second;
}

void require_same_space(const FiniteSpace& a, const FiniteSpace& b, const char* what) {
    if (!a.same_as(b)) throw std::invalid_argument(std::string("space mismatch in ") + what);
}

VertexSet full_set(std::size_t n) {
    VertexSet s(n);
    s.set();
    return s;
}

VertexSet singleton(std::size_t n, std::size_t i) {
    VertexSet s(n);
    s.set(i);
    return s;
}

std::vector<std::size_t> members(const VertexSet& s) {
    std::vector<std::size_t> out;
    for (auto i = s.find_first(); i != VertexSet::npos; i = s.find_next(i)) out.push_back(i);
    return out;
}

std::string format_set(const FiniteSpace& space, const VertexSet& s) {
    std::string out = "{";
    bool first = true;
    for (auto i : members(s)) {
        if (!first) out += ",";
        out += space.label(i);
        first = false;
    }
    return out + "}";
}

ScalarField::ScalarField(SpacePtr space, std::vector<Rational> values)
    : space_(std::move(space)), values_(std::move(values)) {
    if (!space_) throw std::invalid_argument("field without a space");
    if (values_.size() != space_->size())
        throw std::invalid_argument("field has " + std::to_string(values_.size()) + " values for " +
                                    std::to_string(space_->size()) + " vertices");
    for (auto& v : values_) v.canonicalize();
}

ScalarField ScalarField::constant(SpacePtr space, const Rational& c) {
    std::size_t n = space->size();
    return ScalarField(std::move(space), std::vector<Rational>(n, c));
}

ScalarField ScalarField::indicator(SpacePtr space, const VertexSet& k) {
    std::vector<Rational> v(space->size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = k.test(i) ? 1 : 0;
    return ScalarField(std::move(space), std::move(v));
}

Rational ScalarField::min() const { return *std::min_element(values_.begin(), values_.end()); }
Rational ScalarField::max() const { return *std::max_element(values_.begin(), values_.end()); }

VertexSet ScalarField::argmin() const {
    Rational m = min();
    VertexSet s(size());
    for (std::size_t i = 0; i < size(); ++i)
        if (values_[i] == m) s.set(i);
    return s;
}

std::vector<Rational> ScalarField::distinct_values() const {
    std::vector<Rational> v = values_;
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

ScalarField ScalarField::operator+(const Rational& c) const {
    std::vector<Rational> v = values_;
    for (auto& x : v) x += c;
    return ScalarField(space_, std::move(v));
}

ScalarField ScalarField::operator*(const Rational& r) const {
    std::vector<Rational> v = values_;
    for (auto& x : v) x *= r;
    return ScalarField(space_, std::move(v));
}

ScalarField ScalarField::operator+(const ScalarField& g) const {
    require_same_space(space(), g.space(), "field addition");
    std::vector<Rational> v = values_;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += g[i];
    return ScalarField(space_, std::move(v));
}

ScalarField ScalarField::operator-(const ScalarField& g) const {
    require_same_space(space(), g.space(), "field subtraction");
    std::vector<Rational> v = values_;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= g[i];
    return ScalarField(space_, std::move(v));
}

ScalarField ScalarField::min_with(const Rational& r) const {
    std::vector<Rational> v = values_;
    for (auto& x : v)
        if (x > r) x = r;
    return ScalarField(space_, std::move(v));
}

ScalarField ScalarField::max_with(const Rational& r) const {
    std::vector<Rational> v = values_;
    for (auto& x : v)
        if (x < r) x = r;
    return ScalarField(space_, std::move(v));
}

std::string ScalarField::to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (i) out += ",";
        out += descent::to_string(values_[i]);
    }
    return out + ")";
}

VertexSet ExtendedField::zero_set() const {
    VertexSet s(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i)
        if (values_[i].is_zero()) s.set(i);
    return s;
}

bool ExtendedField::has_infinite() const {
    return std::any_of(values_.begin(), values_.end(), [](const ExtValue& v) { return v.is_infinite(); });
}

bool ExtendedField::all_exact() const {
    return std::all_of(values_.begin(), values_.end(), [](const ExtValue& v) { return !v.is_finite() || v.is_exact(); });
}

std::string ExtendedField::key() const {
    std::string out;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (i) out += "|";
        out += values_[i].key();
    }
    return out;
}

std::string ExtendedField::to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (i) out += ",";
        out += values_[i].to_string();
    }
    return out + ")";
}

}  // namespace descent
