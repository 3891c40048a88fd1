#pragma once

#include "descent/ext_value.hpp"
#include "descent/rational.hpp"

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace descent {

class FiniteSpace;
using SpacePtr = std::shared_ptr<const FiniteSpace>;

class FiniteSpace {
public:
    static SpacePtr make(std::vector<std::string> labels);
    // Labels "0", "1", ..., "n-1".
    static SpacePtr integers(std::size_t n);

    std::size_t size() const { return labels_.size(); }
    const std::string& label(std::size_t i) const { return labels_.at(i); }
    const std::vector<std::string>& labels() const { return labels_; }
    std::size_t index(const std::string& label) const;  // throws on unknown label
    bool contains(const std::string& label) const { return index_.count(label) != 0; }

    bool same_as(const FiniteSpace& other) const { return this == &other || labels_ == other.labels_; }

private:
    explicit FiniteSpace(std::vector<std::string> labels);
    std::vector<std::string> labels_;
    std::unordered_map<std::string, std::size_t> index_;
};

void require_same_space(const FiniteSpace& a, const FiniteSpace& b, const char* what);

using VertexSet = boost::dynamic_bitset<>;

VertexSet full_set(std::size_t n);
VertexSet singleton(std::size_t n, std::size_t i);
std::vector<std::size_t> members(const VertexSet& s);
std::string format_set(const FiniteSpace& space, const VertexSet& s);  // "{a,b}"

class ScalarField {
public:
    ScalarField(SpacePtr space, std::vector<Rational> values);
    static ScalarField constant(SpacePtr space, const Rational& c);
    static ScalarField indicator(SpacePtr space, const VertexSet& k);

    const SpacePtr& space_ptr() const { return space_; }
    const FiniteSpace& space() const { return *space_; }
    std::size_t size() const { return values_.size(); }
    const Rational& operator[](std::size_t i) const { return values_[i]; }
    const std::vector<Rational>& values() const { return values_; }

    Rational min() const;
    Rational max() const;
    VertexSet argmin() const;
    std::vector<Rational> distinct_values() const;  // sorted ascending

    ScalarField operator+(const Rational& c) const;
    ScalarField operator-(const Rational& c) const { return *this + Rational(-c); }
    ScalarField operator*(const Rational& r) const;
    ScalarField operator+(const ScalarField& g) const;
    ScalarField operator-(const ScalarField& g) const;
    ScalarField min_with(const Rational& r) const;  // r ∧ f
    ScalarField max_with(const Rational& r) const;  // r ∨ f

    bool operator==(const ScalarField& g) const { return values_ == g.values_; }
    std::string to_string() const;  // "(1,0,2)"

private:
    SpacePtr space_;
    std::vector<Rational> values_;
};

class ExtendedField {
public:
    explicit ExtendedField(std::vector<ExtValue> values) : values_(std::move(values)) {}
    std::size_t size() const { return values_.size(); }
    const ExtValue& operator[](std::size_t i) const { return values_[i]; }
    ExtValue& operator[](std::size_t i) { return values_[i]; }
    const std::vector<ExtValue>& values() const { return values_; }

    VertexSet zero_set() const;
    bool has_infinite() const;
    bool all_exact() const;
    std::string key() const;  // canonical, '|'-separated
    std::string to_string() const;

private:
    std::vector<ExtValue> values_;
};

}  // namespace descent
