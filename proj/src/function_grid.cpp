#include "descent/function_grid.hpp"

#include <algorithm>
#include <limits>

namespace descent {

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
    return a * b;
}

void check_budget(std::uint64_t count, std::uint64_t cap, const char* what) {
    if (count > cap) {
        std::string req = count == std::numeric_limits<std::uint64_t>::max() ? "more than 2^64" : std::to_string(count);
        throw BudgetError(std::string(what) + ": " + req + " items exceed the cap of " + std::to_string(cap), count, cap);
    }
}

FunctionGrid::FunctionGrid(SpacePtr space, std::vector<Rational> value_set, std::uint64_t cap) : space_(std::move(space)) {
    if (value_set.empty()) throw std::invalid_argument("function grid needs a nonempty value set");
    for (auto& v : value_set)
        if (std::find(values_.begin(), values_.end(), v) == values_.end()) values_.push_back(v);
    count_ = 1;
    for (std::size_t i = 0; i < space_->size(); ++i) count_ = saturating_mul(count_, values_.size());
    check_budget(count_, cap, "function grid");
}

FunctionGrid FunctionGrid::integers(SpacePtr space, unsigned g, std::uint64_t cap) {
    std::vector<Rational> v;
    for (unsigned i = 0; i < g; ++i) v.emplace_back(i);
    return FunctionGrid(std::move(space), std::move(v), cap);
}

FunctionGrid FunctionGrid::explicit_fields(SpacePtr space, std::vector<ScalarField> fields) {
    for (const auto& f : fields) require_same_space(*space, f.space(), "explicit function grid");
    FunctionGrid g(std::move(space));
    g.count_ = fields.size();
    for (const auto& f : fields)
        for (const auto& v : f.values())
            if (std::find(g.values_.begin(), g.values_.end(), v) == g.values_.end()) g.values_.push_back(v);
    std::sort(g.values_.begin(), g.values_.end());
    g.explicit_ = std::move(fields);
    return g;
}

ScalarField FunctionGrid::at(std::uint64_t i) const {
    if (i >= count_) throw std::out_of_range("field index out of range");
    if (explicit_) return (*explicit_)[i];
    std::size_t n = space_->size();
    std::uint64_t base = values_.size();
    std::vector<Rational> v(n);
    for (std::size_t k = n; k-- > 0;) {
        v[k] = values_[i % base];
        i /= base;
    }
    return ScalarField(space_, std::move(v));
}

std::vector<ScalarField> enumerate_fields(const FunctionGrid& grid) {
    std::vector<ScalarField> out;
    out.reserve(grid.size());
    grid.for_each([&](std::uint64_t, ScalarField f) { out.push_back(std::move(f)); });
    return out;
}

}  // namespace descent
