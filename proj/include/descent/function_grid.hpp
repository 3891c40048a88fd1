#pragma once

#include "descent/space.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace descent {

class BudgetError : public std::runtime_error {
public:
    BudgetError(const std::string& what, std::uint64_t requested, std::uint64_t cap)
        : std::runtime_error(what), requested(requested), cap(cap) {}
    std::uint64_t requested, cap;  // requested == UINT64_MAX on overflow
};

inline constexpr std::uint64_t kDefaultFieldCap = 10'000'000;

// Finite universe of test functions: either the full product valueSet^V
// (mixed radix, last vertex varying fastest: 00, 01, 10, 11) or an explicit
// list of fields.
class FunctionGrid {
public:
    FunctionGrid(SpacePtr space, std::vector<Rational> value_set, std::uint64_t cap = kDefaultFieldCap);
    static FunctionGrid integers(SpacePtr space, unsigned g, std::uint64_t cap = kDefaultFieldCap);  // {0,...,g-1}
    static FunctionGrid explicit_fields(SpacePtr space, std::vector<ScalarField> fields);

    const SpacePtr& space_ptr() const { return space_; }
    const FiniteSpace& space() const { return *space_; }
    std::uint64_t size() const { return count_; }
    ScalarField at(std::uint64_t i) const;
    const std::vector<Rational>& value_set() const { return values_; }
    bool is_product() const { return !explicit_.has_value(); }

    template <class F>
    void for_each(F&& f) const {
        for (std::uint64_t i = 0; i < count_; ++i) f(i, at(i));
    }

private:
    FunctionGrid(SpacePtr space) : space_(std::move(space)) {}
    SpacePtr space_;
    std::vector<Rational> values_;
    std::optional<std::vector<ScalarField>> explicit_;
    std::uint64_t count_ = 0;
};

std::vector<ScalarField> enumerate_fields(const FunctionGrid& grid);

// Throws BudgetError when count > cap.
void check_budget(std::uint64_t count, std::uint64_t cap, const char* what);

// a*b saturating at UINT64_MAX.
std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b);

}  // namespace descent
