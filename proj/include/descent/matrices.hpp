#pragma once

#include "descent/space.hpp"

#include <stdexcept>
#include <vector>

namespace descent {

using RationalMatrix = std::vector<std::vector<Rational>>;

// Thrown by the validators; row/col locate the first offending entry
// (col == npos for a row-level violation).
class MatrixError : public std::invalid_argument {
public:
    MatrixError(const std::string& what, std::size_t row, std::size_t col)
        : std::invalid_argument(what), row(row), col(col) {}
    std::size_t row, col;
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

class NeighborhoodSystem {
public:
    NeighborhoodSystem(SpacePtr space, std::vector<VertexSet> sets);  // requires x in D_x
    static NeighborhoodSystem trivial(SpacePtr space);                // D_x = {x}
    static NeighborhoodSystem complete(SpacePtr space);               // D_x = V

    const FiniteSpace& space() const { return *space_; }
    const SpacePtr& space_ptr() const { return space_; }
    const VertexSet& operator[](std::size_t x) const { return sets_[x]; }
    const std::vector<VertexSet>& sets() const { return sets_; }
    bool operator==(const NeighborhoodSystem& o) const { return sets_ == o.sets_; }

private:
    SpacePtr space_;
    std::vector<VertexSet> sets_;
};

class Generator {
public:
    static Generator zero(SpacePtr space);

    const FiniteSpace& space() const { return *space_; }
    const SpacePtr& space_ptr() const { return space_; }
    std::size_t size() const { return m_.size(); }
    const Rational& operator()(std::size_t x, std::size_t y) const { return m_[x][y]; }
    const RationalMatrix& matrix() const { return m_; }

    // D_x = {x} ⊔ {y : L(x,y) > 0}
    NeighborhoodSystem active_system() const;

    bool operator==(const Generator& o) const { return m_ == o.m_; }

private:
    friend Generator validate_generator(SpacePtr, RationalMatrix);
    Generator(SpacePtr space, RationalMatrix m) : space_(std::move(space)), m_(std::move(m)) {}
    SpacePtr space_;
    RationalMatrix m_;
};

// Off-diagonal entries >= 0 and every row sums to exactly 0.
Generator validate_generator(SpacePtr space, RationalMatrix m);

// Builds a generator from off-diagonal rates; the diagonal is recomputed.
Generator generator_from_rates(SpacePtr space, RationalMatrix rates);

class MetricMatrix {
public:
    MetricMatrix(SpacePtr space, RationalMatrix m);  // nonnegative, m(x,y) = 0 iff x = y
    static MetricMatrix unit(SpacePtr space);        // 1 off the diagonal
    const Rational& operator()(std::size_t x, std::size_t y) const { return m_[x][y]; }
    const FiniteSpace& space() const { return *space_; }
    const SpacePtr& space_ptr() const { return space_; }
    const RationalMatrix& matrix() const { return m_; }

private:
    SpacePtr space_;
    RationalMatrix m_;
};

class MeasureMatrix {
public:
    MeasureMatrix(SpacePtr space, RationalMatrix m);  // entries >= 0
    static MeasureMatrix from_generator(const Generator& L);  // off-diagonal rates, zero diagonal
    const Rational& operator()(std::size_t x, std::size_t y) const { return m_[x][y]; }
    const FiniteSpace& space() const { return *space_; }
    const SpacePtr& space_ptr() const { return space_; }
    const RationalMatrix& matrix() const { return m_; }

private:
    SpacePtr space_;
    RationalMatrix m_;
};

void require_square(const RationalMatrix& m, std::size_t n, const char* what);

}  // namespace descent
