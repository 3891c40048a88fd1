#include "descent/matrices.hpp"

namespace descent {

void require_square(const RationalMatrix& m, std::size_t n, const char* what) {
    if (m.size() != n) throw MatrixError(std::string(what) + ": expected " + std::to_string(n) + " rows", m.size(), MatrixError::npos);
    for (std::size_t i = 0; i < n; ++i)
        if (m[i].size() != n)
            throw MatrixError(std::string(what) + ": row " + std::to_string(i) + " has " + std::to_string(m[i].size()) +
                                  " entries, expected " + std::to_string(n),
                              i, MatrixError::npos);
}

namespace {

// Entries built as Rational(p, q) are not reduced by GMP.
void canonicalize(RationalMatrix& m) {
    for (auto& row : m)
        for (auto& v : row) v.canonicalize();
}

}  // namespace

NeighborhoodSystem::NeighborhoodSystem(SpacePtr space, std::vector<VertexSet> sets)
    : space_(std::move(space)), sets_(std::move(sets)) {
    std::size_t n = space_->size();
    if (sets_.size() != n) throw std::invalid_argument("neighborhood system needs one set per vertex");
    for (std::size_t x = 0; x < n; ++x) {
        if (sets_[x].size() != n) throw std::invalid_argument("neighborhood set has the wrong universe size");
        if (!sets_[x].test(x))
            throw std::invalid_argument("active neighborhood of '" + space_->label(x) + "' must contain the vertex itself");
    }
}

NeighborhoodSystem NeighborhoodSystem::trivial(SpacePtr space) {
    std::size_t n = space->size();
    std::vector<VertexSet> s;
    for (std::size_t x = 0; x < n; ++x) s.push_back(singleton(n, x));
    return NeighborhoodSystem(std::move(space), std::move(s));
}

NeighborhoodSystem NeighborhoodSystem::complete(SpacePtr space) {
    std::size_t n = space->size();
    return NeighborhoodSystem(std::move(space), std::vector<VertexSet>(n, full_set(n)));
}

Generator Generator::zero(SpacePtr space) {
    std::size_t n = space->size();
    return Generator(std::move(space), RationalMatrix(n, std::vector<Rational>(n)));
}

NeighborhoodSystem Generator::active_system() const {
    std::size_t n = size();
    std::vector<VertexSet> s;
    for (std::size_t x = 0; x < n; ++x) {
        VertexSet d = singleton(n, x);
        for (std::size_t y = 0; y < n; ++y)
            if (sgn(m_[x][y]) > 0) d.set(y);
        s.push_back(std::move(d));
    }
    return NeighborhoodSystem(space_, std::move(s));
}

Generator validate_generator(SpacePtr space, RationalMatrix m) {
    std::size_t n = space->size();
    require_square(m, n, "generator");
    canonicalize(m);
    for (std::size_t x = 0; x < n; ++x) {
        Rational row = 0;
        for (std::size_t y = 0; y < n; ++y) {
            if (x != y && sgn(m[x][y]) < 0)
                throw MatrixError("generator entry (" + space->label(x) + "," + space->label(y) + ") = " + to_string(m[x][y]) +
                                      " is negative off the diagonal",
                                  x, y);
            row += m[x][y];
        }
        if (sgn(row) != 0)
            throw MatrixError("generator row " + space->label(x) + " sums to " + to_string(row) + ", expected 0", x, MatrixError::npos);
    }
    return Generator(std::move(space), std::move(m));
}

Generator generator_from_rates(SpacePtr space, RationalMatrix rates) {
    std::size_t n = space->size();
    require_square(rates, n, "rates");
    canonicalize(rates);
    for (std::size_t x = 0; x < n; ++x) {
        Rational row = 0;
        for (std::size_t y = 0; y < n; ++y)
            if (y != x) row += rates[x][y];
        rates[x][x] = -row;
    }
    return validate_generator(std::move(space), std::move(rates));
}

MetricMatrix::MetricMatrix(SpacePtr space, RationalMatrix m) : space_(std::move(space)), m_(std::move(m)) {
    std::size_t n = space_->size();
    require_square(m_, n, "metric");
    canonicalize(m_);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            int s = sgn(m_[x][y]);
            if (s < 0) throw MatrixError("metric entry is negative", x, y);
            if ((x == y) != (s == 0)) throw MatrixError("metric violates separation m(x,y) = 0 iff x = y", x, y);
        }
}

MetricMatrix MetricMatrix::unit(SpacePtr space) {
    std::size_t n = space->size();
    RationalMatrix m(n, std::vector<Rational>(n, Rational(1)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 0;
    return MetricMatrix(std::move(space), std::move(m));
}

MeasureMatrix::MeasureMatrix(SpacePtr space, RationalMatrix m) : space_(std::move(space)), m_(std::move(m)) {
    require_square(m_, space_->size(), "measure");
    canonicalize(m_);
    for (std::size_t x = 0; x < m_.size(); ++x)
        for (std::size_t y = 0; y < m_.size(); ++y)
            if (sgn(m_[x][y]) < 0) throw MatrixError("measure entry is negative", x, y);
}

MeasureMatrix MeasureMatrix::from_generator(const Generator& L) {
    RationalMatrix m = L.matrix();
    for (std::size_t i = 0; i < m.size(); ++i) m[i][i] = 0;
    return MeasureMatrix(L.space_ptr(), std::move(m));
}

}  // namespace descent
