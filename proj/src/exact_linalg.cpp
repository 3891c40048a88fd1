#include "descent/exact_linalg.hpp"

#include <utility>

namespace descent {

RationalMatrix solve_exact(RationalMatrix a, RationalMatrix b) {
    const std::size_t n = a.size();
    if (b.size() != n) throw std::invalid_argument("right-hand side has the wrong number of rows");
    const std::size_t k = n ? b[0].size() : 0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && sgn(a[piv][col]) == 0) ++piv;
        if (piv == n) throw SingularSystem("singular linear system");
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        Rational inv = 1 / a[col][col];
        for (std::size_t j = col; j < n; ++j) a[col][j] *= inv;
        for (std::size_t j = 0; j < k; ++j) b[col][j] *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || sgn(a[r][col]) == 0) continue;
            Rational factor = a[r][col];
            for (std::size_t j = col; j < n; ++j) a[r][j] -= factor * a[col][j];
            for (std::size_t j = 0; j < k; ++j) b[r][j] -= factor * b[col][j];
        }
    }
    return b;
}

}  // namespace descent
