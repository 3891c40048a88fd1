#pragma once

#include "descent/matrices.hpp"

namespace descent {

class SingularSystem : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Solves A X = B exactly by Gauss-Jordan elimination; B holds one column per
// right-hand side. Throws SingularSystem when A is singular.
RationalMatrix solve_exact(RationalMatrix a, RationalMatrix b);

}  // namespace descent
