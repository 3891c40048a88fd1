#pragma once

#include "descent/space.hpp"

#include <cstddef>
#include <vector>

namespace descent {

using Adjacency = std::vector<std::vector<std::size_t>>;

struct Condensation {
    std::vector<std::size_t> component;                // vertex -> component id
    std::vector<std::vector<std::size_t>> members;     // component -> vertices (ascending)
    std::vector<std::vector<std::size_t>> successors;  // component DAG, deduplicated
    std::vector<bool> is_sink;
};

// Tarjan's algorithm; component ids are in reverse topological order.
Condensation condense(const Adjacency& adj);

// Reachable set from `source` including itself (length-0 path).
VertexSet reachable_from(const Adjacency& adj, std::size_t source);

}  // namespace descent
