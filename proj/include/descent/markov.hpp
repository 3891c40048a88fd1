#pragma once

#include "descent/criticality.hpp"
#include "descent/json_util.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace descent {

// L^f: L with uphill edges removed, diagonal recomputed.
struct OrientedGenerator {
    Generator matrix;
    Generator source;
    ScalarField f;
};

OrientedGenerator oriented_generator(const Generator& L, const ScalarField& f);

// (L g)(x) = sum_y L(x,y) (g(y) - g(x)).
std::vector<Rational> apply_generator(const Generator& L, const ScalarField& g);

struct Distribution {
    SpacePtr space;
    std::vector<Rational> p;

    VertexSet support() const;
    Rational expectation(const ScalarField& g) const;
    Json to_json() const;  // label -> "p/q"
};

// Exact limit law of the L^f chain started at x.
Distribution limit_distribution(const Generator& L, const ScalarField& f, std::size_t x);
// The limit law for every start, sharing one solve.
std::vector<Distribution> limit_distributions(const Generator& L, const ScalarField& f);
// Same, for a generator that is already oriented (or any generator).
std::vector<Distribution> limit_distributions(const Generator& q);

struct Trajectory {
    std::vector<std::pair<double, std::size_t>> steps;  // (jump time, vertex), first at t = 0
    std::uint64_t seed = 0;
    double horizon = 0;

    std::size_t state_at(double t) const;
};

Trajectory simulate_trajectory(const Generator& L, const ScalarField& f, std::size_t x, double horizon,
                               std::uint64_t seed);

// Distribution of X(horizon) over `runs` independent trajectories; run i uses
// the seed derived from (seed, i).
std::vector<double> empirical_law(const Generator& L, const ScalarField& f, std::size_t x, double horizon,
                                  std::uint64_t runs, std::uint64_t seed);

double total_variation(const std::vector<double>& a, const Distribution& b);

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

// Hypothesis T_L[f] >= T_L[g]; conclusion L^f[g] >= L^f[f] pointwise.
ComparisonVerdict check_comp_lemma(const Generator& L, const ScalarField& f, const ScalarField& g);

// Hypothesis f >= g on M(f); conclusion pi^f[f] >= pi^f[g] for every start.
ComparisonVerdict check_limit_comparison(const Generator& L, const ScalarField& f, const ScalarField& g);

}  // namespace descent
