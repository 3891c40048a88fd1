#pragma once

#include "descent/function_grid.hpp"
#include "descent/graph.hpp"
#include "descent/json_util.hpp"
#include "descent/operators.hpp"

#include <cstdint>
#include <vector>

namespace descent {

// Z_T(f) = {x : T[f](x) = 0}. Infinite entries are not critical.
VertexSet critical_set(const OperatorHandle& t, const ScalarField& f);

// The preorder x ⪰_f y generated by the edges x -> y with L(x,y) > 0 and f(y) <= f(x).
class DescentOrder {
public:
    DescentOrder(const Generator& L, const ScalarField& f);

    const Adjacency& edges() const { return edges_; }
    const Condensation& condensation() const { return cond_; }
    const VertexSet& reachable(std::size_t x) const { return reach_[x]; }
    bool reaches(std::size_t x, std::size_t y) const { return reach_[x].test(y); }
    bool equivalent(std::size_t x, std::size_t y) const { return reaches(x, y) && reaches(y, x); }
    // Vertices whose every reachable vertex reaches them back.
    VertexSet minima() const;

private:
    Adjacency edges_;
    Condensation cond_;
    std::vector<VertexSet> reach_;
};

inline DescentOrder descent_order(const Generator& L, const ScalarField& f) { return DescentOrder(L, f); }

// M(f) for the L^f preorder.
VertexSet minima_set(const Generator& L, const ScalarField& f);

struct DeterminationPair {
    ScalarField f, g;
    VertexSet agreement;  // the set on which f = g was required
};

struct DeterminationReport {
    std::uint64_t fields = 0;
    std::uint64_t pairs = 0;            // unordered pairs, self-pairs included
    std::uint64_t equal_value_pairs = 0; // distinct pairs with T[f] = T[g]
    std::uint64_t excluded_infinite = 0; // fields outside dom(T)
    std::uint64_t undecided_fields = 0;  // fields whose values are enclosures only
    std::uint64_t violations = 0;        // f = g on the agreement set but f != g
    std::uint64_t shifted_violations = 0; // f - g constant on the agreement set, not on V
    std::vector<DeterminationPair> witnesses;  // first max_witnesses violations, grid order

    bool empty() const { return violations == 0; }
    Json to_json(const FiniteSpace& space) const;
};

inline constexpr std::size_t kDefaultMaxWitnesses = 16;

DeterminationReport check_determination(const OperatorHandle& t, const FunctionGrid& grid,
                                        std::uint64_t pair_cap = 100'000'000,
                                        std::size_t max_witnesses = kDefaultMaxWitnesses);

// Agreement required on M(f) ∪ M(g) instead of Z_T(f), with T = T_L.
DeterminationReport check_probabilistic_determination(const Generator& L, const FunctionGrid& grid,
                                                      std::uint64_t pair_cap = 100'000'000,
                                                      std::size_t max_witnesses = kDefaultMaxWitnesses);

enum class ComparisonVerdict { HypothesesFail, ConclusionHolds, TheoremViolation };
const char* comparison_verdict_name(ComparisonVerdict v);  // "hypotheses-fail", ...

// (i) T[f] >= T[g] pointwise and (ii) f >= g + c on Z_T(f) imply f >= g + c.
// Undecided comparisons and infinite values count as failed hypotheses.
ComparisonVerdict check_comparison(const OperatorHandle& t, const ScalarField& f, const ScalarField& g,
                                   const Rational& c);

}  // namespace descent
