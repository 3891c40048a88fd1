#pragma once

#include "descent/axioms.hpp"
#include "descent/function_grid.hpp"
#include "descent/operators.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace descent {

inline constexpr std::size_t kDefaultSubsetCap = 16;

// Z[1_K] for every K, indexed by the bit mask of K (bit i = vertex i).
using IndicatorTable = std::vector<VertexSet>;

std::uint64_t subset_mask(const VertexSet& k);
VertexSet subset_from_mask(std::size_t n, std::uint64_t mask);

// Recursive evaluation of a critical map from its values on indicators:
// constants give V, two-valued f gives Z[1_{[f = max f]}], otherwise split at
// the median value r and recombine Z[r ∧ f] on [f <= r] with Z[r ∨ f] on [f > r].
VertexSet eval_Z_recursive(const IndicatorTable& table, const ScalarField& f);

// A map f -> Z(f) ⊆ V, backed by an operator (Z_T) or by an indicator table
// extended through the recursion.
class CriticalMapOracle {
public:
    static CriticalMapOracle from_operator(OperatorHandle t);
    static CriticalMapOracle from_table(SpacePtr space, IndicatorTable table);

    VertexSet operator()(const ScalarField& f) const;
    VertexSet on_indicator(std::uint64_t mask) const;
    // Z[1_K] for all K; cached after the first call.
    const IndicatorTable& table(std::size_t cap = kDefaultSubsetCap) const;

    const FiniteSpace& space() const { return *space_; }
    const SpacePtr& space_ptr() const { return space_; }
    const OperatorHandle& op() const { return op_; }

private:
    SpacePtr space_;
    OperatorHandle op_;
    mutable IndicatorTable table_;
};

IndicatorTable indicator_table(const CriticalMapOracle& z, std::size_t cap = kDefaultSubsetCap);

struct ExtractedSystem {
    SpacePtr space;
    std::vector<VertexSet> d;       // D_x = ∩ K_x
    std::vector<bool> hypothesis_h;  // x ∈ Z[1_{D_x}]

    bool all_h() const;
    std::optional<std::size_t> first_h_failure() const;
    NeighborhoodSystem system() const;
    Json to_json() const;
};

ExtractedSystem extract_system(const CriticalMapOracle& z, std::size_t cap = kDefaultSubsetCap);

struct ZAxiomOptions {
    std::vector<Rational> rset{Rational(1, 2), Rational(2)};
    std::vector<Rational> cset{Rational(1), Rational(-2), Rational(5, 2)};
    std::size_t cap = kDefaultSubsetCap;
};

// Z1-Z5; witnesses for Z4 and Z5 carry the subset K as the indicator field 1_K.
AxiomReport check_Z_axioms(const CriticalMapOracle& z, const FunctionGrid& grid, const ZAxiomOptions& opt = {});

enum class ClassifyVerdict { Certified, HypothesisFails, Counterexample, NotHomogeneous };
const char* classify_verdict_name(ClassifyVerdict v);

struct ClassifyOptions {
    std::size_t cap = kDefaultSubsetCap;
    std::vector<Rational> homogeneity_rset{Rational(1, 2), Rational(2), Rational(3)};
    bool audit_homogeneity = true;
};

struct Classification {
    ClassifyVerdict verdict = ClassifyVerdict::Certified;
    ExtractedSystem extracted;
    std::optional<AxiomResult> homogeneity;
    std::optional<ScalarField> counterexample;  // first field with Z_T(f) != Z_{T_D}(f)
    std::uint64_t fields_checked = 0;
    std::uint64_t mismatches = 0;
    bool reconstruction_contains = true;  // Z_{T_D}(f) ⊇ Z_T(f) on every grid field

    Json to_json() const;
};

Classification classify(const OperatorHandle& t, const FunctionGrid& grid, const ClassifyOptions& opt = {});

}  // namespace descent
