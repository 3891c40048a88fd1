#pragma once

#include "descent/function_grid.hpp"
#include "descent/json_util.hpp"
#include "descent/operators.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace descent {

enum class Verdict { HoldsOnGrid, Fails };

const char* verdict_name(Verdict v);  // "holds-on-grid" / "fails"

struct Witness {
    std::optional<ScalarField> f;
    std::optional<ScalarField> g;
    std::size_t x = 0;
    std::optional<Rational> r;  // scaling factor, or 1 + delta for the (c3) form
    std::optional<Rational> r_low;   // smaller factor of a (c3) pair
    std::optional<Rational> c;       // translation
    std::optional<Rational> degree;  // homogeneity degree under test
    std::string detail;
};

struct AxiomResult {
    std::string axiom;  // "D1", "D2", "D3", "translation", "homogeneity"
    Verdict verdict = Verdict::HoldsOnGrid;
    std::optional<Witness> witness;  // first violation in (vertex, field, ...) order
    std::uint64_t checked = 0;
    std::uint64_t violations = 0;
    std::uint64_t undecided = 0;  // comparisons between enclosures that could not be settled

    bool holds() const { return verdict == Verdict::HoldsOnGrid; }
    Json to_json(const FiniteSpace& space) const;
};

struct AxiomReport {
    std::vector<AxiomResult> results;
    bool all_hold() const;
    const AxiomResult* find(const std::string& axiom) const;
    Json to_json(const FiniteSpace& space) const;
};

// T evaluated on every grid field, in grid order.
struct GridEvaluation {
    std::vector<ScalarField> fields;
    std::vector<ExtendedField> values;
};
GridEvaluation evaluate_grid(const OperatorHandle& t, const FunctionGrid& grid);

struct AuditOptions {
    std::vector<Rational> d3_rset{Rational(3, 2), Rational(2), Rational(5)};
    std::vector<Rational> cset{Rational(1), Rational(-2), Rational(5, 2)};
    std::vector<Rational> homogeneity_rset{Rational(1, 2), Rational(2), Rational(3)};
    std::optional<Rational> homogeneity_degree;  // defaults to the operator's declared degree
    std::uint64_t pair_cap = 100'000'000;
    std::vector<std::string> axioms{"D1", "D2", "D3", "translation", "homogeneity"};
};

AxiomResult check_D1(const OperatorHandle& t, const FunctionGrid& grid);
AxiomResult check_D2(const OperatorHandle& t, const FunctionGrid& grid, std::uint64_t pair_cap = 100'000'000);
AxiomResult check_D3(const OperatorHandle& t, const FunctionGrid& grid, const std::vector<Rational>& rset);
AxiomResult check_translation_invariance(const OperatorHandle& t, const FunctionGrid& grid, const std::vector<Rational>& cset);
AxiomResult check_homogeneity(const OperatorHandle& t, const FunctionGrid& grid, const Rational& p,
                              const std::vector<Rational>& rset);

// Same checks on a precomputed evaluation.
AxiomResult check_D1(const OperatorHandle& t, const GridEvaluation& ev);
AxiomResult check_D2(const OperatorHandle& t, const GridEvaluation& ev, std::uint64_t pair_cap);
AxiomResult check_D3(const OperatorHandle& t, const GridEvaluation& ev, const std::vector<Rational>& rset);
AxiomResult check_translation_invariance(const OperatorHandle& t, const GridEvaluation& ev, const std::vector<Rational>& cset);
AxiomResult check_homogeneity(const OperatorHandle& t, const GridEvaluation& ev, const Rational& p,
                              const std::vector<Rational>& rset);

// Runs the selected audits; homogeneity is skipped when no degree is known.
AxiomReport run_audit(const OperatorHandle& t, const FunctionGrid& grid, const AuditOptions& opt = {});

// Re-evaluates T on the witness and confirms the violation.
bool recheck_witness(const OperatorHandle& t, const AxiomResult& result);

}  // namespace descent
