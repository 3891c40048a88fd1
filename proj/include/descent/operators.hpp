#pragma once

#include "descent/matrices.hpp"

#include <json.hpp>

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace descent {

// Exponent in (0, +inf].
struct Exponent {
    bool infinite = false;
    Rational value = 1;

    static Exponent inf() { return {true, 0}; }
    static Exponent of(const Rational& m);  // throws unless m > 0
    static Exponent parse(const std::string& text);  // "inf" or a rational
    std::string to_string() const { return infinite ? "inf" : descent::to_string(value); }
    bool operator==(const Exponent&) const = default;
};

// Registered monotone maps phi : R+ -> R+ with phi(0) = 0.
class Phi {
public:
    enum class Kind { Power, Threshold, Table };

    static Phi power(const Rational& p);         // t^p, p > 0
    static Phi threshold(const Rational& eps);   // t * 1{t > eps}
    static Phi table(std::vector<std::pair<Rational, Rational>> entries);  // exact lookup

    Kind kind() const { return kind_; }
    ExtValue apply(const Rational& t) const;  // t >= 0
    ExtValue apply(const ExtValue& v) const;  // phi(+inf) = +inf
    bool strictly_increasing() const;
    // Degree q when phi(t) = t^q, so T p-homogeneous gives phi∘T (pq)-homogeneous.
    std::optional<Rational> power_degree() const;
    nlohmann::json to_json() const;

private:
    Kind kind_ = Kind::Power;
    Rational param_ = 1;
    std::vector<std::pair<Rational, Rational>> table_;
};

class OperatorNode;
using OperatorHandle = std::shared_ptr<const OperatorNode>;

// A pure evaluator f -> T[f] on a fixed finite space.
class OperatorNode {
public:
    explicit OperatorNode(SpacePtr space) : space_(std::move(space)) {}
    virtual ~OperatorNode() = default;

    ExtendedField operator()(const ScalarField& f) const;

    const FiniteSpace& space() const { return *space_; }
    const SpacePtr& space_ptr() const { return space_; }

    virtual nlohmann::json to_json() const = 0;
    // p such that T[rf] = r^p T[f] holds by construction, when known.
    virtual std::optional<Rational> homogeneity_degree() const { return std::nullopt; }
    // epsilon of an outermost truncation, used by the Z2 probe.
    virtual std::optional<Rational> truncation_eps() const { return std::nullopt; }
    virtual bool is_zero_operator() const { return false; }

protected:
    virtual ExtendedField evaluate(const ScalarField& f) const = 0;

private:
    SpacePtr space_;
};

// Primitive families.
ExtendedField eval_TL(const Generator& L, const ScalarField& f);
ExtendedField eval_TLm(const Generator& L, const Exponent& m, const ScalarField& f);
ExtendedField eval_TLm(const Generator& L, const std::vector<Exponent>& m_per_vertex, const ScalarField& f);
ExtendedField eval_TD(const NeighborhoodSystem& D, const ScalarField& f);
ExtendedField eval_semiglobal_slope(const NeighborhoodSystem& D, const MetricMatrix& m, const ScalarField& f);
ExtendedField eval_nonlocal(const MeasureMatrix& mu, const Phi& phi, const ScalarField& f, bool oriented);

OperatorHandle make_TL(Generator L);
OperatorHandle make_TLm(Generator L, Exponent m);
OperatorHandle make_TLm(Generator L, std::vector<Exponent> m_per_vertex);
OperatorHandle make_TD(NeighborhoodSystem D);
OperatorHandle make_semiglobal_slope(NeighborhoodSystem D, MetricMatrix m);
OperatorHandle make_nonlocal(MeasureMatrix mu, Phi phi, bool oriented);

// Further operators used as examples and counterexamples.
OperatorHandle make_zero(SpacePtr space);
// 1 where T[f] > 0, else 0.
OperatorHandle make_indicator(OperatorHandle t);
// (f(x) - max_{D'_x minus x} f)_+, and 0 where D'_x = {x}.
OperatorHandle make_neighbor_max_gap(NeighborhoodSystem d_prime);

// Combinators. All children must share one space.
OperatorHandle make_sum(std::vector<OperatorHandle> terms);
OperatorHandle make_post_compose(Phi phi, OperatorHandle t);  // phi strictly increasing
OperatorHandle make_scale(Rational r, OperatorHandle t);      // r >= 0, 0 * inf = 0
OperatorHandle make_truncate_eps(Rational eps, OperatorHandle t);  // 0 where f <= min f + eps
OperatorHandle make_restrict(VertexSet k, OperatorHandle t);       // 0 off K
OperatorHandle make_sup(std::vector<OperatorHandle> family);
OperatorHandle make_inf(std::vector<OperatorHandle> family);

}  // namespace descent
