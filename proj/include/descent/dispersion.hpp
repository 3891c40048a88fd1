#pragma once

#include "descent/json_util.hpp"
#include "descent/operators.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace descent {

using Point = std::vector<double>;
using RealFunction = std::function<double(const Point&)>;
using GradientFunction = std::function<Point(const Point&)>;

// f(x) = c + <b, x> + x^T A x / 2, with A symmetric.
struct Quadratic {
    double c = 0;
    Eigen::VectorXd b;
    Eigen::MatrixXd a;

    std::size_t dim() const { return static_cast<std::size_t>(b.size()); }
    double operator()(const Point& x) const;
    Point gradient(const Point& x) const;
    static Quadratic from_json(const Json& j);  // {"c": .., "b": [..], "A": [[..]]}
};

// Axis-aligned box sampled at nodes lo + i*h, i = 0..res-1, on each axis.
struct GridDomain {
    std::size_t dim = 1;
    Point lo, hi;
    std::vector<std::size_t> res;
    std::function<double(const Point&)> local_dimension;  // n(x); empty means dim

    static GridDomain box(Point lo, Point hi, std::size_t res_per_axis);

    double step(std::size_t axis) const { return (hi[axis] - lo[axis]) / static_cast<double>(res[axis] - 1); }
    double finest_step() const;
    std::size_t node_count() const;
    Point node(const std::vector<std::size_t>& idx) const;
    std::vector<std::size_t> nearest(const Point& x) const;  // throws if x is outside the box
    double n_at(const Point& x) const { return local_dimension ? local_dimension(x) : static_cast<double>(dim); }
    void validate() const;  // >= 16 nodes per axis, lo < hi
};

struct GridField {
    GridDomain domain;
    std::vector<double> values;  // row-major, last axis fastest
    GradientFunction gradient;   // optional analytic gradient

    static GridField sample(GridDomain d, const RealFunction& f, GradientFunction grad = {});
    double at(const std::vector<std::size_t>& idx) const;
};

// (n(x) / mu(B ∩ box)) * sum over nodes y != x in B(x, eps) ∩ box of w_y |Delta_f(x,y)|^p,
// with Delta_f = (f(y) - f(x)) / |y - x|, or (f(x) - f(y))_+ / |y - x| when oriented.
// Nodes on the box boundary or on the sphere |y - x| = eps carry half weight per
// such face. x is snapped to the nearest node.
double grid_dispersion(const GridField& f, const Point& x, double eps, double p, bool oriented);

inline constexpr double kConvergenceTolerance = 0.05;

struct Sweep {
    std::vector<double> radii;  // strictly decreasing
    static Sweep geometric(double eps0, double ratio, std::size_t count);
    // Default sweep: 6 radii with ratio 1/2, finest radius 2h.
    static Sweep standard(const GridDomain& d, std::size_t count = 6);
};

struct DispersionEstimate {
    double value = 0;        // max over the finest half of the sweep
    double uncertainty = 0;  // spread of that tail
    std::vector<double> radii, values;
    std::vector<double> differences;  // values[k+1] - values[k]
    bool converged = true;            // relative tail spread <= kConvergenceTolerance

    std::vector<double> half_widths() const;  // per-radius |successive difference| / 2
};

DispersionEstimate dispersion_limit(const GridField& f, const Point& x, double p, bool oriented, const Sweep& sweep);

struct MonteCarloEstimate {
    double value = 0;
    double half_width = 0;  // 1.96 standard errors
};

// (k/|B_k|) ∫_{B_k} <V, u/|u|>^2 du, which equals |V|^2.
MonteCarloEstimate mc_ball_identity(const std::vector<double>& v, std::size_t k, std::uint64_t samples,
                                    std::uint64_t seed);

struct WeightedCheck {
    double estimate = 0;
    double target = 0;         // |R(x) grad f(x)|^2
    double half_width = 0;
    std::size_t rank = 0;      // k = dim Ker(R)^perp
    double kappa = 0;
    double isometry_error = 0; // max | |Psi(u)| - |u| |
};

// Measure on W_x = x + Ker(R)^perp with density h(Psi(u)) = (|Ru|^2/|u|^2) / J Psi(u),
// Psi(u) = |u| Ru / |Ru|, and local dimension n(x) = kappa k.
WeightedCheck weighted_dispersion_check(const Eigen::MatrixXd& r, const RealFunction& f, const Point& grad,
                                        const Point& x, std::uint64_t samples, std::uint64_t seed,
                                        const Sweep& sweep);

// The nonlocal operators on grid nodes used as a finite space.
SpacePtr grid_node_space(std::size_t nodes);
MeasureMatrix uniform_node_measure(const SpacePtr& space, const Rational& weight);
ExtendedField nonlocal_grid_operator(const MeasureMatrix& mu, const Phi& phi, const ScalarField& f, bool oriented);

}  // namespace descent
