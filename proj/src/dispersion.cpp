#include "descent/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace descent {

double Quadratic::operator()(const Point& x) const {
    Eigen::Map<const Eigen::VectorXd> v(x.data(), b.size());
    return c + b.dot(v) + 0.5 * v.dot(a * v);
}

Point Quadratic::gradient(const Point& x) const {
    Eigen::Map<const Eigen::VectorXd> v(x.data(), b.size());
    Eigen::VectorXd g = b + a * v;
    return Point(g.data(), g.data() + g.size());
}

Quadratic Quadratic::from_json(const Json& j) {
    Quadratic q;
    q.c = j.value("c", 0.0);
    const Json& b = j.at("b");
    auto n = static_cast<Eigen::Index>(b.size());
    if (n == 0) throw std::invalid_argument("quadratic needs a nonempty \"b\"");
    q.b.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) q.b[i] = b[static_cast<std::size_t>(i)].get<double>();
    q.a = Eigen::MatrixXd::Zero(n, n);
    if (j.contains("A")) {
        const Json& a = j.at("A");
        if (static_cast<Eigen::Index>(a.size()) != n) throw std::invalid_argument("quadratic \"A\" must be n x n");
        for (Eigen::Index r = 0; r < n; ++r) {
            const Json& row = a[static_cast<std::size_t>(r)];
            if (static_cast<Eigen::Index>(row.size()) != n) throw std::invalid_argument("quadratic \"A\" must be n x n");
            for (Eigen::Index c = 0; c < n; ++c) q.a(r, c) = row[static_cast<std::size_t>(c)].get<double>();
        }
        if ((q.a - q.a.transpose()).norm() > 1e-12 * std::max(1.0, q.a.norm()))
            throw std::invalid_argument("quadratic \"A\" must be symmetric");
    }
    return q;
}

GridDomain GridDomain::box(Point lo, Point hi, std::size_t res_per_axis) {
    GridDomain d;
    d.dim = lo.size();
    d.lo = std::move(lo);
    d.hi = std::move(hi);
    d.res.assign(d.dim, res_per_axis);
    d.validate();
    return d;
}

void GridDomain::validate() const {
    if (dim == 0 || lo.size() != dim || hi.size() != dim || res.size() != dim)
        throw std::invalid_argument("grid domain dimensions disagree");
    for (std::size_t a = 0; a < dim; ++a) {
        if (!(lo[a] < hi[a])) throw std::invalid_argument("grid box needs lo < hi on every axis");
        if (res[a] < 16) throw std::invalid_argument("grid resolution must be at least 16 per axis");
    }
}

double GridDomain::finest_step() const {
    double h = step(0);
    for (std::size_t a = 1; a < dim; ++a) h = std::min(h, step(a));
    return h;
}

std::size_t GridDomain::node_count() const {
    return std::accumulate(res.begin(), res.end(), std::size_t{1}, std::multiplies<>());
}

Point GridDomain::node(const std::vector<std::size_t>& idx) const {
    Point p(dim);
    for (std::size_t a = 0; a < dim; ++a) p[a] = lo[a] + static_cast<double>(idx[a]) * step(a);
    return p;
}

std::vector<std::size_t> GridDomain::nearest(const Point& x) const {
    if (x.size() != dim) throw std::invalid_argument("point has the wrong dimension");
    std::vector<std::size_t> idx(dim);
    for (std::size_t a = 0; a < dim; ++a) {
        double h = step(a), t = (x[a] - lo[a]) / h;
        if (t < -1e-9 || t > static_cast<double>(res[a] - 1) + 1e-9)
            throw std::out_of_range("point lies outside the grid box");
        idx[a] = static_cast<std::size_t>(std::clamp(std::llround(t), 0LL, static_cast<long long>(res[a] - 1)));
    }
    return idx;
}

namespace {

std::size_t flat_index(const GridDomain& d, const std::vector<std::size_t>& idx) {
    std::size_t k = 0;
    for (std::size_t a = 0; a < d.dim; ++a) k = k * d.res[a] + idx[a];
    return k;
}

}  // namespace

GridField GridField::sample(GridDomain d, const RealFunction& f, GradientFunction grad) {
    d.validate();
    GridField g;
    g.values.resize(d.node_count());
    std::vector<std::size_t> idx(d.dim, 0);
    for (std::size_t k = 0; k < g.values.size(); ++k) {
        g.values[k] = f(d.node(idx));
        for (std::size_t a = d.dim; a-- > 0;) {
            if (++idx[a] < d.res[a]) break;
            idx[a] = 0;
        }
    }
    g.domain = std::move(d);
    g.gradient = std::move(grad);
    return g;
}

double GridField::at(const std::vector<std::size_t>& idx) const { return values[flat_index(domain, idx)]; }

double grid_dispersion(const GridField& f, const Point& x, double eps, double p, bool oriented) {
    const GridDomain& d = f.domain;
    if (!(p > 0)) throw std::invalid_argument("dispersion exponent must be positive");
    if (eps < 2 * d.finest_step() * (1 - 1e-9))
        throw std::invalid_argument("radius " + std::to_string(eps) + " is below two grid cells");
    std::vector<std::size_t> cx = d.nearest(x);
    Point px = d.node(cx);
    double fx = f.at(cx);

    std::vector<std::size_t> lo(d.dim), hi(d.dim);
    for (std::size_t a = 0; a < d.dim; ++a) {
        auto reach = static_cast<std::size_t>(std::floor(eps / d.step(a) + 1e-9));
        lo[a] = cx[a] >= reach ? cx[a] - reach : 0;
        hi[a] = std::min(cx[a] + reach, d.res[a] - 1);
    }
    double num = 0, den = 0;
    std::vector<std::size_t> idx = lo;
    for (;;) {
        if (idx != cx) {
            double r2 = 0, w = 1;
            for (std::size_t a = 0; a < d.dim; ++a) {
                double u = static_cast<double>(static_cast<long long>(idx[a]) - static_cast<long long>(cx[a])) * d.step(a);
                r2 += u * u;
                if (idx[a] == 0 || idx[a] == d.res[a] - 1) w *= 0.5;
            }
            double r = std::sqrt(r2);
            if (r <= eps * (1 + 1e-9)) {
                if (std::abs(r - eps) <= 1e-9 * eps) w *= 0.5;
                double diff = oriented ? std::max(fx - f.at(idx), 0.0) : std::abs(f.at(idx) - fx);
                num += w * std::pow(diff / r, p);
                den += w;
            }
        }
        std::size_t a = d.dim;
        while (a-- > 0) {
            if (++idx[a] <= hi[a]) break;
            idx[a] = lo[a];
        }
        if (a == static_cast<std::size_t>(-1)) break;
    }
    if (den == 0) throw std::logic_error("empty ball");
    return d.n_at(px) * num / den;
}

Sweep Sweep::geometric(double eps0, double ratio, std::size_t count) {
    if (!(eps0 > 0) || !(ratio > 0 && ratio < 1)) throw std::invalid_argument("sweep needs eps0 > 0 and 0 < ratio < 1");
    Sweep s;
    double e = eps0;
    for (std::size_t i = 0; i < count; ++i, e *= ratio) s.radii.push_back(e);
    return s;
}

Sweep Sweep::standard(const GridDomain& d, std::size_t count) {
    return geometric(2 * d.finest_step() * std::ldexp(1.0, static_cast<int>(count) - 1), 0.5, count);
}

std::vector<double> DispersionEstimate::half_widths() const {
    std::vector<double> hw(values.size(), 0.0);
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (k + 1 < values.size())
            hw[k] = std::abs(values[k + 1] - values[k]) / 2;
        else if (k > 0)
            hw[k] = std::abs(values[k] - values[k - 1]) / 2;
    }
    return hw;
}

namespace {

// Max of the finest half of a sweep, and its spread.
void summarize_tail(const std::vector<double>& values, double& value, double& spread, bool& converged) {
    std::size_t start = values.size() / 2;
    auto [mn, mx] = std::minmax_element(values.begin() + static_cast<std::ptrdiff_t>(start), values.end());
    value = *mx;
    spread = *mx - *mn;
    double scale = std::max(std::abs(*mx), 1e-300);
    converged = *mx == 0 || spread / scale <= kConvergenceTolerance;
}

}  // namespace

DispersionEstimate dispersion_limit(const GridField& f, const Point& x, double p, bool oriented, const Sweep& sweep) {
    if (sweep.radii.size() < 4) throw std::invalid_argument("dispersion sweep needs at least 4 radii");
    for (std::size_t k = 1; k < sweep.radii.size(); ++k)
        if (!(sweep.radii[k] < sweep.radii[k - 1])) throw std::invalid_argument("sweep radii must strictly decrease");
    DispersionEstimate est;
    est.radii = sweep.radii;
    for (double e : sweep.radii) est.values.push_back(grid_dispersion(f, x, e, p, oriented));
    for (std::size_t k = 0; k + 1 < est.values.size(); ++k) est.differences.push_back(est.values[k + 1] - est.values[k]);
    summarize_tail(est.values, est.value, est.uncertainty, est.converged);
    return est;
}

namespace {

Eigen::VectorXd unit_ball_sample(std::mt19937_64& rng, std::size_t k) {
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> uniform;
    Eigen::VectorXd g(static_cast<Eigen::Index>(k));
    do {
        for (Eigen::Index i = 0; i < g.size(); ++i) g[i] = normal(rng);
    } while (g.norm() == 0);
    return g.normalized() * std::pow(uniform(rng), 1.0 / static_cast<double>(k));
}

}  // namespace

MonteCarloEstimate mc_ball_identity(const std::vector<double>& v, std::size_t k, std::uint64_t samples,
                                    std::uint64_t seed) {
    if (k == 0) throw std::invalid_argument("ball dimension must be at least 1");
    if (v.size() != k) throw std::invalid_argument("vector dimension must equal the ball dimension");
    if (samples < 2) throw std::invalid_argument("at least two samples are required");
    Eigen::Map<const Eigen::VectorXd> vv(v.data(), static_cast<Eigen::Index>(k));
    if (!std::isfinite(vv.norm())) throw std::invalid_argument("vector must be finite");
    std::mt19937_64 rng(seed);
    double sum = 0, sum2 = 0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        Eigen::VectorXd u = unit_ball_sample(rng, k);
        double c = vv.dot(u) / u.norm();
        double term = static_cast<double>(k) * c * c;
        sum += term;
        sum2 += term * term;
    }
    double n = static_cast<double>(samples), mean = sum / n;
    double var = std::max(sum2 / n - mean * mean, 0.0) * n / (n - 1);
    return {mean, 1.96 * std::sqrt(var / n)};
}

WeightedCheck weighted_dispersion_check(const Eigen::MatrixXd& r, const RealFunction& f, const Point& grad,
                                        const Point& x, std::uint64_t samples, std::uint64_t seed,
                                        const Sweep& sweep) {
    const Eigen::Index n = r.rows();
    if (r.cols() != n || (n != 2 && n != 3)) throw std::invalid_argument("R(x) must be a 2x2 or 3x3 matrix");
    if (static_cast<Eigen::Index>(grad.size()) != n || static_cast<Eigen::Index>(x.size()) != n)
        throw std::invalid_argument("gradient and point must match the dimension of R");
    if ((r - r.transpose()).norm() > 1e-12 * std::max(1.0, r.norm())) throw std::invalid_argument("R(x) must be symmetric");
    if (sweep.radii.size() < 4) throw std::invalid_argument("dispersion sweep needs at least 4 radii");

    WeightedCheck out;
    Eigen::Map<const Eigen::VectorXd> g(grad.data(), n);
    out.target = (r * g).squaredNorm();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(r);
    double top = es.eigenvalues().cwiseAbs().maxCoeff();
    if (es.eigenvalues().minCoeff() < -1e-12 * std::max(top, 1.0)) throw std::invalid_argument("R(x) must be positive semidefinite");
    std::vector<Eigen::Index> cols;
    for (Eigen::Index i = 0; i < n; ++i)
        if (es.eigenvalues()[i] > 1e-12 * top) cols.push_back(i);
    const auto k = static_cast<Eigen::Index>(cols.size());
    out.rank = cols.size();
    if (k == 0) {
        out.target = 0;
        return out;  // mu_x is the point mass at x
    }
    // Coordinates on Ker(R)^perp: basis b, R acts as rk.
    Eigen::MatrixXd b(n, k);
    for (Eigen::Index j = 0; j < k; ++j) b.col(j) = es.eigenvectors().col(cols[j]);
    Eigen::MatrixXd rk = b.transpose() * r * b;
    Eigen::MatrixXd rk_inv = rk.inverse();

    auto psi = [&](const Eigen::VectorXd& u) -> Eigen::VectorXd {
        Eigen::VectorXd ru = rk * u;
        return u.norm() / ru.norm() * ru;
    };
    auto psi_inv = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
        Eigen::VectorXd w = rk_inv * v;
        return v.norm() / w.norm() * w;
    };
    auto jacobian = [&](const Eigen::VectorXd& u) {
        double h = 1e-5 * u.norm();
        Eigen::MatrixXd j(k, k);
        for (Eigen::Index c = 0; c < k; ++c) {
            Eigen::VectorXd e = Eigen::VectorXd::Zero(k);
            e[c] = h;
            j.col(c) = (psi(u + e) - psi(u - e)) / (2 * h);
        }
        return std::abs(j.determinant());
    };

    // Points v uniform in the unit k-ball of W_x, weighted by the density h(v).
    std::mt19937_64 rng(seed);
    std::vector<Eigen::VectorXd> dirs;
    std::vector<double> weight;
    double kappa_sum = 0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        Eigen::VectorXd v = unit_ball_sample(rng, static_cast<std::size_t>(k));
        Eigen::VectorXd u = psi_inv(v);
        out.isometry_error = std::max(out.isometry_error, std::abs(psi(u).norm() - u.norm()));
        double ratio = (rk * u).squaredNorm() / u.squaredNorm();
        double h = ratio / jacobian(u);
        dirs.push_back(b * v);
        weight.push_back(h);
        kappa_sum += h;
    }
    double m = static_cast<double>(samples);
    out.kappa = kappa_sum / m;

    Eigen::Map<const Eigen::VectorXd> px(x.data(), n);
    double fx = f(x);
    std::vector<double> values, hws;
    for (double eps : sweep.radii) {
        double sum = 0, sum2 = 0;
        for (std::size_t i = 0; i < dirs.size(); ++i) {
            Eigen::VectorXd y = px + eps * dirs[i];
            double len = eps * dirs[i].norm();
            double delta = (f(Point(y.data(), y.data() + n)) - fx) / len;
            // n(x) = kappa k and mu(B) = kappa |B| cancel to a plain mean of k h Delta^2.
            double term = static_cast<double>(k) * weight[i] * delta * delta;
            sum += term;
            sum2 += term * term;
        }
        double mean = sum / m;
        double var = std::max(sum2 / m - mean * mean, 0.0) * m / std::max(m - 1, 1.0);
        values.push_back(mean);
        hws.push_back(1.96 * std::sqrt(var / m));
    }
    std::size_t start = values.size() / 2;
    auto best = std::max_element(values.begin() + static_cast<std::ptrdiff_t>(start), values.end());
    out.estimate = *best;
    out.half_width = hws[static_cast<std::size_t>(best - values.begin())];
    return out;
}

SpacePtr grid_node_space(std::size_t nodes) { return FiniteSpace::integers(nodes); }

MeasureMatrix uniform_node_measure(const SpacePtr& space, const Rational& weight) {
    std::size_t n = space->size();
    RationalMatrix m(n, std::vector<Rational>(n, weight));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 0;
    return MeasureMatrix(space, std::move(m));
}

ExtendedField nonlocal_grid_operator(const MeasureMatrix& mu, const Phi& phi, const ScalarField& f, bool oriented) {
    return eval_nonlocal(mu, phi, f, oriented);
}

}  // namespace descent
