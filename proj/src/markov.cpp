#include "descent/markov.hpp"

#include "descent/exact_linalg.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace descent {

OrientedGenerator oriented_generator(const Generator& L, const ScalarField& f) {
    require_same_space(L.space(), f.space(), "oriented generator");
    std::size_t n = L.size();
    RationalMatrix rates(n, std::vector<Rational>(n));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            if (y != x && f[y] <= f[x]) rates[x][y] = L(x, y);
    return {generator_from_rates(L.space_ptr(), std::move(rates)), L, f};
}

std::vector<Rational> apply_generator(const Generator& L, const ScalarField& g) {
    require_same_space(L.space(), g.space(), "generator action");
    std::vector<Rational> out(g.size());
    for (std::size_t x = 0; x < g.size(); ++x)
        for (std::size_t y = 0; y < g.size(); ++y)
            if (y != x) out[x] += L(x, y) * (g[y] - g[x]);
    return out;
}

VertexSet Distribution::support() const {
    VertexSet s(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        if (sgn(p[i]) != 0) s.set(i);
    return s;
}

Rational Distribution::expectation(const ScalarField& g) const {
    Rational e = 0;
    for (std::size_t i = 0; i < p.size(); ++i) e += p[i] * g[i];
    return e;
}

Json Distribution::to_json() const {
    Json o = Json::object();
    for (std::size_t i = 0; i < p.size(); ++i) o[space->label(i)] = rational_json(p[i]);
    return o;
}

std::vector<Distribution> limit_distributions(const Generator& q) {
    std::size_t n = q.size();
    Adjacency adj(n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            if (y != x && sgn(q(x, y)) > 0) adj[x].push_back(y);
    Condensation cond = condense(adj);

    // Stationary law of each closed class.
    std::vector<std::size_t> closed;
    std::vector<std::vector<Rational>> stationary(cond.members.size());
    for (std::size_t c = 0; c < cond.members.size(); ++c) {
        if (!cond.is_sink[c]) continue;
        closed.push_back(c);
        const auto& mem = cond.members[c];
        std::size_t k = mem.size();
        RationalMatrix a(k, std::vector<Rational>(k)), b(k, std::vector<Rational>(1));
        for (std::size_t i = 0; i + 1 < k; ++i)
            for (std::size_t j = 0; j < k; ++j) a[i][j] = q(mem[j], mem[i]);  // transpose
        for (std::size_t j = 0; j < k; ++j) a[k - 1][j] = 1;
        b[k - 1][0] = 1;
        RationalMatrix pi = solve_exact(std::move(a), std::move(b));
        stationary[c].resize(n);
        for (std::size_t j = 0; j < k; ++j) stationary[c][mem[j]] = pi[j][0];
    }

    // Absorption probabilities h_C on transient states: Q_TT h = -Q_TC 1.
    std::vector<std::size_t> transient, pos(n, n);
    for (std::size_t x = 0; x < n; ++x)
        if (!cond.is_sink[cond.component[x]]) {
            pos[x] = transient.size();
            transient.push_back(x);
        }
    RationalMatrix h;
    if (!transient.empty()) {
        std::size_t t = transient.size();
        RationalMatrix a(t, std::vector<Rational>(t)), b(t, std::vector<Rational>(closed.size()));
        for (std::size_t i = 0; i < t; ++i) {
            std::size_t x = transient[i];
            for (std::size_t y = 0; y < n; ++y) {
                if (pos[y] != n) {
                    a[i][pos[y]] = q(x, y);
                } else {
                    std::size_t c = cond.component[y];
                    std::size_t ci = std::find(closed.begin(), closed.end(), c) - closed.begin();
                    b[i][ci] -= q(x, y);
                }
            }
        }
        h = solve_exact(std::move(a), std::move(b));
    }

    std::vector<Distribution> out;
    for (std::size_t x = 0; x < n; ++x) {
        Distribution d{q.space_ptr(), std::vector<Rational>(n)};
        if (pos[x] == n) {
            d.p = stationary[cond.component[x]];
        } else {
            for (std::size_t ci = 0; ci < closed.size(); ++ci) {
                const Rational& w = h[pos[x]][ci];
                if (sgn(w) == 0) continue;
                for (std::size_t y = 0; y < n; ++y) d.p[y] += w * stationary[closed[ci]][y];
            }
        }
        out.push_back(std::move(d));
    }
    return out;
}

std::vector<Distribution> limit_distributions(const Generator& L, const ScalarField& f) {
    return limit_distributions(oriented_generator(L, f).matrix);
}

Distribution limit_distribution(const Generator& L, const ScalarField& f, std::size_t x) {
    if (x >= L.size()) throw std::out_of_range("start vertex out of range");
    return limit_distributions(L, f)[x];
}

std::size_t Trajectory::state_at(double t) const {
    auto it = std::upper_bound(steps.begin(), steps.end(), t,
                               [](double v, const std::pair<double, std::size_t>& s) { return v < s.first; });
    return std::prev(it)->second;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 finalizer
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

struct RateTable {
    std::vector<std::vector<std::pair<std::size_t, double>>> out;
    std::vector<double> total;
};

RateTable rate_table(const Generator& q) {
    RateTable r;
    std::size_t n = q.size();
    r.out.resize(n);
    r.total.assign(n, 0);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            if (y != x && sgn(q(x, y)) > 0) {
                double v = q(x, y).get_d();
                r.out[x].emplace_back(y, v);
                r.total[x] += v;
            }
    return r;
}

Trajectory simulate(const RateTable& r, std::size_t x, double horizon, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Trajectory tr;
    tr.seed = seed;
    tr.horizon = horizon;
    tr.steps.emplace_back(0.0, x);
    double t = 0;
    std::size_t v = x;
    while (r.total[v] > 0) {
        double u = std::generate_canonical<double, 64>(rng);
        t += -std::log1p(-u) / r.total[v];
        if (t > horizon) break;
        double pick = std::generate_canonical<double, 64>(rng) * r.total[v];
        std::size_t next = r.out[v].back().first;
        for (const auto& [y, w] : r.out[v]) {
            if (pick < w) {
                next = y;
                break;
            }
            pick -= w;
        }
        v = next;
        tr.steps.emplace_back(t, v);
    }
    return tr;
}

}  // namespace

Trajectory simulate_trajectory(const Generator& L, const ScalarField& f, std::size_t x, double horizon,
                               std::uint64_t seed) {
    if (!(horizon > 0)) throw std::invalid_argument("horizon must be positive");
    if (x >= L.size()) throw std::out_of_range("start vertex out of range");
    return simulate(rate_table(oriented_generator(L, f).matrix), x, horizon, seed);
}

std::vector<double> empirical_law(const Generator& L, const ScalarField& f, std::size_t x, double horizon,
                                  std::uint64_t runs, std::uint64_t seed) {
    if (!(horizon > 0)) throw std::invalid_argument("horizon must be positive");
    if (runs == 0) throw std::invalid_argument("at least one run is required");
    RateTable r = rate_table(oriented_generator(L, f).matrix);
    std::vector<double> counts(L.size(), 0.0);
    for (std::uint64_t i = 0; i < runs; ++i) counts[simulate(r, x, horizon, derive_seed(seed, i)).steps.back().second] += 1;
    for (auto& c : counts) c /= static_cast<double>(runs);
    return counts;
}

double total_variation(const std::vector<double>& a, const Distribution& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b.p[i].get_d());
    return s / 2;
}

ComparisonVerdict check_comp_lemma(const Generator& L, const ScalarField& f, const ScalarField& g) {
    ExtendedField tf = eval_TL(L, f), tg = eval_TL(L, g);
    for (std::size_t x = 0; x < f.size(); ++x)
        if (tf[x].as_rational() < tg[x].as_rational()) return ComparisonVerdict::HypothesesFail;
    Generator lf = oriented_generator(L, f).matrix;
    std::vector<Rational> lg = apply_generator(lf, g), lff = apply_generator(lf, f);
    for (std::size_t x = 0; x < f.size(); ++x)
        if (lg[x] < lff[x]) return ComparisonVerdict::TheoremViolation;
    return ComparisonVerdict::ConclusionHolds;
}

ComparisonVerdict check_limit_comparison(const Generator& L, const ScalarField& f, const ScalarField& g) {
    VertexSet m = minima_set(L, f);
    for (std::size_t x = m.find_first(); x != VertexSet::npos; x = m.find_next(x))
        if (f[x] < g[x]) return ComparisonVerdict::HypothesesFail;
    for (const auto& pi : limit_distributions(L, f))
        if (pi.expectation(f) < pi.expectation(g)) return ComparisonVerdict::TheoremViolation;
    return ComparisonVerdict::ConclusionHolds;
}

}  // namespace descent
