#include "test_support.hpp"

#include "descent/markov.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace descent;
using descent::support::field;
using descent::support::q;

namespace {

SpaceSpec z9() { return load_space_spec(support::data_path("z9.json")); }

Rational row_sum(const Generator& g, std::size_t x) {
    Rational s = 0;
    for (std::size_t y = 0; y < g.size(); ++y) s += g(x, y);
    return s;
}

// Every generator on n vertices with off-diagonal rates in {0, 1/2, 1}.
std::vector<Generator> all_generators(const SpacePtr& s) {
    std::size_t n = s->size(), slots = n * (n - 1), total = 1;
    for (std::size_t i = 0; i < slots; ++i) total *= 3;
    std::vector<Generator> out;
    for (std::size_t code = 0; code < total; ++code) {
        RationalMatrix m(n, std::vector<Rational>(n));
        std::size_t c = code;
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                if (x != y) m[x][y] = Rational(static_cast<long>(c % 3)) / 2, c /= 3;
        out.push_back(generator_from_rates(s, m));
    }
    return out;
}

}  // namespace

TEST(OrientedGenerator, EntrywiseRule) {
    SpaceSpec spec = z9();
    const Generator& L = spec.generator("L");
    OrientedGenerator o = oriented_generator(L, spec.function("f"));
    EXPECT_EQ(o.matrix(8, 0), q("1/2"));
    EXPECT_EQ(o.matrix(8, 7), 0);
    EXPECT_EQ(o.matrix(8, 8), q("-1/2"));
    EXPECT_EQ(o.source, L);
    for (std::size_t x = 0; x < 9; ++x) EXPECT_EQ(row_sum(o.matrix, x), 0);
    EXPECT_EQ(oriented_generator(L, ScalarField::constant(spec.space, 0)).matrix, L);
    Generator zero = Generator::zero(spec.space);
    EXPECT_EQ(oriented_generator(zero, spec.function("f")).matrix, zero);
}

TEST(OrientedGenerator, ActsLinearly) {
    auto s = FiniteSpace::integers(3);
    Generator L = support::ring_generator(s);
    auto lg = apply_generator(L, field(s, {0, 2, 4}));
    EXPECT_EQ(lg[0], 3);   // (2 + 4) / 2
    EXPECT_EQ(lg[1], 0);   // (-2 + 2) / 2
    EXPECT_EQ(lg[2], -3);  // (-4 - 2) / 2
}

TEST(LimitDistribution, SymmetricTwoStateIsUniform) {
    auto s = FiniteSpace::integers(2);
    Generator L = support::ring_generator(s, 1);
    Distribution d = limit_distribution(L, ScalarField::constant(s, 0), 0);
    EXPECT_EQ(d.p[0], q("1/2"));
    EXPECT_EQ(d.p[1], q("1/2"));
}

TEST(LimitDistribution, NineCycleFromFourSpreadsOverTheMinima) {
    SpaceSpec spec = z9();
    Distribution d = limit_distribution(spec.generator("L"), spec.function("f"), 4);
    for (std::size_t x : {1, 2, 5, 6}) EXPECT_EQ(d.p[x], q("1/4"));
    EXPECT_EQ(members(d.support()), (std::vector<std::size_t>{1, 2, 5, 6}));
    EXPECT_EQ(d.to_json()["1"], "1/4");
}

TEST(LimitDistribution, PointMassInASingletonClosedClass) {
    SpaceSpec spec = z9();
    // 1 and 2 form a closed class of the oriented chain.
    Distribution d = limit_distribution(spec.generator("L"), spec.function("f"), 1);
    EXPECT_EQ(d.p[2], q("1/2"));
    auto s = FiniteSpace::integers(2);
    Distribution e = limit_distribution(Generator::zero(s), field(s, {0, 1}), 1);
    EXPECT_EQ(e.p[1], 1);
}

TEST(LimitDistribution, ExhaustiveSupportContainmentOnThreeVertices) {
    auto s = FiniteSpace::integers(3);
    FunctionGrid grid = FunctionGrid::integers(s, 3);
    auto fields = enumerate_fields(grid);
    for (const Generator& L : all_generators(s))
        for (const ScalarField& f : fields) {
            VertexSet m = minima_set(L, f);
            std::vector<Distribution> laws = limit_distributions(L, f);
            for (std::size_t x = 0; x < 3; ++x) {
                Rational total = 0;
                for (const auto& p : laws[x].p) {
                    EXPECT_GE(p, 0);
                    total += p;
                }
                ASSERT_EQ(total, 1);
                ASSERT_TRUE(laws[x].support().is_subset_of(m)) << f.to_string();
                ASSERT_TRUE(laws[x].support().intersects(DescentOrder(L, f).reachable(x)));
            }
        }
}

TEST(Simulation, ZeroGeneratorNeverJumps) {
    auto s = FiniteSpace::integers(2);
    Trajectory tr = simulate_trajectory(Generator::zero(s), field(s, {0, 1}), 1, 10, 3);
    ASSERT_EQ(tr.steps.size(), 1u);
    EXPECT_EQ(tr.steps[0], (std::pair<double, std::size_t>{0.0, 1}));
    EXPECT_EQ(tr.state_at(9.5), 1u);
}

TEST(Simulation, PathsDescendAndReplay) {
    SpaceSpec spec = z9();
    const Generator& L = spec.generator("L");
    const ScalarField& f = spec.function("f");
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        Trajectory tr = simulate_trajectory(L, f, 4, 30, seed);
        EXPECT_EQ(tr.seed, seed);
        ASSERT_EQ(tr.steps.front().first, 0.0);
        EXPECT_EQ(tr.steps.front().second, 4u);
        for (std::size_t k = 1; k < tr.steps.size(); ++k) {
            EXPECT_GT(tr.steps[k].first, tr.steps[k - 1].first);
            EXPECT_LE(tr.steps[k].first, 30.0);
            EXPECT_LE(f[tr.steps[k].second], f[tr.steps[k - 1].second]);
        }
        Trajectory again = simulate_trajectory(L, f, 4, 30, seed);
        EXPECT_EQ(again.steps, tr.steps);
    }
}

TEST(Simulation, EmpiricalLawApproachesTheExactLimit) {
    SpaceSpec spec = z9();
    const Generator& L = spec.generator("L");
    const ScalarField& f = spec.function("f");
    auto emp = empirical_law(L, f, 4, 30, 20000, 9);
    EXPECT_LE(total_variation(emp, limit_distribution(L, f, 4)), 0.03);
    EXPECT_EQ(empirical_law(L, f, 4, 30, 500, 9), empirical_law(L, f, 4, 30, 500, 9));
}

TEST(Simulation, DerivedSeedsAreDistinct) {
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_seed(42, i));
    EXPECT_EQ(seen.size(), 1000u);
    EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
}

TEST(CompLemma, ReflexiveScaledAndRandom) {
    SpaceSpec spec = z9();
    const Generator& L = spec.generator("L");
    ScalarField g = spec.function("f");
    EXPECT_EQ(check_comp_lemma(L, g, g), ComparisonVerdict::ConclusionHolds);
    EXPECT_EQ(check_comp_lemma(L, g * 2, g), ComparisonVerdict::ConclusionHolds);

    std::mt19937_64 rng(31);
    auto s = FiniteSpace::integers(5);
    int tested = 0;
    for (int trial = 0; trial < 3000; ++trial) {
        Generator l = support::random_generator(s, rng);
        ScalarField f = support::random_field(s, rng, 4), h = support::random_field(s, rng, 4);
        ComparisonVerdict v = check_comp_lemma(l, f, h);
        ASSERT_NE(v, ComparisonVerdict::TheoremViolation);
        tested += v == ComparisonVerdict::ConclusionHolds;
    }
    EXPECT_GT(tested, 100);
}

TEST(LimitComparison, NoViolationsOnRandomPairs) {
    std::mt19937_64 rng(32);
    auto s = FiniteSpace::integers(4);
    int tested = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        Generator l = support::random_generator(s, rng);
        ScalarField f = support::random_field(s, rng, 3), g = support::random_field(s, rng, 3);
        ComparisonVerdict v = check_limit_comparison(l, f, g);
        ASSERT_NE(v, ComparisonVerdict::TheoremViolation);
        tested += v == ComparisonVerdict::ConclusionHolds;
    }
    EXPECT_GT(tested, 100);
}

TEST(LimitDistribution, DependsOnTheStart) {
    SpaceSpec spec = z9();
    auto laws = limit_distributions(spec.generator("L"), spec.function("f"));
    EXPECT_NE(laws[1].p, laws[5].p);
    EXPECT_EQ(members(laws[1].support()), (std::vector<std::size_t>{1, 2}));
    EXPECT_EQ(members(laws[5].support()), (std::vector<std::size_t>{5, 6}));
}
