#include "test_support.hpp"

#include "descent/classification.hpp"
#include "descent/criticality.hpp"

#include <gtest/gtest.h>

using namespace descent;
using descent::support::field;
using descent::support::q;

namespace {

SpaceSpec z9() { return load_space_spec(support::data_path("z9.json")); }

// {x-1, x, x+1} on the n-cycle.
NeighborhoodSystem ring_system(const SpacePtr& s) {
    std::size_t n = s->size();
    std::vector<VertexSet> d;
    for (std::size_t x = 0; x < n; ++x) d.push_back(support::set_of(n, {(x + n - 1) % n, x, (x + 1) % n}));
    return NeighborhoodSystem(s, d);
}

}  // namespace

TEST(Subsets, MaskRoundTrip) {
    for (std::uint64_t mask = 0; mask < 32; ++mask) EXPECT_EQ(subset_mask(subset_from_mask(5, mask)), mask);
    EXPECT_EQ(subset_mask(support::set_of(4, {0, 3})), 9u);
}

TEST(ExtractSystem, RingFromTheLimitSlope) {
    SpaceSpec spec = z9();
    auto z = CriticalMapOracle::from_operator(make_TLm(spec.generator("L"), Exponent::inf()));
    ExtractedSystem e = extract_system(z);
    EXPECT_TRUE(e.all_h());
    EXPECT_EQ(e.system(), ring_system(spec.space));
}

TEST(ExtractSystem, RoundTripsEverySteepestDescentSystem) {
    std::mt19937_64 rng(41);
    for (std::size_t n = 1; n <= 5; ++n) {
        auto s = FiniteSpace::integers(n);
        for (int trial = 0; trial < 10; ++trial) {
            NeighborhoodSystem d = support::random_system(s, rng);
            ExtractedSystem e = extract_system(CriticalMapOracle::from_operator(make_TD(d)));
            EXPECT_EQ(e.system(), d);
            EXPECT_TRUE(e.all_h());
        }
    }
}

TEST(ExtractSystem, CapIsEnforced) {
    auto s = FiniteSpace::integers(5);
    auto z = CriticalMapOracle::from_operator(make_TD(NeighborhoodSystem::complete(s)));
    EXPECT_THROW(extract_system(z, 4), BudgetError);
}

TEST(ExtractSystem, NeighborMaxGapViolatesHypothesisH) {
    SpaceSpec spec = load_space_spec(support::data_path("exafin.json"));
    std::size_t xbar = spec.space->index("xbar");
    ExtractedSystem e = extract_system(CriticalMapOracle::from_operator(parse_operator(Json("gap"), spec)));
    EXPECT_EQ(e.d[xbar], support::set_of(4, {xbar}));
    EXPECT_FALSE(e.hypothesis_h[xbar]);
    EXPECT_EQ(e.first_h_failure(), xbar);
}

TEST(ZAxioms, SteepestDescentSatisfiesAll) {
    std::mt19937_64 rng(42);
    for (std::size_t n : {3, 4}) {
        auto s = FiniteSpace::integers(n);
        for (int trial = 0; trial < 4; ++trial) {
            auto z = CriticalMapOracle::from_operator(make_TD(support::random_system(s, rng)));
            AxiomReport rep = check_Z_axioms(z, FunctionGrid::integers(s, 3));
            ASSERT_EQ(rep.results.size(), 5u);
            for (const auto& r : rep.results) EXPECT_TRUE(r.holds()) << r.axiom;
        }
    }
}

TEST(ZAxioms, TruncationFailsScalingAtTheBandRatio) {
    SpaceSpec spec = load_space_spec(support::data_path("eps-trunc.json"));
    auto z = CriticalMapOracle::from_operator(parse_operator(Json("trunc"), spec));
    AxiomReport rep = check_Z_axioms(z, FunctionGrid::integers(spec.space, 4));
    const AxiomResult* z2 = rep.find("Z2");
    ASSERT_NE(z2, nullptr);
    ASSERT_FALSE(z2->holds());
    const ScalarField& f = *z2->witness->f;
    EXPECT_EQ(*z2->witness->r, Rational(1) / (f.max() - f.min()));
    // Z(rf) = V once the whole range of rf fits inside the band.
    EXPECT_TRUE(z(f * *z2->witness->r).all());
    EXPECT_FALSE(z(f).all());
    EXPECT_TRUE(rep.find("Z1")->holds());
    EXPECT_FALSE(rep.find("Z3")->holds());
}

TEST(ZAxioms, NeighborMaxGapFailsZ5NotZ4) {
    SpaceSpec spec = load_space_spec(support::data_path("exafin.json"));
    auto z = CriticalMapOracle::from_operator(parse_operator(Json("gap"), spec));
    AxiomReport rep = check_Z_axioms(z, FunctionGrid::integers(spec.space, 3));
    EXPECT_TRUE(rep.find("Z4")->holds());
    const AxiomResult* z5 = rep.find("Z5");
    ASSERT_FALSE(z5->holds());
    EXPECT_EQ(z5->witness->x, spec.space->index("xbar"));
}

TEST(Recursion, ConstantAndTwoValuedBaseCases) {
    auto s = FiniteSpace::integers(3);
    auto z = CriticalMapOracle::from_operator(make_TD(NeighborhoodSystem::complete(s)));
    const IndicatorTable& table = z.table();
    EXPECT_TRUE(eval_Z_recursive(table, ScalarField::constant(s, 7)).all());
    ScalarField two = field(s, {5, 2, 5});
    EXPECT_EQ(eval_Z_recursive(table, two), table[subset_mask(support::set_of(3, {0, 2}))]);
    EXPECT_THROW(eval_Z_recursive(IndicatorTable(2), two), std::out_of_range);
}

TEST(Recursion, MatchesDirectCriticalSetsExhaustively) {
    std::mt19937_64 rng(43);
    auto s = FiniteSpace::integers(4);
    FunctionGrid grid = FunctionGrid::integers(s, 4);
    for (int trial = 0; trial < 5; ++trial) {
        auto td = make_TD(support::random_system(s, rng));
        auto table = indicator_table(CriticalMapOracle::from_operator(td));
        auto stored = CriticalMapOracle::from_table(s, table);
        grid.for_each([&](std::uint64_t, const ScalarField& f) {
            VertexSet direct = critical_set(td, f);
            ASSERT_EQ(eval_Z_recursive(table, f), direct) << f.to_string();
            ASSERT_EQ(stored(f), direct);
        });
    }
}

TEST(Classify, SlopesOnTheNineCycleAreCertified) {
    SpaceSpec spec = z9();
    FunctionGrid grid = FunctionGrid::integers(spec.space, 3);
    for (const Exponent& m : {Exponent::of(1), Exponent::of(2), Exponent::inf()}) {
        Classification c = classify(make_TLm(spec.generator("L"), m), grid);
        EXPECT_EQ(c.verdict, ClassifyVerdict::Certified) << m.to_string();
        EXPECT_EQ(c.extracted.system(), ring_system(spec.space));
        EXPECT_EQ(c.fields_checked, 19683u);
        EXPECT_EQ(c.mismatches, 0u);
    }
}

TEST(Classify, IsAProjection) {
    std::mt19937_64 rng(44);
    auto s = FiniteSpace::integers(4);
    FunctionGrid grid = FunctionGrid::integers(s, 3);
    for (int trial = 0; trial < 3; ++trial) {
        NeighborhoodSystem d = support::random_system(s, rng);
        Classification once = classify(make_TD(d), grid);
        ASSERT_EQ(once.verdict, ClassifyVerdict::Certified);
        EXPECT_EQ(once.extracted.system(), d);
        Classification twice = classify(make_TD(once.extracted.system()), grid);
        EXPECT_EQ(twice.extracted.system(), once.extracted.system());
    }
}

TEST(Classify, HypothesisFailureIsReportedWithContainment) {
    SpaceSpec spec = load_space_spec(support::data_path("exafin.json"));
    Classification c = classify(parse_operator(Json("gap"), spec), FunctionGrid::integers(spec.space, 3));
    EXPECT_EQ(c.verdict, ClassifyVerdict::HypothesisFails);
    EXPECT_TRUE(c.reconstruction_contains);
    Json j = c.to_json();
    EXPECT_EQ(j["verdict"], "hypothesis-h-fails");
    EXPECT_EQ(j["h_failure"]["x"], "xbar");
    EXPECT_EQ(j["h_failure"]["D_x"], Json::array({"xbar"}));
}

TEST(Classify, NonHomogeneousOperatorsAreRejected) {
    auto s = FiniteSpace::integers(3);
    auto t = make_truncate_eps(1, make_TL(support::ring_generator(s)));
    Classification c = classify(t, FunctionGrid::integers(s, 4));
    EXPECT_EQ(c.verdict, ClassifyVerdict::NotHomogeneous);
}
