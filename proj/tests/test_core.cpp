#include "test_support.hpp"

#include "descent/exact_linalg.hpp"
#include "descent/function_grid.hpp"
#include "descent/graph.hpp"
#include "descent/json_util.hpp"

#include <gtest/gtest.h>

using namespace descent;
using descent::support::field;
using descent::support::q;

TEST(Rational, ParsesFractionsIntegersAndDecimals) {
    EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
    EXPECT_EQ(parse_rational("-4"), Rational(-4));
    EXPECT_EQ(parse_rational("1.25"), Rational(5, 4));
    EXPECT_EQ(to_string(parse_rational("10/4")), "5/2");
    EXPECT_EQ(to_string(Rational(7)), "7");
}

TEST(Rational, RejectsMalformedInput) {
    for (const char* bad : {"", "1/0", "a", "1/2/3", "1..2", "3e2", "/4"}) EXPECT_THROW(parse_rational(bad), std::invalid_argument) << bad;
}

TEST(ExtValue, RationalArithmeticAndOrder) {
    ExtValue a = ExtValue::from_rational(q("1/2")), b = ExtValue::from_rational(q("2/3"));
    EXPECT_LT(a, b);
    EXPECT_EQ((a + b).as_rational(), q("7/6"));
    EXPECT_TRUE(ExtValue().is_zero());
    EXPECT_THROW(ExtValue::from_rational(q("-1")), std::invalid_argument);
}

TEST(ExtValue, InfinityDominatesAndAbsorbsScaling) {
    ExtValue inf = ExtValue::infinity();
    EXPECT_GT(inf, ExtValue::from_rational(Rational(1000000)));
    EXPECT_TRUE((inf + ExtValue::from_rational(1)).is_infinite());
    EXPECT_TRUE(inf.scaled(0).is_zero());
    EXPECT_TRUE(inf.scaled(2).is_infinite());
    EXPECT_EQ(compare(inf, inf), std::partial_ordering::equivalent);
}

TEST(ExtValue, RadicalsAreCanonicalAndComparedExactly) {
    ExtValue s8 = ExtValue::root(8, 2), s2 = ExtValue::root(2, 2);
    EXPECT_EQ(s8, s2.scaled(2));  // sqrt 8 = 2 sqrt 2
    EXPECT_EQ(s8.key(), s2.scaled(2).key());
    EXPECT_TRUE(ExtValue::root(9, 2).is_rational());
    EXPECT_EQ(ExtValue::root(9, 2).as_rational(), 3);
    EXPECT_EQ(ExtValue::root(4, 4), s2);  // 4^(1/4) = 2^(1/2)
    // sqrt 2 + sqrt 3 ~ 3.1463 against sqrt 10 ~ 3.1623
    EXPECT_LT(ExtValue::root(2, 2) + ExtValue::root(3, 2), ExtValue::root(10, 2));
    EXPECT_GT(ExtValue::root(2, 2), ExtValue::from_rational(q("141421/100000")));
    EXPECT_LT(ExtValue::root(2, 2), ExtValue::from_rational(q("141422/100000")));
}

TEST(ExtValue, PowersOfRadicals) {
    EXPECT_EQ(ExtValue::root(2, 2).pow(2).as_rational(), 2);
    EXPECT_EQ(ExtValue::from_rational(q("1/4")).pow(q("1/2")).as_rational(), q("1/2"));
    ExtValue sum = ExtValue::root(2, 2) + ExtValue::from_rational(1);
    EXPECT_EQ(sum.pow(2), ExtValue::root(2, 2).scaled(2) + ExtValue::from_rational(3));
}

TEST(ExtValue, BoundsEncloseValue) {
    ExtValue v = ExtValue::root(5, 3);
    EXPECT_LT(v.lower(), v.upper());
    EXPECT_NEAR(v.to_double(), std::cbrt(5.0), 1e-12);
    EXPECT_LE(rational_pow(v.lower(), 3), Rational(5));
    EXPECT_GE(rational_pow(v.upper(), 3), Rational(5));
}

TEST(ExtValue, OverlappingEnclosuresAreUnordered) {
    ExtValue a = ExtValue::enclosure(q("1"), q("2"), "a"), b = ExtValue::enclosure(q("3/2"), q("3"), "b");
    EXPECT_EQ(compare(a, b), std::partial_ordering::unordered);
    EXPECT_EQ(compare(a, ExtValue::enclosure(q("1"), q("2"), "a")), std::partial_ordering::equivalent);
    EXPECT_LT(a, ExtValue::from_rational(5));
}

TEST(FiniteSpace, LabelsAndLookup) {
    auto s = FiniteSpace::make({"a", "b", "c"});
    EXPECT_EQ(s->index("b"), 1u);
    EXPECT_THROW(s->index("z"), std::out_of_range);
    EXPECT_THROW(FiniteSpace::make({"a", "a"}), std::invalid_argument);
    EXPECT_THROW(FiniteSpace::make({}), std::invalid_argument);
}

TEST(ScalarField, ArithmeticAndLevelOperations) {
    auto s = FiniteSpace::integers(4);
    ScalarField f = field(s, {3, 0, 2, 0});
    EXPECT_EQ(f.min(), 0);
    EXPECT_EQ(f.max(), 3);
    EXPECT_EQ(members(f.argmin()), (std::vector<std::size_t>{1, 3}));
    EXPECT_EQ(f.distinct_values(), (std::vector<Rational>{0, 2, 3}));
    EXPECT_EQ((f * q("1/2"))[0], q("3/2"));
    EXPECT_EQ(f.min_with(2), field(s, {2, 0, 2, 0}));
    EXPECT_EQ(f.max_with(2), field(s, {3, 2, 2, 2}));
    EXPECT_THROW(ScalarField(s, {Rational(1)}), std::invalid_argument);
    EXPECT_THROW(f + ScalarField::constant(FiniteSpace::integers(3), 0), std::invalid_argument);
}

TEST(Generator, ValidationReportsFirstViolation) {
    auto s = FiniteSpace::make({"a", "b"});
    try {
        validate_generator(s, {{q("-1"), q("1")}, {q("1"), q("0")}});
        FAIL() << "expected MatrixError";
    } catch (const MatrixError& e) {
        EXPECT_EQ(e.row, 1u);
        EXPECT_NE(std::string(e.what()).find("sums to 1"), std::string::npos);
    }
    EXPECT_THROW(validate_generator(s, {{q("1"), q("-1")}, {q("0"), q("0")}}), MatrixError);
    EXPECT_THROW(validate_generator(s, {{q("0")}}), MatrixError);
    Generator L = validate_generator(s, {{q("-1/2"), q("1/2")}, {q("0"), q("0")}});
    NeighborhoodSystem d = L.active_system();
    EXPECT_EQ(members(d[0]), (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(members(d[1]), (std::vector<std::size_t>{1}));
}

TEST(Matrices, MetricAndMeasureChecks) {
    auto s = FiniteSpace::integers(2);
    EXPECT_THROW(MetricMatrix(s, {{q("0"), q("0")}, {q("1"), q("0")}}), MatrixError);
    EXPECT_THROW(MeasureMatrix(s, {{q("0"), q("-1")}, {q("1"), q("0")}}), MatrixError);
    EXPECT_THROW(NeighborhoodSystem(s, {support::set_of(2, {1}), support::set_of(2, {1})}), std::invalid_argument);
}

TEST(FunctionGrid, MixedRadixOrderLastVertexFastest) {
    auto s = FiniteSpace::integers(2);
    FunctionGrid g = FunctionGrid::integers(s, 2);
    ASSERT_EQ(g.size(), 4u);
    EXPECT_EQ(g.at(0), field(s, {0, 0}));
    EXPECT_EQ(g.at(1), field(s, {0, 1}));
    EXPECT_EQ(g.at(2), field(s, {1, 0}));
    EXPECT_EQ(g.at(3), field(s, {1, 1}));
}

TEST(FunctionGrid, BudgetIsEnforcedBeforeEnumeration) {
    auto s = FiniteSpace::integers(10);
    try {
        FunctionGrid::integers(s, 10, 1000);
        FAIL() << "expected BudgetError";
    } catch (const BudgetError& e) {
        EXPECT_EQ(e.requested, 10'000'000'000ULL);
        EXPECT_EQ(e.cap, 1000u);
    }
    EXPECT_EQ(saturating_mul(UINT64_MAX, 2), UINT64_MAX);
}

TEST(Graph, CondensationMatchesClosureOracle) {
    std::mt19937_64 rng(7);
    std::bernoulli_distribution coin(0.25);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 1 + trial % 7;
        Adjacency adj(n);
        std::vector<std::vector<bool>> e(n, std::vector<bool>(n, false));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j && coin(rng)) adj[i].push_back(j), e[i][j] = true;
        auto r = support::closure(e);
        Condensation c = condense(adj);
        for (std::size_t i = 0; i < n; ++i) {
            VertexSet reach = reachable_from(adj, i);
            bool sink = true;
            for (std::size_t j = 0; j < n; ++j) {
                EXPECT_EQ(reach.test(j), r[i][j]);
                EXPECT_EQ(c.component[i] == c.component[j], r[i][j] && r[j][i]);
                if (r[i][j] && !r[j][i]) sink = false;
            }
            EXPECT_EQ(c.is_sink[c.component[i]], sink);
        }
    }
}

TEST(ExactLinalg, SolvesAndDetectsSingularity) {
    RationalMatrix a{{2, 1}, {1, 3}}, b{{3}, {5}};
    RationalMatrix x = solve_exact(a, b);
    EXPECT_EQ(x[0][0], q("4/5"));
    EXPECT_EQ(x[1][0], q("7/5"));
    EXPECT_THROW(solve_exact({{1, 2}, {2, 4}}, {{1}, {2}}), SingularSystem);
}

TEST(SpecIo, ParsesFixtureAndRoundTrips) {
    SpaceSpec spec = load_space_spec(support::data_path("z9.json"));
    EXPECT_EQ(spec.space->size(), 9u);
    EXPECT_EQ(spec.generator("L")(0, 1), q("1/2"));
    Json again = space_spec_json(spec);
    SpaceSpec spec2 = parse_space_spec(again);
    EXPECT_EQ(spec2.generator("L"), spec.generator("L"));
    EXPECT_EQ(spec2.function("f"), spec.function("f"));
    EXPECT_EQ(space_spec_json(spec2), again);
}

TEST(SpecIo, SyntaxErrorsCarryLineAndColumn) {
    try {
        parse_json_text("{\n  \"vertices\": [1,\n  2,, 3]\n}", "inline");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line, 3u);
        EXPECT_GT(e.column, 0u);
        EXPECT_NE(std::string(e.what()).find("inline:3:"), std::string::npos);
    }
}

TEST(SpecIo, UnknownNamesAreRejected) {
    SpaceSpec spec = load_space_spec(support::data_path("z9.json"));
    EXPECT_THROW(parse_operator(Json("nope"), spec), std::invalid_argument);
    EXPECT_THROW(parse_operator(Json{{"op", "TL"}, {"L", "missing"}}, spec), std::invalid_argument);
    EXPECT_THROW(parse_operator(Json{{"op", "Frobnicate"}}, spec), std::invalid_argument);
    EXPECT_THROW(parse_space_spec(Json{{"vertices", {"a"}}, {"functions", {{"f", {"1", "2"}}}}}), std::invalid_argument);
}

TEST(Matrices, EntriesAreCanonicalized) {
    auto s = FiniteSpace::integers(2);
    Generator L = generator_from_rates(s, {{Rational(0), Rational(2, 2)}, {Rational(4, 8), Rational(0)}});
    EXPECT_EQ(to_string(L(0, 1)), "1");
    EXPECT_EQ(to_string(L(1, 0)), "1/2");
    ScalarField f(s, {Rational(6, 4), Rational(0, 3)});
    EXPECT_EQ(f.to_string(), "(3/2,0)");
}
