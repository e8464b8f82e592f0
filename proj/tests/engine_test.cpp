#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "pmcdse/engine.h"
#include "pmcdse/errors.h"
#include "test_support.h"

namespace pmcdse {
namespace {

using testing::chainFrom;

constexpr double kInf = std::numeric_limits<double>::infinity();

TEST(EngineTest, ReferenceModelMatchesOracle) {
    auto bundle = testing::loadReference();
    ASSERT_EQ(bundle.properties.size(), 7u);
    for (std::size_t theta = 1; theta <= 12; ++theta) {
        auto chain = testing::referenceChain(bundle, theta);
        auto values = evaluateAll(chain, bundle.properties);
        ASSERT_EQ(values.size(), 7u);
        for (std::size_t k = 0; k < 7; ++k) {
            double expected = testing::kOracleValues[theta - 1][k];
            EXPECT_NEAR(values.values[k].value, expected, 1e-12 * std::abs(expected))
                << "theta " << theta << " phi" << k + 1;
        }
    }
}

TEST(EngineTest, ValueKinds) {
    auto bundle = testing::loadReference();
    auto values = evaluateAll(testing::referenceChain(bundle, 1), bundle.properties);
    EXPECT_EQ(values.at("phi1").kind, ValueKind::Probability);
    EXPECT_EQ(values.at("phi2").kind, ValueKind::ExpectedReward);
    EXPECT_EQ(values.at("phi3").kind, ValueKind::Probability);
    EXPECT_EQ(values.at("phi7").kind, ValueKind::LongRunAverage);
    EXPECT_THROW(values.at("phi8"), UnknownPropertyId);
}

TEST(EngineTest, SteadyStateProbabilitiesAreSubstochastic) {
    auto bundle = testing::loadReference();
    for (std::size_t theta = 1; theta <= 12; ++theta) {
        auto values = evaluateAll(testing::referenceChain(bundle, theta), bundle.properties);
        EXPECT_LE(values.at("phi3").value + values.at("phi4").value, 1.0 + 1e-12);
    }
}

TEST(EngineTest, ClosedForms) {
    auto geometric = chainFrom("state a\nstate t T\ninit a\ntrans a a 0.5\ntrans a t 0.5\ntrans t t 1\n"
                               "reward steps state a 1\n");
    EXPECT_NEAR(evaluate(geometric, parseProperty(R"(R{"steps"}=? [ F s=T ])")).value, 2.0, 1e-9);

    auto twoState = chainFrom("state A A\nstate B B\ninit A\ntrans A A 0.7\ntrans A B 0.3\ntrans B A 0.1\n"
                              "trans B B 0.9\n");
    EXPECT_NEAR(evaluate(twoState, parseProperty("S=? [ s=A ]")).value, 0.25, 1e-9);
    EXPECT_NEAR(evaluate(twoState, parseProperty("S=? [ s=B ]")).value, 0.75, 1e-9);

    auto branch = chainFrom("state a\nstate t T\nstate f F\ninit a\ntrans a t 0.7\ntrans a f 0.3\ntrans t t 1\n"
                            "trans f f 1\n");
    EXPECT_NEAR(evaluate(branch, parseProperty("P=? [ true U s=T ]")).value, 0.7, 1e-9);
    EXPECT_NEAR(evaluate(branch, parseProperty("P=? [ X s=F ]")).value, 0.3, 1e-9);
}

constexpr char const* kAbsorbing = R"(
state a A
state t T
state f F
init a
trans a t 0.5
trans a f 0.5
trans t t 1
trans f f 1
reward r state a 1
reward r state f 1
)";

TEST(EngineTest, UnreachableTargetGivesInfiniteReward) {
    auto chain = chainFrom(kAbsorbing);
    EXPECT_EQ(evaluate(chain, parseProperty(R"(R{"r"}=? [ F s=T ])")).value, kInf);
    EXPECT_EQ(evaluate(chain, parseProperty(R"(R{"r"}max=? [ F s=T ])")).value, kInf);
}

TEST(EngineTest, ProductDefinesZeroTimesInfinityAsZero) {
    auto chain = chainFrom(kAbsorbing);
    // P=? [ X s=A ] is 0 from the initial state; the reward is infinite.
    auto p = parseProperty(R"(P=? [ X s=A ] * R{"r"}=? [ F s=T ])");
    EXPECT_EQ(evaluate(chain, p).value, 0.0);
    auto q = parseProperty(R"(P=? [ X s=T ] * R{"r"}=? [ F s=T ])");
    EXPECT_EQ(evaluate(chain, q).value, kInf);
}

TEST(EngineTest, FilterReanchorsAtUniqueState) {
    auto chain = chainFrom(kAbsorbing);
    EXPECT_EQ(evaluate(chain, parseProperty("filter(state, P=? [ X s=T ], s=T)")).value, 1.0);
    EXPECT_EQ(evaluate(chain, parseProperty("filter(state, P=? [ X s=T ], s=F)")).value, 0.0);
    try {
        evaluate(chain, parseProperty("filter(state, P=? [ X s=T ], s=T | s=F)"));
        FAIL() << "expected FilterNotUnique";
    } catch (FilterNotUnique const& e) {
        EXPECT_EQ(e.count(), 2u);
    }
    EXPECT_THROW(evaluate(chain, parseProperty("filter(state, P=? [ X s=T ], !true)")), FilterNotUnique);
}

TEST(EngineTest, UnknownNamesAreReported) {
    auto chain = chainFrom(kAbsorbing);
    EXPECT_THROW(evaluate(chain, parseProperty("S=? [ s=NOPE ]")), UnknownLabel);
    EXPECT_THROW(evaluate(chain, parseProperty(R"(R{"nope"}=? [ S ])")), UnknownReward);
    PropertySet props({{"phi1", "", parseProperty("S=? [ s=T ]")}, {"phi2", "", parseProperty("S=? [ s=NOPE ]")}});
    try {
        evaluateAll(chain, props);
        FAIL() << "expected PropertyEvaluationError";
    } catch (PropertyEvaluationError const& e) {
        EXPECT_EQ(e.propertyId(), "phi2");
        EXPECT_EQ(e.causeKind(), "UnknownLabel");
    }
}

TEST(EngineTest, ReportedValueRoundsToFifteenDigits) {
    EXPECT_EQ(reportedValue(0.1 + 0.2), 0.3);
    EXPECT_EQ(reportedValue(0.40000000000000002), 0.4);
    EXPECT_EQ(reportedValue(kInf), kInf);
    EXPECT_EQ(reportedValue(0.0), 0.0);
    EXPECT_EQ(reportedValue(1.0 / 3.0), 0.333333333333333);
}

}  // namespace
}  // namespace pmcdse
