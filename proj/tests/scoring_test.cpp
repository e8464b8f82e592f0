#include <algorithm>
#include <numeric>

#include <gtest/gtest.h>

#include "pmcdse/errors.h"
#include "pmcdse/report.h"
#include "pmcdse/scoring.h"
#include "test_support.h"

namespace pmcdse {
namespace {

constexpr PropertyAnnotation kWorsePercentage{Direction::HigherIsWorse, ValueRange::BoundedPercentage};
constexpr PropertyAnnotation kBetterPercentage{Direction::HigherIsBetter, ValueRange::BoundedPercentage};
constexpr PropertyAnnotation kWorseMagnitude{Direction::HigherIsWorse, ValueRange::UnboundedMagnitude};

SweepResults referenceSweep() {
    auto b = testing::loadReference();
    return runSweep(b.model, b.space, b.properties, b.criteria);
}

std::vector<std::size_t> rankedThetas(ScoreTable const& table) {
    std::vector<std::size_t> thetas;
    for (auto const& row : rank(table, table.rows.size()).ordered) thetas.push_back(row.theta);
    return thetas;
}

TEST(MapValueTest, Percentages) {
    EXPECT_DOUBLE_EQ(mapValue(0.2, kWorsePercentage, {}), 0.8);
    EXPECT_DOUBLE_EQ(mapValue(0.2, kBetterPercentage, {}), 0.2);
    EXPECT_THROW(mapValue(1.2, kBetterPercentage, {}), RangeViolation);
    EXPECT_THROW(mapValue(-0.1, kWorsePercentage, {}), RangeViolation);
}

TEST(MapValueTest, Magnitudes) {
    std::vector<double> population{10, 20, 40};
    EXPECT_DOUBLE_EQ(mapValue(10, kWorseMagnitude, population), 1.0);
    EXPECT_DOUBLE_EQ(mapValue(20, kWorseMagnitude, population), 2.0 / 3.0);
    EXPECT_DOUBLE_EQ(mapValue(40, kWorseMagnitude, population), 0.0);
    EXPECT_DOUBLE_EQ(mapValue(20, {Direction::HigherIsBetter, ValueRange::UnboundedMagnitude}, population),
                     1.0 / 3.0);
    std::vector<double> constant{7, 7};
    EXPECT_DOUBLE_EQ(mapValue(7, kWorseMagnitude, constant), 1.0);
    std::vector<double> infinite{1, std::numeric_limits<double>::infinity()};
    EXPECT_THROW(mapValue(1, kWorseMagnitude, infinite), InfinitePopulationValue);
}

TEST(WeightedSumTest, Examples) {
    std::vector<double> ones{1, 1, 1, 1};
    EXPECT_DOUBLE_EQ(weightedSum(ones, std::vector<double>{0.1, 0.2, 0.3, 0.4}), 1.0);
    EXPECT_DOUBLE_EQ(weightedSum(std::vector<double>{0.5}, std::vector<double>{1.0}), 0.5);
    EXPECT_DOUBLE_EQ(weightedSum(std::vector<double>{0.2, 0.8}, std::vector<double>{0.25, 0.75}), 0.65);
}

TEST(WeightedSumTest, RejectsInvalidWeights) {
    EXPECT_THROW(weightedSum(std::vector<double>{0.2, 0.8}, std::vector<double>{1.0}), WeightMismatch);
    EXPECT_THROW(weightedSum(std::vector<double>{0.2, 0.8}, std::vector<double>{0.5, 0.6}), WeightSumViolation);
    EXPECT_THROW(weightedSum(std::vector<double>{0.2, 0.8}, std::vector<double>{0.5, 0.5 + 1e-11}),
                 WeightSumViolation);
    EXPECT_NO_THROW(weightedSum(std::vector<double>{0.2, 0.8}, std::vector<double>{0.5, 0.5 + 1e-13}));
}

TEST(ScaleToTenTest, Examples) {
    EXPECT_EQ(scaleToTen(std::vector<double>{2, 5, 8}), (std::vector<double>{0, 5, 10}));
    EXPECT_EQ(scaleToTen(std::vector<double>{0.42}), (std::vector<double>{10}));
    EXPECT_EQ(scaleToTen(std::vector<double>{0.3, 0.3, 0.3}), (std::vector<double>{10, 10, 10}));
}

TEST(ScoringConfigTest, DefaultWiring) {
    auto config = defaultScoringConfig();
    ASSERT_EQ(config.criteria.size(), 4u);
    EXPECT_EQ(config.criteria[0].properties, (std::vector<std::string>{"phi1", "phi3", "phi4", "phi5", "phi6"}));
    EXPECT_EQ(config.criteria[1].properties, std::vector<std::string>{"phi5"});
    EXPECT_EQ(config.criteria[2].properties, std::vector<std::string>{"phi7"});
    EXPECT_EQ(config.criteria[3].properties, (std::vector<std::string>{"phi2", "phi3", "phi4"}));
    EXPECT_EQ(config.annotation("phi2").range, ValueRange::UnboundedMagnitude);
    EXPECT_EQ(config.annotation("phi1").direction, Direction::HigherIsBetter);
    EXPECT_EQ(config.annotation("phi4").direction, Direction::HigherIsWorse);
}

TEST(ScoringConfigTest, ShippedFileMatchesDefault) {
    auto shipped = loadScoringConfig(testing::referenceDir() / "criteria.cfg");
    auto def = defaultScoringConfig();
    ASSERT_EQ(shipped.criteria.size(), def.criteria.size());
    for (std::size_t i = 0; i < def.criteria.size(); ++i) {
        EXPECT_EQ(shipped.criteria[i].id, def.criteria[i].id);
        EXPECT_EQ(shipped.criteria[i].properties, def.criteria[i].properties);
        for (std::size_t k = 0; k < def.criteria[i].weights.size(); ++k)
            EXPECT_NEAR(shipped.criteria[i].weights[k], def.criteria[i].weights[k], 1e-12);
    }
    for (auto const& [id, a] : def.annotations) {
        EXPECT_EQ(shipped.annotation(id).direction, a.direction) << id;
        EXPECT_EQ(shipped.annotation(id).range, a.range) << id;
    }
}

TEST(ScoringConfigTest, ParsesAndValidates) {
    auto config = parseScoringConfig("criterion C1 phi1 phi2\nweights C1 0.25 0.75\ndirection phi2 worse\n"
                                     "kind phi2 magnitude\n");
    EXPECT_EQ(config.criteria[0].weights, (std::vector<double>{0.25, 0.75}));
    EXPECT_EQ(config.annotation("phi2").range, ValueRange::UnboundedMagnitude);
    EXPECT_NO_THROW(config.validate({"phi1", "phi2"}));
    EXPECT_THROW(config.validate({"phi1"}), UnknownPropertyId);
    auto bad = parseScoringConfig("criterion C1 phi1 phi2\nweights C1 0.5 0.6\n");
    EXPECT_THROW(bad.validate({"phi1", "phi2"}), WeightSumViolation);
    EXPECT_THROW(parseScoringConfig("criterion C1 phi1\ndirection phi1 sideways\n"), FormatError);
}

TEST(ScoreTableTest, ReferenceScoresSpanFullRange) {
    auto results = referenceSweep();
    auto table = scoreTable(results, defaultScoringConfig());
    ASSERT_EQ(table.rows.size(), std::size(testing::kOracleSurvivors));
    for (std::size_t c = 0; c < table.criteria.size(); ++c) {
        double lo = 10, hi = 0;
        for (auto const& row : table.rows) {
            EXPECT_GE(row.scores[c], 0.0);
            EXPECT_LE(row.scores[c], 10.0);
            lo = std::min(lo, row.scores[c]);
            hi = std::max(hi, row.scores[c]);
        }
        EXPECT_EQ(lo, 0.0) << table.criteria[c];
        EXPECT_EQ(hi, 10.0) << table.criteria[c];
    }
    for (auto const& row : table.rows) EXPECT_DOUBLE_EQ(row.average, average(row.scores));
}

TEST(ScoreTableTest, IdenticalVariantsScoreTen) {
    auto b = testing::loadReference();
    auto space = parseDesignSpace(
        "subsystem SP\nalt A { p_s1_s1=0.496 p_s1_s2=0.496 p_s1_s7=0.008 }\n"
        "alt B { p_s1_s1=0.496 p_s1_s2=0.496 p_s1_s7=0.008 }\n"
        "subsystem MP\nalt M { p_s3_s3=0.197 p_s3_s1=0.197 p_s3_s4=0.591 p_s3_s7=0.015 }\n"
        "subsystem OM\nalt O { p_s4_s4=0.2 p_s4_s5=0.3 p_s4_s6=0.3 p_s4_s7=0.2 }\n");
    auto table = scoreTable(runSweep(b.model, space, b.properties, {}), defaultScoringConfig());
    for (auto const& row : table.rows) {
        for (double s : row.scores) EXPECT_EQ(s, 10.0);
        EXPECT_EQ(row.average, 10.0);
    }
}

TEST(ScoreTableTest, NoSurvivorsIsAnError) {
    auto b = testing::loadReference();
    std::vector<SuccessCriterion> impossible = {{"phi1", Comparator::AtLeast, 0.99}};
    auto results = runSweep(b.model, b.space, b.properties, impossible);
    try {
        scoreTable(results, defaultScoringConfig());
        FAIL() << "expected NoVerifiedDesigns";
    } catch (Error const& e) {
        EXPECT_EQ(e.kind(), "NoVerifiedDesigns");
    }
}

TEST(ScoreTableTest, RankingInvariantUnderAffineTransforms) {
    auto results = referenceSweep();
    auto config = defaultScoringConfig();
    auto base = scoreTable(results, config);
    auto weighted = weightedScores(results, config);
    auto expected = rankedThetas(base);
    std::vector<std::pair<double, double>> transforms = {{2.0, 0.0}, {0.5, 3.0}, {1e3, -7.0}, {1e-3, 1.0}};
    for (std::size_t c = 0; c < weighted.size(); ++c) {
        for (auto [a, b] : transforms) {
            auto transformed = weighted;
            for (double& x : transformed[c]) x = a * x + b;
            auto table = tableFromWeighted(base.rows, base.criteria, transformed);
            EXPECT_EQ(rankedThetas(table), expected) << "criterion " << c << " a=" << a << " b=" << b;
        }
    }
}

ScoreTable table8() {
    return parseScoreCsv(readTextFile(testing::dataDir() / "table8_scores.csv"));
}

TEST(RankTest, PublishedScoresOrdering) {
    auto ranked = rank(table8(), 3);
    EXPECT_EQ(rankedThetas(table8()), (std::vector<std::size_t>{8, 12, 6, 10, 7, 9}));
    ASSERT_EQ(ranked.selected().size(), 3u);
    EXPECT_EQ(ranked.selected()[0].theta, 8u);
    EXPECT_EQ(ranked.selected()[1].theta, 12u);
    EXPECT_EQ(ranked.selected()[2].theta, 6u);
}

TEST(RankTest, TiesBreakByTheta) {
    ScoreTable table{{"C1"}, {{5, "", {4}, 4}, {2, "", {4}, 4}, {3, "", {9}, 9}}};
    EXPECT_EQ(rankedThetas(table), (std::vector<std::size_t>{3, 2, 5}));
    EXPECT_EQ(rank(table, 10).top, 3u);
    ScoreTable single{{"C1"}, {{1, "", {3}, 3}}};
    EXPECT_EQ(rank(single, 1).selected()[0].theta, 1u);
}

TEST(MergeExternalTest, ConstantCriterion) {
    auto table = table8();
    std::string csv = "theta,C5\n";
    for (auto const& row : table.rows) csv += std::to_string(row.theta) + ",5\n";
    auto merged = mergeExternalCriteria(table, csv);
    ASSERT_EQ(merged.criteria.size(), 5u);
    for (std::size_t i = 0; i < table.rows.size(); ++i)
        EXPECT_NEAR(merged.rows[i].average, (4 * table.rows[i].average + 5) / 5, 1e-12);
}

TEST(MergeExternalTest, TopScoresRaiseAverages) {
    auto table = table8();
    std::string csv = "theta,C5,C6\n";
    for (auto const& row : table.rows) csv += std::to_string(row.theta) + ",10,10\n";
    auto merged = mergeExternalCriteria(table, csv);
    for (std::size_t i = 0; i < table.rows.size(); ++i) EXPECT_GE(merged.rows[i].average, table.rows[i].average);
}

TEST(MergeExternalTest, EmptyAndInvalidInput) {
    auto table = table8();
    auto unchanged = mergeExternalCriteria(table, "");
    EXPECT_EQ(unchanged.criteria, table.criteria);
    EXPECT_THROW(mergeExternalCriteria(table, "theta,C5\n6,11\n7,1\n8,1\n9,1\n10,1\n12,1\n"), RangeViolation);
    EXPECT_THROW(mergeExternalCriteria(table, "theta,C5\n6,1\n"), FormatError);
    EXPECT_THROW(mergeExternalCriteria(table, "theta,C5\n6,x\n7,1\n8,1\n9,1\n10,1\n12,1\n"), FormatError);
}

}  // namespace
}  // namespace pmcdse
