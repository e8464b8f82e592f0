#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pmcdse/design_space.h"

namespace pmcdse {

inline constexpr double kWeightSumTolerance = 1e-12;

enum class Direction { HigherIsBetter, HigherIsWorse };
enum class ValueRange { BoundedPercentage, UnboundedMagnitude };

struct PropertyAnnotation {
    Direction direction = Direction::HigherIsBetter;
    ValueRange range = ValueRange::BoundedPercentage;
};

// One criterion: a weighted combination of (mapped) property values.
struct CriterionMapping {
    std::string id;
    std::vector<std::string> properties;
    std::vector<double> weights;  // aligned with `properties`, sum to 1
};

struct ScoringConfig {
    std::vector<CriterionMapping> criteria;
    std::map<std::string, PropertyAnnotation> annotations;

    // Annotation for `propertyId`, defaulting to a higher-is-better
    // percentage.
    PropertyAnnotation annotation(std::string const& propertyId) const;
    // Checks weights (WeightMismatch, WeightSumViolation, RangeViolation) and
    // that every referenced property is in `propertyIds` (UnknownPropertyId).
    void validate(std::vector<std::string> const& propertyIds) const;
};

// Criteria wiring used for the reference study: C1..C4 over phi1..phi7 with
// uniform weights; phi2, phi4, phi5, phi6, phi7 are higher-is-worse and phi2
// is an unbounded step count.
ScoringConfig defaultScoringConfig();

// Grammar (see docs/formats.md):
//
//   criterion C1 phi1 phi3 phi4 phi5 phi6
//   weights   C1 0.2 0.2 0.2 0.2 0.2      (optional, default uniform)
//   direction phi2 worse                  (better | worse)
//   kind      phi2 magnitude              (percentage | magnitude)
ScoringConfig parseScoringConfig(std::string_view text, std::string const& source = "<criteria>");
ScoringConfig loadScoringConfig(std::filesystem::path const& path);

// Maps a raw value to [0,1] with 1 the best. Percentages are taken as is or
// complemented; magnitudes are min-max normalised over `population` and then
// complemented when higher is worse. A constant population maps to 1.
// Throws RangeViolation, InfinitePopulationValue.
double mapValue(double value, PropertyAnnotation annotation, std::span<double const> population);

// sum_i weights[i] * values[i]. Throws WeightMismatch, WeightSumViolation.
double weightedSum(std::span<double const> values, std::span<double const> weights);

// 10 * (x - min) / (max - min); a constant population maps to 10.
std::vector<double> scaleToTen(std::span<double const> values);

double average(std::span<double const> values);

struct ScoreRow {
    std::size_t theta;
    std::string variant;
    std::vector<double> scores;  // aligned with ScoreTable::criteria
    double average;
};

struct ScoreTable {
    std::vector<std::string> criteria;
    std::vector<ScoreRow> rows;  // ascending theta
};

// Scores every successful variant of `results`. Throws Error("NoVerifiedDesigns")
// when there is none.
ScoreTable scoreTable(SweepResults const& results, ScoringConfig const& config);

// Intermediate weighted scores s' per criterion (rows of the success set),
// before scaling to [0,10]. Exposed for invariance checks.
std::vector<std::vector<double>> weightedScores(SweepResults const& results, ScoringConfig const& config);

// Builds a table from per-criterion s' columns.
ScoreTable tableFromWeighted(std::vector<ScoreRow> rows, std::vector<std::string> criteria,
                             std::vector<std::vector<double>> const& weighted);

struct RankedDesigns {
    std::vector<ScoreRow> ordered;  // descending average, ties by ascending theta
    std::size_t top;                // number of selected leading rows

    std::vector<ScoreRow> selected() const {
        return {ordered.begin(), ordered.begin() + static_cast<std::ptrdiff_t>(top)};
    }
};

// k is clamped to the number of rows.
RankedDesigns rank(ScoreTable const& table, std::size_t k);

// Appends externally supplied criteria, CSV `theta,C5,...,C9`, which must
// cover exactly the thetas of the table. An empty CSV leaves the table
// unchanged. Averages are recomputed over all present criteria.
// Throws FormatError, RangeViolation.
ScoreTable mergeExternalCriteria(ScoreTable table, std::string_view csv, std::string const& source = "<external>");

}  // namespace pmcdse
