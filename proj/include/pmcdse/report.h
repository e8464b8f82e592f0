#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "pmcdse/design_space.h"
#include "pmcdse/scoring.h"
#include "pmcdse/simulation.h"

namespace pmcdse {

// 15 significant digits; infinities are written as "inf".
std::string formatValue(double value);
// Inverse of formatValue. Throws FormatError.
double parseValue(std::string_view text, std::string const& source = "<value>");

// Sweep table: theta, one column per sub-system, the property values,
// status (pass|fail|error), violated ids (';'-separated) and error kind.
std::string sweepCsv(SweepResults const& results);
std::string sweepJson(SweepResults const& results);
// Reads the output of sweepJson back. Throws FormatError.
SweepResults parseSweepJson(std::string_view text, std::string const& source = "<sweep>");

// Score table: theta, variant, one column per criterion, average.
std::string scoreCsv(ScoreTable const& table);
std::string scoreJson(ScoreTable const& table);
// Reads a score CSV. The variant column is optional; an average column, if
// present, is ignored and recomputed. Throws FormatError, RangeViolation.
ScoreTable parseScoreCsv(std::string_view text, std::string const& source = "<scores>");

// rank, theta, variant, average, selected (yes|no).
std::string rankingCsv(RankedDesigns const& ranked);

struct SimulationRecord {
    std::size_t theta;
    std::string variant;
    std::string propertyId;
    double exact;
    Estimate estimate;
    std::string errorKind;  // non-empty when the property could not be estimated
};

std::string simulationJson(std::vector<SimulationRecord> const& records, SimConfig const& config);

// Writes `content` to `path`, creating parent directories.
void writeTextFile(std::filesystem::path const& path, std::string const& content);

// Radar chart over the criteria of `table` with one closed polygon per row.
// Throws FewerThanThreeAxes.
std::string radarSvg(ScoreTable const& table);

}  // namespace pmcdse
