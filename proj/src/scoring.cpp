#include "pmcdse/scoring.h"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>

#include "pmcdse/errors.h"
#include "pmcdse/model_io.h"
#include "pmcdse/text.h"

namespace pmcdse {

PropertyAnnotation ScoringConfig::annotation(std::string const& propertyId) const {
    auto it = annotations.find(propertyId);
    return it == annotations.end() ? PropertyAnnotation{} : it->second;
}

namespace {

void checkWeights(std::span<double const> weights) {
    double sum = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) {
            throw RangeViolation(fmt::format("weight {} is negative or not finite", w));
        }
        sum += w;
    }
    if (std::abs(sum - 1.0) > kWeightSumTolerance) {
        throw WeightSumViolation(sum);
    }
}

}  // namespace

void ScoringConfig::validate(std::vector<std::string> const& propertyIds) const {
    std::set<std::string> known(propertyIds.begin(), propertyIds.end());
    for (auto const& c : criteria) {
        if (c.properties.empty()) {
            throw Error("EmptyCriterion", fmt::format("criterion {} has no properties", c.id));
        }
        if (c.properties.size() != c.weights.size()) {
            throw WeightMismatch(c.properties.size(), c.weights.size());
        }
        checkWeights(c.weights);
        for (auto const& p : c.properties) {
            if (!known.contains(p)) {
                throw UnknownPropertyId(p);
            }
        }
    }
}

namespace {

std::vector<double> uniformWeights(std::size_t n) { return std::vector<double>(n, 1.0 / static_cast<double>(n)); }

CriterionMapping uniform(std::string id, std::vector<std::string> properties) {
    auto weights = uniformWeights(properties.size());
    return {std::move(id), std::move(properties), std::move(weights)};
}

}  // namespace

ScoringConfig defaultScoringConfig() {
    ScoringConfig config;
    config.criteria = {
        uniform("C1", {"phi1", "phi3", "phi4", "phi5", "phi6"}),
        uniform("C2", {"phi5"}),
        uniform("C3", {"phi7"}),
        uniform("C4", {"phi2", "phi3", "phi4"}),
    };
    for (auto const* id : {"phi4", "phi5", "phi6", "phi7"}) {
        config.annotations[id] = {Direction::HigherIsWorse, ValueRange::BoundedPercentage};
    }
    config.annotations["phi2"] = {Direction::HigherIsWorse, ValueRange::UnboundedMagnitude};
    return config;
}

ScoringConfig parseScoringConfig(std::string_view input, std::string const& source) {
    ScoringConfig config;
    std::map<std::string, std::vector<double>> explicitWeights;
    std::map<std::string, std::size_t> weightLines;
    std::size_t lineNo = 0;
    for (auto const& rawLine : text::splitLines(input)) {
        ++lineNo;
        auto tokens = text::tokenize(text::stripComment(rawLine));
        if (tokens.empty()) {
            continue;
        }
        auto fail = [&](std::string const& msg) { return FormatError(source, lineNo, msg); };
        auto const& keyword = tokens[0];
        if (keyword == "criterion") {
            if (tokens.size() < 3) {
                throw fail("expected 'criterion <id> <property>...'");
            }
            for (auto const& c : config.criteria) {
                if (c.id == tokens[1]) {
                    throw fail(fmt::format("criterion {} declared twice", tokens[1]));
                }
            }
            config.criteria.push_back({tokens[1], {tokens.begin() + 2, tokens.end()}, {}});
        } else if (keyword == "weights") {
            if (tokens.size() < 3) {
                throw fail("expected 'weights <criterion> <weight>...'");
            }
            std::vector<double> weights;
            for (std::size_t i = 2; i < tokens.size(); ++i) {
                auto w = text::parseDouble(tokens[i]);
                if (!w) {
                    throw fail(fmt::format("expected a weight, found '{}'", tokens[i]));
                }
                weights.push_back(*w);
            }
            if (!explicitWeights.emplace(tokens[1], std::move(weights)).second) {
                throw fail(fmt::format("weights for {} given twice", tokens[1]));
            }
            weightLines[tokens[1]] = lineNo;
        } else if (keyword == "direction") {
            if (tokens.size() != 3 || (tokens[2] != "better" && tokens[2] != "worse")) {
                throw fail("expected 'direction <property> better|worse'");
            }
            config.annotations[tokens[1]].direction =
                tokens[2] == "worse" ? Direction::HigherIsWorse : Direction::HigherIsBetter;
        } else if (keyword == "kind") {
            if (tokens.size() != 3 || (tokens[2] != "percentage" && tokens[2] != "magnitude")) {
                throw fail("expected 'kind <property> percentage|magnitude'");
            }
            config.annotations[tokens[1]].range =
                tokens[2] == "magnitude" ? ValueRange::UnboundedMagnitude : ValueRange::BoundedPercentage;
        } else {
            throw fail(fmt::format("unknown keyword '{}'", keyword));
        }
    }
    for (auto& c : config.criteria) {
        auto it = explicitWeights.find(c.id);
        if (it == explicitWeights.end()) {
            c.weights = uniformWeights(c.properties.size());
        } else {
            c.weights = std::move(it->second);
            explicitWeights.erase(it);
        }
    }
    if (!explicitWeights.empty()) {
        auto const& id = explicitWeights.begin()->first;
        throw FormatError(source, weightLines[id], fmt::format("weights for undeclared criterion {}", id));
    }
    return config;
}

ScoringConfig loadScoringConfig(std::filesystem::path const& path) {
    return parseScoringConfig(readTextFile(path), path.string());
}

double mapValue(double value, PropertyAnnotation annotation, std::span<double const> population) {
    if (!std::isfinite(value)) {
        throw InfinitePopulationValue(fmt::format("value {} cannot be range-mapped", value));
    }
    double mapped;
    if (annotation.range == ValueRange::BoundedPercentage) {
        if (value < 0.0 || value > 1.0) {
            throw RangeViolation(fmt::format("percentage value {} outside [0,1]", value));
        }
        mapped = value;
    } else {
        if (population.empty()) {
            throw RangeViolation("empty population for a magnitude value");
        }
        for (double p : population) {
            if (!std::isfinite(p)) {
                throw InfinitePopulationValue(fmt::format("population contains {}", p));
            }
        }
        auto [lo, hi] = std::minmax_element(population.begin(), population.end());
        if (*hi == *lo) {
            return 1.0;
        }
        mapped = std::clamp((value - *lo) / (*hi - *lo), 0.0, 1.0);
    }
    return annotation.direction == Direction::HigherIsWorse ? 1.0 - mapped : mapped;
}

double weightedSum(std::span<double const> values, std::span<double const> weights) {
    if (values.size() != weights.size()) {
        throw WeightMismatch(values.size(), weights.size());
    }
    checkWeights(weights);
    double sum = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        sum += weights[i] * values[i];
    }
    return sum;
}

std::vector<double> scaleToTen(std::span<double const> values) {
    if (values.empty()) {
        return {};
    }
    auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    double const min = *lo;
    double const max = *hi;
    std::vector<double> out;
    out.reserve(values.size());
    for (double v : values) {
        out.push_back(max == min ? 10.0 : std::clamp(10.0 * (v - min) / (max - min), 0.0, 10.0));
    }
    return out;
}

double average(std::span<double const> values) {
    if (values.empty()) {
        return 0.0;
    }
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    return sum / static_cast<double>(values.size());
}

std::vector<std::vector<double>> weightedScores(SweepResults const& results, ScoringConfig const& config) {
    config.validate(results.propertyIds);
    auto const success = results.success();
    std::vector<std::vector<double>> columns;
    for (auto const& criterion : config.criteria) {
        std::vector<std::vector<double>> mapped(success.size());
        for (auto const& propertyId : criterion.properties) {
            std::vector<double> population;
            population.reserve(success.size());
            for (auto const* outcome : success) {
                population.push_back(outcome->values.at(propertyId).value);
            }
            auto const annotation = config.annotation(propertyId);
            for (std::size_t i = 0; i < success.size(); ++i) {
                try {
                    mapped[i].push_back(mapValue(population[i], annotation, population));
                } catch (Error const& e) {
                    throw Error(e.kind(), fmt::format("{} of theta {}: {}", propertyId,
                                                      success[i]->configuration.index, e.what()));
                }
            }
        }
        std::vector<double> column;
        column.reserve(success.size());
        for (auto const& row : mapped) {
            column.push_back(weightedSum(row, criterion.weights));
        }
        columns.push_back(std::move(column));
    }
    return columns;
}

ScoreTable tableFromWeighted(std::vector<ScoreRow> rows, std::vector<std::string> criteria,
                             std::vector<std::vector<double>> const& weighted) {
    for (auto& row : rows) {
        row.scores.clear();
    }
    for (auto const& column : weighted) {
        auto scaled = scaleToTen(column);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            rows[i].scores.push_back(scaled.at(i));
        }
    }
    for (auto& row : rows) {
        row.average = average(row.scores);
    }
    return {std::move(criteria), std::move(rows)};
}

ScoreTable scoreTable(SweepResults const& results, ScoringConfig const& config) {
    auto const success = results.success();
    if (success.empty()) {
        throw Error("NoVerifiedDesigns", "no verified designs: the success set is empty");
    }
    auto weighted = weightedScores(results, config);
    std::vector<ScoreRow> rows;
    for (auto const* outcome : success) {
        rows.push_back({outcome->configuration.index, outcome->configuration.label(), {}, 0.0});
    }
    std::vector<std::string> criteria;
    for (auto const& c : config.criteria) {
        criteria.push_back(c.id);
    }
    return tableFromWeighted(std::move(rows), std::move(criteria), weighted);
}

RankedDesigns rank(ScoreTable const& table, std::size_t k) {
    RankedDesigns ranked{table.rows, std::min(k, table.rows.size())};
    std::stable_sort(ranked.ordered.begin(), ranked.ordered.end(), [](ScoreRow const& a, ScoreRow const& b) {
        if (a.average != b.average) {
            return a.average > b.average;
        }
        return a.theta < b.theta;
    });
    return ranked;
}

ScoreTable mergeExternalCriteria(ScoreTable table, std::string_view csv, std::string const& source) {
    auto lines = text::splitLines(csv);
    std::size_t lineNo = 0;
    std::vector<std::string> header;
    std::map<std::size_t, std::vector<double>> external;
    for (auto const& raw : lines) {
        ++lineNo;
        auto line = text::trim(raw);
        if (line.empty()) {
            continue;
        }
        auto fields = text::split(line, ',');
        for (auto& f : fields) {
            f = std::string(text::trim(f));
        }
        if (header.empty()) {
            if (fields.size() < 2 || fields[0] != "theta") {
                throw FormatError(source, lineNo, "expected header 'theta,<criterion>,...'");
            }
            header.assign(fields.begin() + 1, fields.end());
            for (auto const& c : header) {
                if (std::find(table.criteria.begin(), table.criteria.end(), c) != table.criteria.end()) {
                    throw FormatError(source, lineNo, fmt::format("criterion {} already present", c));
                }
            }
            continue;
        }
        if (fields.size() != header.size() + 1) {
            throw FormatError(source, lineNo,
                              fmt::format("expected {} fields, found {}", header.size() + 1, fields.size()));
        }
        auto theta = text::parseDouble(fields[0]);
        if (!theta || *theta < 1 || *theta != std::floor(*theta)) {
            throw FormatError(source, lineNo, fmt::format("invalid theta index '{}'", fields[0]));
        }
        std::vector<double> scores;
        for (std::size_t i = 1; i < fields.size(); ++i) {
            auto v = text::parseDouble(fields[i]);
            if (!v) {
                throw FormatError(source, lineNo, fmt::format("expected a score, found '{}'", fields[i]));
            }
            if (*v < 0.0 || *v > 10.0) {
                throw RangeViolation(fmt::format("{}:{}: external score {} outside [0,10]", source, lineNo, *v));
            }
            scores.push_back(*v);
        }
        auto index = static_cast<std::size_t>(*theta);
        if (!external.emplace(index, std::move(scores)).second) {
            throw FormatError(source, lineNo, fmt::format("theta {} listed twice", index));
        }
    }
    if (header.empty()) {
        return table;
    }
    for (auto const& [theta, scores] : external) {
        auto it = std::find_if(table.rows.begin(), table.rows.end(),
                               [theta = theta](ScoreRow const& r) { return r.theta == theta; });
        if (it == table.rows.end()) {
            throw FormatError(source, 0, fmt::format("theta {} is not in the score table", theta));
        }
    }
    table.criteria.insert(table.criteria.end(), header.begin(), header.end());
    for (auto& row : table.rows) {
        auto it = external.find(row.theta);
        if (it == external.end()) {
            throw FormatError(source, 0, fmt::format("no external scores for theta {}", row.theta));
        }
        row.scores.insert(row.scores.end(), it->second.begin(), it->second.end());
        row.average = average(row.scores);
    }
    return table;
}

}  // namespace pmcdse
