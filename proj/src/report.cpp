#include "pmcdse/report.h"

#include <cmath>
#include <fstream>
#include <limits>

#include <fmt/format.h>
#include <json.hpp>

#include "pmcdse/errors.h"
#include "pmcdse/text.h"

namespace pmcdse {

using Json = nlohmann::ordered_json;

std::string formatValue(double value) {
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    if (std::isnan(value)) {
        return "nan";
    }
    return fmt::format("{:.15g}", value);
}

double parseValue(std::string_view input, std::string const& source) {
    auto s = text::trim(input);
    if (s == "inf") {
        return std::numeric_limits<double>::infinity();
    }
    if (s == "-inf") {
        return -std::numeric_limits<double>::infinity();
    }
    auto v = text::parseDouble(s);
    if (!v) {
        throw FormatError(source, 0, fmt::format("expected a number, found '{}'", s));
    }
    return *v;
}

namespace {

std::string joined(std::vector<std::string> const& items, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i > 0) {
            out += sep;
        }
        out += items[i];
    }
    return out;
}

// Quotes a CSV field when it contains a separator, quote or newline.
std::string csvField(std::string const& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

Json jsonValue(double v) {
    if (!std::isfinite(v)) {
        return formatValue(v);
    }
    return v;
}

double valueFromJson(Json const& j, std::string const& source) {
    if (j.is_string()) {
        return parseValue(j.get<std::string>(), source);
    }
    if (!j.is_number()) {
        throw FormatError(source, 0, "expected a number");
    }
    return j.get<double>();
}

ValueKind kindFromString(std::string const& s, std::string const& source) {
    for (auto kind : {ValueKind::Probability, ValueKind::ExpectedReward, ValueKind::LongRunAverage}) {
        if (toString(kind) == s) {
            return kind;
        }
    }
    throw FormatError(source, 0, fmt::format("unknown value kind '{}'", s));
}

VariantStatus statusFromString(std::string const& s, std::string const& source) {
    for (auto status : {VariantStatus::Success, VariantStatus::Fail, VariantStatus::Error}) {
        if (toString(status) == s) {
            return status;
        }
    }
    throw FormatError(source, 0, fmt::format("unknown status '{}'", s));
}

}  // namespace

std::string sweepCsv(SweepResults const& results) {
    std::vector<std::string> header{"theta"};
    header.insert(header.end(), results.subsystems.begin(), results.subsystems.end());
    header.insert(header.end(), results.propertyIds.begin(), results.propertyIds.end());
    header.insert(header.end(), {"status", "violated", "error"});
    std::string out = joined(header, ",") + "\n";
    for (auto const& o : results.outcomes) {
        std::vector<std::string> fields{std::to_string(o.configuration.index)};
        for (auto const& alt : o.configuration.alternatives) {
            fields.push_back(csvField(alt));
        }
        for (std::size_t i = 0; i < results.propertyIds.size(); ++i) {
            fields.push_back(i < o.values.size() ? formatValue(o.values.values[i].value) : "");
        }
        fields.push_back(toString(o.status));
        fields.push_back(joined(o.violated, ";"));
        fields.push_back(csvField(o.errorKind));
        out += joined(fields, ",") + "\n";
    }
    return out;
}

std::string sweepJson(SweepResults const& results) {
    Json variants = Json::array();
    for (auto const& o : results.outcomes) {
        Json v;
        v["theta"] = o.configuration.index;
        v["alternatives"] = o.configuration.alternatives;
        v["status"] = toString(o.status);
        Json values = Json::array();
        Json kinds = Json::array();
        for (auto const& pv : o.values.values) {
            values.push_back(jsonValue(pv.value));
            kinds.push_back(toString(pv.kind));
        }
        v["values"] = values;
        v["kinds"] = kinds;
        v["violated"] = o.violated;
        if (o.status == VariantStatus::Error) {
            v["error"] = {{"kind", o.errorKind}, {"message", o.errorMessage}};
        }
        variants.push_back(std::move(v));
    }
    Json doc;
    doc["subsystems"] = results.subsystems;
    doc["properties"] = results.propertyIds;
    doc["variants"] = std::move(variants);
    return doc.dump(2) + "\n";
}

SweepResults parseSweepJson(std::string_view input, std::string const& source) {
    try {
        auto doc = Json::parse(input);
        SweepResults results;
        results.subsystems = doc.at("subsystems").get<std::vector<std::string>>();
        results.propertyIds = doc.at("properties").get<std::vector<std::string>>();
        for (auto const& v : doc.at("variants")) {
            VariantOutcome o{};
            o.configuration.index = v.at("theta").get<std::size_t>();
            o.configuration.alternatives = v.at("alternatives").get<std::vector<std::string>>();
            o.status = statusFromString(v.at("status").get<std::string>(), source);
            auto const& values = v.at("values");
            auto const& kinds = v.at("kinds");
            if (values.size() != kinds.size() ||
                (o.status != VariantStatus::Error && values.size() != results.propertyIds.size())) {
                throw FormatError(source, 0, fmt::format("theta {}: value count mismatch", o.configuration.index));
            }
            if (!values.empty()) {
                o.values.ids = results.propertyIds;
            }
            for (std::size_t i = 0; i < values.size(); ++i) {
                o.values.values.push_back(
                    {valueFromJson(values[i], source), kindFromString(kinds[i].get<std::string>(), source)});
            }
            o.violated = v.at("violated").get<std::vector<std::string>>();
            if (v.contains("error")) {
                o.errorKind = v["error"].at("kind").get<std::string>();
                o.errorMessage = v["error"].at("message").get<std::string>();
            }
            results.outcomes.push_back(std::move(o));
        }
        return results;
    } catch (Json::exception const& e) {
        throw FormatError(source, 0, e.what());
    }
}

std::string scoreCsv(ScoreTable const& table) {
    std::vector<std::string> header{"theta", "variant"};
    header.insert(header.end(), table.criteria.begin(), table.criteria.end());
    header.push_back("average");
    std::string out = joined(header, ",") + "\n";
    for (auto const& row : table.rows) {
        std::vector<std::string> fields{std::to_string(row.theta), csvField(row.variant)};
        for (double s : row.scores) {
            fields.push_back(formatValue(s));
        }
        fields.push_back(formatValue(row.average));
        out += joined(fields, ",") + "\n";
    }
    return out;
}

std::string scoreJson(ScoreTable const& table) {
    Json rows = Json::array();
    for (auto const& row : table.rows) {
        Json scores;
        for (std::size_t i = 0; i < table.criteria.size(); ++i) {
            scores[table.criteria[i]] = row.scores.at(i);
        }
        rows.push_back({{"theta", row.theta}, {"variant", row.variant}, {"scores", scores}, {"average", row.average}});
    }
    Json doc;
    doc["criteria"] = table.criteria;
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
}

namespace {

// Splits a CSV line, honouring double-quoted fields.
std::vector<std::string> csvFields(std::string_view line) {
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                fields.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                fields.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else {
            fields.back() += c;
        }
    }
    for (auto& f : fields) {
        f = std::string(text::trim(f));
    }
    return fields;
}

}  // namespace

ScoreTable parseScoreCsv(std::string_view input, std::string const& source) {
    ScoreTable table;
    std::vector<std::string> header;
    bool hasVariant = false;
    bool hasAverage = false;
    std::size_t lineNo = 0;
    for (auto const& raw : text::splitLines(input)) {
        ++lineNo;
        auto line = text::trim(text::stripComment(raw));
        if (line.empty()) {
            continue;
        }
        auto fields = csvFields(line);
        if (header.empty()) {
            header = fields;
            if (header.front() != "theta") {
                throw FormatError(source, lineNo, "expected header starting with 'theta'");
            }
            hasVariant = header.size() > 1 && header[1] == "variant";
            hasAverage = header.back() == "average";
            auto first = header.begin() + (hasVariant ? 2 : 1);
            auto last = header.end() - (hasAverage ? 1 : 0);
            if (first >= last) {
                throw FormatError(source, lineNo, "no criterion columns");
            }
            table.criteria.assign(first, last);
            continue;
        }
        if (fields.size() != header.size()) {
            throw FormatError(source, lineNo, fmt::format("expected {} fields, found {}", header.size(), fields.size()));
        }
        auto theta = text::parseDouble(fields[0]);
        if (!theta || *theta < 1 || *theta != std::floor(*theta)) {
            throw FormatError(source, lineNo, fmt::format("invalid theta index '{}'", fields[0]));
        }
        ScoreRow row{static_cast<std::size_t>(*theta), hasVariant ? fields[1] : "", {}, 0.0};
        for (std::size_t i = hasVariant ? 2 : 1; i < fields.size() - (hasAverage ? 1 : 0); ++i) {
            auto v = text::parseDouble(fields[i]);
            if (!v) {
                throw FormatError(source, lineNo, fmt::format("expected a score, found '{}'", fields[i]));
            }
            if (*v < 0.0 || *v > 10.0) {
                throw RangeViolation(fmt::format("{}:{}: score {} outside [0,10]", source, lineNo, *v));
            }
            row.scores.push_back(*v);
        }
        row.average = average(row.scores);
        for (auto const& existing : table.rows) {
            if (existing.theta == row.theta) {
                throw FormatError(source, lineNo, fmt::format("theta {} listed twice", row.theta));
            }
        }
        table.rows.push_back(std::move(row));
    }
    if (header.empty()) {
        throw FormatError(source, 0, "empty score file");
    }
    return table;
}

std::string rankingCsv(RankedDesigns const& ranked) {
    std::string out = "rank,theta,variant,average,selected\n";
    for (std::size_t i = 0; i < ranked.ordered.size(); ++i) {
        auto const& row = ranked.ordered[i];
        out += fmt::format("{},{},{},{},{}\n", i + 1, row.theta, csvField(row.variant), formatValue(row.average),
                           i < ranked.top ? "yes" : "no");
    }
    return out;
}

std::string simulationJson(std::vector<SimulationRecord> const& records, SimConfig const& config) {
    Json items = Json::array();
    for (auto const& r : records) {
        Json item;
        item["theta"] = r.theta;
        item["variant"] = r.variant;
        item["property"] = r.propertyId;
        item["exact"] = jsonValue(r.exact);
        if (r.errorKind.empty()) {
            item["mean"] = r.estimate.mean;
            item["std_error"] = r.estimate.stdError;
            item["n"] = r.estimate.n;
            item["censored"] = r.estimate.censored;
            auto const total = r.estimate.n + r.estimate.censored;
            item["censored_fraction"] = total == 0 ? 0.0 : static_cast<double>(r.estimate.censored) / total;
            item["z"] = jsonValue(r.estimate.stdError > 0 ? (r.exact - r.estimate.mean) / r.estimate.stdError : 0.0);
        } else {
            item["error"] = r.errorKind;
        }
        items.push_back(std::move(item));
    }
    Json doc;
    doc["config"] = {{"seed", config.seed},
                     {"paths", config.paths},
                     {"max_steps", config.maxSteps},
                     {"occupancy_horizon", config.occupancyHorizon},
                     {"replications", config.replications},
                     {"burn_in_fraction", config.burnInFraction}};
    doc["estimates"] = std::move(items);
    return doc.dump(2) + "\n";
}

void writeTextFile(std::filesystem::path const& path, std::string const& content) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("FileWriteError", fmt::format("cannot write '{}'", path.string()));
    }
    out << content;
    if (!out) {
        throw Error("FileWriteError", fmt::format("cannot write '{}'", path.string()));
    }
}

}  // namespace pmcdse
