// Command-line front end: validate inputs, sweep the design space, score,
// rank, draw radar charts and cross-check with simulation.
//
// Exit codes: 0 clean, 1 usage or input error, 2 success-criteria failures
// (or no verified designs), 3 evaluation errors present.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <set>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "pmcdse/design_space.h"
#include "pmcdse/errors.h"
#include "pmcdse/model_io.h"
#include "pmcdse/report.h"
#include "pmcdse/scoring.h"
#include "pmcdse/simulation.h"
#include "pmcdse/text.h"

namespace fs = std::filesystem;
using namespace pmcdse;

namespace {

enum ExitCode { kClean = 0, kUsage = 1, kCriteriaFailed = 2, kEvaluationErrors = 3 };

struct Options {
    std::string model;
    std::string space;
    std::string props;
    std::string sc;
    std::string criteria;
    std::string external;
    std::string scores;
    std::string out = "out";
    std::string variants;
    std::size_t jobs = 1;
    std::uint64_t seed = 1;
    std::size_t top = 3;
    std::size_t paths = 1000000;
    std::size_t horizon = 1000000;
    std::size_t replications = 20;
    std::size_t maxSteps = 100000;
};

struct Inputs {
    ParametricDtmc model;
    DesignSpace space;
    PropertySet properties;
    std::vector<SuccessCriterion> criteria;
};

void require(std::string const& value, std::string const& flag) {
    if (value.empty()) {
        throw Error("Usage", fmt::format("missing required option {}", flag));
    }
}

Inputs loadInputs(Options const& o) {
    require(o.model, "--model");
    require(o.space, "--space");
    require(o.props, "--props");
    Inputs in;
    in.model = loadModel(o.model);
    in.space = loadDesignSpace(o.space);
    in.properties = loadPropertyFile(o.props);
    if (!o.sc.empty()) {
        in.criteria = parseSuccessCriteria(readTextFile(o.sc), in.properties, o.sc);
    }
    return in;
}

ScoringConfig loadCriteria(Options const& o) {
    return o.criteria.empty() ? defaultScoringConfig() : loadScoringConfig(o.criteria);
}

void printError(Error const& e) {
    if (auto const* file = dynamic_cast<PropertyFileError const*>(&e)) {
        for (auto const& s : file->errors()) {
            std::cerr << "error: " << s.what() << "\n";
        }
        return;
    }
    std::cerr << "error: " << e.kind() << ": " << e.what() << "\n";
}

// Comma-separated theta indices; empty means "all".
std::set<std::size_t> parseThetaList(std::string const& list) {
    std::set<std::size_t> out;
    for (auto const& item : text::split(list, ',')) {
        auto s = text::trim(item);
        if (s.empty()) {
            continue;
        }
        if (s.starts_with("theta")) {
            s.remove_prefix(5);
        }
        auto v = text::parseDouble(s);
        if (!v || *v < 1 || *v != static_cast<double>(static_cast<std::size_t>(*v))) {
            throw Error("Usage", fmt::format("invalid theta index '{}'", item));
        }
        out.insert(static_cast<std::size_t>(*v));
    }
    return out;
}

int cmdValidate(Options const& o) {
    auto in = loadInputs(o);
    bool clean = true;
    auto diagnostics = validateModel(in.model);
    for (auto const& d : diagnostics) {
        std::cout << formatDiagnostic(d) << "\n";
        clean = clean && d.severity != Severity::Error;
    }
    if (clean) {
        try {
            checkSweepInputs(in.model, in.space, in.properties, in.criteria);
            for (auto const& c : enumerate(in.space)) {
                try {
                    instantiate(in.model, c.assignment);
                } catch (Error const& e) {
                    std::cout << fmt::format("error [{}] theta {} ({}): {}\n", e.kind(), c.index, c.label(), e.what());
                    clean = false;
                }
            }
        } catch (Error const& e) {
            std::cout << fmt::format("error [{}]: {}\n", e.kind(), e.what());
            clean = false;
        }
    }
    if (!o.criteria.empty()) {
        loadCriteria(o).validate(in.properties.ids());
    }
    std::cout << fmt::format("{}: {} states, {} parameters, {} configurations, {} properties, {} criteria\n",
                             clean ? "ok" : "invalid", in.model.stateCount(), in.model.parameters.size(),
                             in.space.size(), in.properties.size(), in.criteria.size());
    return clean ? kClean : kUsage;
}

int sweepExitCode(SweepResults const& results) {
    if (!results.errors().empty()) {
        return kEvaluationErrors;
    }
    return results.fail().empty() ? kClean : kCriteriaFailed;
}

SweepResults doSweep(Options const& o) {
    auto in = loadInputs(o);
    for (auto const& d : validateModel(in.model)) {
        if (d.severity == Severity::Error) {
            throw InvalidModel(formatDiagnostic(d));
        }
    }
    auto results = runSweep(in.model, in.space, in.properties, in.criteria, o.jobs);
    fs::path out(o.out);
    writeTextFile(out / "sweep.csv", sweepCsv(results));
    writeTextFile(out / "sweep.json", sweepJson(results));
    std::cout << fmt::format("{} variants: {} pass, {} fail, {} error -> {}\n", results.outcomes.size(),
                             results.success().size(), results.fail().size(), results.errors().size(),
                             (out / "sweep.csv").string());
    return results;
}

int cmdSweep(Options const& o) { return sweepExitCode(doSweep(o)); }

std::optional<ScoreTable> doScore(Options const& o, SweepResults const& results) {
    if (results.success().empty()) {
        std::cout << "no verified designs: no variant satisfies the success criteria\n";
        return std::nullopt;
    }
    auto table = scoreTable(results, loadCriteria(o));
    if (!o.external.empty()) {
        table = mergeExternalCriteria(std::move(table), readTextFile(o.external), o.external);
    }
    fs::path out(o.out);
    writeTextFile(out / "scores.csv", scoreCsv(table));
    writeTextFile(out / "scores.json", scoreJson(table));
    std::cout << fmt::format("scored {} verified designs over {} criteria -> {}\n", table.rows.size(),
                             table.criteria.size(), (out / "scores.csv").string());
    return table;
}

int cmdScore(Options const& o) {
    fs::path out(o.out);
    auto path = out / "sweep.json";
    auto results = parseSweepJson(readTextFile(path), path.string());
    return doScore(o, results) ? kClean : kCriteriaFailed;
}

ScoreTable loadScores(Options const& o) {
    auto path = o.scores.empty() ? fs::path(o.out) / "scores.csv" : fs::path(o.scores);
    auto table = parseScoreCsv(readTextFile(path), path.string());
    if (!o.scores.empty() && !o.external.empty()) {
        table = mergeExternalCriteria(std::move(table), readTextFile(o.external), o.external);
    }
    return table;
}

int doRank(Options const& o, ScoreTable const& table) {
    if (table.rows.empty()) {
        std::cout << "no verified designs: the score table is empty\n";
        return kCriteriaFailed;
    }
    auto ranked = rank(table, o.top);
    writeTextFile(fs::path(o.out) / "ranking.csv", rankingCsv(ranked));
    for (std::size_t i = 0; i < ranked.ordered.size(); ++i) {
        auto const& row = ranked.ordered[i];
        std::cout << fmt::format("{}{:>2}. theta{:<3} {:<14} {:.2f}\n", i < ranked.top ? "*" : " ", i + 1, row.theta,
                                 row.variant, row.average);
    }
    return kClean;
}

int cmdRank(Options const& o) { return doRank(o, loadScores(o)); }

void doRadar(Options const& o, ScoreTable table) {
    auto selected = parseThetaList(o.variants);
    if (selected.empty()) {
        for (auto const& row : rank(table, o.top).selected()) {
            selected.insert(row.theta);
        }
    }
    std::erase_if(table.rows, [&](ScoreRow const& r) { return !selected.contains(r.theta); });
    auto path = fs::path(o.out) / "radar.svg";
    writeTextFile(path, radarSvg(table));
    std::cout << fmt::format("radar chart of {} variants over {} axes -> {}\n", table.rows.size(),
                             table.criteria.size(), path.string());
}

int cmdRadar(Options const& o) {
    doRadar(o, loadScores(o));
    return kClean;
}

int cmdSimulate(Options const& o) {
    auto in = loadInputs(o);
    SimConfig config;
    config.seed = o.seed;
    config.paths = o.paths;
    config.maxSteps = o.maxSteps;
    config.occupancyHorizon = o.horizon;
    config.replications = o.replications;
    config.jobs = o.jobs;
    auto selected = parseThetaList(o.variants);
    checkSweepInputs(in.model, in.space, in.properties, in.criteria);
    std::vector<SimulationRecord> records;
    for (auto const& c : enumerate(in.space)) {
        if (!selected.empty() && !selected.contains(c.index)) {
            continue;
        }
        auto chain = instantiate(in.model, c.assignment);
        for (auto const& entry : in.properties.entries()) {
            SimulationRecord r{c.index, c.label(), entry.id, evaluate(chain, entry.property).value, {}, {}};
            try {
                r.estimate = estimateProperty(chain, entry.property, config);
            } catch (Error const& e) {
                r.errorKind = e.kind();
            }
            std::cout << fmt::format("theta{:<3} {:<6} exact {:<18} estimate {:<18} se {:.3g}{}\n", c.index,
                                     entry.id, formatValue(r.exact), formatValue(r.estimate.mean),
                                     r.estimate.stdError, r.errorKind.empty() ? "" : " (" + r.errorKind + ")");
            records.push_back(std::move(r));
        }
    }
    auto path = fs::path(o.out) / "simulation.json";
    writeTextFile(path, simulationJson(records, config));
    std::cout << "-> " << path.string() << "\n";
    return kClean;
}

int cmdReport(Options const& o) {
    if (cmdValidate(o) != kClean) {
        return kUsage;
    }
    auto results = doSweep(o);
    auto code = sweepExitCode(results);
    auto table = doScore(o, results);
    if (!table) {
        return std::max<int>(code, kCriteriaFailed);
    }
    doRank(o, *table);
    if (table->criteria.size() >= 3) {
        doRadar(o, *table);
    }
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Design-space exploration by probabilistic model checking"};
    app.require_subcommand(1);
    Options o;

    auto addInputs = [&](CLI::App* cmd) {
        cmd->add_option("--model", o.model, "Parametric DTMC file");
        cmd->add_option("--space", o.space, "Design-space file");
        cmd->add_option("--props", o.props, "Property file");
        cmd->add_option("--sc", o.sc, "Success-criteria file");
    };
    auto addOut = [&](CLI::App* cmd) { cmd->add_option("--out", o.out, "Output directory")->capture_default_str(); };
    auto addScoring = [&](CLI::App* cmd) {
        cmd->add_option("--criteria", o.criteria, "Criteria mapping file (default: built-in C1..C4)");
        cmd->add_option("--external", o.external, "External criteria CSV (theta,C5,...)");
    };
    auto addScores = [&](CLI::App* cmd) {
        cmd->add_option("--scores", o.scores, "Score CSV to use instead of <out>/scores.csv");
        cmd->add_option("--top", o.top, "Number of designs to select")->capture_default_str();
    };

    auto* validate = app.add_subcommand("validate", "Parse and check all inputs");
    addInputs(validate);
    addScoring(validate);

    auto* sweep = app.add_subcommand("sweep", "Verify every design variant");
    addInputs(sweep);
    addOut(sweep);
    sweep->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();

    auto* score = app.add_subcommand("score", "Score the verified designs of <out>/sweep.json");
    addOut(score);
    addScoring(score);

    auto* rankCmd = app.add_subcommand("rank", "Rank scored designs");
    addOut(rankCmd);
    addScores(rankCmd);
    rankCmd->add_option("--external", o.external, "External criteria CSV merged into --scores");

    auto* radar = app.add_subcommand("radar", "Draw a radar chart of scored designs");
    addOut(radar);
    addScores(radar);
    radar->add_option("--variants", o.variants, "Comma-separated theta indices (default: top designs)");
    radar->add_option("--external", o.external, "External criteria CSV merged into --scores");

    auto* simulate = app.add_subcommand("simulate", "Estimate every property by Monte Carlo simulation");
    addInputs(simulate);
    addOut(simulate);
    simulate->add_option("--seed", o.seed, "Master seed")->capture_default_str();
    simulate->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    simulate->add_option("--variants", o.variants, "Comma-separated theta indices (default: all)");
    simulate->add_option("--paths", o.paths, "Paths for until/next/reward estimates")->capture_default_str();
    simulate->add_option("--horizon", o.horizon, "Steps per long-run trajectory")->capture_default_str();
    simulate->add_option("--replications", o.replications, "Long-run trajectories")->capture_default_str();
    simulate->add_option("--max-steps", o.maxSteps, "Step limit per path")->capture_default_str();

    auto* report = app.add_subcommand("report", "validate, sweep, score, rank and radar in one go");
    addInputs(report);
    addOut(report);
    addScoring(report);
    report->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    report->add_option("--top", o.top, "Number of designs to select")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (CLI::ParseError const& e) {
        auto code = app.exit(e);
        return code == 0 ? kClean : kUsage;
    }

    try {
        auto* cmd = app.get_subcommands().front();
        auto const name = cmd->get_name();
        if (name == "validate") return cmdValidate(o);
        if (name == "sweep") return cmdSweep(o);
        if (name == "score") return cmdScore(o);
        if (name == "rank") return cmdRank(o);
        if (name == "radar") return cmdRadar(o);
        if (name == "simulate") return cmdSimulate(o);
        return cmdReport(o);
    } catch (Error const& e) {
        printError(e);
        return kUsage;
    } catch (std::exception const& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
}
