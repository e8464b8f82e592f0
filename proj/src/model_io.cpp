#include "pmcdse/model_io.h"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include <fmt/format.h>

#include "pmcdse/errors.h"
#include "pmcdse/text.h"

namespace pmcdse {

std::string readTextFile(std::filesystem::path const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("FileNotFound", fmt::format("cannot open file '{}'", path.string()));
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

ParametricDtmc parseModel(std::string_view text, std::string const& source) {
    ParametricDtmc model;
    bool haveInit = false;
    std::size_t lineNo = 0;

    auto fail = [&](std::string const& msg) -> FormatError { return FormatError(source, lineNo, msg); };
    auto state = [&](std::string const& name) {
        auto s = model.findState(name);
        if (!s) {
            throw fail(fmt::format("undeclared state '{}'", name));
        }
        return *s;
    };
    auto number = [&](std::string const& token) {
        auto v = text::parseDouble(token);
        if (!v) {
            throw fail(fmt::format("expected a number, found '{}'", token));
        }
        return *v;
    };
    auto rewardNamed = [&](std::string const& name) -> RewardStructure& {
        for (auto& r : model.rewards) {
            if (r.name == name) {
                return r;
            }
        }
        model.rewards.push_back({name, {}, {}});
        return model.rewards.back();
    };

    for (auto const& rawLine : text::splitLines(text)) {
        ++lineNo;
        auto tokens = text::tokenize(text::stripComment(rawLine));
        if (tokens.empty()) {
            continue;
        }
        auto const& keyword = tokens[0];
        if (keyword == "param") {
            if (tokens.size() != 2 || !text::isIdentifier(tokens[1])) {
                throw fail("expected 'param <name>'");
            }
            if (!model.parameters.insert(tokens[1]).second) {
                throw fail(fmt::format("parameter '{}' declared twice", tokens[1]));
            }
        } else if (keyword == "state") {
            if (tokens.size() < 2 || !text::isIdentifier(tokens[1])) {
                throw fail("expected 'state <name> [label,...]'");
            }
            if (model.findState(tokens[1])) {
                throw fail(fmt::format("state '{}' declared twice", tokens[1]));
            }
            std::set<std::string> labels;
            for (std::size_t i = 2; i < tokens.size(); ++i) {
                for (auto const& label : text::split(tokens[i], ',')) {
                    if (label.empty()) {
                        continue;
                    }
                    if (!text::isIdentifier(label)) {
                        throw fail(fmt::format("invalid label '{}'", label));
                    }
                    labels.insert(label);
                }
            }
            model.stateNames.push_back(tokens[1]);
            model.labels.push_back(std::move(labels));
        } else if (keyword == "init") {
            if (tokens.size() != 2) {
                throw fail("expected 'init <state>'");
            }
            if (haveInit) {
                throw fail("initial state declared twice");
            }
            model.initial = state(tokens[1]);
            haveInit = true;
        } else if (keyword == "trans") {
            if (tokens.size() != 4) {
                throw fail("expected 'trans <src> <dst> <probability|$param>'");
            }
            TransitionEntry entry{state(tokens[1]), state(tokens[2]), 0.0};
            if (tokens[3].starts_with('$')) {
                auto name = tokens[3].substr(1);
                if (!text::isIdentifier(name)) {
                    throw fail(fmt::format("invalid parameter reference '{}'", tokens[3]));
                }
                entry.probability = ParameterRef{name};
            } else {
                entry.probability = number(tokens[3]);
            }
            model.transitions.push_back(std::move(entry));
        } else if (keyword == "reward") {
            if (tokens.size() < 3 || !text::isIdentifier(tokens[1])) {
                throw fail("expected 'reward <name> state|trans ...'");
            }
            auto& reward = rewardNamed(tokens[1]);
            if (tokens[2] == "state" && tokens.size() == 5) {
                auto s = state(tokens[3]);
                if (reward.stateRewards.size() <= s) {
                    reward.stateRewards.resize(s + 1, 0.0);
                }
                reward.stateRewards[s] += number(tokens[4]);
            } else if (tokens[2] == "trans" && tokens.size() == 6) {
                reward.transitionRewards[{state(tokens[3]), state(tokens[4])}] += number(tokens[5]);
            } else {
                throw fail("expected 'reward <name> state <state> <value>' or 'reward <name> trans <src> <dst> <value>'");
            }
        } else {
            throw fail(fmt::format("unknown keyword '{}'", keyword));
        }
    }
    if (model.stateNames.empty()) {
        throw FormatError(source, lineNo, "model declares no states");
    }
    if (!haveInit) {
        throw FormatError(source, lineNo, "missing 'init <state>' declaration");
    }
    for (auto& r : model.rewards) {
        r.stateRewards.resize(model.stateCount(), 0.0);
    }
    return model;
}

ParametricDtmc loadModel(std::filesystem::path const& path) { return parseModel(readTextFile(path), path.string()); }

}  // namespace pmcdse
