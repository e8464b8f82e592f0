// Recursive-descent parser for the PCTL subset:
//
//   top       := factor ('*' factor)*
//   factor    := '(' top ')' | operator
//   operator  := 'P' '=?' '[' path ']'
//              | 'S' '=?' '[' pred ']'
//              | 'R' '{' STRING '}' ['min'|'max'] '=?' '[' ('F' pred | 'S') ']'
//              | 'filter' '(' 'state' ',' operator ',' pred ')'
//   path      := 'X' pred | pred 'U' pred
//   pred      := conj ('|' conj)*
//   conj      := unary ('&' unary)*
//   unary     := '!' unary | '(' pred ')' | 's' '=' IDENT | 'true'

#include <algorithm>

#include <fmt/format.h>

#include "pmcdse/errors.h"
#include "pmcdse/property.h"
#include "pmcdse/text.h"

namespace pmcdse {

namespace {

enum class TokenKind { Identifier, String, Number, Symbol, End };

struct Token {
    TokenKind kind;
    std::string text;
    std::size_t column;  // 1-based

    std::string describe() const {
        switch (kind) {
            case TokenKind::End:
                return "end of input";
            case TokenKind::String:
                return fmt::format("\"{}\"", text);
            default:
                return fmt::format("'{}'", text);
        }
    }
};

std::vector<Token> tokenize(std::string_view input) {
    static constexpr std::string_view kTwoCharSymbols[] = {"=?", "<=", ">="};
    static constexpr std::string_view kOneCharSymbols = "=[](){}!&|*,<>";

    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < input.size()) {
        char c = input[i];
        if (text::isSpace(c)) {
            ++i;
            continue;
        }
        auto const column = i + 1;
        if (text::isIdentifierStart(c)) {
            auto start = i;
            while (i < input.size() && text::isIdentifierChar(input[i])) {
                ++i;
            }
            tokens.push_back({TokenKind::Identifier, std::string(input.substr(start, i - start)), column});
            continue;
        }
        if ((c >= '0' && c <= '9') || c == '.') {
            auto start = i;
            while (i < input.size() && ((input[i] >= '0' && input[i] <= '9') || input[i] == '.' || input[i] == 'e' ||
                                        input[i] == 'E')) {
                ++i;
            }
            tokens.push_back({TokenKind::Number, std::string(input.substr(start, i - start)), column});
            continue;
        }
        if (c == '"') {
            auto end = input.find('"', i + 1);
            if (end == std::string_view::npos) {
                throw SyntaxError(column, {"closing '\"'"}, "end of input");
            }
            tokens.push_back({TokenKind::String, std::string(input.substr(i + 1, end - i - 1)), column});
            i = end + 1;
            continue;
        }
        bool matched = false;
        for (auto symbol : kTwoCharSymbols) {
            if (input.substr(i, 2) == symbol) {
                tokens.push_back({TokenKind::Symbol, std::string(symbol), column});
                i += 2;
                matched = true;
                break;
            }
        }
        if (matched) {
            continue;
        }
        if (kOneCharSymbols.find(c) != std::string_view::npos) {
            tokens.push_back({TokenKind::Symbol, std::string(1, c), column});
            ++i;
            continue;
        }
        throw SyntaxError(column, {"token"}, fmt::format("unexpected character '{}'", c));
    }
    tokens.push_back({TokenKind::End, "", input.size() + 1});
    return tokens;
}

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    Property parseTop() {
        auto p = parseProduct();
        expectEnd();
        return p;
    }

private:
    Token const& peek(std::size_t ahead = 0) const { return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)]; }

    bool atSymbol(std::string_view s, std::size_t ahead = 0) const {
        auto const& t = peek(ahead);
        return t.kind == TokenKind::Symbol && t.text == s;
    }

    bool atIdentifier(std::string_view s, std::size_t ahead = 0) const {
        auto const& t = peek(ahead);
        return t.kind == TokenKind::Identifier && t.text == s;
    }

    bool atBound() const { return atSymbol("<") || atSymbol("<=") || atSymbol(">") || atSymbol(">="); }

    [[noreturn]] void unexpected(std::vector<std::string> expected) const {
        std::sort(expected.begin(), expected.end());
        throw SyntaxError(peek().column, std::move(expected), peek().describe());
    }

    [[noreturn]] void unsupported(std::string construct) const { throw UnknownConstruct(std::move(construct), peek().column); }

    void expectSymbol(std::string_view s) {
        if (!atSymbol(s)) {
            unexpected({fmt::format("'{}'", s)});
        }
        ++pos_;
    }

    void expectEnd() {
        if (peek().kind != TokenKind::End) {
            std::vector<std::string> expected{"end of input"};
            if (!atSymbol("*")) {
                expected.push_back("'*'");
            }
            unexpected(expected);
        }
    }

    Property parseProduct() {
        auto lhs = parseFactor();
        while (atSymbol("*")) {
            ++pos_;
            auto rhs = parseFactor();
            lhs = property::Product{std::move(lhs), std::move(rhs)};
        }
        return lhs;
    }

    Property parseFactor() {
        if (atSymbol("(")) {
            ++pos_;
            auto inner = parseProduct();
            expectSymbol(")");
            return inner;
        }
        return parseOperator();
    }

    Property parseOperator() {
        auto const& t = peek();
        if (t.kind == TokenKind::Identifier) {
            if (t.text == "P") {
                return parseProbability();
            }
            if (t.text == "S") {
                return parseSteadyState();
            }
            if (t.text == "R") {
                return parseReward();
            }
            if (t.text == "filter") {
                return parseFilter();
            }
            if (t.text == "E" || t.text == "A") {
                unsupported(t.text);
            }
        }
        unexpected({"'P'", "'R'", "'S'", "'filter'", "'('"});
    }

    void parseQuery(std::string const& op) {
        if (atBound()) {
            unsupported(op + " with a probability/reward bound");
        }
        if (atIdentifier("min") || atIdentifier("max")) {
            unsupported(op + peek().text);
        }
        expectSymbol("=?");
    }

    Property parseProbability() {
        ++pos_;  // P
        parseQuery("P");
        expectSymbol("[");
        Property result = parsePath();
        expectSymbol("]");
        return result;
    }

    Property parsePath() {
        auto const& t = peek();
        if (t.kind == TokenKind::Identifier) {
            if (t.text == "X") {
                ++pos_;
                return property::NextProbability{parsePredicate()};
            }
            if (t.text == "F" || t.text == "G") {
                unsupported(t.text);
            }
        }
        auto constraint = parsePredicate();
        if (atIdentifier("U")) {
            ++pos_;
            if (atBound()) {
                unsupported("bounded until");
            }
            auto target = parsePredicate();
            return property::UntilProbability{std::move(constraint), std::move(target)};
        }
        if (atIdentifier("W") || atIdentifier("R")) {
            unsupported(peek().text);
        }
        unexpected({"'U'", "'&'", "'|'"});
    }

    Property parseSteadyState() {
        ++pos_;  // S
        if (atBound()) {
            unsupported("S with a probability bound");
        }
        expectSymbol("=?");
        expectSymbol("[");
        auto p = parsePredicate();
        expectSymbol("]");
        return property::SteadyStateProbability{std::move(p)};
    }

    Property parseReward() {
        ++pos_;  // R
        expectSymbol("{");
        if (peek().kind != TokenKind::String) {
            unexpected({"reward name string"});
        }
        auto name = peek().text;
        ++pos_;
        expectSymbol("}");
        auto qualifier = RewardQualifier::None;
        if (atIdentifier("min")) {
            qualifier = RewardQualifier::Min;
            ++pos_;
        } else if (atIdentifier("max")) {
            qualifier = RewardQualifier::Max;
            ++pos_;
        }
        if (atBound()) {
            unsupported("R with a reward bound");
        }
        expectSymbol("=?");
        expectSymbol("[");
        Property result = [&]() -> Property {
            if (atIdentifier("F")) {
                ++pos_;
                return property::ReachReward{name, parsePredicate(), qualifier};
            }
            if (atIdentifier("S")) {
                ++pos_;
                return property::SteadyStateReward{name, qualifier};
            }
            if (atIdentifier("C") || atIdentifier("I")) {
                unsupported(peek().text);
            }
            unexpected({"'F'", "'S'"});
        }();
        expectSymbol("]");
        return result;
    }

    Property parseFilter() {
        ++pos_;  // filter
        expectSymbol("(");
        if (peek().kind != TokenKind::Identifier) {
            unexpected({"'state'"});
        }
        if (peek().text != "state") {
            unsupported("filter(" + peek().text + ")");
        }
        ++pos_;
        expectSymbol(",");
        auto inner = parseOperator();
        expectSymbol(",");
        auto condition = parsePredicate();
        expectSymbol(")");
        return property::FilterState{std::move(inner), std::move(condition)};
    }

    Predicate parsePredicate() {
        auto lhs = parseConjunction();
        while (atSymbol("|")) {
            ++pos_;
            lhs = Predicate::disjunction(std::move(lhs), parseConjunction());
        }
        return lhs;
    }

    Predicate parseConjunction() {
        auto lhs = parseUnary();
        while (atSymbol("&")) {
            ++pos_;
            lhs = Predicate::conjunction(std::move(lhs), parseUnary());
        }
        return lhs;
    }

    Predicate parseUnary() {
        if (atSymbol("!")) {
            ++pos_;
            return Predicate::negation(parseUnary());
        }
        if (atSymbol("(")) {
            ++pos_;
            auto inner = parsePredicate();
            expectSymbol(")");
            return inner;
        }
        auto const& t = peek();
        if (t.kind == TokenKind::Identifier) {
            if (t.text == "true") {
                ++pos_;
                return Predicate::truth();
            }
            if (t.text == "s" && atSymbol("=", 1)) {
                pos_ += 2;
                if (peek().kind != TokenKind::Identifier) {
                    unexpected({"state label"});
                }
                auto name = peek().text;
                ++pos_;
                return Predicate::label(std::move(name));
            }
            if (t.text == "P" || t.text == "S" || t.text == "R") {
                unsupported("nested " + t.text + " operator");
            }
            if (t.text == "X" || t.text == "F" || t.text == "G") {
                unsupported("nested " + t.text + " operator");
            }
        }
        unexpected({"'s='", "'true'", "'!'", "'('"});
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

}  // namespace

Property parseProperty(std::string_view text) { return Parser(tokenize(text)).parseTop(); }

}  // namespace pmcdse
