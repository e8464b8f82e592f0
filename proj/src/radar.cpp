#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "pmcdse/errors.h"
#include "pmcdse/report.h"

namespace pmcdse {

namespace {

constexpr double kSize = 640.0;
constexpr double kCenter = 320.0;
constexpr double kRadius = 220.0;
constexpr char const* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

// Point at `value` (0..10) on axis `i` of `n`, first axis pointing up.
std::pair<double, double> point(std::size_t i, std::size_t n, double value) {
    double const angle = -std::numbers::pi / 2 + 2 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
    double const r = kRadius * value / 10.0;
    return {kCenter + r * std::cos(angle), kCenter + r * std::sin(angle)};
}

// Fixed two-decimal coordinates; normalises negative zero.
std::string coord(double v) {
    auto s = fmt::format("{:.2f}", v);
    return s == "-0.00" ? "0.00" : s;
}

std::string escape(std::string const& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&':
                out += "&amp;";
                break;
            case '<':
                out += "&lt;";
                break;
            case '>':
                out += "&gt;";
                break;
            case '"':
                out += "&quot;";
                break;
            default:
                out += c;
        }
    }
    return out;
}

}  // namespace

std::string radarSvg(ScoreTable const& table) {
    auto const n = table.criteria.size();
    if (n < 3) {
        throw FewerThanThreeAxes(n);
    }
    for (auto const& row : table.rows) {
        if (row.scores.size() != n) {
            throw RangeViolation(fmt::format("theta {} has {} scores for {} axes", row.theta, row.scores.size(), n));
        }
        for (double s : row.scores) {
            if (!(s >= 0.0 && s <= 10.0)) {
                throw RangeViolation(fmt::format("theta {}: score {} outside [0,10]", row.theta, s));
            }
        }
    }

    std::string svg = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\">\n",
        kSize, kSize + 20.0 * static_cast<double>(table.rows.size()));
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    svg += "<g class=\"grid\" fill=\"none\" stroke=\"#cccccc\" stroke-width=\"1\">\n";
    for (int ring = 2; ring <= 10; ring += 2) {
        std::string pts;
        for (std::size_t i = 0; i < n; ++i) {
            auto [x, y] = point(i, n, ring);
            pts += fmt::format("{}{},{}", i ? " " : "", coord(x), coord(y));
        }
        svg += fmt::format("<polygon points=\"{}\"/>\n", pts);
    }
    svg += "</g>\n";

    svg += "<g class=\"axes\" stroke=\"#888888\" stroke-width=\"1\" font-family=\"sans-serif\" font-size=\"14\">\n";
    for (std::size_t i = 0; i < n; ++i) {
        auto [x, y] = point(i, n, 10.0);
        auto [lx, ly] = point(i, n, 11.0);
        svg += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n", coord(kCenter), coord(kCenter),
                           coord(x), coord(y));
        svg += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" stroke=\"none\" fill=\"black\">{}</text>\n",
                           coord(lx), coord(ly + 5.0), escape(table.criteria[i]));
    }
    svg += "</g>\n";

    svg += "<g class=\"series\" stroke-width=\"2\" fill-opacity=\"0.15\">\n";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        auto const& row = table.rows[r];
        auto const* color = kPalette[r % std::size(kPalette)];
        std::string pts;
        for (std::size_t i = 0; i < n; ++i) {
            auto [x, y] = point(i, n, row.scores[i]);
            pts += fmt::format("{}{},{}", i ? " " : "", coord(x), coord(y));
        }
        svg += fmt::format("<polygon data-theta=\"{}\" points=\"{}\" stroke=\"{}\" fill=\"{}\"/>\n", row.theta, pts,
                           color, color);
    }
    svg += "</g>\n";

    svg += "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"13\">\n";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        auto const& row = table.rows[r];
        auto const* color = kPalette[r % std::size(kPalette)];
        double const y = kSize - 10.0 + 20.0 * static_cast<double>(r);
        auto label = row.variant.empty() ? fmt::format("theta{}", row.theta)
                                         : fmt::format("theta{} ({})", row.theta, row.variant);
        svg += fmt::format("<rect x=\"20\" y=\"{}\" width=\"12\" height=\"12\" fill=\"{}\"/>\n", coord(y - 10.0), color);
        svg += fmt::format("<text x=\"40\" y=\"{}\">{} avg {}</text>\n", coord(y), escape(label),
                           fmt::format("{:.2f}", row.average));
    }
    svg += "</g>\n</svg>\n";
    return svg;
}

}  // namespace pmcdse
