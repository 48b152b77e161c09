#include "svg.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>

namespace spinyam::cli {

namespace {

constexpr int kMarginLeft = 64;
constexpr int kMarginRight = 20;
constexpr int kMarginTop = 36;
constexpr int kMarginBottom = 48;

std::string fixed2(double x) {
    std::array<char, 48> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::fixed, 2);
    return std::string(buf.data(), res.ptr);
}

std::string tick_label(double x) {
    if (std::abs(x) < 1e-12) return "0";
    std::array<char, 48> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::general, 4);
    return std::string(buf.data(), res.ptr);
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += c;
        }
    }
    return out;
}

double nice_step(double span) {
    const double raw = span / 5;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double f : {1.0, 2.0, 2.5, 5.0, 10.0})
        if (f * mag >= raw) return f * mag;
    return 10 * mag;
}

}  // namespace

SvgPlot::SvgPlot(int width, int height, std::string title, std::string x_label, std::string y_label)
    : width_(width), height_(height), title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

void SvgPlot::set_range(double x_min, double x_max, double y_min, double y_max) {
    range_ = Range{x_min, x_max, y_min, y_max};
}

SvgPlot::Range SvgPlot::range() const {
    if (range_) return *range_;
    Range r{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
            std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    auto take = [&](double x, double y) {
        if (!std::isfinite(x) || !std::isfinite(y)) return;
        r.x0 = std::min(r.x0, x);
        r.x1 = std::max(r.x1, x);
        r.y0 = std::min(r.y0, y);
        r.y1 = std::max(r.y1, y);
    };
    for (const auto& s : series_)
        for (const auto& [x, y] : s.points) take(x, y);
    for (const auto& m : markers_) take(m.x, m.y);
    if (!(r.x0 <= r.x1)) r = {0, 1, 0, 1};
    if (r.x0 == r.x1) r.x0 -= 0.5, r.x1 += 0.5;
    if (r.y0 == r.y1) r.y0 -= 0.5, r.y1 += 0.5;
    const double px = 0.04 * (r.x1 - r.x0), py = 0.04 * (r.y1 - r.y0);
    return {r.x0 - px, r.x1 + px, r.y0 - py, r.y1 + py};
}

std::string SvgPlot::render() const {
    const Range r = range();
    const double pw = width_ - kMarginLeft - kMarginRight;
    const double ph = height_ - kMarginTop - kMarginBottom;
    auto sx = [&](double x) { return kMarginLeft + (x - r.x0) / (r.x1 - r.x0) * pw; };
    auto sy = [&](double y) { return kMarginTop + (r.y1 - y) / (r.y1 - r.y0) * ph; };
    auto inside = [&](double x, double y) { return x >= r.x0 && x <= r.x1 && y >= r.y0 && y <= r.y1; };

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + std::to_string(width_) +
           "px\" height=\"" + std::to_string(height_) + "px\" viewBox=\"0 0 " + std::to_string(width_) + " " +
           std::to_string(height_) + "\">\n";
    out += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(width_) + "\" height=\"" + std::to_string(height_) +
           "\" fill=\"white\"/>\n";
    out += "<text x=\"" + fixed2(width_ / 2.0) + "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"14\">" + escape(title_) + "</text>\n";
    out += "<rect x=\"" + std::to_string(kMarginLeft) + "\" y=\"" + std::to_string(kMarginTop) + "\" width=\"" +
           fixed2(pw) + "\" height=\"" + fixed2(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";

    const double xs = nice_step(r.x1 - r.x0), ys = nice_step(r.y1 - r.y0);
    for (double x = std::ceil(r.x0 / xs) * xs; x <= r.x1 + 1e-12 * xs; x += xs) {
        const std::string px = fixed2(sx(x));
        out += "<line x1=\"" + px + "\" y1=\"" + fixed2(kMarginTop + ph) + "\" x2=\"" + px + "\" y2=\"" +
               fixed2(kMarginTop + ph + 5) + "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + px + "\" y=\"" + fixed2(kMarginTop + ph + 18) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" + tick_label(x) + "</text>\n";
    }
    for (double y = std::ceil(r.y0 / ys) * ys; y <= r.y1 + 1e-12 * ys; y += ys) {
        const std::string py = fixed2(sy(y));
        out += "<line x1=\"" + std::to_string(kMarginLeft - 5) + "\" y1=\"" + py + "\" x2=\"" +
               std::to_string(kMarginLeft) + "\" y2=\"" + py + "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + std::to_string(kMarginLeft - 8) + "\" y=\"" + fixed2(sy(y) + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + tick_label(y) + "</text>\n";
    }
    out += "<text x=\"" + fixed2(kMarginLeft + pw / 2) + "\" y=\"" + std::to_string(height_ - 10) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" + escape(x_label_) + "</text>\n";
    out += "<text x=\"16\" y=\"" + fixed2(kMarginTop + ph / 2) + "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"12\" transform=\"rotate(-90 16 " + fixed2(kMarginTop + ph / 2) + ")\">" + escape(y_label_) +
           "</text>\n";

    for (const auto& s : series_) {
        // Points outside the frame split the curve into separate polylines.
        std::vector<std::string> runs;
        std::string cur;
        std::size_t count = 0;
        auto flush = [&] {
            if (count >= 2) runs.push_back(cur);
            cur.clear();
            count = 0;
        };
        for (const auto& [x, y] : s.points) {
            if (!std::isfinite(x) || !std::isfinite(y) || !inside(x, y)) {
                flush();
                continue;
            }
            if (count > 0) cur += ' ';
            cur += fixed2(sx(x)) + "," + fixed2(sy(y));
            ++count;
        }
        flush();
        for (const auto& pts : runs) {
            out += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"" + fixed2(s.stroke_width) + "\"";
            if (s.dashed) out += " stroke-dasharray=\"6,4\"";
            out += " points=\"" + pts + "\"/>\n";
        }
    }
    for (const auto& m : markers_) {
        if (!inside(m.x, m.y)) continue;
        out += "<circle cx=\"" + fixed2(sx(m.x)) + "\" cy=\"" + fixed2(sy(m.y)) + "\" r=\"" + fixed2(m.radius) +
               "\" fill=\"" + m.color + "\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace spinyam::cli
