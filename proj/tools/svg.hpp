#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace spinyam::cli {

struct Series {
    std::vector<std::pair<double, double>> points;
    std::string color = "#1f77b4";
    double stroke_width = 1.2;
    bool dashed = false;
};

struct Marker {
    double x;
    double y;
    std::string color = "#d62728";
    double radius = 3.5;
};

/// Static line plot: polylines, point markers and a labelled frame.
class SvgPlot {
public:
    SvgPlot(int width, int height, std::string title, std::string x_label, std::string y_label);

    void set_range(double x_min, double x_max, double y_min, double y_max);
    void add(Series s) { series_.push_back(std::move(s)); }
    void add(Marker m) { markers_.push_back(m); }

    [[nodiscard]] std::string render() const;

private:
    struct Range {
        double x0, x1, y0, y1;
    };
    [[nodiscard]] Range range() const;

    int width_, height_;
    std::string title_, x_label_, y_label_;
    std::optional<Range> range_;
    std::vector<Series> series_;
    std::vector<Marker> markers_;
};

}  // namespace spinyam::cli
