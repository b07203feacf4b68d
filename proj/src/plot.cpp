#include "sdr/bench.hpp"
#include "sdr/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <string>

namespace sdr {

namespace {

constexpr double kWidth = 720, kHeight = 440;
constexpr double kLeft = 72, kRight = 200, kTop = 40, kBottom = 56;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string fmt(const char* pattern, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

std::string px(double v) { return fmt("%.2f", v); }

double axis_value(const SummaryRow& r, PlotAxis a) {
    switch (a) {
        case PlotAxis::n: return double(r.n);
        case PlotAxis::p: return double(r.p);
        case PlotAxis::eps: return r.eps;
    }
    return 0.0;
}

const char* axis_name(PlotAxis a) {
    switch (a) {
        case PlotAxis::n: return "n";
        case PlotAxis::p: return "p";
        case PlotAxis::eps: return "eps";
    }
    return "?";
}

const Quartiles& metric_of(const SummaryRow& r, PlotMetric m) {
    return m == PlotMetric::error ? r.error : r.runtime;
}

std::string series_label(const SummaryRow& r, PlotAxis a) {
    std::string s = std::string(to_string(r.estimator)) + " " + std::string(to_string(r.scheme));
    if (a != PlotAxis::n) s += " n=" + std::to_string(r.n);
    if (a != PlotAxis::p) s += " p=" + std::to_string(r.p);
    if (a != PlotAxis::eps) s += " eps=" + fmt("%g", r.eps);
    return s;
}

struct Point {
    double x, lo, mid, hi;
};

struct Scale {
    bool log;
    double lo, hi;      // transformed range
    double from, to;    // pixel range

    double t(double v) const { return log ? std::log10(v) : v; }
    double operator()(double v) const { return from + (t(v) - lo) / (hi - lo) * (to - from); }
    double inverse(double u) const {
        const double w = lo + (u - from) / (to - from) * (hi - lo);
        return log ? std::pow(10.0, w) : w;
    }
};

Scale make_scale(bool log, double vmin, double vmax, double from, double to) {
    double lo = log ? std::log10(vmin) : vmin;
    double hi = log ? std::log10(vmax) : vmax;
    if (hi - lo < 1e-12) {
        const double pad = log ? 0.5 : std::max(std::abs(lo) * 0.1, 0.05);
        lo -= pad;
        hi += pad;
    } else {
        const double pad = 0.05 * (hi - lo);
        lo -= pad;
        hi += pad;
    }
    return {log, lo, hi, from, to};
}

}  // namespace

std::string render_chart(const std::vector<SummaryRow>& summary, PlotAxis axis, PlotMetric metric) {
    const bool log_x = axis != PlotAxis::eps;

    std::vector<std::string> labels;
    std::map<std::string, std::vector<Point>> series;
    for (const auto& r : summary) {
        const Quartiles& q = metric_of(r, metric);
        const double x = axis_value(r, axis);
        if (!std::isfinite(q.median) || q.median <= 0.0) continue;
        if (log_x && !(x > 0.0)) continue;
        const std::string label = series_label(r, axis);
        auto [it, inserted] = series.try_emplace(label);
        if (inserted) labels.push_back(label);
        // Quartile bars that reach zero are clipped to the median on a log axis.
        it->second.push_back({x, q.q1 > 0.0 ? q.q1 : q.median, q.median, std::isfinite(q.q3) ? q.q3 : q.median});
    }
    if (labels.empty()) throw DataError("nothing to plot: no finite positive medians");

    double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
    for (auto& [label, pts] : series) {
        std::stable_sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return a.x < b.x; });
        for (const auto& pt : pts) {
            xmin = std::min(xmin, pt.x);
            xmax = std::max(xmax, pt.x);
            ymin = std::min(ymin, pt.lo);
            ymax = std::max(ymax, pt.hi);
        }
    }
    const Scale sx = make_scale(log_x, xmin, xmax, kLeft, kWidth - kRight);
    const Scale sy = make_scale(true, ymin, ymax, kHeight - kBottom, kTop);

    const std::string metric_name = metric == PlotMetric::error ? "median l2 error" : "median runtime (ms)";
    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + px(kWidth) + "\" height=\"" + px(kHeight) +
           "\" viewBox=\"0 0 " + px(kWidth) + " " + px(kHeight) + "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"" + px(kWidth) + "\" height=\"" + px(kHeight) + "\" fill=\"white\"/>\n";
    svg += "<text x=\"" + px(kWidth / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" + metric_name +
           " vs " + axis_name(axis) + "</text>\n";

    // Frame and ticks.
    const double x0 = kLeft, x1 = kWidth - kRight, y0 = kHeight - kBottom, y1 = kTop;
    svg += "<line x1=\"" + px(x0) + "\" y1=\"" + px(y0) + "\" x2=\"" + px(x1) + "\" y2=\"" + px(y0) +
           "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + px(x0) + "\" y1=\"" + px(y0) + "\" x2=\"" + px(x0) + "\" y2=\"" + px(y1) +
           "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double u = x0 + (x1 - x0) * i / 4.0;
        const double v = y0 + (y1 - y0) * i / 4.0;
        svg += "<line x1=\"" + px(u) + "\" y1=\"" + px(y0) + "\" x2=\"" + px(u) + "\" y2=\"" + px(y0 + 4) +
               "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + px(u) + "\" y=\"" + px(y0 + 16) + "\" text-anchor=\"middle\">" +
               fmt("%.3g", sx.inverse(u)) + "</text>\n";
        svg += "<line x1=\"" + px(x0 - 4) + "\" y1=\"" + px(v) + "\" x2=\"" + px(x0) + "\" y2=\"" + px(v) +
               "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + px(x0 - 6) + "\" y=\"" + px(v + 4) + "\" text-anchor=\"end\">" +
               fmt("%.3g", sy.inverse(v)) + "</text>\n";
    }
    svg += "<text x=\"" + px((x0 + x1) / 2) + "\" y=\"" + px(kHeight - 16) + "\" text-anchor=\"middle\">" +
           axis_name(axis) + (log_x ? " (log scale)" : "") + "</text>\n";

    for (std::size_t s = 0; s < labels.size(); ++s) {
        const auto& pts = series.at(labels[s]);
        const std::string color = kPalette[s % std::size(kPalette)];
        svg += "<g stroke=\"" + color + "\" fill=\"" + color + "\">\n";
        std::string coords;
        for (const auto& pt : pts) {
            if (!coords.empty()) coords += ' ';
            coords += px(sx(pt.x)) + "," + px(sy(pt.mid));
        }
        svg += "<polyline fill=\"none\" stroke-width=\"1.5\" points=\"" + coords + "\"/>\n";
        for (const auto& pt : pts) {
            svg += "<line x1=\"" + px(sx(pt.x)) + "\" y1=\"" + px(sy(pt.lo)) + "\" x2=\"" + px(sx(pt.x)) +
                   "\" y2=\"" + px(sy(pt.hi)) + "\"/>\n";
            svg += "<circle cx=\"" + px(sx(pt.x)) + "\" cy=\"" + px(sy(pt.mid)) + "\" r=\"2.5\"/>\n";
        }
        const double ly = kTop + 14.0 * double(s);
        svg += "<text x=\"" + px(x1 + 12) + "\" y=\"" + px(ly + 4) + "\" stroke=\"none\">" + labels[s] + "</text>\n";
        svg += "</g>\n";
    }
    svg += "</svg>\n";
    return svg;
}

std::vector<std::filesystem::path> emit_plots(const std::vector<SummaryRow>& summary,
                                              const std::filesystem::path& dir) {
    if (summary.empty()) throw DataError("empty summary");

    std::set<std::size_t> ns, ps;
    std::set<double> epss;
    for (const auto& r : summary) {
        ns.insert(r.n);
        ps.insert(r.p);
        epss.insert(r.eps);
    }
    std::vector<PlotAxis> axes;
    if (ns.size() > 1) axes.push_back(PlotAxis::n);
    if (ps.size() > 1) axes.push_back(PlotAxis::p);
    if (epss.size() > 1) axes.push_back(PlotAxis::eps);
    if (axes.empty()) axes.push_back(PlotAxis::n);

    // Render everything before touching the filesystem so a failure leaves
    // no partial output.
    std::vector<std::pair<std::filesystem::path, std::string>> charts;
    for (PlotAxis a : axes) {
        charts.emplace_back(dir / (std::string("error_vs_") + axis_name(a) + ".svg"),
                            render_chart(summary, a, PlotMetric::error));
        // Runtimes are all zero when timing was disabled; skip that chart.
        try {
            charts.emplace_back(dir / (std::string("runtime_vs_") + axis_name(a) + ".svg"),
                                render_chart(summary, a, PlotMetric::runtime));
        } catch (const DataError&) {
        }
    }

    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    std::vector<std::filesystem::path> written;
    for (const auto& [path, text] : charts) {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw IoError("cannot write " + path.string());
        out << text;
        if (!out) throw IoError("error while writing " + path.string());
        written.push_back(path);
    }
    return written;
}

}  // namespace sdr
