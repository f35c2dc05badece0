#include "mcg/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace mcg {

namespace {

constexpr double kWidth = 860.0;
constexpr double kHeight = 560.0;
constexpr double kMarginL = 72.0;
constexpr double kMarginR = 24.0;
constexpr double kMarginT = 42.0;
constexpr double kMarginB = 58.0;

struct Range {
    double lo = 0.0;
    double hi = 1.0;
};

Range padded_range(std::span<const double> v) {
    double lo = v[0], hi = v[0];
    for (const double x : v) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    if (lo == hi) {
        const double pad = hi == 0.0 ? 0.05 : 0.05 * std::fabs(hi);
        return {lo - pad, hi + pad};
    }
    return {lo, hi};
}

// Tick spacing on the 1/2/5 decade ladder, aiming for about six intervals.
double nice_step(const Range& r) {
    const double raw = (r.hi - r.lo) / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double norm = raw / mag;
    if (norm < 1.5) return mag;
    if (norm < 3.5) return 2.0 * mag;
    if (norm < 7.5) return 5.0 * mag;
    return 10.0 * mag;
}

std::vector<double> ticks(const Range& r) {
    const double step = nice_step(r);
    std::vector<double> out;
    double t = std::ceil(r.lo / step - 1e-9) * step;
    for (; t <= r.hi + 1e-9 * step; t += step) {
        out.push_back(std::fabs(t) < 1e-12 * step ? 0.0 : t);
    }
    return out;
}

std::string escape_xml(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (const char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

void render(std::span<const double> xs, std::span<const double> ys, const AxesSpec& axes,
            const std::string& path) {
    if (xs.empty()) throw std::invalid_argument("svg: no data points");
    if (xs.size() != ys.size()) throw std::invalid_argument("svg: x/y length mismatch");

    const Range rx = padded_range(xs);
    const Range ry = padded_range(ys);
    const double plot_w = kWidth - kMarginL - kMarginR;
    const double plot_h = kHeight - kMarginT - kMarginB;
    const auto px = [&](double x) { return kMarginL + (x - rx.lo) / (rx.hi - rx.lo) * plot_w; };
    const auto py = [&](double y) { return kMarginT + (ry.hi - y) / (ry.hi - ry.lo) * plot_h; };

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write file: " + path);

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << escape_xml(axes.title)
        << "</text>\n";

    for (const double t : ticks(rx)) {
        const double x = px(t);
        out << "<line x1=\"" << num(x) << "\" y1=\"" << kMarginT << "\" x2=\"" << num(x)
            << "\" y2=\"" << kMarginT + plot_h << "\" stroke=\"#ddd\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << num(x) << "\" y=\"" << kMarginT + plot_h + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << num(t)
            << "</text>\n";
    }
    for (const double t : ticks(ry)) {
        const double y = py(t);
        out << "<line x1=\"" << kMarginL << "\" y1=\"" << num(y) << "\" x2=\""
            << kMarginL + plot_w << "\" y2=\"" << num(y)
            << "\" stroke=\"#ddd\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << kMarginL - 6 << "\" y=\"" << num(y + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << num(t)
            << "</text>\n";
    }

    out << "<rect x=\"" << kMarginL << "\" y=\"" << kMarginT << "\" width=\"" << plot_w
        << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"#444\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << kMarginL + plot_w / 2 << "\" y=\"" << kHeight - 14
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << escape_xml(axes.x_label) << "</text>\n";
    out << "<text x=\"18\" y=\"" << kMarginT + plot_h / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        << "transform=\"rotate(-90 18 " << kMarginT + plot_h / 2 << ")\">"
        << escape_xml(axes.y_label) << "</text>\n";

    out << "<g fill=\"#1f6feb\" fill-opacity=\"0.55\">\n";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        out << "<circle cx=\"" << num(px(xs[i])) << "\" cy=\"" << num(py(ys[i]))
            << "\" r=\"1.6\"/>\n";
    }
    out << "</g>\n</svg>\n";
    if (!out) throw std::runtime_error("write failed: " + path);
}

double component_of(const Trajectory& traj, Component c, std::size_t i) {
    switch (c) {
        case Component::T: return traj.t[i];
        case Component::X: return traj.states[i].x;
        case Component::Y: return traj.states[i].y;
        case Component::Z: return traj.states[i].z;
    }
    return 0.0;
}

}  // namespace

void write_svg_scatter(std::span<const double> xs, std::span<const double> ys,
                       const AxesSpec& axes, const std::string& path) {
    render(xs, ys, axes, path);
}

void write_svg_scatter(std::span<const SweepRow> rows, const AxesSpec& axes,
                       const std::string& path) {
    std::vector<double> xs, ys;
    for (const SweepRow& row : rows) {
        if (row.diverged) continue;
        for (const double zmax : row.z_maxima) {
            xs.push_back(row.alpha);
            ys.push_back(zmax);
        }
    }
    render(xs, ys, axes, path);
}

void write_svg_scatter(const Trajectory& traj, Component horizontal, Component vertical,
                       const AxesSpec& axes, const std::string& path) {
    std::vector<double> xs(traj.t.size()), ys(traj.t.size());
    for (std::size_t i = 0; i < traj.t.size(); ++i) {
        xs[i] = component_of(traj, horizontal, i);
        ys[i] = component_of(traj, vertical, i);
    }
    render(xs, ys, axes, path);
}

}  // namespace mcg
