#include "zodps/svg.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "zodps/errors.hpp"

namespace zodps::svg {

namespace {

std::string fmt(double v, int precision, std::chars_format form) {
    std::array<char, 48> buf;
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, form, precision);
    return std::string(buf.data(), res.ptr);
}

std::string px(double v) { return fmt(v, 2, std::chars_format::fixed); }
std::string tick_label(double v) {
    if (v == 0.0) return "0";
    return fmt(v, 6, std::chars_format::general);
}

std::string escape(const std::string& s) {
    std::string out;
    for (const char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void absorb(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void widen_if_flat() {
        if (!(lo < hi)) {
            const double pad = (lo == 0.0) ? 1.0 : std::abs(lo) * 0.5;
            lo -= pad;
            hi += pad;
        }
    }
};

// Tick step of the form {1,2,5} * 10^k giving roughly five intervals.
double nice_step(double span) {
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double frac = raw / mag;
    if (frac <= 1.5) return mag;
    if (frac <= 3.5) return 2.0 * mag;
    if (frac <= 7.5) return 5.0 * mag;
    return 10.0 * mag;
}

std::vector<double> linear_ticks(const Range& r) {
    const double step = nice_step(r.hi - r.lo);
    std::vector<double> ticks;
    double t = std::ceil(r.lo / step - 1e-9) * step;
    while (t <= r.hi + 1e-9 * step) {
        ticks.push_back(std::abs(t) < step * 1e-9 ? 0.0 : t);
        t += step;
    }
    return ticks;
}

std::vector<double> decade_ticks(const Range& r) {
    std::vector<double> ticks;
    const int lo = static_cast<int>(std::floor(r.lo + 1e-12));
    const int hi = static_cast<int>(std::ceil(r.hi - 1e-12));
    for (int k = lo; k <= hi; ++k) ticks.push_back(static_cast<double>(k));
    return ticks;
}

} // namespace

std::string series_color(std::size_t index) {
    static const std::array<const char*, 7> palette = {
        "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};
    return palette[index % palette.size()];
}

std::string render_line_chart(const ChartSpec& spec, const std::vector<Series>& series) {
    const double left = 72.0, right = 24.0, top = 46.0, bottom = 58.0;
    const double plot_w = spec.width - left - right;
    const double plot_h = spec.height - top - bottom;

    bool log_y = spec.log_y;
    Range rx, ry_linear;
    std::size_t points = 0;
    for (const Series& s : series) {
        if (s.y.size() != s.x.size())
            throw ValidationError("svg: series x/y length mismatch");
        if (!s.band_low.empty() &&
            (s.band_low.size() != s.x.size() || s.band_high.size() != s.x.size()))
            throw ValidationError("svg: band length mismatch");
        points += s.x.size();
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            rx.absorb(s.x[i]);
            ry_linear.absorb(s.y[i]);
            if (!s.band_low.empty()) {
                ry_linear.absorb(s.band_low[i]);
                ry_linear.absorb(s.band_high[i]);
            }
            if (s.y[i] <= 0.0) log_y = false;
            if (!s.band_low.empty() && s.band_low[i] <= 0.0) log_y = false;
        }
    }
    if (points == 0) throw ValidationError("svg: nothing to plot");
    rx.widen_if_flat();

    auto transform_y = [log_y](double v) { return log_y ? std::log10(v) : v; };
    Range ry;
    for (const Series& s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            ry.absorb(transform_y(s.y[i]));
            if (!s.band_low.empty()) {
                ry.absorb(transform_y(s.band_low[i]));
                ry.absorb(transform_y(s.band_high[i]));
            }
        }
    ry.widen_if_flat();

    auto to_px = [&](double x) { return left + (x - rx.lo) / (rx.hi - rx.lo) * plot_w; };
    auto to_py = [&](double y) {
        return top + (1.0 - (transform_y(y) - ry.lo) / (ry.hi - ry.lo)) * plot_h;
    };
    auto tick_py = [&](double t) {
        return top + (1.0 - (t - ry.lo) / (ry.hi - ry.lo)) * plot_h;
    };

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width
        << "\" height=\"" << spec.height << "\" viewBox=\"0 0 " << spec.width << ' '
        << spec.height << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // Grid and ticks.
    const std::vector<double> xticks = linear_ticks(rx);
    const std::vector<double> yticks = log_y ? decade_ticks(ry) : linear_ticks(ry);
    out << "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
    for (const double t : xticks) {
        const std::string x = px(to_px(t));
        out << "<line x1=\"" << x << "\" y1=\"" << px(top) << "\" x2=\"" << x
            << "\" y2=\"" << px(top + plot_h) << "\"/>\n";
    }
    for (const double t : yticks) {
        const std::string y = px(tick_py(t));
        out << "<line x1=\"" << px(left) << "\" y1=\"" << y << "\" x2=\""
            << px(left + plot_w) << "\" y2=\"" << y << "\"/>\n";
    }
    out << "</g>\n";

    // Bands under the lines.
    for (std::size_t si = 0; si < series.size(); ++si) {
        const Series& s = series[si];
        if (s.band_low.empty() || s.x.empty()) continue;
        out << "<polygon fill=\"" << s.color << "\" fill-opacity=\"0.18\" stroke=\"none\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i)
            out << px(to_px(s.x[i])) << ',' << px(to_py(s.band_high[i])) << ' ';
        for (std::size_t i = s.x.size(); i-- > 0;)
            out << px(to_px(s.x[i])) << ',' << px(to_py(s.band_low[i])) << ' ';
        out << "\"/>\n";
    }

    // Lines.
    for (const Series& s : series) {
        if (s.x.empty()) continue;
        out << "<polyline fill=\"none\" stroke=\"" << s.color
            << "\" stroke-width=\"1.8\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i)
            out << px(to_px(s.x[i])) << ',' << px(to_py(s.y[i])) << ' ';
        out << "\"/>\n";
    }

    // Frame.
    out << "<rect x=\"" << px(left) << "\" y=\"" << px(top) << "\" width=\""
        << px(plot_w) << "\" height=\"" << px(plot_h)
        << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

    // Tick labels.
    out << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#333333\">\n";
    for (const double t : xticks)
        out << "<text x=\"" << px(to_px(t)) << "\" y=\"" << px(top + plot_h + 18.0)
            << "\" text-anchor=\"middle\">" << tick_label(t) << "</text>\n";
    for (const double t : yticks)
        out << "<text x=\"" << px(left - 8.0) << "\" y=\"" << px(tick_py(t) + 4.0)
            << "\" text-anchor=\"end\">"
            << tick_label(log_y ? std::pow(10.0, t) : t) << "</text>\n";
    out << "</g>\n";

    // Title and axis labels.
    out << "<text x=\"" << px(left + plot_w / 2.0)
        << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"16\" fill=\"#111111\">"
        << escape(spec.title) << "</text>\n";
    out << "<text x=\"" << px(left + plot_w / 2.0) << "\" y=\""
        << px(spec.height - 14.0)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "fill=\"#111111\">"
        << escape(spec.x_label) << "</text>\n";
    out << "<text x=\"20\" y=\"" << px(top + plot_h / 2.0)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "fill=\"#111111\" transform=\"rotate(-90 20 "
        << px(top + plot_h / 2.0) << ")\">" << escape(spec.y_label) << "</text>\n";

    // Legend (top-right corner of the plot area).
    double ly = top + 16.0;
    for (const Series& s : series) {
        const double lx = left + plot_w - 170.0;
        out << "<line x1=\"" << px(lx) << "\" y1=\"" << px(ly - 4.0) << "\" x2=\""
            << px(lx + 26.0) << "\" y2=\"" << px(ly - 4.0) << "\" stroke=\"" << s.color
            << "\" stroke-width=\"2.5\"/>\n";
        out << "<text x=\"" << px(lx + 32.0) << "\" y=\"" << px(ly)
            << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#111111\">"
            << escape(s.label) << "</text>\n";
        ly += 18.0;
    }

    out << "</svg>\n";
    return out.str();
}

void write_chart(const std::string& path, const ChartSpec& spec,
                 const std::vector<Series>& series) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open for writing: " + path);
    out << render_line_chart(spec, series);
    if (!out.good()) throw ValidationError("write failed: " + path);
}

} // namespace zodps::svg
