#include "breadline/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "breadline/csv.hpp"
#include "breadline/errors.hpp"

namespace breadline {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0, kRight = 20.0, kTop = 40.0, kBottom = 50.0;

struct Range {
    double lo = 0.0, hi = 1.0;
    double scale(double v, double px_lo, double px_hi) const {
        return px_lo + (v - lo) / (hi - lo) * (px_hi - px_lo);
    }
};

Range expand(double lo, double hi) {
    if (!(hi > lo)) {
        lo -= 0.5;
        hi += 0.5;
    }
    const double pad = 0.05 * (hi - lo);
    return {lo - pad, hi + pad};
}

std::vector<double> ticks(const Range& r, int count = 5) {
    std::vector<double> out;
    const double raw = (r.hi - r.lo) / count;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 2.5, 5.0, 10.0})
        if (mag * m >= raw) {
            step = mag * m;
            break;
        }
    const double first = std::ceil(r.lo / step) * step;
    for (double t = first; t <= r.hi + 1e-12 * step; t += step)
        out.push_back(t);
    return out;
}

void open_figure(std::ostringstream& out, const std::string& title) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
        << kHeight << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << kWidth / 2
        << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\" "
           "font-family=\"sans-serif\">"
        << title << "</text>\n";
}

void axes(std::ostringstream& out, const Range& xr, const Range& yr,
          const std::string& x_label, const std::string& y_label) {
    const double x0 = kLeft, x1 = kWidth - kRight;
    const double y0 = kHeight - kBottom, y1 = kTop;
    out << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x1
        << "\" y2=\"" << y0 << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x0
        << "\" y2=\"" << y1 << "\" stroke=\"black\"/>\n";
    for (double t : ticks(xr)) {
        const double px = xr.scale(t, x0, x1);
        out << "<line x1=\"" << px << "\" y1=\"" << y0 << "\" x2=\"" << px
            << "\" y2=\"" << y0 + 5 << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << px << "\" y=\"" << y0 + 18
            << "\" text-anchor=\"middle\" font-size=\"11\" "
               "font-family=\"sans-serif\">"
            << format_number(t) << "</text>\n";
    }
    for (double t : ticks(yr)) {
        const double py = yr.scale(t, y0, y1);
        out << "<line x1=\"" << x0 - 5 << "\" y1=\"" << py << "\" x2=\"" << x0
            << "\" y2=\"" << py << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << x0 - 8 << "\" y=\"" << py + 4
            << "\" text-anchor=\"end\" font-size=\"11\" "
               "font-family=\"sans-serif\">"
            << format_number(t) << "</text>\n";
    }
    out << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"middle\" font-size=\"12\" "
           "font-family=\"sans-serif\">"
        << x_label << "</text>\n"
        << "<text x=\"16\" y=\"" << (y0 + y1) / 2
        << "\" text-anchor=\"middle\" font-size=\"12\" "
           "font-family=\"sans-serif\" transform=\"rotate(-90 16 "
        << (y0 + y1) / 2 << ")\">" << y_label << "</text>\n";
}

void legend(std::ostringstream& out, const std::vector<SvgSeries>& series) {
    double y = kTop + 8.0;
    for (const auto& s : series) {
        const double x = kWidth - kRight - 170.0;
        out << "<line x1=\"" << x << "\" y1=\"" << y << "\" x2=\"" << x + 24
            << "\" y2=\"" << y << "\" stroke=\"" << s.color
            << "\" stroke-width=\"2\""
            << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>\n"
            << "<text x=\"" << x + 30 << "\" y=\"" << y + 4
            << "\" font-size=\"11\" font-family=\"sans-serif\">" << s.label
            << "</text>\n";
        y += 16.0;
    }
}

}  // namespace

std::string svg_line_chart(const std::string& title, const std::string& x_label,
                           const std::string& y_label,
                           const std::vector<SvgSeries>& series) {
    if (series.empty()) throw ParameterError("line chart needs data");
    double x_lo = series[0].x.front(), x_hi = x_lo;
    double y_lo = series[0].y.front(), y_hi = y_lo;
    for (const auto& s : series) {
        for (double v : s.x) {
            x_lo = std::min(x_lo, v);
            x_hi = std::max(x_hi, v);
        }
        for (double v : s.y) {
            y_lo = std::min(y_lo, v);
            y_hi = std::max(y_hi, v);
        }
    }
    const Range xr = expand(x_lo, x_hi);
    const Range yr = expand(y_lo, y_hi);

    std::ostringstream out;
    open_figure(out, title);
    axes(out, xr, yr, x_label, y_label);
    for (const auto& s : series) {
        out << "<polyline fill=\"none\" stroke=\"" << s.color
            << "\" stroke-width=\"2\""
            << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << " points=\"";
        for (size_t i = 0; i < s.x.size(); ++i)
            out << xr.scale(s.x[i], kLeft, kWidth - kRight) << ","
                << yr.scale(s.y[i], kHeight - kBottom, kTop) << " ";
        out << "\"/>\n";
    }
    legend(out, series);
    out << "</svg>\n";
    return out.str();
}

std::string svg_bar_chart(const std::string& title,
                          const std::vector<std::string>& categories,
                          const std::vector<SvgSeries>& series) {
    if (series.empty() || categories.empty())
        throw ParameterError("bar chart needs data");
    double y_lo = 0.0, y_hi = 0.0;
    for (const auto& s : series)
        for (double v : s.y) {
            y_lo = std::min(y_lo, v);
            y_hi = std::max(y_hi, v);
        }
    const Range yr = expand(y_lo, y_hi);
    const double x0 = kLeft, x1 = kWidth - kRight;
    const double y_base = yr.scale(0.0, kHeight - kBottom, kTop);
    const double group_width = (x1 - x0) / categories.size();
    const double bar_width = 0.8 * group_width / series.size();

    std::ostringstream out;
    open_figure(out, title);
    axes(out, {0.0, 1.0}, yr, "", "");
    for (size_t c = 0; c < categories.size(); ++c) {
        const double gx = x0 + c * group_width;
        out << "<text x=\"" << gx + group_width / 2 << "\" y=\""
            << kHeight - kBottom + 18
            << "\" text-anchor=\"middle\" font-size=\"11\" "
               "font-family=\"sans-serif\">"
            << categories[c] << "</text>\n";
        for (size_t s = 0; s < series.size(); ++s) {
            if (c >= series[s].y.size()) continue;
            const double v = series[s].y[c];
            const double py = yr.scale(v, kHeight - kBottom, kTop);
            const double top = std::min(py, y_base);
            const double height = std::fabs(py - y_base);
            out << "<rect x=\""
                << gx + 0.1 * group_width + s * bar_width << "\" y=\"" << top
                << "\" width=\"" << bar_width * 0.9 << "\" height=\"" << height
                << "\" fill=\"" << series[s].color << "\"/>\n";
        }
    }
    legend(out, series);
    out << "</svg>\n";
    return out.str();
}

}  // namespace breadline
