#include "bandrg/svg_plot.hpp"

#include "bandrg/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace bandrg {

namespace {

constexpr double width = 720.0;
constexpr double height = 460.0;
constexpr double left = 80.0;
constexpr double right = 170.0;
constexpr double top = 40.0;
constexpr double bottom = 60.0;

constexpr std::array<const char*, 6> palette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

std::string escape(const std::string& s)
{
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

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v)
    {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }

    void pad()
    {
        if (!(lo <= hi)) {
            lo = 0.0;
            hi = 1.0;
        } else if (lo == hi) {
            lo -= 0.5;
            hi += 0.5;
        }
    }
};

} // namespace

std::string render_svg(const PlotSpec& spec)
{
    const auto usable = [&](double x, double y) {
        return std::isfinite(x) && std::isfinite(y) && (!spec.log_y || y > 0.0);
    };
    const auto ty = [&](double y) { return spec.log_y ? std::log10(y) : y; };

    Range xr;
    Range yr;
    for (const auto& s : spec.series) {
        if (s.x.size() != s.y.size())
            throw InvalidArgument("plot series '" + s.label + "' has mismatched x and y lengths");
        for (std::size_t i = 0; i < s.x.size(); ++i)
            if (usable(s.x[i], s.y[i])) {
                xr.add(s.x[i]);
                yr.add(ty(s.y[i]));
            }
    }
    xr.pad();
    yr.pad();

    const double pw = width - left - right;
    const double ph = height - top - bottom;
    const auto px = [&](double x) { return left + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
    const auto py = [&](double y) { return top + ph - (ty(y) - yr.lo) / (yr.hi - yr.lo) * ph; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << num(left + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
       << escape(spec.title) << "</text>\n";
    os << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(pw) << "\" height=\""
       << num(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (int i = 0; i <= 4; ++i) {
        const double xv = xr.lo + (xr.hi - xr.lo) * i / 4.0;
        const double x = left + pw * i / 4.0;
        os << "<line x1=\"" << num(x) << "\" y1=\"" << num(top + ph) << "\" x2=\"" << num(x) << "\" y2=\""
           << num(top + ph + 5) << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << num(x) << "\" y=\"" << num(top + ph + 20) << "\" text-anchor=\"middle\">"
           << tick_label(xv) << "</text>\n";

        const double yv = yr.lo + (yr.hi - yr.lo) * i / 4.0;
        const double y = top + ph - ph * i / 4.0;
        os << "<line x1=\"" << num(left - 5) << "\" y1=\"" << num(y) << "\" x2=\"" << num(left) << "\" y2=\""
           << num(y) << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << num(left - 8) << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\">"
           << tick_label(spec.log_y ? std::pow(10.0, yv) : yv) << "</text>\n";
    }
    os << "<text x=\"" << num(left + pw / 2) << "\" y=\"" << num(height - 15) << "\" text-anchor=\"middle\">"
       << escape(spec.x_label) << "</text>\n";
    os << "<text x=\"18\" y=\"" << num(top + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
       << num(top + ph / 2) << ")\">" << escape(spec.y_label) << "</text>\n";

    for (std::size_t s = 0; s < spec.series.size(); ++s) {
        const auto& series = spec.series[s];
        const char* color = palette[s % palette.size()];
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        bool first = true;
        for (std::size_t i = 0; i < series.x.size(); ++i) {
            if (!usable(series.x[i], series.y[i]))
                continue;
            os << (first ? "" : " ") << num(px(series.x[i])) << ',' << num(py(series.y[i]));
            first = false;
        }
        os << "\"/>\n";
        const double ly = top + 10 + 20.0 * static_cast<double>(s);
        os << "<line x1=\"" << num(left + pw + 15) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(left + pw + 40)
           << "\" y2=\"" << num(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << num(left + pw + 46) << "\" y=\"" << num(ly + 4) << "\">" << escape(series.label)
           << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace bandrg
