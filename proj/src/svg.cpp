#include "lab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "lab/csv.hpp"
#include "lab/errors.hpp"

namespace lab {
namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

struct Axis {
    double lo = 0.0, hi = 1.0;
    bool log = false;

    double map(double v, double pix_lo, double pix_hi) const {
        double t = log ? (std::log10(v) - lo) / (hi - lo) : (v - lo) / (hi - lo);
        return pix_lo + t * (pix_hi - pix_lo);
    }
};

Axis fit_axis(const std::vector<SvgSeries>& series, bool take_x, bool log) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& s : series) {
        const auto& vs = take_x ? s.x : s.y;
        for (double v : vs) {
            if (!std::isfinite(v)) continue;
            if (log && v <= 0.0) continue;
            double t = log ? std::log10(v) : v;
            lo = std::min(lo, t);
            hi = std::max(hi, t);
        }
    }
    if (!(lo <= hi)) { lo = 0.0; hi = 1.0; }
    if (lo == hi) { lo -= 0.5; hi += 0.5; }
    double pad = 0.05 * (hi - lo);
    Axis a;
    a.log = log;
    a.lo = lo - pad;
    a.hi = hi + pad;
    return a;
}

std::string tick_label(double t, bool log) {
    std::ostringstream os;
    if (log) {
        os << "1e" << static_cast<int>(std::lround(t));
    } else {
        os.precision(4);
        os << t;
    }
    return os.str();
}

} // namespace

std::string render_svg(const std::vector<SvgPanel>& panels, int pw, int ph) {
    if (panels.empty()) throw validation_error("render_svg: no panels");
    int width = pw * static_cast<int>(panels.size());
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << ph << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    out << "<rect width=\"" << width << "\" height=\"" << ph << "\" fill=\"white\"/>\n";

    for (std::size_t p = 0; p < panels.size(); ++p) {
        const auto& panel = panels[p];
        double x0 = p * pw + 56, x1 = (p + 1) * pw - 16;
        double y0 = ph - 42, y1 = 34; // y grows downward
        Axis ax = fit_axis(panel.series, true, panel.logx);
        Axis ay = fit_axis(panel.series, false, panel.logy);

        out << "<text x=\"" << (p * pw + pw / 2) << "\" y=\"18\" text-anchor=\"middle\" "
            << "font-size=\"13\">" << panel.title << "</text>\n";
        out << "<rect x=\"" << x0 << "\" y=\"" << y1 << "\" width=\"" << (x1 - x0)
            << "\" height=\"" << (y0 - y1) << "\" fill=\"none\" stroke=\"#333\"/>\n";

        // 5 ticks per axis at round positions in transformed coordinates
        for (int i = 0; i <= 4; ++i) {
            double tx = ax.lo + (ax.hi - ax.lo) * i / 4.0;
            double px = ax.map(ax.log ? std::pow(10.0, tx) : tx, x0, x1);
            out << "<line x1=\"" << px << "\" y1=\"" << y0 << "\" x2=\"" << px
                << "\" y2=\"" << (y0 + 4) << "\" stroke=\"#333\"/>\n";
            out << "<text x=\"" << px << "\" y=\"" << (y0 + 16)
                << "\" text-anchor=\"middle\">" << tick_label(tx, ax.log) << "</text>\n";
            double ty = ay.lo + (ay.hi - ay.lo) * i / 4.0;
            double py = ay.map(ay.log ? std::pow(10.0, ty) : ty, y0, y1);
            out << "<line x1=\"" << (x0 - 4) << "\" y1=\"" << py << "\" x2=\"" << x0
                << "\" y2=\"" << py << "\" stroke=\"#333\"/>\n";
            out << "<text x=\"" << (x0 - 6) << "\" y=\"" << (py + 4)
                << "\" text-anchor=\"end\">" << tick_label(ty, ay.log) << "</text>\n";
        }
        out << "<text x=\"" << (x0 + (x1 - x0) / 2) << "\" y=\"" << (ph - 8)
            << "\" text-anchor=\"middle\">" << panel.xlabel << "</text>\n";
        out << "<text x=\"" << (p * pw + 14) << "\" y=\"" << (y1 + (y0 - y1) / 2)
            << "\" text-anchor=\"middle\" transform=\"rotate(-90 " << (p * pw + 14)
            << " " << (y1 + (y0 - y1) / 2) << ")\">" << panel.ylabel << "</text>\n";

        for (std::size_t s = 0; s < panel.series.size(); ++s) {
            const auto& ser = panel.series[s];
            const char* color = kPalette[s % 8];
            out << "<polyline fill=\"none\" stroke=\"" << color
                << "\" stroke-width=\"1.5\" points=\"";
            for (std::size_t i = 0; i < ser.x.size() && i < ser.y.size(); ++i) {
                double vx = ser.x[i], vy = ser.y[i];
                if (!std::isfinite(vx) || !std::isfinite(vy)) continue;
                if ((ax.log && vx <= 0) || (ay.log && vy <= 0)) continue;
                out << format_double(ax.map(vx, x0, x1)) << ','
                    << format_double(ay.map(vy, y0, y1)) << ' ';
            }
            out << "\"/>\n";
            double ly = y1 + 14 + 14 * s;
            out << "<line x1=\"" << (x0 + 8) << "\" y1=\"" << ly << "\" x2=\"" << (x0 + 28)
                << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
            out << "<text x=\"" << (x0 + 32) << "\" y=\"" << (ly + 4) << "\">" << ser.label
                << "</text>\n";
        }
    }
    out << "</svg>\n";
    return out.str();
}

void write_svg(const std::string& path, const std::vector<SvgPanel>& panels,
               int pw, int ph) {
    write_text_atomic(path, render_svg(panels, pw, ph));
}

} // namespace lab
