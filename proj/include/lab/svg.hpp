#pragma once

#include <string>
#include <vector>

namespace lab {

// Minimal self-contained SVG line charts. CSV is the ground-truth artifact;
// these renderings are a convenience view of it.

struct SvgSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct SvgPanel {
    std::string title;
    std::string xlabel;
    std::string ylabel;
    bool logx = false;
    bool logy = false;
    std::vector<SvgSeries> series;
};

std::string render_svg(const std::vector<SvgPanel>& panels,
                       int panel_width = 420, int panel_height = 340);

void write_svg(const std::string& path, const std::vector<SvgPanel>& panels,
               int panel_width = 420, int panel_height = 340);

} // namespace lab
