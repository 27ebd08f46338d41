#pragma once

#include <cstdio>
#include <string>
#include <vector>

namespace lanpower::cli {

struct SvgCurve {
    std::string label;
    std::string color;
    bool dashed = false;
    std::vector<double> x;
    std::vector<double> y;
};

/// Minimal power-curve plot: axes, ticks, polylines, legend. The CSV is the
/// canonical output; this is just a quick look.
inline std::string power_plot_svg(const std::string& title,
                                  const std::vector<SvgCurve>& curves,
                                  double x_max) {
    const double w = 640, h = 480;
    const double ml = 60, mr = 20, mt = 40, mb = 50;
    const double pw = w - ml - mr, ph = h - mt - mb;
    auto sx = [&](double x) { return ml + pw * (x_max > 0 ? x / x_max : 0.0); };
    auto sy = [&](double y) { return mt + ph * (1.0 - y); };

    char buf[512];
    std::string out;
    std::snprintf(buf, sizeof(buf),
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%g\" "
                  "height=\"%g\" viewBox=\"0 0 %g %g\">\n",
                  w, h, w, h);
    out += buf;
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%g\" y=\"24\" font-family=\"sans-serif\" "
                  "font-size=\"16\" text-anchor=\"middle\">%s</text>\n",
                  ml + pw / 2, title.c_str());
    out += buf;

    // axes
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" "
                  "stroke=\"black\"/>\n<line x1=\"%g\" y1=\"%g\" x2=\"%g\" "
                  "y2=\"%g\" stroke=\"black\"/>\n",
                  ml, mt + ph, ml + pw, mt + ph, ml, mt, ml, mt + ph);
    out += buf;
    for (int i = 0; i <= 5; ++i) {
        double fy = i / 5.0;
        std::snprintf(buf, sizeof(buf),
                      "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" "
                      "stroke=\"black\"/>\n<text x=\"%g\" y=\"%g\" "
                      "font-family=\"sans-serif\" font-size=\"11\" "
                      "text-anchor=\"end\">%.1f</text>\n",
                      ml - 4, sy(fy), ml, sy(fy), ml - 8, sy(fy) + 4, fy);
        out += buf;
        double fx = x_max * i / 5.0;
        std::snprintf(buf, sizeof(buf),
                      "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" "
                      "stroke=\"black\"/>\n<text x=\"%g\" y=\"%g\" "
                      "font-family=\"sans-serif\" font-size=\"11\" "
                      "text-anchor=\"middle\">%.2g</text>\n",
                      sx(fx), mt + ph, sx(fx), mt + ph + 4, sx(fx), mt + ph + 18,
                      fx);
        out += buf;
    }
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%g\" y=\"%g\" font-family=\"sans-serif\" "
                  "font-size=\"13\" text-anchor=\"middle\">amplitude "
                  "a</text>\n<text x=\"18\" y=\"%g\" font-family=\"sans-serif\" "
                  "font-size=\"13\" text-anchor=\"middle\" "
                  "transform=\"rotate(-90 18 %g)\">rejection rate</text>\n",
                  ml + pw / 2, h - 10, mt + ph / 2, mt + ph / 2);
    out += buf;

    double ly = mt + 14;
    for (const SvgCurve& c : curves) {
        std::string pts;
        for (std::size_t i = 0; i < c.x.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%g,%g ", sx(c.x[i]), sy(c.y[i]));
            pts += buf;
        }
        std::snprintf(buf, sizeof(buf),
                      "<polyline points=\"%s\" fill=\"none\" stroke=\"%s\" "
                      "stroke-width=\"1.5\"%s/>\n",
                      pts.c_str(), c.color.c_str(),
                      c.dashed ? " stroke-dasharray=\"6,4\"" : "");
        out += buf;
        std::snprintf(buf, sizeof(buf),
                      "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" "
                      "stroke=\"%s\" stroke-width=\"1.5\"%s/>\n<text x=\"%g\" "
                      "y=\"%g\" font-family=\"sans-serif\" "
                      "font-size=\"12\">%s</text>\n",
                      ml + pw - 150, ly, ml + pw - 120, ly, c.color.c_str(),
                      c.dashed ? " stroke-dasharray=\"6,4\"" : "",
                      ml + pw - 112, ly + 4, c.label.c_str());
        out += buf;
        ly += 18;
    }
    out += "</svg>\n";
    return out;
}

}  // namespace lanpower::cli
