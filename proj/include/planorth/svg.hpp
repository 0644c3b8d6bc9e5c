#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "planorth/geometry.hpp"

namespace planorth {

/**
 * Deterministic scatter-plot renderer (SVG 1.1).  Dot positions are rounded
 * to 1e-6 pixels; anything needing full precision belongs in the CSV, not
 * here.  Layout: 600 x 600 canvas, 20 px margin, isotropic data mapping.
 */
struct SvgScatter {
    struct Series {
        std::vector<Complex> pts;
        std::string color;  // empty: pick from the default palette
        std::string label;
    };
    struct RefCircle {
        Complex center;
        Real radius;
    };
    std::vector<Series> series;
    std::vector<Region> outlines;
    std::vector<Curve> curve_outlines;
    std::vector<RefCircle> ref_circles;  // drawn dashed
    std::string title;
};

namespace detail {

inline const char* kPalette[3] = {"#000000", "#c02020", "#2040c0"};

inline std::string fmt6(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

struct PixelMap {
    double xmid = 0, ymid = 0, scale = 1;
    static constexpr double kW = 600, kH = 600, kMargin = 20;

    double px(const Complex& z) const {
        return kW / 2 + (static_cast<double>(z.re) - xmid) * scale;
    }
    double py(const Complex& z) const {
        return kH / 2 - (static_cast<double>(z.im) - ymid) * scale;
    }
};

struct DataExtent {
    double xlo = 0, xhi = 0, ylo = 0, yhi = 0;
    bool any = false;
    void add(double x, double y) {
        if (!any) {
            xlo = xhi = x;
            ylo = yhi = y;
            any = true;
            return;
        }
        xlo = (std::min)(xlo, x);
        xhi = (std::max)(xhi, x);
        ylo = (std::min)(ylo, y);
        yhi = (std::max)(yhi, y);
    }
    void add(const Complex& z) {
        add(static_cast<double>(z.re), static_cast<double>(z.im));
    }
    void add(const BBox& b) {
        add(static_cast<double>(b.xlo), static_cast<double>(b.ylo));
        add(static_cast<double>(b.xhi), static_cast<double>(b.yhi));
    }
};

/** Closed outline loops of a region, for drawing only. */
inline void outline_loops(const Region& g, int arc_samples,
                          std::vector<std::vector<Complex>>& out);

inline std::vector<Complex> circle_loop(const Complex& c, const Real& r,
                                        int k) {
    std::vector<Complex> loop;
    const Real pi = const_pi();
    for (int i = 0; i < k; ++i)
        loop.push_back(c + polar(r, 2 * pi * i / k));
    return loop;
}

inline void outline_loops(const Region& g, int arc_samples,
                          std::vector<std::vector<Complex>>& out) {
    if (const auto* d = std::get_if<Disk>(&g.v)) {
        out.push_back(circle_loop(d->center, d->radius, arc_samples));
    } else if (const auto* s = std::get_if<SectorR>(&g.v)) {
        std::vector<Complex> loop{s->center};
        const Real pi = const_pi();
        for (int i = 0; i <= arc_samples; ++i) {
            const Real t =
                s->a0_pi + (s->a1_pi - s->a0_pi) * i / arc_samples;
            loop.push_back(s->center + polar(s->radius, t * pi));
        }
        out.push_back(std::move(loop));
    } else if (const auto* p = std::get_if<PolygonR>(&g.v)) {
        out.push_back(p->v);
    } else {
        for (const auto& part : std::get<RegionUnion>(g.v).parts)
            outline_loops(part, arc_samples, out);
    }
}

inline void curve_loops(const Curve& c, int arc_samples,
                        std::vector<std::vector<Complex>>& out) {
    if (const auto* ci = std::get_if<CircleC>(&c.v)) {
        out.push_back(circle_loop(ci->center, ci->radius, arc_samples));
    } else if (const auto* e = std::get_if<EllipseC>(&c.v)) {
        std::vector<Complex> loop;
        const Real pi = const_pi();
        for (int i = 0; i < arc_samples; ++i) {
            const Real t = 2 * pi * i / arc_samples;
            loop.push_back(e->center + Complex(e->a * cos(t), e->b * sin(t)));
        }
        out.push_back(std::move(loop));
    } else {
        out.push_back(std::get<PolygonBoundaryC>(c.v).poly.v);
    }
}

inline std::string polygon_element(const std::vector<Complex>& loop,
                                   const PixelMap& m, const char* stroke,
                                   bool dashed) {
    std::string s = "<polygon points=\"";
    for (std::size_t i = 0; i < loop.size(); ++i) {
        if (i) s += ' ';
        s += fmt6(m.px(loop[i]));
        s += ',';
        s += fmt6(m.py(loop[i]));
    }
    s += "\" fill=\"none\" stroke=\"";
    s += stroke;
    s += "\" stroke-width=\"1\"";
    if (dashed) s += " stroke-dasharray=\"4 3\"";
    s += "/>\n";
    return s;
}

}  // namespace detail

inline std::string render_svg(const SvgScatter& plot) {
    using detail::fmt6;
    constexpr int kArcSamples = 128;

    std::vector<std::vector<Complex>> loops;
    for (const auto& g : plot.outlines)
        detail::outline_loops(g, kArcSamples, loops);
    std::vector<std::vector<Complex>> cloops;
    for (const auto& c : plot.curve_outlines)
        detail::curve_loops(c, kArcSamples, cloops);

    detail::DataExtent ext;
    for (const auto& s : plot.series)
        for (const auto& z : s.pts) ext.add(z);
    for (const auto& loop : loops)
        for (const auto& z : loop) ext.add(z);
    for (const auto& loop : cloops)
        for (const auto& z : loop) ext.add(z);
    for (const auto& rc : plot.ref_circles) {
        ext.add(rc.center + Complex(rc.radius, rc.radius));
        ext.add(rc.center - Complex(rc.radius, rc.radius));
    }
    if (!ext.any) ext.add(0.0, 0.0);

    detail::PixelMap m;
    m.xmid = (ext.xlo + ext.xhi) / 2;
    m.ymid = (ext.ylo + ext.yhi) / 2;
    const double span =
        (std::max)({ext.xhi - ext.xlo, ext.yhi - ext.ylo, 1e-9});
    m.scale = (detail::PixelMap::kW - 2 * detail::PixelMap::kMargin) /
              (span * 1.04);

    std::string svg =
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
        "width=\"600\" height=\"600\" viewBox=\"0 0 600 600\">\n"
        "<rect x=\"0\" y=\"0\" width=\"600\" height=\"600\" "
        "fill=\"#ffffff\"/>\n";

    // axes through the data origin when visible
    const double x0 = m.px(Complex(Real(0)));
    const double y0 = m.py(Complex(Real(0)));
    if (y0 > detail::PixelMap::kMargin &&
        y0 < detail::PixelMap::kH - detail::PixelMap::kMargin)
        svg += "<line x1=\"20\" y1=\"" + fmt6(y0) + "\" x2=\"580\" y2=\"" +
               fmt6(y0) + "\" stroke=\"#b0b0b0\" stroke-width=\"1\"/>\n";
    if (x0 > detail::PixelMap::kMargin &&
        x0 < detail::PixelMap::kW - detail::PixelMap::kMargin)
        svg += "<line x1=\"" + fmt6(x0) + "\" y1=\"20\" x2=\"" + fmt6(x0) +
               "\" y2=\"580\" stroke=\"#b0b0b0\" stroke-width=\"1\"/>\n";

    for (const auto& loop : loops)
        svg += detail::polygon_element(loop, m, "#606060", false);
    for (const auto& loop : cloops)
        svg += detail::polygon_element(loop, m, "#606060", false);
    for (const auto& rc : plot.ref_circles) {
        svg += "<circle cx=\"" + fmt6(m.px(rc.center)) + "\" cy=\"" +
               fmt6(m.py(rc.center)) + "\" r=\"" +
               fmt6(static_cast<double>(rc.radius) * m.scale) +
               "\" fill=\"none\" stroke=\"#808080\" stroke-width=\"1\" "
               "stroke-dasharray=\"4 3\"/>\n";
    }

    for (std::size_t k = 0; k < plot.series.size(); ++k) {
        const auto& s = plot.series[k];
        const std::string color =
            s.color.empty() ? detail::kPalette[k % 3] : s.color;
        for (const auto& z : s.pts)
            svg += "<circle cx=\"" + fmt6(m.px(z)) + "\" cy=\"" +
                   fmt6(m.py(z)) + "\" r=\"2\" fill=\"none\" stroke=\"" +
                   color + "\" stroke-width=\"1\"/>\n";
    }

    double ly = 36;
    for (std::size_t k = 0; k < plot.series.size(); ++k) {
        const auto& s = plot.series[k];
        if (s.label.empty()) continue;
        const std::string color =
            s.color.empty() ? detail::kPalette[k % 3] : s.color;
        svg += "<circle cx=\"30\" cy=\"" + fmt6(ly) +
               "\" r=\"3\" fill=\"" + color + "\" stroke=\"none\"/>\n";
        svg += "<text x=\"38\" y=\"" + fmt6(ly + 4) +
               "\" font-family=\"monospace\" font-size=\"12\" "
               "fill=\"#000000\">" +
               s.label + "</text>\n";
        ly += 18;
    }
    if (!plot.title.empty())
        svg += "<text x=\"300\" y=\"14\" text-anchor=\"middle\" "
               "font-family=\"monospace\" font-size=\"12\" "
               "fill=\"#000000\">" +
               plot.title + "</text>\n";
    svg += "</svg>\n";
    return svg;
}

}  // namespace planorth
