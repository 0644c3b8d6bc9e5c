#pragma once

#include <algorithm>
#include <string>
#include <variant>
#include <vector>

#include "planorth/complex.hpp"

namespace planorth {

/**
 * Planar geometry for measure supports: closed regions (disk, circular
 * sector, simple polygon, finite disjoint union), boundary curves (circle,
 * ellipse, polygon boundary) and convex hulls.  Containment tests treat
 * the boundary as inside up to a tolerance; angles are stored as exact
 * multiples of pi so sector arithmetic stays in closed form.
 */

struct BBox {
    Real xlo, xhi, ylo, yhi;
    void merge(const BBox& o) {
        xlo = (std::min)(xlo, o.xlo);
        xhi = (std::max)(xhi, o.xhi);
        ylo = (std::min)(ylo, o.ylo);
        yhi = (std::max)(yhi, o.yhi);
    }
    Complex center() const { return {(xlo + xhi) / 2, (ylo + yhi) / 2}; }
};

struct Disk {
    Complex center;
    Real radius;
};

/** Circular sector; angles in [a0_pi, a1_pi] are multiples of pi. */
struct SectorR {
    Complex center;
    Real radius;
    Real a0_pi;
    Real a1_pi;
};

/** Simple polygon, counterclockwise vertex order. */
struct PolygonR {
    std::vector<Complex> v;
};

struct Region;

/** Finite union with pairwise disjoint closures. */
struct RegionUnion {
    std::vector<Region> parts;
};

struct Region {
    std::variant<Disk, SectorR, PolygonR, RegionUnion> v;
};

struct CircleC {
    Complex center;
    Real radius;
};

/** Axis-aligned ellipse with semi-axes a (x) and b (y). */
struct EllipseC {
    Complex center;
    Real a;
    Real b;
};

struct PolygonBoundaryC {
    PolygonR poly;
};

struct Curve {
    std::variant<CircleC, EllipseC, PolygonBoundaryC> v;
};

/** Deep copy with every scalar re-homed at the ambient default precision. */
inline Region to_ambient(const Region& r) {
    if (const auto* d = std::get_if<Disk>(&r.v))
        return Region{Disk{to_ambient(d->center), to_ambient(d->radius)}};
    if (const auto* s = std::get_if<SectorR>(&r.v))
        return Region{SectorR{to_ambient(s->center), to_ambient(s->radius),
                              to_ambient(s->a0_pi), to_ambient(s->a1_pi)}};
    if (const auto* p = std::get_if<PolygonR>(&r.v)) {
        PolygonR out;
        out.v.reserve(p->v.size());
        for (const auto& z : p->v) out.v.push_back(to_ambient(z));
        return Region{std::move(out)};
    }
    const auto& u = std::get<RegionUnion>(r.v);
    RegionUnion out;
    out.parts.reserve(u.parts.size());
    for (const auto& part : u.parts) out.parts.push_back(to_ambient(part));
    return Region{std::move(out)};
}

inline Curve to_ambient(const Curve& c) {
    if (const auto* ci = std::get_if<CircleC>(&c.v))
        return Curve{CircleC{to_ambient(ci->center), to_ambient(ci->radius)}};
    if (const auto* e = std::get_if<EllipseC>(&c.v))
        return Curve{EllipseC{to_ambient(e->center), to_ambient(e->a),
                              to_ambient(e->b)}};
    const auto& pb = std::get<PolygonBoundaryC>(c.v);
    PolygonR poly;
    poly.v.reserve(pb.poly.v.size());
    for (const auto& z : pb.poly.v) poly.v.push_back(to_ambient(z));
    return Curve{PolygonBoundaryC{std::move(poly)}};
}

/** Boundary tolerance at ambient precision: 2^(-bits/2). */
inline Real default_boundary_tol() {
    const Real one(1);
    return pow2(-precision_bits_of(one) / 2);
}

namespace detail {

inline Real two_pi() { return 2 * const_pi(); }

inline Real point_segment_distance(const Complex& z, const Complex& a,
                                   const Complex& b) {
    const Complex ab = b - a;
    const Real len2 = norm(ab);
    if (len2.is_zero()) return abs(z - a);
    Real t = ((z.re - a.re) * ab.re + (z.im - a.im) * ab.im) / len2;
    t = (std::min)((std::max)(t, Real(0)), Real(1));
    return abs(z - (a + t * ab));
}

/** Positive for a left turn a->b->c. */
inline Real cross3(const Complex& a, const Complex& b, const Complex& c) {
    return (b.re - a.re) * (c.im - a.im) - (b.im - a.im) * (c.re - a.re);
}

inline Real polygon_signed_area(const PolygonR& p) {
    Real s(0);
    const std::size_t n = p.v.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Complex& a = p.v[i];
        const Complex& b = p.v[(i + 1) % n];
        s += a.re * b.im - a.im * b.re;
    }
    return s / 2;
}

inline bool segments_properly_intersect(const Complex& a, const Complex& b,
                                        const Complex& c, const Complex& d) {
    const Real d1 = cross3(c, d, a);
    const Real d2 = cross3(c, d, b);
    const Real d3 = cross3(a, b, c);
    const Real d4 = cross3(a, b, d);
    return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
           ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

inline bool polygon_is_simple(const PolygonR& p) {
    const std::size_t n = p.v.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool adjacent =
                (j == i + 1) || (i == 0 && j == n - 1);
            if (adjacent) continue;
            if (segments_properly_intersect(p.v[i], p.v[(i + 1) % n], p.v[j],
                                            p.v[(j + 1) % n]))
                return false;
        }
    }
    return true;
}

inline bool polygon_contains_strictish(const PolygonR& p, const Complex& z) {
    // Crossing parity; callers handle near-boundary points via distance.
    bool inside = false;
    const std::size_t n = p.v.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Complex& a = p.v[i];
        const Complex& b = p.v[(i + 1) % n];
        const bool above_a = a.im > z.im;
        const bool above_b = b.im > z.im;
        if (above_a != above_b) {
            const Real xint =
                a.re + (z.im - a.im) * (b.re - a.re) / (b.im - a.im);
            if (xint > z.re) inside = !inside;
        }
    }
    return inside;
}

inline Real polygon_boundary_distance(const PolygonR& p, const Complex& z) {
    Real best = abs(z - p.v[0]);
    const std::size_t n = p.v.size();
    for (std::size_t i = 0; i < n; ++i)
        best = (std::min)(best,
                          point_segment_distance(z, p.v[i], p.v[(i + 1) % n]));
    return best;
}

inline Real sector_boundary_distance(const SectorR& s, const Complex& z) {
    using boost::multiprecision::fmod;
    const Real pi = const_pi();
    const Complex zeta = z - s.center;
    const Complex e0 = polar(s.radius, s.a0_pi * pi);
    const Complex e1 = polar(s.radius, s.a1_pi * pi);
    Real best = point_segment_distance(z, s.center, s.center + e0);
    best = (std::min)(best,
                      point_segment_distance(z, s.center, s.center + e1));
    const Real r = abs(zeta);
    if (!r.is_zero()) {
        Real delta = fmod(arg(zeta) - s.a0_pi * pi, two_pi());
        if (delta < 0) delta += two_pi();
        if (delta <= (s.a1_pi - s.a0_pi) * pi) {
            using boost::multiprecision::abs;
            best = (std::min)(best, abs(r - s.radius));
        }
    }
    best = (std::min)(best, abs(zeta - e0));
    best = (std::min)(best, abs(zeta - e1));
    return best;
}

}  // namespace detail

inline BBox bbox(const Region& r);

inline Real distance_to_boundary(const Region& r, const Complex& z) {
    using boost::multiprecision::abs;
    return std::visit(
        [&](const auto& g) -> Real {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, Disk>) {
                return abs(planorth::abs(z - g.center) - g.radius);
            } else if constexpr (std::is_same_v<T, SectorR>) {
                return detail::sector_boundary_distance(g, z);
            } else if constexpr (std::is_same_v<T, PolygonR>) {
                return detail::polygon_boundary_distance(g, z);
            } else {
                Real best = distance_to_boundary(g.parts[0], z);
                for (std::size_t i = 1; i < g.parts.size(); ++i)
                    best = (std::min)(best,
                                      distance_to_boundary(g.parts[i], z));
                return best;
            }
        },
        r.v);
}

inline bool contains(const Region& r, const Complex& z, const Real& tol) {
    using boost::multiprecision::fmod;
    return std::visit(
        [&](const auto& g) -> bool {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, Disk>) {
                return planorth::abs(z - g.center) <= g.radius + tol;
            } else if constexpr (std::is_same_v<T, SectorR>) {
                const Real pi = const_pi();
                const Complex zeta = z - g.center;
                const Real rho = planorth::abs(zeta);
                if (rho > g.radius + tol) return false;
                if (rho <= tol) return true;
                Real delta = fmod(arg(zeta) - g.a0_pi * pi, detail::two_pi());
                if (delta < 0) delta += detail::two_pi();
                const Real slack = tol / (std::max)(rho, tol);
                return delta <= (g.a1_pi - g.a0_pi) * pi + slack ||
                       delta >= detail::two_pi() - slack;
            } else if constexpr (std::is_same_v<T, PolygonR>) {
                if (detail::polygon_boundary_distance(g, z) <= tol)
                    return true;
                return detail::polygon_contains_strictish(g, z);
            } else {
                for (const auto& part : g.parts)
                    if (contains(part, z, tol)) return true;
                return false;
            }
        },
        r.v);
}

inline bool contains(const Region& r, const Complex& z) {
    return contains(r, z, default_boundary_tol());
}

inline BBox bbox(const Region& r) {
    return std::visit(
        [&](const auto& g) -> BBox {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, Disk> ||
                          std::is_same_v<T, SectorR>) {
                return {g.center.re - g.radius, g.center.re + g.radius,
                        g.center.im - g.radius, g.center.im + g.radius};
            } else if constexpr (std::is_same_v<T, PolygonR>) {
                BBox b{g.v[0].re, g.v[0].re, g.v[0].im, g.v[0].im};
                for (const auto& p : g.v)
                    b.merge({p.re, p.re, p.im, p.im});
                return b;
            } else {
                BBox b = bbox(g.parts[0]);
                for (std::size_t i = 1; i < g.parts.size(); ++i)
                    b.merge(bbox(g.parts[i]));
                return b;
            }
        },
        r.v);
}

/** Roughly k points on the boundary of each primitive component. */
inline void boundary_samples(const Region& r, int k,
                             std::vector<Complex>& out) {
    std::visit(
        [&](const auto& g) {
            using T = std::decay_t<decltype(g)>;
            const Real pi = const_pi();
            if constexpr (std::is_same_v<T, Disk>) {
                for (int i = 0; i < k; ++i)
                    out.push_back(g.center +
                                  polar(g.radius, detail::two_pi() * i / k));
            } else if constexpr (std::is_same_v<T, SectorR>) {
                const int ka = (std::max)(2, k / 2);
                const int ke = (std::max)(2, k / 4);
                const Real t0 = g.a0_pi * pi;
                const Real t1 = g.a1_pi * pi;
                for (int i = 0; i <= ka; ++i)
                    out.push_back(
                        g.center +
                        polar(g.radius, t0 + (t1 - t0) * i / ka));
                for (int i = 0; i <= ke; ++i) {
                    const Real t = g.radius * i / ke;
                    out.push_back(g.center + polar(t, t0));
                    out.push_back(g.center + polar(t, t1));
                }
            } else if constexpr (std::is_same_v<T, PolygonR>) {
                const int per_edge =
                    (std::max)(1, k / static_cast<int>(g.v.size()));
                const std::size_t n = g.v.size();
                for (std::size_t i = 0; i < n; ++i) {
                    const Complex& a = g.v[i];
                    const Complex& b = g.v[(i + 1) % n];
                    for (int j = 0; j < per_edge; ++j)
                        out.push_back(a + (Real(j) / per_edge) * (b - a));
                }
            } else {
                for (const auto& part : g.parts)
                    boundary_samples(part, k, out);
            }
        },
        r.v);
}

inline void curve_samples(const Curve& c, int k, std::vector<Complex>& out) {
    std::visit(
        [&](const auto& g) {
            using T = std::decay_t<decltype(g)>;
            using boost::multiprecision::cos;
            using boost::multiprecision::sin;
            if constexpr (std::is_same_v<T, CircleC>) {
                for (int i = 0; i < k; ++i)
                    out.push_back(g.center +
                                  polar(g.radius, detail::two_pi() * i / k));
            } else if constexpr (std::is_same_v<T, EllipseC>) {
                for (int i = 0; i < k; ++i) {
                    const Real t = detail::two_pi() * i / k;
                    out.push_back(g.center + Complex(g.a * cos(t), g.b * sin(t)));
                }
            } else {
                boundary_samples(Region{g.poly}, k, out);
            }
        },
        c.v);
}

inline BBox curve_bbox(const Curve& c) {
    return std::visit(
        [&](const auto& g) -> BBox {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, CircleC>) {
                return {g.center.re - g.radius, g.center.re + g.radius,
                        g.center.im - g.radius, g.center.im + g.radius};
            } else if constexpr (std::is_same_v<T, EllipseC>) {
                return {g.center.re - g.a, g.center.re + g.a,
                        g.center.im - g.b, g.center.im + g.b};
            } else {
                return bbox(Region{g.poly});
            }
        },
        c.v);
}

inline Region translate(const Region& r, const Complex& d) {
    return std::visit(
        [&](const auto& g) -> Region {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, Disk>) {
                return Region{Disk{g.center + d, g.radius}};
            } else if constexpr (std::is_same_v<T, SectorR>) {
                return Region{SectorR{g.center + d, g.radius, g.a0_pi, g.a1_pi}};
            } else if constexpr (std::is_same_v<T, PolygonR>) {
                PolygonR p = g;
                for (auto& vert : p.v) vert += d;
                return Region{std::move(p)};
            } else {
                RegionUnion u;
                u.parts.reserve(g.parts.size());
                for (const auto& part : g.parts)
                    u.parts.push_back(translate(part, d));
                return Region{std::move(u)};
            }
        },
        r.v);
}

inline Curve translate(const Curve& c, const Complex& d) {
    return std::visit(
        [&](const auto& g) -> Curve {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, CircleC>) {
                return Curve{CircleC{g.center + d, g.radius}};
            } else if constexpr (std::is_same_v<T, EllipseC>) {
                return Curve{EllipseC{g.center + d, g.a, g.b}};
            } else {
                PolygonR p = g.poly;
                for (auto& vert : p.v) vert += d;
                return Curve{PolygonBoundaryC{std::move(p)}};
            }
        },
        c.v);
}

/** A representative interior point of a primitive region. */
inline Complex interior_point(const Region& r) {
    return std::visit(
        [&](const auto& g) -> Complex {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, Disk>) {
                return g.center;
            } else if constexpr (std::is_same_v<T, SectorR>) {
                const Real mid = (g.a0_pi + g.a1_pi) / 2 * const_pi();
                return g.center + polar(g.radius / 2, mid);
            } else if constexpr (std::is_same_v<T, PolygonR>) {
                Complex c{};
                for (const auto& p : g.v) c += p;
                c = c / Real(static_cast<int>(g.v.size()));
                if (detail::polygon_contains_strictish(g, c)) return c;
                // Fall back to points pulled inward from edge midpoints.
                const std::size_t n = g.v.size();
                for (std::size_t i = 0; i < n; ++i) {
                    const Complex a = g.v[i];
                    const Complex b = g.v[(i + 1) % n];
                    const Complex m = (a + b) * Real(0.5);
                    const Complex inward{-(b - a).im, (b - a).re};
                    for (int s = 4; s <= 12; s += 4) {
                        const Complex cand = m + pow2(-s) * inward;
                        if (detail::polygon_contains_strictish(g, cand))
                            return cand;
                    }
                }
                throw GeometryInvalid(
                    "interior_point: no interior point found for polygon");
            } else {
                return interior_point(g.parts[0]);
            }
        },
        r.v);
}

/** Factories validate the constraints the algorithms rely on. */
inline Region make_disk(const Complex& center, const Real& radius) {
    require(radius > 0, ErrorCategory::config,
            "Disk: radius must be positive");
    return Region{Disk{center, radius}};
}

inline Region make_sector(const Complex& center, const Real& radius,
                          const Real& a0_pi, const Real& a1_pi) {
    require(radius > 0, ErrorCategory::config,
            "Sector: radius must be positive");
    require(a1_pi > a0_pi && a1_pi - a0_pi <= 2, ErrorCategory::config,
            "Sector: opening must lie in (0, 2*pi]");
    return Region{SectorR{center, radius, a0_pi, a1_pi}};
}

inline Region make_polygon(std::vector<Complex> vertices) {
    require(vertices.size() >= 3, ErrorCategory::config,
            "Polygon: needs at least 3 vertices");
    PolygonR p{std::move(vertices)};
    if (detail::polygon_signed_area(p) <= 0)
        throw GeometryInvalid("Polygon: vertices must be counterclockwise");
    if (!detail::polygon_is_simple(p))
        throw GeometryInvalid("Polygon: edges must not cross");
    return Region{std::move(p)};
}

inline Region make_union(std::vector<Region> parts,
                         const Real& margin = Real("1e-6"),
                         int samples = 512) {
    require(!parts.empty(), ErrorCategory::config,
            "Union: needs at least one part");
    for (std::size_t i = 0; i < parts.size(); ++i) {
        for (std::size_t j = i + 1; j < parts.size(); ++j) {
            std::vector<Complex> si, sj;
            boundary_samples(parts[i], samples, si);
            boundary_samples(parts[j], samples, sj);
            for (const auto& z : si)
                if (distance_to_boundary(parts[j], z) < margin ||
                    contains(parts[j], z, Real(0)))
                    throw GeometryInvalid(
                        "Union: parts must have disjoint closures");
            for (const auto& z : sj)
                if (distance_to_boundary(parts[i], z) < margin ||
                    contains(parts[i], z, Real(0)))
                    throw GeometryInvalid(
                        "Union: parts must have disjoint closures");
            if (contains(parts[j], interior_point(parts[i]), Real(0)) ||
                contains(parts[i], interior_point(parts[j]), Real(0)))
                throw GeometryInvalid(
                    "Union: parts must have disjoint closures");
        }
    }
    return Region{RegionUnion{std::move(parts)}};
}

/**
 * True when the closure of k sits inside the interior of g with at least
 * the given margin, checked on boundary samples of both regions.
 */
inline bool validate_lake(const Region& g, const Region& k,
                          const Real& margin = Real("1e-6"),
                          int samples = 512) {
    std::vector<Complex> sk;
    boundary_samples(k, samples, sk);
    for (const auto& z : sk) {
        if (!contains(g, z, Real(0))) return false;
        if (distance_to_boundary(g, z) < margin) return false;
    }
    std::vector<Complex> sg;
    boundary_samples(g, samples, sg);
    for (const auto& z : sg)
        if (contains(k, z, Real(0)) || distance_to_boundary(k, z) < margin)
            return false;
    return true;
}

/** Convex hull of a support: exact disk for a single disk, else a polygon. */
struct Hull {
    bool is_disk = false;
    Complex center;
    Real radius{0};
    std::vector<Complex> pts;  // ccw

    bool contains(const Complex& z, const Real& tol) const {
        if (is_disk) return planorth::abs(z - center) <= radius + tol;
        const std::size_t n = pts.size();
        if (n == 1) return planorth::abs(z - pts[0]) <= tol;
        if (n == 2)
            return detail::point_segment_distance(z, pts[0], pts[1]) <= tol;
        for (std::size_t i = 0; i < n; ++i) {
            const Complex& a = pts[i];
            const Complex& b = pts[(i + 1) % n];
            const Real c = detail::cross3(a, b, z);
            const Real len = planorth::abs(b - a);
            if (len.is_zero()) continue;
            if (c < -tol * len) return false;  // signed distance below -tol
        }
        return true;
    }

    Real diameter() const {
        if (is_disk) return 2 * radius;
        Real best(0);
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j)
                best = (std::max)(best, planorth::abs(pts[i] - pts[j]));
        return best;
    }

    Real distance(const Complex& z) const {
        using boost::multiprecision::abs;
        if (is_disk) {
            const Real d = planorth::abs(z - center) - radius;
            return d > 0 ? d : Real(0);
        }
        if (contains(z, Real(0))) return Real(0);
        Real best = planorth::abs(z - pts[0]);
        const std::size_t n = pts.size();
        for (std::size_t i = 0; i < n; ++i)
            best = (std::min)(best, detail::point_segment_distance(
                                        z, pts[i], pts[(i + 1) % n]));
        return best;
    }
};

/** Andrew monotone chain over arbitrary points, ccw output. */
inline Hull convex_hull_of_points(std::vector<Complex> pts) {
    require(!pts.empty(), ErrorCategory::config,
            "convex_hull: needs at least one point");
    std::sort(pts.begin(), pts.end(), [](const Complex& a, const Complex& b) {
        return a.re < b.re || (a.re == b.re && a.im < b.im);
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    Hull h;
    if (pts.size() <= 2) {
        h.pts = std::move(pts);
        return h;
    }
    std::vector<Complex> hull(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {  // lower chain
        while (k >= 2 && detail::cross3(hull[k - 2], hull[k - 1], p) <= 0) --k;
        hull[k++] = p;
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = pts.size() - 1; i-- > 0;) {  // upper chain
        const Complex& p = pts[i];
        while (k >= lower &&
               detail::cross3(hull[k - 2], hull[k - 1], p) <= 0)
            --k;
        hull[k++] = p;
    }
    hull.resize(k - 1);
    h.pts = std::move(hull);
    return h;
}

/** Convex hull of a region from boundary samples (exact for one disk). */
inline Hull convex_hull(const Region& r, int samples_per_component = 512) {
    if (const auto* d = std::get_if<Disk>(&r.v)) {
        Hull h;
        h.is_disk = true;
        h.center = d->center;
        h.radius = d->radius;
        return h;
    }
    std::vector<Complex> pts;
    boundary_samples(r, samples_per_component, pts);
    return convex_hull_of_points(std::move(pts));
}

}  // namespace planorth
