#pragma once

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "planorth/gauss_legendre.hpp"
#include "planorth/geometry.hpp"
#include "planorth/polynomial.hpp"

namespace planorth {

/**
 * Measure expressions: planar area measure on a region, arclength measure
 * on a curve, point masses, positive scalings, finite sums, and the
 * lake difference A|_{G \ K}.  Moments c_{m,n} = int z^m conj(z)^n dmu
 * come from closed forms (disk, sector, circle, atom) or exact-degree
 * Gauss-Legendre quadrature (polygon via Green's identity, polygon
 * boundary), with order-doubling quadrature only for ellipse arclength.
 */

struct MeasureExpr;

struct AreaM {
    Region region;
};

struct ArclengthM {
    Curve curve;
};

struct AtomM {
    Complex point;
    Real mass;
};

struct ScaledM {
    Real weight;
    std::shared_ptr<const MeasureExpr> inner;
};

struct SumM {
    std::vector<MeasureExpr> terms;
};

/** Area measure of outer minus area measure of the lake inside it. */
struct LakeDiffM {
    Region outer;
    Region lake;
};

struct MeasureExpr {
    std::variant<AreaM, ArclengthM, AtomM, ScaledM, SumM, LakeDiffM> v;
};

/** Deep copy with every scalar re-homed at the ambient default precision. */
inline MeasureExpr to_ambient(const MeasureExpr& m) {
    if (const auto* a = std::get_if<AreaM>(&m.v))
        return {AreaM{to_ambient(a->region)}};
    if (const auto* c = std::get_if<ArclengthM>(&m.v))
        return {ArclengthM{to_ambient(c->curve)}};
    if (const auto* at = std::get_if<AtomM>(&m.v))
        return {AtomM{to_ambient(at->point), to_ambient(at->mass)}};
    if (const auto* sc = std::get_if<ScaledM>(&m.v))
        return {ScaledM{to_ambient(sc->weight),
                        std::make_shared<const MeasureExpr>(
                            to_ambient(*sc->inner))}};
    if (const auto* su = std::get_if<SumM>(&m.v)) {
        SumM out;
        out.terms.reserve(su->terms.size());
        for (const auto& t : su->terms) out.terms.push_back(to_ambient(t));
        return {std::move(out)};
    }
    const auto& lk = std::get<LakeDiffM>(m.v);
    return {LakeDiffM{to_ambient(lk.outer), to_ambient(lk.lake)}};
}

inline constexpr int kDefaultMomentCap = 200;

/** Hermitian table of c_{m,n} for 0 <= m, n <= N. */
struct MomentTable {
    int N = 0;
    std::vector<Complex> c;

    explicit MomentTable(int N_ = 0)
        : N(N_),
          c(static_cast<std::size_t>(N_ + 1) * static_cast<std::size_t>(N_ + 1)) {}
    Complex& at(int m, int n) {
        return c[static_cast<std::size_t>(m) * static_cast<std::size_t>(N + 1) +
                 static_cast<std::size_t>(n)];
    }
    const Complex& at(int m, int n) const {
        return c[static_cast<std::size_t>(m) * static_cast<std::size_t>(N + 1) +
                 static_cast<std::size_t>(n)];
    }
};

/* ---------- factories ---------- */

inline MeasureExpr measure_area(Region r) { return {AreaM{std::move(r)}}; }

inline MeasureExpr measure_arclength(Curve c) {
    return {ArclengthM{std::move(c)}};
}

inline MeasureExpr measure_atom(const Complex& point, const Real& mass) {
    require(mass > 0, ErrorCategory::config, "Atom: mass must be positive");
    return {AtomM{point, mass}};
}

inline MeasureExpr measure_scaled(const Real& weight, MeasureExpr inner) {
    require(weight > 0, ErrorCategory::config,
            "Scaled: weight must be positive");
    return {ScaledM{weight,
                    std::make_shared<const MeasureExpr>(std::move(inner))}};
}

inline MeasureExpr measure_sum(std::vector<MeasureExpr> terms) {
    require(!terms.empty(), ErrorCategory::config,
            "Sum: needs at least one term");
    return {SumM{std::move(terms)}};
}

inline MeasureExpr measure_lake(Region outer, Region lake,
                                const Real& margin = Real("1e-6")) {
    if (!validate_lake(outer, lake, margin))
        throw InvalidLake(
            "lake closure must sit inside the interior of the outer region");
    return {LakeDiffM{std::move(outer), std::move(lake)}};
}

/* ---------- support helpers ---------- */

inline BBox support_bbox(const MeasureExpr& mu) {
    return std::visit(
        [&](const auto& m) -> BBox {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, AreaM>) {
                return bbox(m.region);
            } else if constexpr (std::is_same_v<T, ArclengthM>) {
                return curve_bbox(m.curve);
            } else if constexpr (std::is_same_v<T, AtomM>) {
                return {m.point.re, m.point.re, m.point.im, m.point.im};
            } else if constexpr (std::is_same_v<T, ScaledM>) {
                return support_bbox(*m.inner);
            } else if constexpr (std::is_same_v<T, SumM>) {
                BBox b = support_bbox(m.terms[0]);
                for (std::size_t i = 1; i < m.terms.size(); ++i)
                    b.merge(support_bbox(m.terms[i]));
                return b;
            } else {
                return bbox(m.outer);
            }
        },
        mu.v);
}

inline void support_samples(const MeasureExpr& mu, int k,
                            std::vector<Complex>& out) {
    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, AreaM>) {
                boundary_samples(m.region, k, out);
            } else if constexpr (std::is_same_v<T, ArclengthM>) {
                curve_samples(m.curve, k, out);
            } else if constexpr (std::is_same_v<T, AtomM>) {
                out.push_back(m.point);
            } else if constexpr (std::is_same_v<T, ScaledM>) {
                support_samples(*m.inner, k, out);
            } else if constexpr (std::is_same_v<T, SumM>) {
                for (const auto& t : m.terms) support_samples(t, k, out);
            } else {
                boundary_samples(m.outer, k, out);
            }
        },
        mu.v);
}

/** Convex hull of the support; exact disk when the support is one disk. */
inline Hull support_hull(const MeasureExpr& mu,
                         int samples_per_component = 512) {
    const MeasureExpr* cur = &mu;
    while (true) {
        if (const auto* s = std::get_if<ScaledM>(&cur->v)) {
            cur = s->inner.get();
            continue;
        }
        break;
    }
    if (const auto* a = std::get_if<AreaM>(&cur->v)) {
        if (std::holds_alternative<Disk>(a->region.v))
            return convex_hull(a->region, samples_per_component);
    }
    if (const auto* l = std::get_if<LakeDiffM>(&cur->v)) {
        if (std::holds_alternative<Disk>(l->outer.v))
            return convex_hull(l->outer, samples_per_component);
    }
    std::vector<Complex> pts;
    support_samples(mu, samples_per_component, pts);
    return convex_hull_of_points(std::move(pts));
}

inline bool is_purely_atomic(const MeasureExpr& mu) {
    return std::visit(
        [&](const auto& m) -> bool {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, AtomM>) {
                return true;
            } else if constexpr (std::is_same_v<T, ScaledM>) {
                return is_purely_atomic(*m.inner);
            } else if constexpr (std::is_same_v<T, SumM>) {
                for (const auto& t : m.terms)
                    if (!is_purely_atomic(t)) return false;
                return true;
            } else {
                return false;
            }
        },
        mu.v);
}

inline MeasureExpr translate_measure(const MeasureExpr& mu, const Complex& d) {
    return std::visit(
        [&](const auto& m) -> MeasureExpr {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, AreaM>) {
                return {AreaM{translate(m.region, d)}};
            } else if constexpr (std::is_same_v<T, ArclengthM>) {
                return {ArclengthM{translate(m.curve, d)}};
            } else if constexpr (std::is_same_v<T, AtomM>) {
                return {AtomM{m.point + d, m.mass}};
            } else if constexpr (std::is_same_v<T, ScaledM>) {
                return {ScaledM{m.weight, std::make_shared<const MeasureExpr>(
                                              translate_measure(*m.inner, d))}};
            } else if constexpr (std::is_same_v<T, SumM>) {
                SumM s;
                s.terms.reserve(m.terms.size());
                for (const auto& t : m.terms)
                    s.terms.push_back(translate_measure(t, d));
                return {std::move(s)};
            } else {
                return {LakeDiffM{translate(m.outer, d), translate(m.lake, d)}};
            }
        },
        mu.v);
}

/* ---------- closed-form moments ---------- */

namespace detail {

inline std::vector<Real> binomial_row(int m) {
    std::vector<Real> row(static_cast<std::size_t>(m) + 1);
    row[0] = Real(1);
    for (int j = 0; j < m; ++j)
        row[static_cast<std::size_t>(j) + 1] =
            row[static_cast<std::size_t>(j)] * (m - j) / (j + 1);
    return row;
}

inline std::vector<Complex> power_list(const Complex& z, int top) {
    std::vector<Complex> p(static_cast<std::size_t>(top) + 1);
    p[0] = Complex{Real(1)};
    for (int i = 1; i <= top; ++i)
        p[static_cast<std::size_t>(i)] = p[static_cast<std::size_t>(i) - 1] * z;
    return p;
}

/** Disk area moment; exact Kronecker delta for a centered disk. */
inline Complex disk_moment(const Disk& d, int m, int n) {
    const Real pi = const_pi();
    if (d.center.is_zero()) {
        if (m != n) return {};
        return Complex(pi * boost::multiprecision::pow(d.radius, 2 * n + 2) /
                       (n + 1));
    }
    const auto bm = binomial_row(m);
    const auto bn = binomial_row(n);
    const auto cp = power_list(d.center, m);
    const auto ccp = power_list(conj(d.center), n);
    Complex acc{};
    Real r2j = d.radius * d.radius;  // R^(2j+2) for j = 0
    const Real r2 = r2j;
    for (int j = 0; j <= (std::min)(m, n); ++j) {
        acc += (bm[static_cast<std::size_t>(j)] * bn[static_cast<std::size_t>(j)] *
                pi * r2j / (j + 1)) *
               (cp[static_cast<std::size_t>(m - j)] *
                ccp[static_cast<std::size_t>(n - j)]);
        r2j *= r2;
    }
    return acc;
}

/** Circle arclength moment; same binomial structure as the disk. */
inline Complex circle_moment(const CircleC& c, int m, int n) {
    const Real pi = const_pi();
    if (c.center.is_zero()) {
        if (m != n) return {};
        return Complex(2 * pi *
                       boost::multiprecision::pow(c.radius, 2 * n + 1));
    }
    const auto bm = binomial_row(m);
    const auto bn = binomial_row(n);
    const auto cp = power_list(c.center, m);
    const auto ccp = power_list(conj(c.center), n);
    Complex acc{};
    Real r2j = c.radius;  // R^(2j+1) for j = 0
    const Real r2 = c.radius * c.radius;
    for (int j = 0; j <= (std::min)(m, n); ++j) {
        acc += (bm[static_cast<std::size_t>(j)] * bn[static_cast<std::size_t>(j)] *
                2 * pi * r2j) *
               (cp[static_cast<std::size_t>(m - j)] *
                ccp[static_cast<std::size_t>(n - j)]);
        r2j *= r2;
    }
    return acc;
}

/** Origin-centered sector moment in closed form. */
inline Complex sector_origin_moment(const SectorR& s, int j, int k) {
    const Real pi = const_pi();
    const Real radial =
        boost::multiprecision::pow(s.radius, j + k + 2) / (j + k + 2);
    const int d = j - k;
    if (d == 0) return Complex(radial * (s.a1_pi - s.a0_pi) * pi);
    const Complex e1 = polar(Real(1), Real(d) * s.a1_pi * pi);
    const Complex e0 = polar(Real(1), Real(d) * s.a0_pi * pi);
    return radial * ((e1 - e0) / Complex(Real(0), Real(d)));
}

inline Complex sector_moment(const SectorR& s, int m, int n) {
    if (s.center.is_zero()) return sector_origin_moment(s, m, n);
    const SectorR at_origin{Complex{}, s.radius, s.a0_pi, s.a1_pi};
    const auto bm = binomial_row(m);
    const auto bn = binomial_row(n);
    const auto cp = power_list(s.center, m);
    const auto ccp = power_list(conj(s.center), n);
    Complex acc{};
    for (int j = 0; j <= m; ++j) {
        for (int k = 0; k <= n; ++k) {
            acc += (bm[static_cast<std::size_t>(j)] *
                    bn[static_cast<std::size_t>(k)]) *
                   (cp[static_cast<std::size_t>(m - j)] *
                    ccp[static_cast<std::size_t>(n - k)] *
                    sector_origin_moment(at_origin, j, k));
        }
    }
    return acc;
}

/**
 * Polygon area moment by Green's identity,
 * c_{m,n} = (1 / (2i(n+1))) sum_edges int z^m conj(z)^(n+1) dz,
 * with a Gauss-Legendre rule exact for the edge-restricted integrand.
 */
inline Complex polygon_moment(const PolygonR& p, int m, int n) {
    const int q = (m + n + 2 + 1) / 2 + 1;  // ceil((m+n+2)/2)+1
    const auto& rule = gauss_legendre(q);
    Complex acc{};
    const std::size_t e = p.v.size();
    for (std::size_t i = 0; i < e; ++i) {
        const Complex& a = p.v[i];
        const Complex& b = p.v[(i + 1) % e];
        const Complex dz = (b - a) * Real(0.5);  // dt maps [-1,1] -> edge
        Complex edge{};
        for (int g = 0; g < rule.order; ++g) {
            const Complex z =
                (a + b) * Real(0.5) +
                rule.nodes[static_cast<std::size_t>(g)] * (b - a) * Real(0.5);
            edge += rule.weights[static_cast<std::size_t>(g)] *
                    (pow_int(z, static_cast<unsigned>(m)) *
                     pow_int(conj(z), static_cast<unsigned>(n + 1)));
        }
        acc += edge * dz;
    }
    return acc / Complex(Real(0), Real(2 * (n + 1)));
}

/** Polygon-boundary arclength moment, per-edge exact-degree quadrature. */
inline Complex polygon_boundary_moment(const PolygonR& p, int m, int n) {
    const int q = (m + n + 1 + 1) / 2 + 1;
    const auto& rule = gauss_legendre(q);
    Complex acc{};
    const std::size_t e = p.v.size();
    for (std::size_t i = 0; i < e; ++i) {
        const Complex& a = p.v[i];
        const Complex& b = p.v[(i + 1) % e];
        const Real half_len = abs(b - a) * Real(0.5);
        Complex edge{};
        for (int g = 0; g < rule.order; ++g) {
            const Complex z =
                (a + b) * Real(0.5) +
                rule.nodes[static_cast<std::size_t>(g)] * (b - a) * Real(0.5);
            edge += rule.weights[static_cast<std::size_t>(g)] *
                    (pow_int(z, static_cast<unsigned>(m)) *
                     pow_int(conj(z), static_cast<unsigned>(n)));
        }
        acc += edge * half_len;
    }
    return acc;
}

/** One ellipse-arclength quadrature pass at the given order. */
inline Complex ellipse_moment_at_order(const EllipseC& el, int m, int n,
                                       int q, Real* scale_out) {
    using boost::multiprecision::cos;
    using boost::multiprecision::sin;
    using boost::multiprecision::sqrt;
    const auto& rule = gauss_legendre(q);
    const Real pi = const_pi();
    Complex acc{};
    Real scale(0);
    for (int g = 0; g < rule.order; ++g) {
        const Real t = pi * (rule.nodes[static_cast<std::size_t>(g)] + 1);
        const Real ct = cos(t), st = sin(t);
        const Complex z = el.center + Complex(el.a * ct, el.b * st);
        const Real speed = sqrt(el.a * el.a * st * st + el.b * el.b * ct * ct);
        const Real w = rule.weights[static_cast<std::size_t>(g)] * pi * speed;
        acc += w * (pow_int(z, static_cast<unsigned>(m)) *
                    pow_int(conj(z), static_cast<unsigned>(n)));
        scale += w * boost::multiprecision::pow(abs(z), m + n);
    }
    if (scale_out) *scale_out = scale;
    return acc;
}

/** Order-doubling ellipse arclength moment. */
inline Complex ellipse_moment(const EllipseC& el, int m, int n, int bits) {
    const Real tol = pow2(-bits + 8);
    int q = 32;
    Real scale(0);
    Complex prev = ellipse_moment_at_order(el, m, n, q, &scale);
    for (q = 64; q <= (1 << 15); q *= 2) {
        const Complex cur = ellipse_moment_at_order(el, m, n, q, &scale);
        // scale bounds |cell| from above, so this is the natural floor for
        // cells that vanish by symmetry.
        if (abs(cur - prev) <= tol * scale) return cur;
        prev = cur;
    }
    throw QuadratureNonConvergence(
        "ellipse arclength moment did not stabilize by order 2^15");
}

}  // namespace detail

/* ---------- moment dispatch ---------- */

inline Complex moment(const MeasureExpr& mu, int m, int n,
                      const PrecisionContext& ctx,
                      int cap = kDefaultMomentCap);

namespace detail {

inline Complex region_moment(const Region& r, int m, int n, int bits) {
    return std::visit(
        [&](const auto& g) -> Complex {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, Disk>) {
                return disk_moment(g, m, n);
            } else if constexpr (std::is_same_v<T, SectorR>) {
                return sector_moment(g, m, n);
            } else if constexpr (std::is_same_v<T, PolygonR>) {
                return polygon_moment(g, m, n);
            } else {
                Complex acc{};
                for (const auto& part : g.parts)
                    acc += region_moment(part, m, n, bits);
                return acc;
            }
        },
        r.v);
}

inline Complex curve_moment(const Curve& c, int m, int n, int bits) {
    return std::visit(
        [&](const auto& g) -> Complex {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, CircleC>) {
                return circle_moment(g, m, n);
            } else if constexpr (std::is_same_v<T, EllipseC>) {
                return ellipse_moment(g, m, n, bits);
            } else {
                return polygon_boundary_moment(g.poly, m, n);
            }
        },
        c.v);
}

}  // namespace detail

/** Single moment c_{m,n}; prefer build_moment_table for whole families. */
inline Complex moment(const MeasureExpr& mu, int m, int n,
                      const PrecisionContext& ctx, int cap) {
    require(m >= 0 && n >= 0, ErrorCategory::config,
            "moment: orders must be nonnegative");
    if (m > cap || n > cap)
        throw CapacityExceeded("moment: order " +
                               std::to_string((std::max)(m, n)) +
                               " exceeds cap " + std::to_string(cap));
    PrecisionScope scope(ctx);
    return std::visit(
        [&](const auto& meas) -> Complex {
            using T = std::decay_t<decltype(meas)>;
            if constexpr (std::is_same_v<T, AreaM>) {
                return detail::region_moment(meas.region, m, n, ctx.bits);
            } else if constexpr (std::is_same_v<T, ArclengthM>) {
                return detail::curve_moment(meas.curve, m, n, ctx.bits);
            } else if constexpr (std::is_same_v<T, AtomM>) {
                return meas.mass *
                       (pow_int(meas.point, static_cast<unsigned>(m)) *
                        pow_int(conj(meas.point), static_cast<unsigned>(n)));
            } else if constexpr (std::is_same_v<T, ScaledM>) {
                return meas.weight * moment(*meas.inner, m, n, ctx, cap);
            } else if constexpr (std::is_same_v<T, SumM>) {
                Complex acc{};
                for (const auto& t : meas.terms)
                    acc += moment(t, m, n, ctx, cap);
                return acc;
            } else {
                return detail::region_moment(meas.outer, m, n, ctx.bits) -
                       detail::region_moment(meas.lake, m, n, ctx.bits);
            }
        },
        mu.v);
}

/* ---------- whole-table builders ---------- */

namespace detail {

inline void table_add(MomentTable& dst, const MomentTable& src,
                      const Real& weight) {
    for (std::size_t i = 0; i < dst.c.size(); ++i) dst.c[i] += weight * src.c[i];
}

inline void table_sub(MomentTable& dst, const MomentTable& src) {
    for (std::size_t i = 0; i < dst.c.size(); ++i) dst.c[i] -= src.c[i];
}

inline void hermitian_mirror(MomentTable& t) {
    for (int m = 0; m <= t.N; ++m)
        for (int n = m + 1; n <= t.N; ++n) t.at(m, n) = conj(t.at(n, m));
}

/**
 * Edge-quadrature power sums S[p][q] = sum_edges w_e sum_i w_i z^p conj(z)^q
 * shared by both polygon moment tables (w_e is dz/2 or |dz|/2).
 */
inline std::vector<std::vector<Complex>> polygon_power_sums(
    const PolygonR& poly, int P, int Q, bool arclength) {
    const int order = (std::max)(P + Q, 2) / 2 + 2;
    const auto& rule = gauss_legendre(order);
    std::vector<std::vector<Complex>> S(
        static_cast<std::size_t>(P) + 1,
        std::vector<Complex>(static_cast<std::size_t>(Q) + 1));
    const std::size_t e = poly.v.size();
    for (std::size_t i = 0; i < e; ++i) {
        const Complex& a = poly.v[i];
        const Complex& b = poly.v[(i + 1) % e];
        const Complex mid = (a + b) * Real(0.5);
        const Complex half = (b - a) * Real(0.5);
        const Complex we =
            arclength ? Complex(abs(half)) : half;
        for (int g = 0; g < rule.order; ++g) {
            const Complex z = mid + rule.nodes[static_cast<std::size_t>(g)] * half;
            const Complex zb = conj(z);
            const Complex w = rule.weights[static_cast<std::size_t>(g)] * we;
            Complex zp{Real(1)};
            for (int p = 0; p <= P; ++p) {
                Complex zq = w * zp;
                for (int q = 0; q <= Q; ++q) {
                    S[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] +=
                        zq;
                    zq *= zb;
                }
                zp *= z;
            }
        }
    }
    return S;
}

inline MomentTable region_table(const Region& r, int N, int bits);

inline MomentTable polygon_table(const PolygonR& poly, int N) {
    const auto S = polygon_power_sums(poly, N, N + 1, false);
    MomentTable t(N);
    for (int m = 0; m <= N; ++m)
        for (int n = 0; n <= m; ++n)
            t.at(m, n) = S[static_cast<std::size_t>(m)]
                          [static_cast<std::size_t>(n) + 1] /
                         Complex(Real(0), Real(2 * (n + 1)));
    hermitian_mirror(t);
    return t;
}

inline MomentTable sector_table(const SectorR& s, int N) {
    MomentTable t(N);
    if (s.center.is_zero()) {
        for (int m = 0; m <= N; ++m)
            for (int n = 0; n <= m; ++n)
                t.at(m, n) = sector_origin_moment(s, m, n);
        hermitian_mirror(t);
        return t;
    }
    const SectorR at_origin{Complex{}, s.radius, s.a0_pi, s.a1_pi};
    std::vector<std::vector<Complex>> M(
        static_cast<std::size_t>(N) + 1,
        std::vector<Complex>(static_cast<std::size_t>(N) + 1));
    for (int j = 0; j <= N; ++j)
        for (int k = 0; k <= N; ++k)
            M[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] =
                sector_origin_moment(at_origin, j, k);
    const auto cp = power_list(s.center, N);
    const auto ccp = power_list(conj(s.center), N);
    std::vector<std::vector<Real>> binom(static_cast<std::size_t>(N) + 1);
    for (int m = 0; m <= N; ++m)
        binom[static_cast<std::size_t>(m)] = binomial_row(m);
    for (int m = 0; m <= N; ++m) {
        for (int n = 0; n <= m; ++n) {
            Complex acc{};
            for (int j = 0; j <= m; ++j) {
                Complex inner{};
                for (int k = 0; k <= n; ++k) {
                    inner += binom[static_cast<std::size_t>(n)]
                                  [static_cast<std::size_t>(k)] *
                             (ccp[static_cast<std::size_t>(n - k)] *
                              M[static_cast<std::size_t>(j)]
                               [static_cast<std::size_t>(k)]);
                }
                acc += binom[static_cast<std::size_t>(m)]
                            [static_cast<std::size_t>(j)] *
                       (cp[static_cast<std::size_t>(m - j)] * inner);
            }
            t.at(m, n) = acc;
        }
    }
    hermitian_mirror(t);
    return t;
}

inline MomentTable disk_table(const Disk& d, int N) {
    MomentTable t(N);
    for (int m = 0; m <= N; ++m)
        for (int n = 0; n <= m; ++n) t.at(m, n) = disk_moment(d, m, n);
    hermitian_mirror(t);
    return t;
}

inline MomentTable region_table(const Region& r, int N, int bits) {
    return std::visit(
        [&](const auto& g) -> MomentTable {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, Disk>) {
                return disk_table(g, N);
            } else if constexpr (std::is_same_v<T, SectorR>) {
                return sector_table(g, N);
            } else if constexpr (std::is_same_v<T, PolygonR>) {
                return polygon_table(g, N);
            } else {
                MomentTable t = region_table(g.parts[0], N, bits);
                for (std::size_t i = 1; i < g.parts.size(); ++i)
                    table_add(t, region_table(g.parts[i], N, bits), Real(1));
                return t;
            }
        },
        r.v);
}

inline MomentTable ellipse_table(const EllipseC& el, int N, int bits) {
    using boost::multiprecision::cos;
    using boost::multiprecision::sin;
    using boost::multiprecision::sqrt;
    const Real pi = const_pi();
    const Real tol = pow2(-bits + 8);
    MomentTable prev(N);
    bool have_prev = false;
    for (int q = 64; q <= (1 << 15); q *= 2) {
        const auto& rule = gauss_legendre(q);
        MomentTable cur(N);
        std::vector<Real> scale(static_cast<std::size_t>(2 * N) + 1, Real(0));
        for (int g = 0; g < rule.order; ++g) {
            const Real t = pi * (rule.nodes[static_cast<std::size_t>(g)] + 1);
            const Real ct = cos(t), st = sin(t);
            const Complex z = el.center + Complex(el.a * ct, el.b * st);
            const Complex zb = conj(z);
            const Real w = rule.weights[static_cast<std::size_t>(g)] * pi *
                           sqrt(el.a * el.a * st * st + el.b * el.b * ct * ct);
            const Real az = abs(z);
            Real apow = w;
            for (int s = 0; s <= 2 * N; ++s) {
                scale[static_cast<std::size_t>(s)] += apow;
                apow *= az;
            }
            Complex zp{w};
            for (int m = 0; m <= N; ++m) {
                Complex cell = zp;
                for (int n = 0; n <= m; ++n) {
                    cur.at(m, n) += cell;
                    cell *= zb;
                }
                zp *= z;
            }
        }
        hermitian_mirror(cur);
        if (have_prev) {
            bool ok = true;
            for (int m = 0; m <= N && ok; ++m)
                for (int n = 0; n <= m && ok; ++n)
                    ok = abs(cur.at(m, n) - prev.at(m, n)) <=
                         tol * scale[static_cast<std::size_t>(m + n)];
            if (ok) return cur;
        }
        prev = std::move(cur);
        have_prev = true;
    }
    throw QuadratureNonConvergence(
        "ellipse arclength table did not stabilize by order 2^15");
}

inline MomentTable curve_table(const Curve& c, int N, int bits) {
    return std::visit(
        [&](const auto& g) -> MomentTable {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, CircleC>) {
                MomentTable t(N);
                for (int m = 0; m <= N; ++m)
                    for (int n = 0; n <= m; ++n)
                        t.at(m, n) = circle_moment(g, m, n);
                hermitian_mirror(t);
                return t;
            } else if constexpr (std::is_same_v<T, EllipseC>) {
                return ellipse_table(g, N, bits);
            } else {
                const auto S = polygon_power_sums(g.poly, N, N, true);
                MomentTable t(N);
                for (int m = 0; m <= N; ++m)
                    for (int n = 0; n <= m; ++n)
                        t.at(m, n) = S[static_cast<std::size_t>(m)]
                                      [static_cast<std::size_t>(n)];
                hermitian_mirror(t);
                return t;
            }
        },
        c.v);
}

inline MomentTable measure_table(const MeasureExpr& mu, int N, int bits) {
    return std::visit(
        [&](const auto& meas) -> MomentTable {
            using T = std::decay_t<decltype(meas)>;
            if constexpr (std::is_same_v<T, AreaM>) {
                return region_table(meas.region, N, bits);
            } else if constexpr (std::is_same_v<T, ArclengthM>) {
                return curve_table(meas.curve, N, bits);
            } else if constexpr (std::is_same_v<T, AtomM>) {
                MomentTable t(N);
                const auto zp = power_list(meas.point, N);
                for (int m = 0; m <= N; ++m)
                    for (int n = 0; n <= m; ++n)
                        t.at(m, n) = meas.mass *
                                     (zp[static_cast<std::size_t>(m)] *
                                      conj(zp[static_cast<std::size_t>(n)]));
                hermitian_mirror(t);
                return t;
            } else if constexpr (std::is_same_v<T, ScaledM>) {
                MomentTable t = measure_table(*meas.inner, N, bits);
                for (auto& cell : t.c) cell = meas.weight * cell;
                return t;
            } else if constexpr (std::is_same_v<T, SumM>) {
                MomentTable t = measure_table(meas.terms[0], N, bits);
                for (std::size_t i = 1; i < meas.terms.size(); ++i)
                    table_add(t, measure_table(meas.terms[i], N, bits),
                              Real(1));
                return t;
            } else {
                MomentTable t = region_table(meas.outer, N, bits);
                table_sub(t, region_table(meas.lake, N, bits));
                return t;
            }
        },
        mu.v);
}

}  // namespace detail

/**
 * Hermitian moment table for 0 <= m, n <= N.  Entries with m >= n are
 * computed, the rest mirrored, so Hermitian symmetry is bit-identical.
 * Positive-definiteness is implicitly checked by downstream factorization.
 */
inline MomentTable build_moment_table(const MeasureExpr& mu, int N,
                                      const PrecisionContext& ctx,
                                      int cap = kDefaultMomentCap) {
    require(N >= 0, ErrorCategory::config, "build_moment_table: N >= 0");
    if (N > cap)
        throw CapacityExceeded("build_moment_table: N = " + std::to_string(N) +
                               " exceeds cap " + std::to_string(cap));
    PrecisionScope scope(ctx);
    // Re-home inputs so values allocated at a lower construction-time
    // precision cannot drag intermediate results down with them.
    const MeasureExpr mu_a = to_ambient(mu);
    MomentTable t = detail::measure_table(mu_a, N, ctx.bits);
    if (!(t.at(0, 0).re > 0))
        throw NegativeSelfProduct("total mass c_{0,0} must be positive");
    return t;
}

/* ---------- quadratic forms over a table ---------- */

/** <p, q> against the table's measure. */
inline Complex inner_product(const Polynomial& p, const Polynomial& q,
                             const MomentTable& table) {
    if (p.degree() > table.N || q.degree() > table.N)
        throw CapacityExceeded(
            "inner_product: polynomial degree exceeds table size");
    Complex acc{};
    for (int s = 0; s <= p.degree(); ++s) {
        if (p.c[static_cast<std::size_t>(s)].is_zero()) continue;
        Complex row{};
        for (int t = 0; t <= q.degree(); ++t) {
            if (q.c[static_cast<std::size_t>(t)].is_zero()) continue;
            row += conj(q.c[static_cast<std::size_t>(t)]) * table.at(s, t);
        }
        acc += p.c[static_cast<std::size_t>(s)] * row;
    }
    return acc;
}

/** ||p|| in L2 of the table's measure; self-products must be real >= 0. */
inline Real norm(const Polynomial& p, const MomentTable& table) {
    const Complex v = inner_product(p, p, table);
    const Real one(1);
    const Real tol = pow2(-precision_bits_of(one) / 4);
    if (v.re < 0 && -v.re > tol)
        throw NegativeSelfProduct("<p,p> = " + to_decimal(v.re));
    if (abs(v.im) > tol * (std::max)(v.re, Real(1)))
        throw NegativeSelfProduct("<p,p> has imaginary part " +
                                  to_decimal(v.im));
    return boost::multiprecision::sqrt((std::max)(v.re, Real(0)));
}

}  // namespace planorth
