#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "planorth/hessenberg.hpp"
#include "planorth/orthopoly.hpp"
#include "planorth/roots.hpp"

namespace planorth {

struct ZeroSet {
    int degree = 0;
    std::vector<Complex> zeros;   // in original coordinates
    std::vector<Real> residuals;  // certified |p(z_k)| scaled residuals
    int bits = 0;
};

namespace detail {

/**
 * Greedy multiset matching: repeatedly pair the globally closest remaining
 * points and return the largest matched distance.  Quadratic storage, cubic
 * time; fine for the degrees this library targets.
 */
inline Real multiset_match_distance(const std::vector<Complex>& a,
                                    const std::vector<Complex>& b) {
    require(a.size() == b.size(), ErrorCategory::config,
            "multiset_match_distance: size mismatch");
    const std::size_t n = a.size();
    if (n == 0) return Real(0);
    std::vector<Real> d(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) d[i * n + j] = abs(a[i] - b[j]);
    std::vector<char> used_a(n, 0), used_b(n, 0);
    Real worst(0);
    for (std::size_t pass = 0; pass < n; ++pass) {
        std::size_t bi = n, bj = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (used_a[i]) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (used_b[j]) continue;
                if (bi == n || d[i * n + j] < d[bi * n + bj]) {
                    bi = i;
                    bj = j;
                }
            }
        }
        used_a[bi] = 1;
        used_b[bj] = 1;
        worst = (std::max)(worst, d[bi * n + bj]);
    }
    return worst;
}

/** Largest cluster multiplicity of a root multiset at resolution `res`. */
inline int max_cluster_size(const std::vector<Complex>& zs, const Real& res) {
    int best = 1;
    for (std::size_t i = 0; i < zs.size(); ++i) {
        int c = 1;
        for (std::size_t j = 0; j < zs.size(); ++j)
            if (j != i && abs(zs[i] - zs[j]) <= res) ++c;
        best = (std::max)(best, c);
    }
    return best;
}

}  // namespace detail

/**
 * Zeros of p_n via the companion-free route: root-find the monic shifted
 * polynomial, then translate back.  For n <= 40 the result is cross-checked
 * against the eigenvalues of the leading n x n Hessenberg section.  Simple
 * zeros must match within 10 * root_tol; a zero of multiplicity m only
 * determines the section's eigenvalues to O(eps^(1/m)), so clustered
 * multisets are matched at that weaker, multiplicity-aware resolution.
 */
inline ZeroSet zeros_of(const OrthoFamily& fam, int n, int max_sweeps = 600) {
    require(1 <= n && n <= fam.N, ErrorCategory::config,
            "zeros_of: need 1 <= n <= N");
    PrecisionScope scope(fam.ctx);
    Polynomial pw = fam.poly_w(n);
    const Complex lead = pw.c.back();
    for (auto& c : pw.c) c = c / lead;
    pw.monic = true;
    const RootSolveResult rs = poly_roots_certified(pw, fam.ctx, max_sweeps);
    ZeroSet out;
    out.degree = n;
    out.bits = fam.ctx.bits;
    out.residuals = rs.residuals;
    for (const auto& w : rs.roots) out.zeros.push_back(w + fam.center);
    if (n <= 40) {
        const ComplexMatrix h = hessenberg_section(fam, n);
        const std::vector<Complex> eig = hessenberg_section_eigen(h, fam.ctx);
        Real scale(1);
        for (const auto& z : out.zeros)
            scale = (std::max)(scale, abs(z - fam.center));
        const int mult =
            detail::max_cluster_size(rs.roots, pow2(-fam.ctx.bits / 4) * scale);
        Real tol = 10 * Real(fam.ctx.root_tol);
        if (mult > 1) {
            // defective-eigenvalue resolution: (scale * eps)^(1/m)
            using boost::multiprecision::pow;
            tol = (std::max)(
                tol, 8 * pow(scale * pow2(-fam.ctx.bits + 8), Real(1) / mult));
        }
        const Real got = detail::multiset_match_distance(out.zeros, eig);
        if (got > tol)
            throw IdentityViolated(
                "zeros_of: root/eigenvalue multisets disagree at n = " +
                std::to_string(n) + " (dist " + to_decimal(got) + ")");
    }
    return out;
}

/** All zeros inside the hull inflated by 2^(-bits/4); reports the worst gap. */
struct HullCheck {
    bool ok = true;
    Real worst{0};  // largest signed exterior distance over all zeros
};

inline HullCheck hull_check(const ZeroSet& zs, const Hull& hull) {
    HullCheck out;
    const Real tol = pow2(-zs.bits / 4);
    for (const auto& z : zs.zeros) {
        const Real d = hull.distance(z);
        out.worst = (std::max)(out.worst, d);
        if (d > tol) out.ok = false;
    }
    return out;
}

/**
 * The pair of points symmetric with respect to both the unit circle and the
 * circle |z - a| = rho (0 <= |a|, |a| + rho < 1), plus the modulus of the
 * annular image of the Moebius map phi(z) = (z - z1) / (1 - z / z2).
 * With B = 1 + a^2 - rho^2 the points solve a z^2 - B z + a = 0.
 */
struct InversePair {
    Real a{0};
    Real rho{0};
    Complex z1;  // inside the hole
    Complex z2;  // its circle-inverse; ignored when concentric
    Real module_r{0};
    bool concentric = false;
};

inline InversePair inverse_points(const Real& a_in, const Real& rho_in) {
    using boost::multiprecision::abs;
    using boost::multiprecision::sqrt;
    const Real a = to_ambient(a_in);
    const Real rho = to_ambient(rho_in);
    require(rho > 0, ErrorCategory::config,
            "inverse_points: hole radius must be positive");
    if (!(abs(a) + rho < 1))
        throw GeometryInvalid("inverse_points: hole not compactly inside disk");
    InversePair out;
    out.a = a;
    out.rho = rho;
    if (a == 0) {
        out.concentric = true;
        out.z1 = Complex(Real(0));
        out.z2 = Complex(Real(0));
        out.module_r = rho;
        return out;
    }
    const Real b = 1 + a * a - rho * rho;
    const Real disc = b * b - 4 * a * a;
    require(disc > 0, ErrorCategory::assertion,
            "inverse_points: discriminant not positive");
    // roots are q/a and a/q with q = (B + sqrt(disc))/2; product is 1
    const Real q = (b + sqrt(disc)) / 2;
    out.z1 = Complex(a / q);
    out.z2 = Complex(q / a);
    // evaluate |phi| at the hole's near-side boundary point a + rho
    const Complex w(a + rho);
    const Complex num = w - out.z1;
    const Complex den = Complex(Real(1)) - w / out.z2;
    out.module_r = abs((num / den).re);
    return out;
}

/** Same construction for a hole centered at complex c: rotate, solve, unrotate. */
inline InversePair inverse_points(const Complex& c, const Real& rho) {
    if (c.is_zero()) return inverse_points(Real(0), rho);
    const Real r = abs(c);
    InversePair p = inverse_points(r, rho);
    const Complex u = c / r;
    p.z1 = p.z1 * u;
    p.z2 = p.z2 * u;
    return p;
}

struct ZeroStats {
    Real moduli_median{0};
    Real moduli_mad{0};        // median absolute deviation of |z_k|
    Real ks_uniform_angle{0};  // KS distance of angles against uniform
    int excluded_small = 0;    // zeros with |z| < 1e-15 skipped for angles
    std::vector<Real> potentials;  // -(1/n) sum log|z - z_k| on the grid
};

namespace detail {

inline Real median_inplace(std::vector<Real>& v) {
    require(!v.empty(), ErrorCategory::config, "median of empty set");
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    if (n % 2 == 1) return v[n / 2];
    return (v[n / 2 - 1] + v[n / 2]) / 2;
}

}  // namespace detail

/** Radial and angular distribution summary plus log-potential samples. */
inline ZeroStats zero_stats(const ZeroSet& zs, const PrecisionContext& ctx,
                            const std::vector<Complex>& grid = {}) {
    PrecisionScope scope(ctx);
    using boost::multiprecision::abs;
    using boost::multiprecision::log;
    require(!zs.zeros.empty(), ErrorCategory::config, "zero_stats: no zeros");
    ZeroStats out;
    std::vector<Complex> pts;
    pts.reserve(zs.zeros.size());
    for (const auto& z : zs.zeros) pts.push_back(to_ambient(z));
    std::vector<Real> moduli;
    for (const auto& z : pts) moduli.push_back(planorth::abs(z));
    std::vector<Real> tmp = moduli;
    out.moduli_median = detail::median_inplace(tmp);
    std::vector<Real> dev;
    for (const auto& m : moduli) dev.push_back(abs(m - out.moduli_median));
    out.moduli_mad = detail::median_inplace(dev);

    const Real small = real_from_string("1e-15");
    std::vector<Real> u;  // angles mapped to [0, 1)
    const Real pi = const_pi();
    for (const auto& z : pts) {
        if (planorth::abs(z) < small) {
            ++out.excluded_small;
            continue;
        }
        u.push_back((arg(z) + pi) / (2 * pi));
    }
    if (!u.empty()) {
        std::sort(u.begin(), u.end());
        const Real m(static_cast<int>(u.size()));
        Real d(0);
        for (std::size_t i = 0; i < u.size(); ++i) {
            const Real hi = Real(static_cast<int>(i) + 1) / m - u[i];
            const Real lo = u[i] - Real(static_cast<int>(i)) / m;
            d = (std::max)(d, (std::max)(hi, lo));
        }
        out.ks_uniform_angle = d;
    }

    for (const auto& g_in : grid) {
        const Complex g = to_ambient(g_in);
        Real acc(0);
        for (const auto& z : pts) {
            const Real dist = planorth::abs(g - z);
            if (dist.is_zero())
                throw PotentialAtZero(
                    "zero_stats: potential grid point hits a zero");
            acc += log(dist);
        }
        out.potentials.push_back(-acc / zs.degree);
    }
    return out;
}

/**
 * Compare the discrete log-potential of the zero counting measure against
 * the equilibrium potential of the circle |z| = rho0, namely
 * -log max(|z|, rho0); returns the largest absolute gap over the grid.
 */
inline Real equilibrium_circle_compare(const ZeroSet& zs, const Real& rho0,
                                       const std::vector<Complex>& grid,
                                       const PrecisionContext& ctx) {
    PrecisionScope scope(ctx);
    using boost::multiprecision::abs;
    using boost::multiprecision::log;
    require(rho0 > 0, ErrorCategory::config,
            "equilibrium_circle_compare: rho0 must be positive");
    require(!grid.empty(), ErrorCategory::config,
            "equilibrium_circle_compare: empty grid");
    const ZeroStats st = zero_stats(zs, ctx, grid);
    const Real rho_a = to_ambient(rho0);
    Real worst(0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Real big = (std::max)(planorth::abs(to_ambient(grid[i])), rho_a);
        const Real ref = -log(big);
        worst = (std::max)(worst, abs(st.potentials[i] - ref));
    }
    return worst;
}

}  // namespace planorth
