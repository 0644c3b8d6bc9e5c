#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "planorth/polynomial.hpp"

namespace planorth {

struct RootSolveResult {
    std::vector<Complex> roots;
    std::vector<Real> residuals;  // |p(root)| on the input polynomial
    int sweeps = 0;
};

namespace detail {

/** log2|x| via the MPFR exponent, safe far beyond double range. */
inline double log2_abs(const Complex& z) {
    const Real m = abs(z);
    if (m.is_zero()) return -1e18;
    long exp = 0;
    const double mant = mpfr_get_d_2exp(&exp, m.backend().data(), MPFR_RNDN);
    return static_cast<double>(exp) + std::log2(std::fabs(mant));
}

/**
 * Bini-style initial guesses: radii from the upper convex hull of
 * (k, log2|c_k|), each hull segment contributing its gap count of points
 * on the corresponding circle.  Offsets break rotational symmetry.
 */
inline std::vector<Complex> initial_guesses(const Polynomial& q,
                                            std::uint64_t seed) {
    const int d = q.degree();
    std::vector<int> idx;
    std::vector<double> lg;
    for (int k = 0; k <= d; ++k) {
        if (!q.c[static_cast<std::size_t>(k)].is_zero()) {
            idx.push_back(k);
            lg.push_back(log2_abs(q.c[static_cast<std::size_t>(k)]));
        }
    }
    // Upper convex hull, left to right.
    std::vector<int> hull;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        while (hull.size() >= 2) {
            const std::size_t a = static_cast<std::size_t>(hull[hull.size() - 2]);
            const std::size_t b = static_cast<std::size_t>(hull[hull.size() - 1]);
            const double cross = (lg[b] - lg[a]) * (idx[i] - idx[a]) -
                                 (lg[i] - lg[a]) * (idx[b] - idx[a]);
            if (cross <= 0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(static_cast<int>(i));
    }
    std::vector<Complex> guesses;
    guesses.reserve(static_cast<std::size_t>(d));
    const Real two_pi = 2 * const_pi();
    const double golden = 0.6180339887498949;
    for (std::size_t e = 0; e + 1 < hull.size(); ++e) {
        const std::size_t a = static_cast<std::size_t>(hull[e]);
        const std::size_t b = static_cast<std::size_t>(hull[e + 1]);
        const int m = idx[b] - idx[a];
        const double slope = (lg[b] - lg[a]) / m;
        double r2 = -slope;
        r2 = std::clamp(r2, -8000.0, 8000.0);
        const Real radius = boost::multiprecision::pow(Real(2), Real(r2));
        const double phase0 =
            0.5 + golden * static_cast<double>(e + 1) +
            golden * golden * static_cast<double>(seed % 1024);
        for (int j = 0; j < m; ++j) {
            const Real theta =
                two_pi * (Real(j) + Real(phase0)) / m;
            guesses.push_back(polar(radius, theta));
        }
    }
    return guesses;
}

}  // namespace detail

/**
 * All roots of p by the Aberth-Ehrlich simultaneous iteration with Newton
 * polishing, then residual certification on p itself:
 * |p(z_k)| <= root_tol * max_j |c_j| * max(1, |z_k|)^deg.
 * Exact zero coefficients at the low end deflate to exact origin roots.
 *
 * An iterate only counts as converged when its residual is small against
 * the local evaluation scale sum_j |c_j| |z|^j; a step-size test would
 * freeze stalled strays, and the global coefficient scale is useless when
 * every root sits deep inside the unit disk.  Near-coincident iterates are
 * kicked apart deterministically so no root of a simple cluster can be
 * claimed twice.  Throws NonConvergence if the sweep cap is reached or a
 * certificate fails.
 */
inline RootSolveResult poly_roots_certified(const Polynomial& p_in,
                                            const PrecisionContext& ctx,
                                            int max_sweeps = 600,
                                            std::uint64_t seed = 0) {
    PrecisionScope scope(ctx);
    Polynomial p = p_in;
    p.trim();
    require(p.degree() >= 1, ErrorCategory::config,
            "poly_roots: degree must be >= 1");
    require(!p.leading().is_zero(), ErrorCategory::config,
            "poly_roots: leading coefficient must be nonzero");

    const int d = p.degree();
    std::vector<Complex> roots;
    roots.reserve(static_cast<std::size_t>(d));

    // Deflate exact origin zeros.
    int k0 = 0;
    while (k0 < d && p.c[static_cast<std::size_t>(k0)].is_zero()) ++k0;
    for (int k = 0; k < k0; ++k) roots.emplace_back();

    int sweeps = 0;
    if (k0 < d) {
        Polynomial q(std::vector<Complex>(p.c.begin() + k0, p.c.end()));
        q = make_monic(q);
        const int dq = q.degree();
        std::vector<Complex> z = detail::initial_guesses(q, seed);
        std::vector<bool> done(static_cast<std::size_t>(dq), false);

        std::vector<Real> qabs;
        qabs.reserve(q.c.size());
        for (const auto& c : q.c) qabs.push_back(abs(c));
        const auto eval_scale = [&qabs](const Real& r) {
            Real s = qabs.back();
            for (std::size_t j = qabs.size() - 1; j-- > 0;)
                s = s * r + qabs[j];
            return s;
        };

        const Real tol_stop = Real(ctx.root_tol) / (4 * (dq + 1));
        const Real collide_eps = pow2(-ctx.bits / 3);
        const Real kick_mag = pow2(-ctx.bits / 8);
        const Real two_pi = 2 * const_pi();
        const Real golden("0.6180339887498948482045868343656381177");
        const auto kick = [&](int i) {
            const auto ui = static_cast<std::size_t>(i);
            z[ui] += polar((abs(z[ui]) + 1) * kick_mag, two_pi * golden * (i + 1));
        };

        int remaining = dq;
        for (; sweeps < max_sweeps && remaining > 0; ++sweeps) {
            for (int i = 0; i < dq; ++i) {
                const auto ui = static_cast<std::size_t>(i);
                if (done[ui]) continue;
                Complex repulsion{};
                Real nearest(-1);
                for (int j = 0; j < dq; ++j) {
                    if (j == i) continue;
                    const Complex diff = z[ui] - z[static_cast<std::size_t>(j)];
                    const Real dist = abs(diff);
                    if (nearest < 0 || dist < nearest) nearest = dist;
                    if (!dist.is_zero()) repulsion += conj(diff) / (dist * dist);
                }
                if (nearest >= 0 &&
                    nearest <= collide_eps * (abs(z[ui]) + 1)) {
                    kick(i);  // near-duplicate; separate before stepping
                    continue;
                }
                const auto [pv, dv] = eval_poly_derivative(q, z[ui]);
                if (abs(pv) <= tol_stop * eval_scale(abs(z[ui]))) {
                    done[ui] = true;
                    --remaining;
                    continue;
                }
                if (dv.is_zero()) {  // saddle; nudge deterministically
                    kick(i);
                    continue;
                }
                const Complex newton = pv / dv;
                const Complex denom = Complex(Real(1)) - newton * repulsion;
                const Complex w = denom.is_zero() ? newton : newton / denom;
                z[ui] -= w;
            }
        }
        if (remaining > 0)
            throw NonConvergence("poly_roots: Aberth sweep cap of " +
                                 std::to_string(max_sweeps) +
                                 " reached with " + std::to_string(remaining) +
                                 " roots unconverged");

        // Newton polishing at full precision.
        for (auto& zi : z) {
            for (int it = 0; it < 2; ++it) {
                const auto [pv, dv] = eval_poly_derivative(q, zi);
                if (dv.is_zero() || pv.is_zero()) break;
                zi -= pv / dv;
            }
        }
        roots.insert(roots.end(), z.begin(), z.end());
    }

    // Certify on the original polynomial.
    RootSolveResult result;
    result.sweeps = sweeps;
    result.roots = std::move(roots);
    result.residuals.reserve(result.roots.size());
    const Real maxc = max_coeff_abs(p);
    for (const auto& zk : result.roots) {
        const Real res = abs(eval_poly(p, zk));
        const Real bound =
            Real(ctx.root_tol) * maxc *
            boost::multiprecision::pow((std::max)(Real(1), abs(zk)), d);
        if (res > bound)
            throw NonConvergence(
                "poly_roots: residual certificate failed, |p(z)| = " +
                to_decimal(res) + " > " + to_decimal(bound));
        result.residuals.push_back(res);
    }
    return result;
}

/** Root list only; see poly_roots_certified for the certificate contract. */
inline std::vector<Complex> poly_roots(const Polynomial& p,
                                       const PrecisionContext& ctx,
                                       int max_sweeps = 600) {
    return poly_roots_certified(p, ctx, max_sweeps).roots;
}

}  // namespace planorth
