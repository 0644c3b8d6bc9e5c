#pragma once

#include <map>
#include <utility>
#include <vector>

#include "planorth/precision.hpp"

namespace planorth {

/** Nodes and weights on (-1, 1), ascending nodes. */
struct GLRule {
    int order = 0;
    std::vector<Real> nodes;
    std::vector<Real> weights;
};

namespace detail {

/** P_q(x) and P_q'(x) by the three-term recurrence. */
inline std::pair<Real, Real> legendre_pd(int q, const Real& x) {
    Real p0(1), p1 = x;
    if (q == 0) return {p0, Real(0)};
    for (int k = 2; k <= q; ++k) {
        const Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    const Real d = q * (x * p1 - p0) / (x * x - 1);
    return {p1, d};
}

}  // namespace detail

/**
 * Gauss-Legendre rule of the given order at ambient precision: Newton on
 * P_q from the Abramowitz-Stegun cosine estimates (quadratically
 * convergent, a handful of iterations to full precision).  Rules are
 * cached per (order, precision in bits).
 */
inline const GLRule& gauss_legendre(int q) {
    static std::map<std::pair<int, int>, GLRule> cache;
    const int prec = static_cast<int>(Real::default_precision());
    const auto key = std::make_pair(q, prec);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    GLRule rule;
    rule.order = q;
    rule.nodes.resize(static_cast<std::size_t>(q));
    rule.weights.resize(static_cast<std::size_t>(q));
    const Real pi = const_pi();
    const Real tol = pow2(-precision_bits_of(pi) + 6);
    const int half = (q + 1) / 2;
    for (int i = 1; i <= half; ++i) {
        using boost::multiprecision::abs;
        using boost::multiprecision::cos;
        Real x = cos(pi * (Real(i) - Real(0.25)) / (Real(q) + Real(0.5)));
        Real step(1);
        for (int iter = 0; iter < 100 && abs(step) > tol; ++iter) {
            const auto [p, d] = detail::legendre_pd(q, x);
            step = p / d;
            x -= step;
        }
        const auto [p, d] = detail::legendre_pd(q, x);
        (void)p;
        const Real w = 2 / ((1 - x * x) * d * d);
        rule.nodes[static_cast<std::size_t>(i - 1)] = -x;
        rule.weights[static_cast<std::size_t>(i - 1)] = w;
        rule.nodes[static_cast<std::size_t>(q - i)] = x;
        rule.weights[static_cast<std::size_t>(q - i)] = w;
    }
    if (q % 2 == 1) rule.nodes[static_cast<std::size_t>(q / 2)] = Real(0);
    auto [pos, inserted] = cache.emplace(key, std::move(rule));
    (void)inserted;
    return pos->second;
}

}  // namespace planorth
