#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "planorth/complex.hpp"

namespace planorth {

/**
 * Dense polynomial in one complex variable, coefficients in ascending
 * degree order.  The zero polynomial is the single coefficient {0}.  A
 * Polynomial flagged monic has leading coefficient exactly 1.
 */
struct Polynomial {
    std::vector<Complex> c{Complex{}};
    bool monic = false;

    Polynomial() = default;
    explicit Polynomial(std::vector<Complex> coeffs, bool is_monic = false)
        : c(std::move(coeffs)), monic(is_monic) {
        if (c.empty()) c.assign(1, Complex{});
    }

    int degree() const { return static_cast<int>(c.size()) - 1; }
    const Complex& leading() const { return c.back(); }
    bool is_zero() const { return c.size() == 1 && c[0].is_zero(); }

    /** Drop exactly-zero leading coefficients (keeps at least one). */
    void trim() {
        while (c.size() > 1 && c.back().is_zero()) c.pop_back();
    }
};

/** Horner evaluation. */
inline Complex eval_poly(const Polynomial& p, const Complex& z) {
    Complex acc = p.c.back();
    for (std::size_t i = p.c.size() - 1; i-- > 0;) acc = acc * z + p.c[i];
    return acc;
}

/** Horner evaluation of p and p' in one pass. */
inline std::pair<Complex, Complex> eval_poly_derivative(const Polynomial& p,
                                                        const Complex& z) {
    Complex v = p.c.back();
    Complex d{};
    for (std::size_t i = p.c.size() - 1; i-- > 0;) {
        d = d * z + v;
        v = v * z + p.c[i];
    }
    return {v, d};
}

inline Polynomial derivative(const Polynomial& p) {
    if (p.degree() == 0) return Polynomial{};
    std::vector<Complex> d(p.c.size() - 1);
    for (std::size_t k = 1; k < p.c.size(); ++k) d[k - 1] = Real(static_cast<int>(k)) * p.c[k];
    return Polynomial(std::move(d));
}

/** p(z) * z. */
inline Polynomial shift_up(const Polynomial& p) {
    std::vector<Complex> q(p.c.size() + 1);
    for (std::size_t k = 0; k < p.c.size(); ++k) q[k + 1] = p.c[k];
    return Polynomial(std::move(q));
}

/** Coefficient-wise conjugation, so eval(conj_coeffs(p), z) = conj(p(conj z)). */
inline Polynomial conj_coeffs(const Polynomial& p) {
    std::vector<Complex> q(p.c.size());
    for (std::size_t k = 0; k < p.c.size(); ++k) q[k] = conj(p.c[k]);
    return Polynomial(std::move(q), p.monic);
}

/** p scaled so the leading coefficient is exactly 1. */
inline Polynomial make_monic(const Polynomial& p) {
    std::vector<Complex> q(p.c.size());
    const Complex& lead = p.leading();
    for (std::size_t k = 0; k + 1 < p.c.size(); ++k) q[k] = p.c[k] / lead;
    q.back() = Complex{Real(1)};
    return Polynomial(std::move(q), true);
}

/**
 * Taylor shift: coefficients of q(x) = p(x + s), by in-place synthetic
 * division.  Exact up to rounding; used to move between expansion centers.
 */
inline Polynomial taylor_shift(const Polynomial& p, const Complex& s) {
    std::vector<Complex> a = p.c;
    const std::size_t d = a.size();
    for (std::size_t i = 0; i + 1 < d; ++i)
        for (std::size_t j = d - 1; j-- > i;) a[j] += s * a[j + 1];
    return Polynomial(std::move(a), p.monic);
}

inline Real max_coeff_abs(const Polynomial& p) {
    Real m(0);
    for (const auto& ck : p.c) m = (std::max)(m, abs(ck));
    return m;
}

}  // namespace planorth
