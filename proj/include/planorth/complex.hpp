#pragma once

#include <utility>

#include "planorth/precision.hpp"

namespace planorth {

/**
 * Complex number over the arbitrary-precision Real.  The environment ships
 * no MPC headers, so the handful of operations the library needs live here:
 * field arithmetic (Smith's division), conjugation, modulus, argument,
 * polar construction and an algebraic square root.
 */
struct Complex {
    Real re{0};
    Real im{0};

    Complex() = default;
    Complex(Real r) : re(std::move(r)) {}  // NOLINT: implicit real widening
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    Complex(int r) : re(r) {}  // NOLINT
    Complex(double r) : re(r) {}  // NOLINT

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    bool is_real() const { return im.is_zero(); }
};

inline Complex operator+(const Complex& a, const Complex& b) {
    return {a.re + b.re, a.im + b.im};
}
inline Complex operator-(const Complex& a, const Complex& b) {
    return {a.re - b.re, a.im - b.im};
}
inline Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
inline Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline Complex operator*(const Real& s, const Complex& a) {
    return {s * a.re, s * a.im};
}
inline Complex operator*(const Complex& a, const Real& s) { return s * a; }

inline Complex& operator+=(Complex& a, const Complex& b) {
    a.re += b.re;
    a.im += b.im;
    return a;
}
inline Complex& operator-=(Complex& a, const Complex& b) {
    a.re -= b.re;
    a.im -= b.im;
    return a;
}
inline Complex& operator*=(Complex& a, const Complex& b) {
    a = a * b;
    return a;
}

inline bool operator==(const Complex& a, const Complex& b) {
    return a.re == b.re && a.im == b.im;
}
inline bool operator!=(const Complex& a, const Complex& b) {
    return !(a == b);
}

inline Complex conj(const Complex& a) { return {a.re, -a.im}; }

/** Both components re-homed at the ambient default precision. */
inline Complex to_ambient(const Complex& a) {
    return {to_ambient(a.re), to_ambient(a.im)};
}

/** Squared modulus. */
inline Real norm(const Complex& a) { return a.re * a.re + a.im * a.im; }

inline Real abs(const Complex& a) {
    using boost::multiprecision::hypot;
    return hypot(a.re, a.im);
}

inline Real arg(const Complex& a) {
    using boost::multiprecision::atan2;
    return atan2(a.im, a.re);
}

inline Complex polar(const Real& r, const Real& theta) {
    using boost::multiprecision::cos;
    using boost::multiprecision::sin;
    return {r * cos(theta), r * sin(theta)};
}

/** Smith's algorithm; exponent range of MPFR makes scaling unnecessary. */
inline Complex operator/(const Complex& a, const Complex& b) {
    using boost::multiprecision::abs;
    if (b.im.is_zero()) return {a.re / b.re, a.im / b.re};
    if (b.re.is_zero()) return {a.im / b.im, -a.re / b.im};
    if (abs(b.re) >= abs(b.im)) {
        const Real t = b.im / b.re;
        const Real d = b.re + b.im * t;
        return {(a.re + a.im * t) / d, (a.im - a.re * t) / d};
    }
    const Real t = b.re / b.im;
    const Real d = b.re * t + b.im;
    return {(a.re * t + a.im) / d, (a.im * t - a.re) / d};
}
inline Complex operator/(const Complex& a, const Real& s) {
    return {a.re / s, a.im / s};
}
inline Complex& operator/=(Complex& a, const Complex& b) {
    a = a / b;
    return a;
}

/** Principal square root via the stable algebraic formula. */
inline Complex sqrt(const Complex& z) {
    using boost::multiprecision::abs;
    using boost::multiprecision::sqrt;
    if (z.is_zero()) return {};
    const Real m = planorth::abs(z);
    const Real w = sqrt((m + abs(z.re)) / 2);
    if (z.re >= 0) return {w, z.im / (2 * w)};
    Complex r{abs(z.im) / (2 * w), w};
    if (z.im < 0) r.im = -r.im;
    return r;
}

/** Integer power by repeated squaring (exact for exact inputs). */
inline Complex pow_int(const Complex& z, unsigned n) {
    Complex result{Real(1)};
    Complex base = z;
    while (n > 0) {
        if (n & 1u) result *= base;
        base *= base;
        n >>= 1u;
    }
    return result;
}

}  // namespace planorth
