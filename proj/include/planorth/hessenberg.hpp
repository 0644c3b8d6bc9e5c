#pragma once

#include <string>
#include <vector>

#include "planorth/complex.hpp"

namespace planorth {

/** Dense complex matrix, row-major, just large enough for the QR oracle. */
struct ComplexMatrix {
    int n = 0;
    std::vector<Complex> a;

    explicit ComplexMatrix(int n_ = 0)
        : n(n_), a(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_)) {}
    Complex& at(int i, int j) {
        return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                 static_cast<std::size_t>(j)];
    }
    const Complex& at(int i, int j) const {
        return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                 static_cast<std::size_t>(j)];
    }
};

namespace detail {

struct Givens {
    Real c;     // real
    Complex s;  // complex
};

/** Rotation with [c, s; -conj(s), c] * [f; g] = [r; 0], c real. */
inline Givens make_givens(const Complex& f, const Complex& g) {
    using boost::multiprecision::sqrt;
    const Real nf = norm(f);
    const Real ng = norm(g);
    if (ng.is_zero()) return {Real(1), Complex{}};
    if (nf.is_zero()) return {Real(0), Complex{Real(1)}};
    const Real d = sqrt(nf + ng);
    const Real af = sqrt(nf);
    const Complex sgn = f / af;
    return {af / d, sgn * conj(g) / d};
}

}  // namespace detail

/**
 * Eigenvalues of a complex upper-Hessenberg matrix by the implicitly
 * shifted QR iteration (Wilkinson shifts, Givens rotations, bottom-up
 * deflation).  Unordered output.  Used as the structural cross-check for
 * polynomial zeros, so it shares nothing with the Aberth path.
 */
inline std::vector<Complex> hessenberg_section_eigen(ComplexMatrix H,
                                                     const PrecisionContext& ctx,
                                                     int max_iters_per_eig = 60) {
    PrecisionScope scope(ctx);
    const int n = H.n;
    std::vector<Complex> eigs;
    eigs.reserve(static_cast<std::size_t>(n));
    if (n == 0) return eigs;

    const Real eps = pow2(-ctx.bits + 6);
    int m = n;
    int stall = 0;
    while (m > 0) {
        if (m == 1) {
            eigs.push_back(H.at(0, 0));
            --m;
            continue;
        }
        // Find the active block [l, m-1]: deflate negligible subdiagonals.
        int l = m - 1;
        while (l > 0) {
            const Real sub = abs(H.at(l, l - 1));
            const Real diag = abs(H.at(l - 1, l - 1)) + abs(H.at(l, l));
            if (sub <= eps * diag) {
                H.at(l, l - 1) = Complex{};
                break;
            }
            --l;
        }
        if (l == m - 1) {
            eigs.push_back(H.at(m - 1, m - 1));
            --m;
            stall = 0;
            continue;
        }

        if (++stall > max_iters_per_eig)
            throw NonConvergence(
                "hessenberg_section_eigen: QR iteration cap of " +
                std::to_string(max_iters_per_eig) + " reached");

        // Wilkinson shift from the trailing 2x2 of the active block.
        const Complex a = H.at(m - 2, m - 2);
        const Complex b = H.at(m - 2, m - 1);
        const Complex c = H.at(m - 1, m - 2);
        const Complex d = H.at(m - 1, m - 1);
        Complex shift;
        {
            const Complex half = (a - d) * Real(0.5);
            const Complex disc = sqrt(half * half + b * c);
            const Complex s1 = d + half - disc;
            const Complex s2 = d + half + disc;
            shift = (abs(s1 - d) <= abs(s2 - d)) ? s1 : s2;
            if (stall % 12 == 0)  // exceptional shift on stall
                shift = d + Complex(abs(c) * Real("1.0101"));
        }

        // Implicit single-shift sweep on rows/cols [l, m-1].
        Complex x = H.at(l, l) - shift;
        Complex y = H.at(l + 1, l);
        for (int k = l; k < m - 1; ++k) {
            const auto g = detail::make_givens(x, y);
            // Rows k, k+1.
            const int col0 = (k > l) ? k - 1 : l;
            for (int j = col0; j < m; ++j) {
                const Complex t1 = H.at(k, j);
                const Complex t2 = H.at(k + 1, j);
                H.at(k, j) = g.c * t1 + g.s * t2;
                H.at(k + 1, j) = g.c * t2 - conj(g.s) * t1;
            }
            // Columns k, k+1.
            const int rowend = (std::min)(m - 1, k + 2);
            for (int i = l; i <= rowend; ++i) {
                const Complex t1 = H.at(i, k);
                const Complex t2 = H.at(i, k + 1);
                H.at(i, k) = g.c * t1 + conj(g.s) * t2;
                H.at(i, k + 1) = g.c * t2 - g.s * t1;
            }
            if (k + 2 < m) {
                x = H.at(k + 1, k);
                y = H.at(k + 2, k);
            }
        }
    }
    return eigs;
}

}  // namespace planorth
