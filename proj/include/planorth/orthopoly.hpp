#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "planorth/hessenberg.hpp"
#include "planorth/measures.hpp"

namespace planorth {

/**
 * Orthonormal polynomial family p_0..p_N for a planar measure, built by
 * the Arnoldi variant of Gram-Schmidt: orthogonalize z*p_j against
 * p_0..p_j (classical Gram-Schmidt applied twice), normalize, record the
 * Hessenberg column.  All linear algebra runs in support-centered
 * coordinates w = z - center, which keeps the monomial quadratic forms
 * conditioned independently of where the support sits in the plane;
 * gamma, inner products, point values, zeros and Hessenberg data are
 * basis-exact, and z-basis coefficients are recovered by a Taylor shift.
 */
struct OrthoFamily {
    MeasureExpr measure;
    int N = 0;
    Complex center;
    std::vector<std::vector<Complex>> coeff;  // coeff[n]: w-basis, length n+1
    std::vector<Real> gamma;                  // gamma[n] = a_{n,n} > 0
    std::vector<std::vector<Complex>> hess;   // hess[j]: b_{0..j+1, j} in z
    MomentTable table;                        // moments of the shifted measure
    PrecisionContext ctx;
    Real ortho_residual{0};  // max |<p_m,p_n> - delta_{mn}| achieved

    Polynomial poly_w(int n) const {
        return Polynomial(coeff[static_cast<std::size_t>(n)]);
    }

    /** Monomial (z-basis) coefficients of p_n. */
    Polynomial poly_z(int n) const {
        return taylor_shift(poly_w(n), -center);
    }
};

/**
 * Build the family.  center defaults to the support bounding-box midpoint;
 * callers comparing two families against each other pass a shared center.
 */
inline OrthoFamily orthonormalize(const MeasureExpr& mu, int N,
                                  const PrecisionContext& ctx,
                                  std::optional<Complex> center = std::nullopt,
                                  int cap = kDefaultMomentCap) {
    PrecisionScope scope(ctx);
    require(N >= 0, ErrorCategory::config, "orthonormalize: N must be >= 0");
    if (is_purely_atomic(mu))
        throw InvalidMeasure(
            "orthonormalize: purely atomic measures are not positive "
            "definite beyond the atom count");

    const MeasureExpr mu_a = to_ambient(mu);
    OrthoFamily fam{mu_a,
                    N,
                    center ? to_ambient(*center) : support_bbox(mu_a).center(),
                    {},
                    {},
                    {},
                    MomentTable(0),
                    ctx};
    const MeasureExpr muw = translate_measure(mu_a, -fam.center);
    fam.table = build_moment_table(muw, N, ctx, cap);
    const MomentTable& T = fam.table;

    const int n1 = N + 1;
    fam.coeff.resize(static_cast<std::size_t>(n1));
    fam.gamma.resize(static_cast<std::size_t>(n1));
    fam.hess.resize(static_cast<std::size_t>(N > 0 ? N : 0));

    // W[k][s] = <w^s, p_k>, filled as each p_k is finalized.
    std::vector<std::vector<Complex>> W(static_cast<std::size_t>(n1));
    auto fill_w_row = [&](int k) {
        auto& row = W[static_cast<std::size_t>(k)];
        row.assign(static_cast<std::size_t>(n1), Complex{});
        const auto& a = fam.coeff[static_cast<std::size_t>(k)];
        for (int s = 0; s <= N; ++s) {
            Complex acc{};
            for (int t = 0; t <= k; ++t)
                acc += conj(a[static_cast<std::size_t>(t)]) * T.at(s, t);
            row[static_cast<std::size_t>(s)] = acc;
        }
    };

    using boost::multiprecision::sqrt;
    const Real mass = T.at(0, 0).re;
    fam.gamma[0] = 1 / sqrt(mass);
    fam.coeff[0] = {Complex{fam.gamma[0]}};
    fill_w_row(0);

    const Real ortho_floor = sqrt(Real(ctx.ortho_tol));
    for (int j = 0; j < N; ++j) {
        const auto uj = static_cast<std::size_t>(j);
        // q = w * p_j
        std::vector<Complex> q(uj + 2);
        for (std::size_t t = 0; t <= uj; ++t)
            q[t + 1] = fam.coeff[uj][t];

        auto project = [&](const std::vector<Complex>& vec, int k) {
            Complex acc{};
            const auto& row = W[static_cast<std::size_t>(k)];
            for (std::size_t s = 0; s < vec.size(); ++s) {
                if (vec[s].is_zero()) continue;
                acc += vec[s] * row[s];
            }
            return acc;
        };

        // Classical Gram-Schmidt applied twice: projections of the frozen
        // residual, then the batch subtraction, per pass.
        std::vector<Complex> b(uj + 2);
        std::vector<Complex> r = q;
        std::vector<Complex> d(uj + 1);
        for (int pass = 0; pass < 2; ++pass) {
            for (int k = 0; k <= j; ++k)
                d[static_cast<std::size_t>(k)] = project(r, k);
            for (int k = 0; k <= j; ++k) {
                const Complex& dk = d[static_cast<std::size_t>(k)];
                if (dk.is_zero()) continue;
                b[static_cast<std::size_t>(k)] += dk;
                const auto& pk = fam.coeff[static_cast<std::size_t>(k)];
                for (std::size_t t = 0; t < pk.size(); ++t)
                    r[t] -= dk * pk[t];
            }
        }

        const Polynomial rp{std::vector<Complex>(r)};
        const Complex rr = inner_product(rp, rp, T);
        if (!(rr.re > 0))
            throw PrecisionExhausted(
                "orthonormalize: residual norm collapsed at degree " +
                std::to_string(j + 1) +
                " (moment matrix no longer positive definite at working "
                "precision)");
        const Real nrm = sqrt(rr.re);
        const Polynomial qp{std::vector<Complex>(q)};
        const Real qnorm = sqrt(inner_product(qp, qp, T).re);
        if (nrm <= ortho_floor * qnorm)
            throw PrecisionExhausted(
                "orthonormalize: b_{" + std::to_string(j + 1) + "," +
                std::to_string(j) + "} = " + to_decimal(nrm) +
                " below sqrt(ortho_tol) * ||q||; raise bits");

        b[uj + 1] = Complex{nrm};
        auto& pnext = fam.coeff[uj + 1];
        pnext.resize(uj + 2);
        for (std::size_t t = 0; t < r.size(); ++t) pnext[t] = r[t] / nrm;
        require(pnext[uj + 1].im.is_zero(), ErrorCategory::numeric,
                "orthonormalize: leading coefficient drifted off the real "
                "axis");
        fam.gamma[uj + 1] = pnext[uj + 1].re;

        // Hessenberg column in z: <z p_j, p_k> = <w p_j, p_k> + c0 delta_jk.
        fam.hess[uj] = b;
        fam.hess[uj][uj] += fam.center;

        fill_w_row(j + 1);
    }

    // gamma_{n+1} * b_{n+1,n} = gamma_n, cross-checked from the stored data.
    const Real slack = pow2(-ctx.bits / 2);
    for (int j = 0; j < N; ++j) {
        const Real prod = fam.gamma[static_cast<std::size_t>(j) + 1] *
                          fam.hess[static_cast<std::size_t>(j)]
                                  [static_cast<std::size_t>(j) + 1]
                                      .re;
        const Real g = fam.gamma[static_cast<std::size_t>(j)];
        if (boost::multiprecision::abs(prod - g) > slack * g)
            throw IdentityViolated(
                "orthonormalize: gamma recurrence failed at degree " +
                std::to_string(j + 1));
    }

    // Orthonormality residual max_{m,n} |<p_m,p_n> - delta| via C M C^H.
    std::vector<std::vector<Complex>> B(static_cast<std::size_t>(n1));
    for (int i = 0; i <= N; ++i) {
        auto& row = B[static_cast<std::size_t>(i)];
        row.assign(static_cast<std::size_t>(n1), Complex{});
        const auto& a = fam.coeff[static_cast<std::size_t>(i)];
        for (int t = 0; t <= N; ++t) {
            Complex acc{};
            for (int s = 0; s <= i; ++s)
                acc += a[static_cast<std::size_t>(s)] * T.at(s, t);
            row[static_cast<std::size_t>(t)] = acc;
        }
    }
    Real worst(0);
    for (int i = 0; i <= N; ++i) {
        for (int jj = 0; jj <= i; ++jj) {
            Complex acc{};
            const auto& aj = fam.coeff[static_cast<std::size_t>(jj)];
            for (int t = 0; t <= jj; ++t)
                acc += B[static_cast<std::size_t>(i)]
                        [static_cast<std::size_t>(t)] *
                       conj(aj[static_cast<std::size_t>(t)]);
            if (i == jj) acc -= Complex{Real(1)};
            worst = (std::max)(worst, abs(acc));
        }
    }
    fam.ortho_residual = worst;
    if (worst > Real(ctx.ortho_tol))
        throw PrecisionExhausted(
            "orthonormalize: orthonormality residual " + to_decimal(worst) +
            " exceeds ortho_tol; raise bits");
    return fam;
}

/** p_n(mu, z), evaluated stably in the family's shifted basis. */
inline Complex evaluate(const OrthoFamily& fam, int n, const Complex& z) {
    require(0 <= n && n <= fam.N, ErrorCategory::config,
            "evaluate: degree out of range");
    PrecisionScope scope(fam.ctx);
    return eval_poly(fam.poly_w(n), z - fam.center);
}

/** p_0..p_n at z in one pass. */
inline std::vector<Complex> evaluate_all(const OrthoFamily& fam, int n,
                                         const Complex& z) {
    require(0 <= n && n <= fam.N, ErrorCategory::config,
            "evaluate_all: degree out of range");
    PrecisionScope scope(fam.ctx);
    const Complex w = z - fam.center;
    std::vector<Complex> vals(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k)
        vals[static_cast<std::size_t>(k)] = eval_poly(fam.poly_w(k), w);
    return vals;
}

/** K_n(z, zeta) = sum_{k<=n} p_k(z) conj(p_k(zeta)). */
inline Complex kernel_eval(const OrthoFamily& fam, int n, const Complex& z,
                           const Complex& zeta) {
    require(0 <= n && n <= fam.N, ErrorCategory::config,
            "kernel_eval: degree out of range");
    PrecisionScope scope(fam.ctx);
    const Complex w = z - fam.center;
    const Complex wz = zeta - fam.center;
    Complex acc{};
    for (int k = 0; k <= n; ++k) {
        const Polynomial pk = fam.poly_w(k);
        acc += eval_poly(pk, w) * conj(eval_poly(pk, wz));
    }
    return acc;
}

/** lambda_n(mu, z) = 1 / K_n(z, z), strictly positive. */
inline Real christoffel(const OrthoFamily& fam, int n, const Complex& z) {
    require(0 <= n && n <= fam.N, ErrorCategory::config,
            "christoffel: degree out of range");
    PrecisionScope scope(fam.ctx);
    const Complex w = z - fam.center;
    Real acc(0);
    for (int k = 0; k <= n; ++k) acc += norm(eval_poly(fam.poly_w(k), w));
    return 1 / acc;
}

/**
 * Independent Christoffel value: lambda = 1 / (v^* G^{-1} v) with G the
 * monomial Gram matrix (the moment table itself) and v the monomial vector
 * at z, via a complex Cholesky factorization.  Shares only the moment
 * table with the Gram-Schmidt path.
 */
inline Real christoffel_oracle_from_table(const MomentTable& T,
                                          const Complex& center, int n,
                                          const Complex& z) {
    require(n <= T.N, ErrorCategory::assertion,
            "christoffel_oracle: degree exceeds table");
    using boost::multiprecision::sqrt;
    const int d = n + 1;
    std::vector<std::vector<Complex>> L(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i)
        L[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(i) + 1);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j <= i; ++j) {
            Complex s = T.at(i, j);
            for (int k = 0; k < j; ++k)
                s -= L[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
                     conj(L[static_cast<std::size_t>(j)]
                           [static_cast<std::size_t>(k)]);
            if (j < i) {
                L[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    s / L[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)]
                            .re;
            } else {
                if (!(s.re > 0))
                    throw SingularGram(
                        "christoffel_oracle: Gram pivot <= 0 at index " +
                        std::to_string(i));
                L[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] =
                    Complex{sqrt(s.re)};
            }
        }
    }
    // Forward solve L y = v, v = (1, w, ..., w^n); lambda = 1 / ||y||^2.
    const Complex w = z - center;
    std::vector<Complex> y(static_cast<std::size_t>(d));
    Complex wp{Real(1)};
    for (int i = 0; i < d; ++i) {
        Complex s = wp;
        for (int k = 0; k < i; ++k)
            s -= L[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
                 y[static_cast<std::size_t>(k)];
        y[static_cast<std::size_t>(i)] =
            s / L[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)].re;
        wp *= w;
    }
    Real acc(0);
    for (const auto& yi : y) acc += norm(yi);
    return 1 / acc;
}

inline Real christoffel_oracle(const MeasureExpr& mu, int n, const Complex& z,
                               const PrecisionContext& ctx,
                               int cap = kDefaultMomentCap) {
    PrecisionScope scope(ctx);
    const Complex center = support_bbox(mu).center();
    const MomentTable T =
        build_moment_table(translate_measure(mu, -center), n, ctx, cap);
    return christoffel_oracle_from_table(T, center, n, z);
}

/**
 * Diagonal slice of the Hessenberg data: n -> b_{n-k, n} for
 * n in [max(k, 0), N-1].  k = -1 is the subdiagonal, k = 0 the diagonal.
 */
struct HessRow {
    int k = 0;
    int n_first = 0;
    std::vector<Complex> values;
};

inline HessRow hessenberg_row(const OrthoFamily& fam, int k) {
    require(k >= -1, ErrorCategory::config,
            "hessenberg_row: offsets below -1 are identically zero");
    HessRow out;
    out.k = k;
    out.n_first = (std::max)(k, 0);
    for (int n = out.n_first; n < fam.N; ++n)
        out.values.push_back(
            fam.hess[static_cast<std::size_t>(n)][static_cast<std::size_t>(n - k)]);
    return out;
}

/** Principal n x n section of the z-form Hessenberg matrix. */
inline ComplexMatrix hessenberg_section(const OrthoFamily& fam, int n) {
    require(1 <= n && n <= fam.N, ErrorCategory::config,
            "hessenberg_section: need 1 <= n <= N");
    ComplexMatrix H(n);
    for (int j = 0; j < n; ++j) {
        const auto& col = fam.hess[static_cast<std::size_t>(j)];
        for (int i = 0; i <= (std::min)(j + 1, n - 1); ++i)
            H.at(i, j) = col[static_cast<std::size_t>(i)];
    }
    return H;
}

}  // namespace planorth
