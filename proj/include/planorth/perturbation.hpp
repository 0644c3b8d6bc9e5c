#pragma once

#include <string>
#include <utility>
#include <vector>

#include "planorth/orthopoly.hpp"

namespace planorth {

/**
 * Quantitative comparison of the orthonormal families of mu0 = mu1 + mu2
 * against those of mu1 alone.  All cross-measure inner products run in the
 * shared support-centered basis of mu0, so the two families and the mu2
 * moment table are directly combinable.  Every op re-checks the inequality
 * or identity that backs it and throws BoundViolated / IdentityViolated
 * with the offending degree when numerics and theory disagree.
 */
struct PerturbationSetup {
    MeasureExpr mu1;
    MeasureExpr mu2;
    MeasureExpr mu0;
    int N = 0;
    PrecisionContext ctx;
    Complex center;
    OrthoFamily fam1;
    OrthoFamily fam0;
    MomentTable table2;  // moments of mu2 in the shared shifted basis
    Hull hull1;          // Co(S_1) in original coordinates
    Real diam1{0};
};

inline PerturbationSetup make_perturbation(MeasureExpr mu1, MeasureExpr mu2,
                                           int N, const PrecisionContext& ctx,
                                           int cap = kDefaultMomentCap) {
    PrecisionScope scope(ctx);
    PerturbationSetup s;
    s.mu1 = to_ambient(mu1);
    s.mu2 = to_ambient(mu2);
    s.mu0 = measure_sum({s.mu1, s.mu2});
    s.N = N;
    s.ctx = ctx;
    s.center = support_bbox(s.mu0).center();
    s.fam1 = orthonormalize(s.mu1, N, ctx, s.center, cap);
    s.fam0 = orthonormalize(s.mu0, N, ctx, s.center, cap);
    s.table2 =
        build_moment_table(translate_measure(s.mu2, -s.center), N, ctx, cap);
    s.hull1 = support_hull(s.mu1);
    s.diam1 = s.hull1.diameter();
    return s;
}

inline Real check_slack(const PrecisionContext& ctx) {
    return pow2(-ctx.bits / 3);
}

struct PsNorms {
    std::vector<Real> ps;   // ||p_n(mu1)||_{L2(mu2)}
    std::vector<Real> ps0;  // ||p_n(mu0)||_{L2(mu2)}
};

/** Perturbation norms; asserts ps0[n] <= ps[n] (+slack) degree by degree. */
inline PsNorms ps_norms(const PerturbationSetup& s) {
    PrecisionScope scope(s.ctx);
    PsNorms out;
    const Real slack = check_slack(s.ctx);
    for (int n = 0; n <= s.N; ++n) {
        const Real a = norm(s.fam1.poly_w(n), s.table2);
        const Real b = norm(s.fam0.poly_w(n), s.table2);
        if (b > a + slack)
            throw BoundViolated(
                "ps_norms: ||p_n(mu0)|| > ||p_n(mu1)|| in L2(mu2) at n = " +
                std::to_string(n));
        out.ps.push_back(a);
        out.ps0.push_back(b);
    }
    return out;
}

/**
 * beta_n = gamma_n(mu1)/gamma_n(mu0) - 1 >= 0, cross-checked against
 * <p_n(mu1), p_n(mu0)>_{mu0} = 1 + beta_n.
 */
inline std::vector<Real> beta_sequence(const PerturbationSetup& s) {
    PrecisionScope scope(s.ctx);
    std::vector<Real> beta;
    const Real slack = check_slack(s.ctx);
    for (int n = 0; n <= s.N; ++n) {
        const Real b = s.fam1.gamma[static_cast<std::size_t>(n)] /
                           s.fam0.gamma[static_cast<std::size_t>(n)] -
                       1;
        if (b < -slack)
            throw BoundViolated("beta_sequence: beta < 0 at n = " +
                                std::to_string(n));
        const Complex ip = inner_product(s.fam1.poly_w(n), s.fam0.poly_w(n),
                                         s.fam0.table);
        if (abs(ip - Complex(1 + b)) > slack)
            throw IdentityViolated(
                "beta_sequence: <p_n(mu1),p_n(mu0)>_{mu0} != 1 + beta at n = " +
                std::to_string(n));
        beta.push_back(b);
    }
    return beta;
}

struct BetaBounds {
    std::vector<Real> lo;  // (1 - ps0^2)^(-1/2) - 1
    std::vector<Real> hi;  // (1 + ps^2)^(1/2) - 1
};

/** Two-sided bounds sandwiching beta; asserts the sandwich itself. */
inline BetaBounds beta_bounds(const PerturbationSetup& s, const PsNorms& pn,
                              const std::vector<Real>& beta) {
    PrecisionScope scope(s.ctx);
    using boost::multiprecision::sqrt;
    BetaBounds out;
    const Real slack = check_slack(s.ctx);
    for (int n = 0; n <= s.N; ++n) {
        const auto un = static_cast<std::size_t>(n);
        const Real p0sq = pn.ps0[un] * pn.ps0[un];
        if (!(p0sq < 1))
            throw BoundViolated(
                "beta_bounds: ||p_n(mu0)||_{L2(mu2)} >= 1 at n = " +
                std::to_string(n));
        const Real lo = 1 / sqrt(1 - p0sq) - 1;
        const Real hi = sqrt(1 + pn.ps[un] * pn.ps[un]) - 1;
        if (beta[un] < lo - slack || beta[un] > hi + slack)
            throw BoundViolated("beta_bounds: sandwich failed at n = " +
                                std::to_string(n));
        out.lo.push_back(lo);
        out.hi.push_back(hi);
    }
    return out;
}

struct DiffNorms {
    std::vector<Real> d0sq;  // ||p_n(mu0) - p_n(mu1)||^2 in L2(mu0)
    std::vector<Real> d1sq;  // ||p_n(mu0) - p_n(mu1)||^2 in L2(mu1)
};

/**
 * Squared difference norms, verified against their closed forms
 * d0sq = ps^2 - 2 beta and d1sq = 2 beta/(1+beta) - ps0^2, and against
 * the bound d1sq <= 2 beta.
 */
inline DiffNorms diff_norms(const PerturbationSetup& s, const PsNorms& pn,
                            const std::vector<Real>& beta) {
    PrecisionScope scope(s.ctx);
    using boost::multiprecision::abs;
    DiffNorms out;
    const Real slack = check_slack(s.ctx);
    for (int n = 0; n <= s.N; ++n) {
        const auto un = static_cast<std::size_t>(n);
        const auto& c0 = s.fam0.coeff[un];
        const auto& c1 = s.fam1.coeff[un];
        std::vector<Complex> diff(un + 1);
        for (std::size_t t = 0; t <= un; ++t) diff[t] = c0[t] - c1[t];
        const Polynomial dp{std::move(diff)};
        const Real d0 = inner_product(dp, dp, s.fam0.table).re;
        const Real d1 = inner_product(dp, dp, s.fam1.table).re;
        const Real ps2 = pn.ps[un] * pn.ps[un];
        const Real ps02 = pn.ps0[un] * pn.ps0[un];
        if (abs(d0 - (ps2 - 2 * beta[un])) > slack)
            throw IdentityViolated(
                "diff_norms: ||p0-p1||^2_{mu0} != ps^2 - 2 beta at n = " +
                std::to_string(n));
        if (abs(d1 - (2 * beta[un] / (1 + beta[un]) - ps02)) > slack)
            throw IdentityViolated(
                "diff_norms: ||p0-p1||^2_{mu1} closed form failed at n = " +
                std::to_string(n));
        if (d1 > 2 * beta[un] + slack)
            throw BoundViolated(
                "diff_norms: ||p0-p1||^2_{mu1} > 2 beta at n = " +
                std::to_string(n));
        out.d0sq.push_back(d0);
        out.d1sq.push_back(d1);
    }
    return out;
}

struct RatioValue {
    Complex ratio;  // p_n(mu1, z) / p_n(mu0, z)
    Real bound;     // sqrt(2 beta_n) (1 + diam/dist)^2, +inf inside the hull
    bool outside = false;
};

/**
 * Pointwise ratio of the two families.  Outside Co(S_1) the deviation
 * |ratio - 1| is asserted against the Fejer-hull bound; inside, the bound
 * is reported as infinite and nothing is asserted.
 */
inline RatioValue ratio_at(const PerturbationSetup& s, const Complex& z, int n,
                           const std::vector<Real>& beta) {
    PrecisionScope scope(s.ctx);
    using boost::multiprecision::sqrt;
    const Complex v1 = evaluate(s.fam1, n, z);
    const Complex v0 = evaluate(s.fam0, n, z);
    if (v0.is_zero())
        throw ZeroDenominator("ratio_at: p_n(mu0, z) vanished at n = " +
                              std::to_string(n));
    RatioValue out;
    out.ratio = v1 / v0;
    const Real dist = s.hull1.distance(z);
    if (dist > 0) {
        out.outside = true;
        const Real f = 1 + s.diam1 / dist;
        out.bound = sqrt(2 * beta[static_cast<std::size_t>(n)]) * f * f;
        if (abs(out.ratio - Complex(Real(1))) >
            out.bound + check_slack(s.ctx))
            throw BoundViolated("ratio_at: hull bound failed at n = " +
                                std::to_string(n));
    } else {
        Real inf(0);
        mpfr_set_inf(inf.backend().data(), 1);
        out.bound = inf;
    }
    return out;
}

/** lambda_n(mu0, z) / lambda_n(mu1, z) >= 1 (asserted with slack). */
inline Real christoffel_ratio(const PerturbationSetup& s, const Complex& z,
                              int n) {
    PrecisionScope scope(s.ctx);
    const Real l0 = christoffel(s.fam0, n, z);
    const Real l1 = christoffel(s.fam1, n, z);
    const Real r = l0 / l1;
    if (r < 1 - check_slack(s.ctx))
        throw BoundViolated(
            "christoffel_ratio: lambda(mu0) < lambda(mu1) at n = " +
            std::to_string(n));
    return r;
}

/** eps_m = sum_{j >= m} ps[j]^2, truncated at the family degree. */
inline Real epsilon_tail(const std::vector<Real>& ps, int m) {
    require(m >= 0 && m < static_cast<int>(ps.size()), ErrorCategory::config,
            "epsilon_tail: m out of range");
    Real acc(0);
    for (std::size_t j = static_cast<std::size_t>(m); j < ps.size(); ++j)
        acc += ps[j] * ps[j];
    return acc;
}

struct LambdaSandwich {
    Real lambda0;
    Real lambda1;
    Real d;  // the multiplicative defect D_n(z)
};

/**
 * Split-kernel comparison: lambda_n(mu0,z) <= lambda_n(mu1,z) (1 + D_n(z))
 * with D_n = eps_m + (1 + eps_m)/M * sum_{j<m} |p_j(mu1,z)|^2 and
 * M = sum_{j=m..n} |p_j(mu1,z)|^2, alongside lambda1 <= lambda0.
 */
inline LambdaSandwich lambda_sandwich(const PerturbationSetup& s,
                                      const Complex& z, int n, int m,
                                      const std::vector<Real>& ps) {
    require(0 < m && m <= n && n <= s.N, ErrorCategory::config,
            "lambda_sandwich: need 0 < m <= n <= N");
    PrecisionScope scope(s.ctx);
    const Real eps = epsilon_tail(ps, m);
    const auto vals = evaluate_all(s.fam1, n, z);
    Real head(0), tail(0);
    for (int j = 0; j < m; ++j) head += norm(vals[static_cast<std::size_t>(j)]);
    for (int j = m; j <= n; ++j) tail += norm(vals[static_cast<std::size_t>(j)]);
    require(tail > 0, ErrorCategory::numeric,
            "lambda_sandwich: split kernel mass M vanished");
    LambdaSandwich out;
    out.lambda0 = christoffel(s.fam0, n, z);
    out.lambda1 = christoffel(s.fam1, n, z);
    out.d = eps + (1 + eps) / tail * head;
    const Real slack = check_slack(s.ctx);
    if (out.lambda0 > out.lambda1 * (1 + out.d) + slack)
        throw BoundViolated("lambda_sandwich: upper bound failed at n = " +
                            std::to_string(n));
    if (out.lambda1 > out.lambda0 + slack)
        throw BoundViolated("lambda_sandwich: lambda1 <= lambda0 failed");
    return out;
}

struct ToeplitzDiagnostic {
    int k = 0;
    int n_lo = 0;
    int n_hi = 0;
    std::vector<Complex> values;  // b_{n-k, n} over the window
    Real last_quarter_osc{0};     // diameter of the last quarter's values
};

/** Hessenberg diagonal b_{n-k,n} over a window plus a convergence proxy. */
inline ToeplitzDiagnostic toeplitz_diagnostic(const OrthoFamily& fam, int k,
                                              int n_lo, int n_hi) {
    require(k >= -1 && n_lo <= n_hi && n_hi < fam.N &&
                n_lo >= (std::max)(k, 0),
            ErrorCategory::config, "toeplitz_diagnostic: bad window");
    PrecisionScope scope(fam.ctx);
    ToeplitzDiagnostic out;
    out.k = k;
    out.n_lo = n_lo;
    out.n_hi = n_hi;
    for (int n = n_lo; n <= n_hi; ++n)
        out.values.push_back(fam.hess[static_cast<std::size_t>(n)]
                                     [static_cast<std::size_t>(n - k)]);
    const int count = n_hi - n_lo + 1;
    const int q_start = count - (std::max)(1, count / 4);
    for (std::size_t i = static_cast<std::size_t>(q_start);
         i < out.values.size(); ++i)
        for (std::size_t j = i + 1; j < out.values.size(); ++j)
            out.last_quarter_osc = (std::max)(
                out.last_quarter_osc, abs(out.values[i] - out.values[j]));
    return out;
}

/* ---------- assembled report ---------- */

struct PerturbationReport {
    int N = 0;
    std::vector<Real> ps, ps0, beta, beta_lo, beta_hi, d0sq, d1sq, eps;
    std::vector<Complex> probes;
    // Indexed [probe][n]; ratio_ok = 0 marks a ZeroDenominator cell.
    std::vector<std::vector<Complex>> ratio;
    std::vector<std::vector<Real>> ratio_bound;
    std::vector<std::vector<Real>> lam_ratio;
    std::vector<std::vector<int>> ratio_ok;
};

/** Run the full battery over n = 0..N and the given probe points. */
inline PerturbationReport build_report(const PerturbationSetup& s,
                                       const std::vector<Complex>& probes) {
    PrecisionScope scope(s.ctx);
    PerturbationReport r;
    r.N = s.N;
    const PsNorms pn = ps_norms(s);
    r.ps = pn.ps;
    r.ps0 = pn.ps0;
    r.beta = beta_sequence(s);
    const BetaBounds bb = beta_bounds(s, pn, r.beta);
    r.beta_lo = bb.lo;
    r.beta_hi = bb.hi;
    const DiffNorms dn = diff_norms(s, pn, r.beta);
    r.d0sq = dn.d0sq;
    r.d1sq = dn.d1sq;
    for (int n = 0; n <= s.N; ++n) r.eps.push_back(epsilon_tail(r.ps, n));
    r.probes = probes;
    for (const auto& z : probes) {
        std::vector<Complex> ratio_col;
        std::vector<Real> bound_col, lam_col;
        std::vector<int> ok_col;
        const auto v1 = evaluate_all(s.fam1, s.N, z);
        const auto v0 = evaluate_all(s.fam0, s.N, z);
        Real k1(0), k0(0);
        const Real dist = s.hull1.distance(z);
        Real inf(0);
        mpfr_set_inf(inf.backend().data(), 1);
        for (int n = 0; n <= s.N; ++n) {
            const auto un = static_cast<std::size_t>(n);
            k1 += norm(v1[un]);
            k0 += norm(v0[un]);
            lam_col.push_back(k1 / k0);  // lambda0/lambda1 = K1/K0
            Real bound = inf;
            if (dist > 0) {
                using boost::multiprecision::sqrt;
                const Real f = 1 + s.diam1 / dist;
                bound = sqrt(2 * r.beta[un]) * f * f;
            }
            bound_col.push_back(bound);
            if (v0[un].is_zero()) {
                ok_col.push_back(0);
                ratio_col.push_back(Complex{});
            } else {
                ok_col.push_back(1);
                ratio_col.push_back(v1[un] / v0[un]);
            }
        }
        r.ratio.push_back(std::move(ratio_col));
        r.ratio_bound.push_back(std::move(bound_col));
        r.lam_ratio.push_back(std::move(lam_col));
        r.ratio_ok.push_back(std::move(ok_col));
    }
    return r;
}

}  // namespace planorth
