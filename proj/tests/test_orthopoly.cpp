#include <catch2/catch_amalgamated.hpp>

#include <planorth/orthopoly.hpp>

#include "test_util.hpp"

#include <vector>

using namespace planorth;
using boost::multiprecision::abs;
using boost::multiprecision::pow;
using boost::multiprecision::sqrt;

namespace {

const PrecisionContext kCtx(212);

MeasureExpr triangle_measure() {
    return measure_area(make_polygon({Complex{Real(-1)}, Complex{Real(2), Real(-1)},
                                      Complex{Real(0), Real(2)}}));
}

}  // namespace

TEST_CASE("unit disk family is the scaled monomial family", "[orthopoly]") {
    PrecisionScope ps(kCtx);
    const int N = 20;
    const OrthoFamily fam =
        orthonormalize(measure_area(make_disk(Complex{}, Real(1))), N, kCtx);
    CHECK(fam.ortho_residual <= Real(kCtx.ortho_tol));
    for (int n = 0; n <= N; ++n) {
        const Real expect = sqrt(Real(n + 1) / const_pi());
        CHECK(abs(fam.gamma[static_cast<std::size_t>(n)] - expect) <=
              pow2(-195));
        const Polynomial pz = fam.poly_z(n);
        REQUIRE(pz.degree() == n);
        for (int k = 0; k < n; ++k)
            CHECK(abs(pz.c[static_cast<std::size_t>(k)]) <= pow2(-190));
    }
    // Shift coefficients: b_{n+1,n} = sqrt((n+1)/(n+2)), rest of column 0.
    for (int n = 0; n + 1 <= N; ++n) {
        const auto& col = fam.hess[static_cast<std::size_t>(n)];
        REQUIRE(col.size() == static_cast<std::size_t>(n) + 2);
        CHECK(abs(col.back() - Complex{sqrt(Real(n + 1) / (n + 2))}) <=
              pow2(-190));
        for (std::size_t k = 0; k + 1 < col.size(); ++k)
            CHECK(abs(col[k]) <= pow2(-190));
    }
}

TEST_CASE("unit circle family has unit shift coefficients", "[orthopoly]") {
    PrecisionScope ps(kCtx);
    const int N = 16;
    const OrthoFamily fam = orthonormalize(
        measure_arclength(Curve{CircleC{Complex{}, Real(1)}}), N, kCtx);
    const Real g = 1 / sqrt(2 * const_pi());
    for (int n = 0; n <= N; ++n)
        CHECK(abs(fam.gamma[static_cast<std::size_t>(n)] - g) <= pow2(-195));
    for (int n = 0; n + 1 <= N; ++n)
        CHECK(abs(fam.hess[static_cast<std::size_t>(n)].back() -
                  Complex{Real(1)}) <= pow2(-190));
}

TEST_CASE("annulus leading coefficients match the closed form", "[orthopoly]") {
    PrecisionScope ps(kCtx);
    const int N = 12;
    const Real r("0.5");
    const MeasureExpr mu =
        measure_lake(make_disk(Complex{}, Real(1)), make_disk(Complex{}, r));
    const OrthoFamily fam = orthonormalize(mu, N, kCtx);
    for (int n = 0; n <= N; ++n) {
        const Real expect = sqrt(Real(n + 1) / const_pi()) /
                            sqrt(1 - pow(r, 2 * n + 2));
        CHECK(abs(fam.gamma[static_cast<std::size_t>(n)] - expect) <=
              pow2(-190));
    }
}

TEST_CASE("families are invariant under the centering choice", "[orthopoly]") {
    PrecisionScope ps(kCtx);
    const MeasureExpr mu =
        measure_area(make_disk(Complex{Real(2), Real(1)}, Real("0.5")));
    const int N = 10;
    const OrthoFamily fam_default = orthonormalize(mu, N, kCtx);
    const OrthoFamily fam_origin =
        orthonormalize(mu, N, kCtx, Complex{});  // deliberately off support
    const Complex z{Real("2.3"), Real("0.9")};
    for (int n = 0; n <= N; ++n) {
        // Relative: the off-support centering inflates the Gram condition
        // number to about 5.5^(2N), which costs ~50 digits of the 64 carried.
        CHECK(abs(fam_default.gamma[static_cast<std::size_t>(n)] -
                  fam_origin.gamma[static_cast<std::size_t>(n)]) /
                  fam_default.gamma[static_cast<std::size_t>(n)] <=
              pow2(-130));
        CHECK(abs(evaluate(fam_default, n, z) - evaluate(fam_origin, n, z)) <=
              pow2(-140));
    }
}

TEST_CASE("recentred families translate with the measure", "[orthopoly]") {
    PrecisionScope ps(kCtx);
    const Complex d{Real(2), Real(1)};
    const MeasureExpr base = triangle_measure();
    const int N = 8;
    const OrthoFamily f0 = orthonormalize(base, N, kCtx);
    const OrthoFamily f1 = orthonormalize(translate_measure(base, d), N, kCtx);
    const Complex z{Real("0.4"), Real("0.1")};
    for (int n = 0; n <= N; ++n) {
        CHECK(abs(f0.gamma[static_cast<std::size_t>(n)] -
                  f1.gamma[static_cast<std::size_t>(n)]) <= pow2(-180));
        CHECK(abs(evaluate(f0, n, z) - evaluate(f1, n, z + d)) <= pow2(-170));
    }
}

TEST_CASE("pairwise orthonormality holds against the moment table",
          "[orthopoly]") {
    PrecisionScope ps(kCtx);
    const OrthoFamily fam = orthonormalize(triangle_measure(), 12, kCtx);
    for (int m = 0; m <= 12; ++m)
        for (int n = 0; n <= m; ++n) {
            const Complex ip =
                inner_product(fam.poly_w(m), fam.poly_w(n), fam.table);
            const Complex expect = (m == n) ? Complex{Real(1)} : Complex{};
            CHECK(abs(ip - expect) <= Real(kCtx.ortho_tol));
        }
}

TEST_CASE("gamma recurrence ties neighbours through the shift column",
          "[orthopoly]") {
    PrecisionScope ps(kCtx);
    const OrthoFamily fam = orthonormalize(triangle_measure(), 12, kCtx);
    for (int n = 0; n + 1 <= 12; ++n) {
        const Complex sub = fam.hess[static_cast<std::size_t>(n)].back();
        CHECK(abs(fam.gamma[static_cast<std::size_t>(n)] -
                  fam.gamma[static_cast<std::size_t>(n + 1)] * sub.re) <=
              pow2(-180));
        CHECK(abs(sub.im) <= pow2(-180));
    }
}

TEST_CASE("shift columns reproduce multiplication by z", "[orthopoly]") {
    PrecisionScope ps(kCtx);
    const int N = 12;
    const OrthoFamily fam = orthonormalize(triangle_measure(), N, kCtx);
    const Complex z{Real("0.3"), Real("0.2")};
    const auto vals = evaluate_all(fam, N, z);
    for (int j = 0; j + 1 <= N; ++j) {
        Complex acc{};
        const auto& col = fam.hess[static_cast<std::size_t>(j)];
        for (std::size_t k = 0; k < col.size(); ++k) acc += col[k] * vals[k];
        CHECK(abs(acc - z * vals[static_cast<std::size_t>(j)]) <= pow2(-175));
    }
}

TEST_CASE("hessenberg sections are the shift compression", "[orthopoly]") {
    PrecisionScope ps(kCtx);
    const OrthoFamily fam = orthonormalize(triangle_measure(), 10, kCtx);
    const ComplexMatrix H = hessenberg_section(fam, 6);
    REQUIRE(H.n == 6);
    for (int j = 0; j < 6; ++j)
        for (int i = 0; i < 6; ++i) {
            const auto& col = fam.hess[static_cast<std::size_t>(j)];
            const Complex expect =
                (i < static_cast<int>(col.size())) ? col[static_cast<std::size_t>(i)]
                                                   : Complex{};
            CHECK(abs(H.at(i, j) - expect) == Real(0));
        }
    const HessRow row = hessenberg_row(fam, -1);
    CHECK(row.n_first == 0);
    REQUIRE(!row.values.empty());
    CHECK(abs(row.values[0] - fam.hess[0].back()) == Real(0));
}

TEST_CASE("parseval identity for polynomial data", "[orthopoly]") {
    PrecisionScope ps(kCtx);
    const OrthoFamily fam = orthonormalize(triangle_measure(), 6, kCtx);
    // f(z) = z^2 + 3 z + 1 expressed around the family centre.
    Polynomial fz({Complex{Real(1)}, Complex{Real(3)}, Complex{Real(1)}});
    const Polynomial fw = taylor_shift(fz, fam.center);
    const Real norm2 = inner_product(fw, fw, fam.table).re;
    Real acc(0);
    for (int k = 0; k <= 2; ++k)
        acc += norm(inner_product(fw, fam.poly_w(k), fam.table));
    CHECK(abs(acc - norm2) <= pow2(-180));
}

TEST_CASE("christoffel function agrees with the gram oracle", "[orthopoly]") {
    PrecisionScope ps(kCtx);
    const MeasureExpr mu = triangle_measure();
    const OrthoFamily fam = orthonormalize(mu, 8, kCtx);
    const std::vector<Complex> grid{
        Complex{}, Complex{Real("0.5"), Real("0.25")}, Complex{Real(2)},
        Complex{Real(0), Real(3)}, Complex{Real(-1), Real(-1)}};
    for (const auto& z : grid) {
        const Real lam = christoffel(fam, 8, z);
        const Real oracle = christoffel_oracle(mu, 8, z, kCtx);
        CHECK(abs(lam - oracle) <= pow2(-150) * oracle);
    }
}

TEST_CASE("christoffel closed form on the unit disk", "[orthopoly]") {
    PrecisionScope ps(kCtx);
    const OrthoFamily fam =
        orthonormalize(measure_area(make_disk(Complex{}, Real(1))), 4, kCtx);
    // K_2(2, 2) = (1 + 8 + 48) / pi, so lambda = pi / 57.
    CHECK(abs(christoffel(fam, 2, Complex{Real(2)}) - const_pi() / 57) <=
          pow2(-190));
}

TEST_CASE("kernel evaluations are conjugate symmetric", "[orthopoly]") {
    PrecisionScope ps(kCtx);
    const OrthoFamily fam = orthonormalize(triangle_measure(), 9, kCtx);
    const Complex z{Real("0.7"), Real("0.3")};
    const Complex w{Real("-0.2"), Real("0.9")};
    CHECK(abs(kernel_eval(fam, 9, z, w) - conj(kernel_eval(fam, 9, w, z))) <=
          pow2(-170));
    const auto vals = evaluate_all(fam, 9, z);
    for (int n = 0; n <= 9; ++n)
        CHECK(abs(vals[static_cast<std::size_t>(n)] - evaluate(fam, n, z)) ==
              Real(0));
}

TEST_CASE("christoffel is the minimum norm among normalized polynomials",
          "[orthopoly]") {
    PrecisionScope ps(kCtx);
    const OrthoFamily fam = orthonormalize(triangle_measure(), 7, kCtx);
    const int n = 7;
    const Complex z0{Real("0.4"), Real("-0.3")};
    const Real lam = christoffel(fam, n, z0);

    // Deterministic competitor sweep: P = optimal + (w - w0) q, P(z0) = 1.
    const Complex w0 = z0 - fam.center;
    std::uint64_t state = 0x243f6a8885a308d3ULL;
    auto next_coeff = [&state]() {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        const double u =
            static_cast<double>(state >> 11) / 9007199254740992.0;
        return Complex{Real(2 * u - 1), Real(0)};
    };
    // Optimal polynomial in w-coordinates: sum_k conj(p_k(z0)) p_k / K.
    const auto vals = evaluate_all(fam, n, z0);
    Polynomial opt({Complex{}});
    Real kern(0);
    for (int k = 0; k <= n; ++k) kern += norm(vals[static_cast<std::size_t>(k)]);
    for (int k = 0; k <= n; ++k) {
        const Polynomial pk = fam.poly_w(k);
        const Complex coeff = conj(vals[static_cast<std::size_t>(k)]) / kern;
        std::vector<Complex> c(static_cast<std::size_t>(n) + 1);
        for (std::size_t i = 0; i < opt.c.size(); ++i) c[i] = opt.c[i];
        for (std::size_t i = 0; i < pk.c.size(); ++i) c[i] += coeff * pk.c[i];
        opt = Polynomial(c);
    }
    CHECK(abs(inner_product(opt, opt, fam.table).re - lam) <= pow2(-150));

    for (int trial = 0; trial < 24; ++trial) {
        std::vector<Complex> qc(static_cast<std::size_t>(n));  // degree n-1
        for (auto& c : qc) {
            c = next_coeff();
            c.im = next_coeff().re;
        }
        const Polynomial q(qc);
        // (w - w0) q has value 0 at w0.
        Polynomial shifted = shift_up(q);
        for (int k = 0; k <= q.degree(); ++k)
            shifted.c[static_cast<std::size_t>(k)] -=
                w0 * q.c[static_cast<std::size_t>(k)];
        std::vector<Complex> pc(static_cast<std::size_t>(n) + 1);
        for (std::size_t i = 0; i < opt.c.size(); ++i) pc[i] = opt.c[i];
        for (std::size_t i = 0; i < shifted.c.size() && i < pc.size(); ++i)
            pc[i] += shifted.c[i];
        const Polynomial competitor(pc);
        CHECK(inner_product(competitor, competitor, fam.table).re >=
              lam - pow2(-150));
    }
}

TEST_CASE("purely atomic measures are rejected", "[orthopoly]") {
    PrecisionScope ps(kCtx);
    const MeasureExpr atoms =
        measure_sum({measure_atom(Complex{Real(1)}, Real(1)),
                     measure_atom(Complex{Real(-1)}, Real(1))});
    CHECK_THROWS_AS(orthonormalize(atoms, 4, kCtx), InvalidMeasure);
}

TEST_CASE("rank-deficient gram data is reported", "[orthopoly]") {
    PrecisionScope ps(kCtx);
    const MeasureExpr atoms =
        measure_sum({measure_atom(Complex{Real(1)}, Real(1)),
                     measure_atom(Complex{Real(-1)}, Real(1))});
    // Two atoms support polynomials of degree <= 1 only.
    CHECK_THROWS_AS(christoffel_oracle(atoms, 2, Complex{}, kCtx),
                    SingularGram);
    CHECK(christoffel_oracle(atoms, 1, Complex{Real(1)}, kCtx) > 0);
}
