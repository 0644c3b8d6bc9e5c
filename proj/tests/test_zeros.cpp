#include <catch2/catch_amalgamated.hpp>

#include <planorth/zeros.hpp>

#include "test_util.hpp"

#include <vector>

using namespace planorth;
using boost::multiprecision::abs;
using boost::multiprecision::log;
using boost::multiprecision::sqrt;

namespace {

const PrecisionContext kCtx(212);

MeasureExpr symmetric_triangle() {
    // Symmetric under conjugation, so zero sets must be too.
    return measure_area(make_polygon(
        {Complex{Real(-1)}, Complex{Real(1), Real(-1)}, Complex{Real(1), Real(1)}}));
}

}  // namespace

TEST_CASE("disk zeros all sit at the origin", "[zeros]") {
    PrecisionScope ps(kCtx);
    const OrthoFamily fam =
        orthonormalize(measure_area(make_disk(Complex{}, Real(1))), 14, kCtx);
    const ZeroSet zs = zeros_of(fam, 12);
    REQUIRE(zs.degree == 12);
    REQUIRE(zs.zeros.size() == 12);
    for (const auto& z : zs.zeros) CHECK(abs(z) <= pow2(-50));
    for (const auto& r : zs.residuals) CHECK(r >= Real(0));
    CHECK(zs.bits == kCtx.bits);
}

TEST_CASE("zero sets respect the support hull", "[zeros]") {
    PrecisionScope ps(kCtx);
    const MeasureExpr mu = symmetric_triangle();
    const OrthoFamily fam = orthonormalize(mu, 12, kCtx);
    const ZeroSet zs = zeros_of(fam, 10);
    const Hull hull = support_hull(mu);
    const HullCheck hc = hull_check(zs, hull);
    CHECK(hc.ok);
    CHECK(hc.worst <= pow2(-kCtx.bits / 4));

    // A fabricated outlier is flagged with its distance.
    ZeroSet bad = zs;
    bad.zeros[0] = Complex{Real(5)};
    const HullCheck hb = hull_check(bad, hull);
    CHECK_FALSE(hb.ok);
    CHECK(hb.worst >= Real(3));
}

TEST_CASE("conjugation-symmetric measures give symmetric zeros", "[zeros]") {
    PrecisionScope ps(kCtx);
    const OrthoFamily fam = orthonormalize(symmetric_triangle(), 12, kCtx);
    for (int n : {6, 10}) {
        const ZeroSet zs = zeros_of(fam, n);
        std::vector<Complex> conjugated;
        for (const auto& z : zs.zeros) conjugated.push_back(conj(z));
        CHECK(detail::multiset_match_distance(zs.zeros, conjugated) <=
              Real("1e-25"));
    }
}

TEST_CASE("degree bounds for zero extraction", "[zeros]") {
    PrecisionScope ps(kCtx);
    const OrthoFamily fam =
        orthonormalize(measure_area(make_disk(Complex{}, Real(1))), 6, kCtx);
    CHECK(test_util::thrown_category([&] { zeros_of(fam, 0); }) ==
          ErrorCategory::config);
    CHECK(test_util::thrown_category([&] { zeros_of(fam, 7); }) ==
          ErrorCategory::config);
}

TEST_CASE("inverse point pair for an off-centre hole", "[zeros]") {
    PrecisionScope ps(kCtx);
    const InversePair ip = inverse_points(Real("0.2"), Real("0.25"));
    CHECK_FALSE(ip.concentric);
    // Independently derived reference values.
    CHECK(abs(ip.z1 - Complex{Real("0.2139710731778811610931601802405613108229"
                                   "44966710636713791058")}) <= Real("1e-55"));
    CHECK(abs(ip.z2 - Complex{Real("4.6735289268221188389068398197594386891770"
                                   "5503328936328620894")}) <= Real("1e-54"));
    CHECK(abs(ip.module_r - Real("0.26117685854230492887452814419244904865835"
                                 "5973368509371032846")) <= Real("1e-55"));
    // z1 inside the hole, z2 its reflection outside the disk.
    CHECK(abs(ip.z1 - Complex{Real("0.2")}) < Real("0.25"));
    CHECK(abs(ip.z2) > Real(1));
    CHECK(abs(ip.z1 * ip.z2 - Complex{Real(1)}) <= pow2(-200));
}

TEST_CASE("concentric holes degenerate cleanly", "[zeros]") {
    PrecisionScope ps(kCtx);
    const InversePair ip = inverse_points(Real(0), Real("0.3"));
    CHECK(ip.concentric);
    CHECK(ip.z1.is_zero());
    CHECK(abs(ip.module_r - Real("0.3")) <= pow2(-200));
}

TEST_CASE("inverse point invariants over a parameter sweep", "[zeros]") {
    PrecisionScope ps(kCtx);
    std::uint64_t state = 0x9e3779b97f4a7c15ULL;
    auto uniform = [&state]() {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<double>(state >> 11) / 9007199254740992.0;
    };
    for (int trial = 0; trial < 1000; ++trial) {
        const double af = -0.9 + 1.8 * uniform();
        const double rf = 0.01 + (0.94 - std::abs(af)) * uniform();
        const Real a(af), rho(rf);
        if (!(abs(a) + rho < Real("0.95"))) continue;
        const InversePair ip = inverse_points(a, rho);
        if (a == 0) continue;
        const Real B = 1 + a * a - rho * rho;
        // Both points solve a z^2 - B z + a = 0 (tolerance scaled by the
        // magnitude of the terms; z2 grows like 1/a).
        CHECK(abs(a * ip.z1 * ip.z1 - B * ip.z1 + Complex{a}) <= pow2(-190));
        CHECK(abs(a * ip.z2 * ip.z2 - B * ip.z2 + Complex{a}) <=
              pow2(-200) * (1 + norm(ip.z2)));
        CHECK(abs(ip.z1 * ip.z2 - Complex{Real(1)}) <= pow2(-190));
        CHECK(abs(ip.z1 - Complex{a}) < rho + pow2(-100));
        CHECK(abs(ip.z2) > Real(1));
        CHECK(ip.module_r > Real(0));
        CHECK(ip.module_r < Real(1));
    }
}

TEST_CASE("rotated hole centres rotate the inverse points", "[zeros]") {
    PrecisionScope ps(kCtx);
    const Real a("0.2"), rho("0.25");
    const InversePair base = inverse_points(a, rho);
    const Real theta = const_pi() / 3;
    const Complex c = polar(a, theta);
    const InversePair rot = inverse_points(c, rho);
    CHECK(abs(rot.z1 - polar(Real(1), theta) * base.z1) <= pow2(-195));
    CHECK(abs(rot.z2 - polar(Real(1), theta) * base.z2) <= pow2(-190));
    CHECK(abs(rot.module_r - base.module_r) <= pow2(-195));
}

TEST_CASE("invalid hole parameters are rejected", "[zeros]") {
    PrecisionScope ps(kCtx);
    CHECK(test_util::thrown_category([] {
              inverse_points(Real("0.2"), Real(0));
          }) == ErrorCategory::config);
    CHECK_THROWS_AS(inverse_points(Real("0.8"), Real("0.25")), GeometryInvalid);
    CHECK_THROWS_AS(inverse_points(Real("0.5"), Real("0.5")), GeometryInvalid);
}

TEST_CASE("zero statistics on synthetic data", "[zeros]") {
    PrecisionScope ps(kCtx);
    const int n = 40;
    ZeroSet zs;
    zs.degree = n;
    zs.bits = kCtx.bits;
    for (int k = 0; k < n; ++k) {
        zs.zeros.push_back(polar(Real("0.3"), 2 * const_pi() * k / n));
        zs.residuals.push_back(Real(0));
    }
    const ZeroStats st = zero_stats(zs, kCtx);
    CHECK(abs(st.moduli_median - Real("0.3")) <= pow2(-195));
    CHECK(st.moduli_mad <= pow2(-195));
    CHECK(st.ks_uniform_angle <= Real(1) / n + pow2(-100));
    CHECK(st.excluded_small == 0);

    // Angularly clustered data has KS distance near one.
    ZeroSet clustered;
    clustered.degree = n;
    clustered.bits = kCtx.bits;
    for (int k = 0; k < n; ++k) {
        clustered.zeros.push_back(Complex{Real(1), Real(k) / (100 * n)});
        clustered.residuals.push_back(Real(0));
    }
    const ZeroStats sc = zero_stats(clustered, kCtx);
    CHECK(sc.ks_uniform_angle >= Real("0.4"));
}

TEST_CASE("tiny moduli are excluded from angular statistics", "[zeros]") {
    PrecisionScope ps(kCtx);
    ZeroSet zs;
    zs.degree = 6;
    zs.bits = kCtx.bits;
    for (int k = 0; k < 3; ++k) {
        zs.zeros.push_back(Complex{});
        zs.residuals.push_back(Real(0));
    }
    for (int k = 0; k < 3; ++k) {
        zs.zeros.push_back(polar(Real(1), 2 * const_pi() * k / 3));
        zs.residuals.push_back(Real(0));
    }
    const ZeroStats st = zero_stats(zs, kCtx);
    CHECK(st.excluded_small == 3);
}

TEST_CASE("median and mad on a fixed multiset", "[zeros]") {
    PrecisionScope ps(kCtx);
    ZeroSet zs;
    zs.degree = 4;
    zs.bits = kCtx.bits;
    for (int k = 1; k <= 4; ++k) {
        zs.zeros.push_back(polar(Real(k), Real(k) / 7));
        zs.residuals.push_back(Real(0));
    }
    const ZeroStats st = zero_stats(zs, kCtx);
    CHECK(abs(st.moduli_median - Real("2.5")) <= pow2(-200));
    CHECK(abs(st.moduli_mad - Real(1)) <= pow2(-200));
}

TEST_CASE("log potentials on a probe grid", "[zeros]") {
    PrecisionScope ps(kCtx);
    ZeroSet zs;
    zs.degree = 2;
    zs.bits = kCtx.bits;
    zs.zeros = {Complex{Real(1)}, Complex{Real(-1)}};
    zs.residuals = {Real(0), Real(0)};
    const std::vector<Complex> grid{Complex{Real(3)}, Complex{Real(0), Real(1)}};
    const ZeroStats st = zero_stats(zs, kCtx, grid);
    REQUIRE(st.potentials.size() == 2);
    // -(1/2) log(|3-1| |3+1|) = -(1/2) log 8.
    CHECK(abs(st.potentials[0] + log(Real(8)) / 2) <= pow2(-195));
    // |i-1| |i+1| = 2.
    CHECK(abs(st.potentials[1] + log(Real(2)) / 2) <= pow2(-195));
    CHECK_THROWS_AS(zero_stats(zs, kCtx, {Complex{Real(1)}}), PotentialAtZero);
}

TEST_CASE("equilibrium comparison against a reference circle", "[zeros]") {
    PrecisionScope ps(kCtx);
    // All zeros at the origin: U(z) = -log|z| = reference for |z| >= rho0.
    ZeroSet origin;
    origin.degree = 8;
    origin.bits = kCtx.bits;
    for (int k = 0; k < 8; ++k) {
        origin.zeros.push_back(Complex{});
        origin.residuals.push_back(Real(0));
    }
    std::vector<Complex> grid;
    for (int k = 0; k < 24; ++k)
        grid.push_back(polar(Real(2), 2 * const_pi() * k / 24 + Real("0.1")));
    CHECK(equilibrium_circle_compare(origin, Real("0.2"), grid, kCtx) <=
          pow2(-195));

    // Zeros on the circle |z| = 1/2 look like its equilibrium measure from
    // outside up to an exponentially small discretization error.
    ZeroSet ring;
    ring.degree = 64;
    ring.bits = kCtx.bits;
    for (int k = 0; k < 64; ++k) {
        ring.zeros.push_back(polar(Real("0.5"), 2 * const_pi() * k / 64));
        ring.residuals.push_back(Real(0));
    }
    CHECK(equilibrium_circle_compare(ring, Real("0.5"), grid, kCtx) <=
          pow2(-120));
}
