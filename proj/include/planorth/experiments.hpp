#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "planorth/io.hpp"
#include "planorth/svg.hpp"

namespace planorth {

/* ---------- configuration envelope ---------- */

/**
 * Every experiment consumes the same envelope: experiment name, precision,
 * degree list, probe points, output directory, seed (echoed only; nothing
 * here is randomized), and an experiment-specific "params" object.  The
 * provenance hash covers the semantic fields only, so moving the output
 * directory or reseeding does not change report contents.
 */
inline Json default_experiment_config(const std::string& name) {
    Json j;
    j["experiment"] = name;
    j["precision_bits"] = 212;
    j["degrees"] = Json::array();
    j["probe_points"] = Json::array();
    j["output_dir"] = "out";
    j["seed"] = 0;
    Json p;
    if (name == "disk-exact") {
        j["degrees"] = {100};
        p["radius"] = 1.0;
    } else if (name == "lake-rates") {
        j["degrees"] = {60};
        j["probe_points"] = {{1.5, 0.0}, {2.0, 0.0}, {3.0, 0.0}};
        p["outer_radius"] = 1.0;
        p["lake_center"] = {0.0, 0.0};
        p["lake_radius"] = 0.5;
        p["window"] = {20, 60};
    } else if (name == "ps-report") {
        j["degrees"] = {60};
        j["probe_points"] = {{1.5, 0.0}, {2.0, 0.0}, {3.0, 0.0}};
        p["mu1"] = Json{
            {"type", "lake_difference"},
            {"outer",
             {{"type", "disk"}, {"center", {0.0, 0.0}}, {"radius", 1.0}}},
            {"lake",
             {{"type", "disk"}, {"center", {0.0, 0.0}}, {"radius", 0.5}}}};
        p["mu2"] = Json{
            {"type", "area"},
            {"region",
             {{"type", "disk"}, {"center", {0.0, 0.0}}, {"radius", 0.5}}}};
    } else if (name == "pentagon") {
        j["precision_bits"] = 320;
        j["degrees"] = {40, 60, 80};
        p["island_center"] = {3.5, 0.0};
        p["island_radius"] = Json("0.6666666666666666666666666666666667");
        p["lake_center"] = {0.5, 0.0};
        p["lake_radius"] = 0.25;
        p["lake_weight"] = 2.0;
    } else if (name == "disk-hole-zeros") {
        j["precision_bits"] = 320;
        j["degrees"] = {80, 100, 120};
        p["a"] = 0.2;
        p["rho"] = 0.25;
        p["band"] = 0.05;
    } else if (name == "sector") {
        j["precision_bits"] = 512;
        j["degrees"] = {120};
        p["radius"] = 1.0;
        p["angle0_pi"] = -0.75;
        p["angle1_pi"] = 0.75;
        p["island_center"] = {3.5, 0.0};
        p["island_radius"] = Json("0.6666666666666666666666666666666667");
        p["hole_center"] = {0.5, 0.0};
        p["hole_radius"] = 0.25;
        p["near_boundary_tol"] = 0.1;
    } else if (name == "toeplitz") {
        j["precision_bits"] = 320;
        j["degrees"] = {80};
        p["island_center"] = {3.5, 0.0};
        p["island_radius"] = Json("0.6666666666666666666666666666666667");
        p["lake_center"] = {0.5, 0.0};
        p["lake_radius"] = 0.25;
        p["lake_weight"] = 2.0;
    } else if (name == "circle-vs-area") {
        j["degrees"] = {80};
        j["probe_points"] = {{1.5, 0.0}, {2.0, 0.0}, {3.0, 0.0}};
        p["radius"] = 1.0;
    } else {
        throw ConfigError("unknown experiment \"" + name + "\"");
    }
    j["params"] = std::move(p);
    return j;
}

/** Recursive overlay of user settings onto the defaults. */
inline Json merge_config(const Json& base, const Json& over) {
    if (!base.is_object() || !over.is_object()) return over;
    Json out = base;
    for (auto it = over.begin(); it != over.end(); ++it) {
        if (out.contains(it.key()))
            out[it.key()] = merge_config(out[it.key()], it.value());
        else
            out[it.key()] = it.value();
    }
    return out;
}

namespace detail {

inline Json canonical_config(const Json& cfg) {
    Json c = cfg;
    c.erase("output_dir");
    c.erase("seed");
    return c;
}

inline std::vector<int> degrees_of(const Json& cfg) {
    const Json& d = cfg.at("degrees");
    if (!d.is_array() || d.empty())
        throw ConfigError("degrees: need a nonempty ascending list");
    std::vector<int> out;
    for (const auto& x : d) {
        if (!x.is_number_integer())
            throw ConfigError("degrees: entries must be integers");
        out.push_back(x.get<int>());
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i] < 1) throw ConfigError("degrees: entries must be >= 1");
        if (i && out[i] <= out[i - 1])
            throw ConfigError("degrees: must be strictly ascending");
    }
    if (out.back() > kDefaultMomentCap - 1)
        throw ConfigError("degrees: max degree exceeds moment cap - 1");
    return out;
}

inline PrecisionContext context_of(const Json& cfg) {
    const Json& b = cfg.at("precision_bits");
    if (!b.is_number_integer())
        throw ConfigError("precision_bits: expected integer");
    return PrecisionContext(b.get<int>());
}

inline std::vector<Complex> probes_of(const Json& cfg) {
    std::vector<Complex> out;
    for (const auto& p : cfg.at("probe_points"))
        out.push_back(complex_from_json(p, "probe_points"));
    return out;
}

inline Real param_real(const Json& cfg, const char* key) {
    return real_from_json(cfg.at("params").at(key),
                          std::string("params.") + key);
}

inline Complex param_complex(const Json& cfg, const char* key) {
    return complex_from_json(cfg.at("params").at(key),
                             std::string("params.") + key);
}

/** Least-squares slope of y against x. */
inline Real ls_slope(const std::vector<Real>& x, const std::vector<Real>& y) {
    require(x.size() == y.size() && x.size() >= 2, ErrorCategory::config,
            "ls_slope: need two or more points");
    const int n = static_cast<int>(x.size());
    Real xm(0), ym(0);
    for (int i = 0; i < n; ++i) {
        xm += x[static_cast<std::size_t>(i)];
        ym += y[static_cast<std::size_t>(i)];
    }
    xm /= n;
    ym /= n;
    Real num(0), den(0);
    for (int i = 0; i < n; ++i) {
        const Real dx = x[static_cast<std::size_t>(i)] - xm;
        num += dx * (y[static_cast<std::size_t>(i)] - ym);
        den += dx * dx;
    }
    require(den > 0, ErrorCategory::numeric, "ls_slope: degenerate abscissae");
    return num / den;
}

inline Real log10_floor(const Real& x, const PrecisionContext& ctx) {
    using boost::multiprecision::log10;
    return log10((std::max)(x, pow2(-4 * ctx.bits)));
}

struct ArtifactSink {
    std::filesystem::path dir;
    std::vector<std::string> written;

    void put(const std::string& name, const std::string& content) {
        const std::filesystem::path p = dir / name;
        write_file_atomic(p, content);
        written.push_back(p.string());
    }
};

}  // namespace detail

struct ExperimentOutcome {
    Json summary;
    std::vector<std::string> artifacts;
};

/* ---------- individual experiments ---------- */

namespace experiments {

/** Closed-form check of the unit-disk family plus its degenerate zero cloud. */
inline Json disk_exact(const Json& cfg, detail::ArtifactSink& sink,
                       const std::string& hash) {
    using boost::multiprecision::abs;
    using boost::multiprecision::sqrt;
    const PrecisionContext ctx = detail::context_of(cfg);
    PrecisionScope scope(ctx);
    const int N = detail::degrees_of(cfg).back();
    const Real radius = detail::param_real(cfg, "radius");
    const Region disk = make_disk(Complex(Real(0)), radius);
    const OrthoFamily fam = orthonormalize(measure_area(disk), N, ctx);
    const Real pi = const_pi();

    std::string csv = detail::csv_join(
        {"n", "max_offmono", "gamma_rel_err", "config_hash"});
    Real worst_off(0), worst_gam(0);
    for (int n = 0; n <= N; ++n) {
        const auto un = static_cast<std::size_t>(n);
        Real off(0);
        for (std::size_t s = 0; s < un; ++s)
            off = (std::max)(off, planorth::abs(fam.coeff[un][s]));
        const Real gref = sqrt(Real(n + 1) / pi) *
                          boost::multiprecision::pow(1 / radius, n + 1);
        const Real gerr = abs(fam.gamma[un] - gref) / gref;
        worst_off = (std::max)(worst_off, off);
        worst_gam = (std::max)(worst_gam, gerr);
        csv += detail::csv_join({std::to_string(n), to_decimal(off),
                                 to_decimal(gerr), hash});
    }
    sink.put("report.csv", csv);

    const ZeroSet zs = zeros_of(fam, N);
    SvgScatter plot;
    plot.outlines.push_back(disk);
    plot.series.push_back({zs.zeros, "", "zeros n=" + std::to_string(N)});
    plot.title = "disk-exact";
    sink.put("plot.svg", render_svg(plot));

    Json summary;
    summary["max_offmono"] = to_decimal(worst_off);
    summary["max_gamma_rel_err"] = to_decimal(worst_gam);
    summary["ortho_residual"] = to_decimal(fam.ortho_residual);
    return summary;
}

/** Geometric decay rates of the concentric lake perturbation. */
inline Json lake_rates(const Json& cfg, detail::ArtifactSink& sink,
                       const std::string& hash) {
    using boost::multiprecision::log;
    const PrecisionContext ctx = detail::context_of(cfg);
    PrecisionScope scope(ctx);
    const int N = detail::degrees_of(cfg).back();
    const Real router = detail::param_real(cfg, "outer_radius");
    const Complex lc = detail::param_complex(cfg, "lake_center");
    const Real lr = detail::param_real(cfg, "lake_radius");
    const Json& win = cfg.at("params").at("window");
    const int wlo = win.at(0).get<int>();
    const int whi = win.at(1).get<int>();
    require(0 <= wlo && wlo < whi && whi <= N, ErrorCategory::config,
            "lake-rates: window must satisfy 0 <= lo < hi <= max degree");

    const Region outer = make_disk(Complex(Real(0)), router);
    const Region lake = make_disk(lc, lr);
    const MeasureExpr mu1 = measure_lake(outer, lake);
    const MeasureExpr mu2 = measure_area(lake);
    const PerturbationSetup s = make_perturbation(mu1, mu2, N, ctx);
    const PerturbationReport rep = build_report(s, detail::probes_of(cfg));
    sink.put("report.csv", report_csv(rep, hash));

    std::vector<Real> xs, ys;
    for (int n = wlo; n <= whi; ++n) {
        xs.push_back(Real(n));
        ys.push_back(log(rep.beta[static_cast<std::size_t>(n)]));
    }
    const Real slope = detail::ls_slope(xs, ys);
    const Real slope_ref = 2 * log(lr / router);

    Json j = report_json(rep, detail::canonical_config(cfg), hash);
    j["window"] = {wlo, whi};
    j["log_beta_slope"] = to_decimal(slope);
    j["log_beta_slope_ref"] = to_decimal(slope_ref);
    sink.put("report.json", j.dump(1) + "\n");

    SvgScatter plot;
    SvgScatter::Series pts, fit;
    pts.label = "log10 beta_n";
    for (int n = 1; n <= N; ++n)
        pts.pts.push_back(Complex(
            Real(n), detail::log10_floor(rep.beta[static_cast<std::size_t>(n)],
                                         ctx)));
    const Real l10 = log(Real(10));
    fit.label = "window fit";
    for (int n = wlo; n <= whi; ++n) {
        const Real yhat =
            (ys[0] + slope * (n - wlo)) / l10;  // anchored at window start
        fit.pts.push_back(Complex(Real(n), yhat));
    }
    plot.series.push_back(std::move(pts));
    plot.series.push_back(std::move(fit));
    plot.title = "lake-rates";
    sink.put("plot.svg", render_svg(plot));

    Json summary;
    summary["log_beta_slope"] = to_decimal(slope);
    summary["log_beta_slope_ref"] = to_decimal(slope_ref);
    summary["beta_0"] = to_decimal(rep.beta[0]);
    return summary;
}

/** Full perturbation battery for a configured measure pair. */
inline Json ps_report(const Json& cfg, detail::ArtifactSink& sink,
                      const std::string& hash) {
    const PrecisionContext ctx = detail::context_of(cfg);
    PrecisionScope scope(ctx);
    const int N = detail::degrees_of(cfg).back();
    const MeasureExpr mu1 =
        measure_from_json(cfg.at("params").at("mu1"), "params.mu1");
    const MeasureExpr mu2 =
        measure_from_json(cfg.at("params").at("mu2"), "params.mu2");
    const PerturbationSetup s = make_perturbation(mu1, mu2, N, ctx);
    const PerturbationReport rep = build_report(s, detail::probes_of(cfg));
    sink.put("report.csv", report_csv(rep, hash));
    Json j = report_json(rep, detail::canonical_config(cfg), hash);
    sink.put("report.json", j.dump(1) + "\n");

    SvgScatter plot;
    {
        SvgScatter::Series se;
        se.label = "log10 ps_norm^2";
        for (int n = 0; n <= N; ++n) {
            const Real p = rep.ps[static_cast<std::size_t>(n)];
            se.pts.push_back(Complex(Real(n), detail::log10_floor(p * p, ctx)));
        }
        plot.series.push_back(std::move(se));
    }
    for (std::size_t k = 0; k < rep.probes.size(); ++k) {
        SvgScatter::Series se;
        se.label = "log10 |ratio-1| probe " + std::to_string(k);
        for (int n = 0; n <= N; ++n) {
            const auto un = static_cast<std::size_t>(n);
            if (!rep.ratio_ok[k][un]) continue;
            const Real dev = planorth::abs(rep.ratio[k][un] - Complex(Real(1)));
            se.pts.push_back(Complex(Real(n), detail::log10_floor(dev, ctx)));
        }
        plot.series.push_back(std::move(se));
    }
    plot.title = "ps-report";
    sink.put("plot.svg", render_svg(plot));

    Json summary;
    summary["beta_max"] =
        to_decimal(*std::max_element(rep.beta.begin(), rep.beta.end()));
    summary["eps_tail_0"] = to_decimal(rep.eps[0]);
    return summary;
}

struct PentagonGeometry {
    Region pentagon;
    Region island;
    Region archipelago;
    Region lake;
    MeasureExpr mu1;
    MeasureExpr mu2;
};

inline PentagonGeometry pentagon_geometry(const Json& cfg) {
    const Real pi = const_pi();
    std::vector<Complex> vs;
    for (int k = 0; k < 5; ++k) vs.push_back(polar(Real(1), 2 * pi * k / 5));
    PentagonGeometry g{make_polygon(vs),
                       make_disk(detail::param_complex(cfg, "island_center"),
                                 detail::param_real(cfg, "island_radius")),
                       Region{},
                       make_disk(detail::param_complex(cfg, "lake_center"),
                                 detail::param_real(cfg, "lake_radius")),
                       MeasureExpr{},
                       MeasureExpr{}};
    g.archipelago = make_union({g.pentagon, g.island});
    g.mu1 = measure_lake(g.archipelago, g.lake);
    g.mu2 = measure_scaled(detail::param_real(cfg, "lake_weight"),
                           measure_area(g.lake));
    return g;
}

/**
 * Zeros of the perturbed and unperturbed families of the pentagon-island
 * archipelago with a weighted lake, at several degrees, as two scatter
 * plots plus the zero listing.
 */
inline Json pentagon(const Json& cfg, detail::ArtifactSink& sink,
                     const std::string& hash) {
    const PrecisionContext ctx = detail::context_of(cfg);
    PrecisionScope scope(ctx);
    const std::vector<int> degrees = detail::degrees_of(cfg);
    const int N = degrees.back();
    const PentagonGeometry g = pentagon_geometry(cfg);
    const PerturbationSetup s = make_perturbation(g.mu1, g.mu2, N, ctx);
    const Hull hull = support_hull(s.mu0);
    const std::vector<Real> beta = beta_sequence(s);

    std::string csv = detail::csv_join(
        {"family", "degree", "re", "im", "residual", "config_hash"});
    Json per_degree = Json::array();
    SvgScatter plot0, plot1;
    for (const Region& r : {g.pentagon, g.island}) {
        plot0.outlines.push_back(r);
        plot1.outlines.push_back(r);
    }
    const auto& lake_disk = std::get<Disk>(g.lake.v);
    for (auto* p : {&plot0, &plot1})
        p->ref_circles.push_back({lake_disk.center, lake_disk.radius});
    plot0.title = "pentagon: zeros of p_n(mu0)";
    plot1.title = "pentagon: zeros of p_n(mu1)";

    for (const int d : degrees) {
        const ZeroSet z0 = zeros_of(s.fam0, d);
        const ZeroSet z1 = zeros_of(s.fam1, d);
        for (const auto* z : {&z0, &z1}) {
            const bool is0 = z == &z0;
            for (std::size_t i = 0; i < z->zeros.size(); ++i)
                csv += detail::csv_join({is0 ? "mu0" : "mu1",
                                         std::to_string(d),
                                         to_decimal(z->zeros[i].re),
                                         to_decimal(z->zeros[i].im),
                                         to_decimal(z->residuals[i]), hash});
        }
        const HullCheck h0 = hull_check(z0, hull);
        const HullCheck h1 = hull_check(z1, hull);
        Json pd;
        pd["degree"] = d;
        pd["beta"] = to_decimal(beta[static_cast<std::size_t>(d)]);
        pd["hull_ok_mu0"] = h0.ok;
        pd["hull_ok_mu1"] = h1.ok;
        pd["stats_mu0"] = stats_json(z0, zero_stats(z0, ctx));
        pd["stats_mu1"] = stats_json(z1, zero_stats(z1, ctx));
        per_degree.push_back(std::move(pd));
        const std::string label = "n=" + std::to_string(d);
        plot0.series.push_back({z0.zeros, "", label});
        plot1.series.push_back({z1.zeros, "", label});
    }
    sink.put("report.csv", csv);
    Json j;
    j["config"] = detail::canonical_config(cfg);
    j["config_hash"] = hash;
    j["per_degree"] = std::move(per_degree);
    sink.put("report.json", j.dump(1) + "\n");
    sink.put("plot_mu0.svg", render_svg(plot0));
    sink.put("plot_mu1.svg", render_svg(plot1));

    Json summary;
    summary["degrees"] = cfg.at("degrees");
    summary["beta_last"] = to_decimal(beta[static_cast<std::size_t>(N)]);
    return summary;
}

/**
 * Zeros of the disk-with-offset-hole family: the cloud should settle on the
 * circle |z| = |z1| determined by the inverse-point construction.
 */
inline Json disk_hole_zeros(const Json& cfg, detail::ArtifactSink& sink,
                            const std::string& hash) {
    using boost::multiprecision::abs;
    const PrecisionContext ctx = detail::context_of(cfg);
    PrecisionScope scope(ctx);
    const std::vector<int> degrees = detail::degrees_of(cfg);
    const int N = degrees.back();
    const Real a = detail::param_real(cfg, "a");
    const Real rho = detail::param_real(cfg, "rho");
    const Real band = detail::param_real(cfg, "band");
    const InversePair ip = inverse_points(a, rho);
    const Real target = planorth::abs(ip.z1);

    const Region outer = make_disk(Complex(Real(0)), Real(1));
    const Region hole = make_disk(Complex(a), rho);
    const MeasureExpr mu = measure_lake(outer, hole);
    const OrthoFamily fam = orthonormalize(mu, N, ctx);
    const Hull hull = support_hull(mu);

    std::vector<ZeroSet> sets;
    Json per_degree = Json::array();
    SvgScatter plot;
    plot.outlines.push_back(outer);
    plot.curve_outlines.push_back(Curve{CircleC{Complex(a), rho}});
    plot.ref_circles.push_back({Complex(Real(0)), target});
    plot.title = "disk-hole-zeros";
    int best_degree = degrees.front();
    Real best_frac(-1);
    for (const int d : degrees) {
        ZeroSet zs = zeros_of(fam, d);
        const ZeroStats st = zero_stats(zs, ctx);
        const HullCheck hc = hull_check(zs, hull);
        int inside = 0;
        for (const auto& z : zs.zeros)
            if (abs(planorth::abs(z) - target) < band) ++inside;
        const Real frac = Real(inside) / d;
        Json pd;
        pd["degree"] = d;
        pd["stats"] = stats_json(zs, st);
        pd["hull_ok"] = hc.ok;
        pd["frac_in_band"] = to_decimal(frac);
        per_degree.push_back(std::move(pd));
        if (frac > best_frac) {
            best_frac = frac;
            best_degree = d;
        }
        plot.series.push_back({zs.zeros, "", "n=" + std::to_string(d)});
        sets.push_back(std::move(zs));
    }
    sink.put("report.csv", zeros_csv(sets, hash));
    Json j;
    j["config"] = detail::canonical_config(cfg);
    j["config_hash"] = hash;
    j["z1"] = json_of(ip.z1);
    j["z2"] = json_of(ip.z2);
    j["module_r"] = to_decimal(ip.module_r);
    j["target_modulus"] = to_decimal(target);
    j["band"] = to_decimal(band);
    j["per_degree"] = std::move(per_degree);
    j["best_degree"] = best_degree;
    j["best_frac_in_band"] = to_decimal(best_frac);
    sink.put("report.json", j.dump(1) + "\n");
    sink.put("plot.svg", render_svg(plot));

    Json summary;
    summary["z1"] = json_of(ip.z1);
    summary["best_degree"] = best_degree;
    summary["best_frac_in_band"] = to_decimal(best_frac);
    return summary;
}

/**
 * Sector-plus-island archipelago with a hole: single-degree zero cloud and
 * the fraction of zeros hugging the sector boundary.
 */
inline Json sector(const Json& cfg, detail::ArtifactSink& sink,
                   const std::string& hash) {
    const PrecisionContext ctx = detail::context_of(cfg);
    PrecisionScope scope(ctx);
    const std::vector<int> degrees = detail::degrees_of(cfg);
    const int N = degrees.back();
    const Region sec = make_sector(Complex(Real(0)),
                                   detail::param_real(cfg, "radius"),
                                   detail::param_real(cfg, "angle0_pi"),
                                   detail::param_real(cfg, "angle1_pi"));
    const Region island =
        make_disk(detail::param_complex(cfg, "island_center"),
                  detail::param_real(cfg, "island_radius"));
    const Region arch = make_union({sec, island});
    const Region hole = make_disk(detail::param_complex(cfg, "hole_center"),
                                  detail::param_real(cfg, "hole_radius"));
    const MeasureExpr mu = measure_lake(arch, hole);
    const Real near_tol = detail::param_real(cfg, "near_boundary_tol");

    const OrthoFamily fam = orthonormalize(mu, N, ctx);
    const Hull hull = support_hull(mu);
    std::vector<ZeroSet> sets;
    Json per_degree = Json::array();
    SvgScatter plot;
    plot.outlines.push_back(sec);
    plot.outlines.push_back(island);
    const auto& hd = std::get<Disk>(hole.v);
    plot.ref_circles.push_back({hd.center, hd.radius});
    plot.title = "sector";
    for (const int d : degrees) {
        ZeroSet zs = zeros_of(fam, d);
        const ZeroStats st = zero_stats(zs, ctx);
        const HullCheck hc = hull_check(zs, hull);
        int near = 0;
        for (const auto& z : zs.zeros)
            if (distance_to_boundary(sec, z) <= near_tol) ++near;
        const Real frac = Real(near) / d;
        Json pd;
        pd["degree"] = d;
        pd["stats"] = stats_json(zs, st);
        pd["hull_ok"] = hc.ok;
        pd["frac_near_sector_boundary"] = to_decimal(frac);
        per_degree.push_back(std::move(pd));
        plot.series.push_back({zs.zeros, "", "n=" + std::to_string(d)});
        sets.push_back(std::move(zs));
    }
    sink.put("report.csv", zeros_csv(sets, hash));
    Json j;
    j["config"] = detail::canonical_config(cfg);
    j["config_hash"] = hash;
    j["near_boundary_tol"] = to_decimal(near_tol);
    j["per_degree"] = per_degree;
    sink.put("report.json", j.dump(1) + "\n");
    sink.put("plot.svg", render_svg(plot));

    Json summary;
    summary["per_degree"] = std::move(per_degree);
    return summary;
}

/**
 * Hessenberg diagonals as Toeplitz-limit diagnostics: the disk family
 * against its closed form, and the pentagon-island mu0 family on the
 * diagonals k in {-1, 0, 1}.
 */
inline Json toeplitz(const Json& cfg, detail::ArtifactSink& sink,
                     const std::string& hash) {
    using boost::multiprecision::abs;
    using boost::multiprecision::sqrt;
    const PrecisionContext ctx = detail::context_of(cfg);
    PrecisionScope scope(ctx);
    const int hi = detail::degrees_of(cfg).back();
    const int N = hi + 1;

    const OrthoFamily disk_fam = orthonormalize(
        measure_area(make_disk(Complex(Real(0)), Real(1))), N, ctx);
    const PentagonGeometry g = pentagon_geometry(cfg);
    const MeasureExpr mu0 = measure_sum({g.mu1, g.mu2});
    const OrthoFamily pent_fam = orthonormalize(mu0, N, ctx);

    std::string csv = detail::csv_join({"series", "k", "n", "b_re", "b_im",
                                        "ref_re", "abs_err", "config_hash"});
    Json summary;
    SvgScatter plot;
    plot.title = "toeplitz";

    const ToeplitzDiagnostic dd = toeplitz_diagnostic(disk_fam, -1, 0, hi);
    Real worst(0);
    {
        SvgScatter::Series se;
        se.color = "#000000";
        se.label = "disk k=-1";
        for (int n = 0; n <= hi; ++n) {
            const auto& b = dd.values[static_cast<std::size_t>(n)];
            const Real ref = sqrt(Real(n + 1) / (n + 2));
            const Real err = planorth::abs(b - Complex(ref));
            worst = (std::max)(worst, err);
            csv += detail::csv_join({"disk", "-1", std::to_string(n),
                                     to_decimal(b.re), to_decimal(b.im),
                                     to_decimal(ref), to_decimal(err), hash});
            se.pts.push_back(Complex(Real(n), planorth::abs(b)));
        }
        plot.series.push_back(std::move(se));
    }
    summary["disk_max_abs_err"] = to_decimal(worst);
    summary["disk_last_quarter_osc"] = to_decimal(dd.last_quarter_osc);

    const char* colors[3] = {"#c02020", "#2040c0", "#208040"};
    Json pent = Json::array();
    for (const int k : {-1, 0, 1}) {
        const int lo = (std::max)(k, 0);
        const ToeplitzDiagnostic td =
            toeplitz_diagnostic(pent_fam, k, lo, hi);
        SvgScatter::Series se;
        se.color = colors[k + 1];
        se.label = "pentagon k=" + std::to_string(k);
        for (int n = lo; n <= hi; ++n) {
            const auto& b = td.values[static_cast<std::size_t>(n - lo)];
            csv += detail::csv_join({"pentagon", std::to_string(k),
                                     std::to_string(n), to_decimal(b.re),
                                     to_decimal(b.im), "", "", hash});
            se.pts.push_back(Complex(Real(n), planorth::abs(b)));
        }
        plot.series.push_back(std::move(se));
        Json pk;
        pk["k"] = k;
        pk["last_quarter_osc"] = to_decimal(td.last_quarter_osc);
        pent.push_back(std::move(pk));
    }
    summary["pentagon"] = pent;
    sink.put("report.csv", csv);
    Json j;
    j["config"] = detail::canonical_config(cfg);
    j["config_hash"] = hash;
    j["summary"] = summary;
    sink.put("report.json", j.dump(1) + "\n");
    sink.put("plot.svg", render_svg(plot));
    return summary;
}

/** Unit circle arclength vs unit disk area: ps_norm^2 = 1/(2(n+1)). */
inline Json circle_vs_area(const Json& cfg, detail::ArtifactSink& sink,
                           const std::string& hash) {
    using boost::multiprecision::abs;
    const PrecisionContext ctx = detail::context_of(cfg);
    PrecisionScope scope(ctx);
    const int N = detail::degrees_of(cfg).back();
    const Real radius = detail::param_real(cfg, "radius");
    const MeasureExpr mu1 =
        measure_arclength(Curve{CircleC{Complex(Real(0)), radius}});
    const MeasureExpr mu2 =
        measure_area(make_disk(Complex(Real(0)), radius));
    const PerturbationSetup s = make_perturbation(mu1, mu2, N, ctx);
    const PerturbationReport rep = build_report(s, detail::probes_of(cfg));
    sink.put("report.csv", report_csv(rep, hash));

    Real worst(0);
    for (int n = 0; n <= N; ++n) {
        const auto un = static_cast<std::size_t>(n);
        const Real ref = radius / (2 * (n + 1));
        const Real got = rep.ps[un] * rep.ps[un];
        worst = (std::max)(worst, abs(got - ref) / ref);
    }
    Json j = report_json(rep, detail::canonical_config(cfg), hash);
    j["ps_sq_rel_err_max"] = to_decimal(worst);
    sink.put("report.json", j.dump(1) + "\n");

    SvgScatter plot;
    SvgScatter::Series got, ref;
    got.label = "log10 ps_norm^2";
    ref.label = "log10 r/(2(n+1))";
    for (int n = 0; n <= N; ++n) {
        const auto un = static_cast<std::size_t>(n);
        got.pts.push_back(Complex(
            Real(n), detail::log10_floor(rep.ps[un] * rep.ps[un], ctx)));
        ref.pts.push_back(Complex(
            Real(n), detail::log10_floor(radius / (2 * (n + 1)), ctx)));
    }
    plot.series.push_back(std::move(got));
    plot.series.push_back(std::move(ref));
    plot.title = "circle-vs-area";
    sink.put("plot.svg", render_svg(plot));

    Json summary;
    summary["ps_sq_rel_err_max"] = to_decimal(worst);
    return summary;
}

}  // namespace experiments

/* ---------- dispatcher ---------- */

inline ExperimentOutcome run_experiment(const Json& cfg) {
    if (!cfg.is_object() || !cfg.contains("experiment") ||
        !cfg.at("experiment").is_string())
        throw ConfigError("config: missing experiment name");
    const std::string name = cfg.at("experiment").get<std::string>();
    const std::string hash = config_hash(detail::canonical_config(cfg));
    detail::ArtifactSink sink;
    sink.dir = std::filesystem::path(
                   cfg.at("output_dir").get<std::string>()) /
               name;

    Json summary;
    if (name == "disk-exact")
        summary = experiments::disk_exact(cfg, sink, hash);
    else if (name == "lake-rates")
        summary = experiments::lake_rates(cfg, sink, hash);
    else if (name == "ps-report")
        summary = experiments::ps_report(cfg, sink, hash);
    else if (name == "pentagon")
        summary = experiments::pentagon(cfg, sink, hash);
    else if (name == "disk-hole-zeros")
        summary = experiments::disk_hole_zeros(cfg, sink, hash);
    else if (name == "sector")
        summary = experiments::sector(cfg, sink, hash);
    else if (name == "toeplitz")
        summary = experiments::toeplitz(cfg, sink, hash);
    else if (name == "circle-vs-area")
        summary = experiments::circle_vs_area(cfg, sink, hash);
    else
        throw ConfigError("unknown experiment \"" + name + "\"");

    summary["experiment"] = name;
    summary["config_hash"] = hash;
    return ExperimentOutcome{std::move(summary), std::move(sink.written)};
}

}  // namespace planorth
