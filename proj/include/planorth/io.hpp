#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "planorth/orthopoly.hpp"
#include "planorth/perturbation.hpp"
#include "planorth/zeros.hpp"

namespace planorth {

using Json = nlohmann::ordered_json;

/* ---------- number handling ---------- */

/**
 * Config numbers may arrive as JSON numbers or as decimal strings; strings
 * preserve digits beyond double precision.  Output is always full-precision
 * decimal strings.
 */
inline Real real_from_json(const Json& j, const std::string& where) {
    if (j.is_string()) return real_from_string(j.get<std::string>());
    if (j.is_number()) return real_from_string(j.dump());
    throw ConfigError(where + ": expected number or decimal string");
}

inline Complex complex_from_json(const Json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2)
        throw ConfigError(where + ": expected [re, im]");
    return Complex(real_from_json(j[0], where + "[0]"),
                   real_from_json(j[1], where + "[1]"));
}

inline Json json_of(const Real& x) { return Json(to_decimal(x)); }

inline Json json_of(const Complex& z) {
    return Json::array({to_decimal(z.re), to_decimal(z.im)});
}

/* ---------- geometry schemas ---------- */

inline Json json_of(const Region& g);

namespace detail {

inline std::string type_of(const Json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        throw ConfigError(where + ": expected object with \"type\"");
    return j["type"].get<std::string>();
}

inline const Json& field(const Json& j, const char* key,
                         const std::string& where) {
    if (!j.contains(key))
        throw ConfigError(where + ": missing \"" + key + "\"");
    return j[key];
}

}  // namespace detail

inline Region region_from_json(const Json& j,
                               const std::string& where = "region") {
    const std::string t = detail::type_of(j, where);
    if (t == "disk")
        return make_disk(
            complex_from_json(detail::field(j, "center", where),
                              where + ".center"),
            real_from_json(detail::field(j, "radius", where),
                           where + ".radius"));
    if (t == "sector")
        return make_sector(
            complex_from_json(detail::field(j, "center", where),
                              where + ".center"),
            real_from_json(detail::field(j, "radius", where),
                           where + ".radius"),
            real_from_json(detail::field(j, "angle0_pi", where),
                           where + ".angle0_pi"),
            real_from_json(detail::field(j, "angle1_pi", where),
                           where + ".angle1_pi"));
    if (t == "polygon") {
        const Json& vs = detail::field(j, "vertices", where);
        if (!vs.is_array() || vs.size() < 3)
            throw ConfigError(where + ".vertices: need at least 3 entries");
        std::vector<Complex> v;
        for (std::size_t i = 0; i < vs.size(); ++i)
            v.push_back(complex_from_json(vs[i], where + ".vertices"));
        return make_polygon(v);
    }
    if (t == "union") {
        const Json& ps = detail::field(j, "parts", where);
        if (!ps.is_array() || ps.empty())
            throw ConfigError(where + ".parts: need a nonempty array");
        std::vector<Region> parts;
        for (std::size_t i = 0; i < ps.size(); ++i)
            parts.push_back(
                region_from_json(ps[i], where + ".parts[" +
                                            std::to_string(i) + "]"));
        return make_union(std::move(parts));
    }
    throw ConfigError(where + ": unknown region type \"" + t + "\"");
}

inline Json json_of(const Region& g) {
    Json j;
    if (const auto* d = std::get_if<Disk>(&g.v)) {
        j["type"] = "disk";
        j["center"] = json_of(d->center);
        j["radius"] = json_of(d->radius);
    } else if (const auto* s = std::get_if<SectorR>(&g.v)) {
        j["type"] = "sector";
        j["center"] = json_of(s->center);
        j["radius"] = json_of(s->radius);
        j["angle0_pi"] = json_of(s->a0_pi);
        j["angle1_pi"] = json_of(s->a1_pi);
    } else if (const auto* p = std::get_if<PolygonR>(&g.v)) {
        j["type"] = "polygon";
        Json vs = Json::array();
        for (const auto& z : p->v) vs.push_back(json_of(z));
        j["vertices"] = std::move(vs);
    } else {
        const auto& u = std::get<RegionUnion>(g.v);
        j["type"] = "union";
        Json ps = Json::array();
        for (const auto& part : u.parts) ps.push_back(json_of(part));
        j["parts"] = std::move(ps);
    }
    return j;
}

inline Curve curve_from_json(const Json& j,
                             const std::string& where = "curve") {
    const std::string t = detail::type_of(j, where);
    if (t == "circle")
        return Curve{CircleC{
            complex_from_json(detail::field(j, "center", where),
                              where + ".center"),
            real_from_json(detail::field(j, "radius", where),
                           where + ".radius")}};
    if (t == "ellipse")
        return Curve{EllipseC{
            complex_from_json(detail::field(j, "center", where),
                              where + ".center"),
            real_from_json(detail::field(j, "a", where), where + ".a"),
            real_from_json(detail::field(j, "b", where), where + ".b")}};
    if (t == "polygon_boundary") {
        const Json& vs = detail::field(j, "vertices", where);
        if (!vs.is_array() || vs.size() < 3)
            throw ConfigError(where + ".vertices: need at least 3 entries");
        std::vector<Complex> v;
        for (std::size_t i = 0; i < vs.size(); ++i)
            v.push_back(complex_from_json(vs[i], where + ".vertices"));
        const Region pg = make_polygon(v);  // reuse simplicity validation
        return Curve{PolygonBoundaryC{std::get<PolygonR>(pg.v)}};
    }
    throw ConfigError(where + ": unknown curve type \"" + t + "\"");
}

inline Json json_of(const Curve& c) {
    Json j;
    if (const auto* ci = std::get_if<CircleC>(&c.v)) {
        j["type"] = "circle";
        j["center"] = json_of(ci->center);
        j["radius"] = json_of(ci->radius);
    } else if (const auto* e = std::get_if<EllipseC>(&c.v)) {
        j["type"] = "ellipse";
        j["center"] = json_of(e->center);
        j["a"] = json_of(e->a);
        j["b"] = json_of(e->b);
    } else {
        const auto& p = std::get<PolygonBoundaryC>(c.v);
        j["type"] = "polygon_boundary";
        Json vs = Json::array();
        for (const auto& z : p.poly.v) vs.push_back(json_of(z));
        j["vertices"] = std::move(vs);
    }
    return j;
}

/* ---------- measure schema ---------- */

inline MeasureExpr measure_from_json(const Json& j,
                                     const std::string& where = "measure") {
    const std::string t = detail::type_of(j, where);
    if (t == "area")
        return measure_area(
            region_from_json(detail::field(j, "region", where),
                             where + ".region"));
    if (t == "arclength")
        return measure_arclength(
            curve_from_json(detail::field(j, "curve", where),
                            where + ".curve"));
    if (t == "atom")
        return measure_atom(
            complex_from_json(detail::field(j, "point", where),
                              where + ".point"),
            real_from_json(detail::field(j, "mass", where), where + ".mass"));
    if (t == "scaled")
        return measure_scaled(
            real_from_json(detail::field(j, "weight", where),
                           where + ".weight"),
            measure_from_json(detail::field(j, "measure", where),
                              where + ".measure"));
    if (t == "sum") {
        const Json& ts = detail::field(j, "terms", where);
        if (!ts.is_array() || ts.empty())
            throw ConfigError(where + ".terms: need a nonempty array");
        std::vector<MeasureExpr> terms;
        for (std::size_t i = 0; i < ts.size(); ++i)
            terms.push_back(measure_from_json(
                ts[i], where + ".terms[" + std::to_string(i) + "]"));
        return measure_sum(std::move(terms));
    }
    if (t == "lake_difference")
        return measure_lake(
            region_from_json(detail::field(j, "outer", where),
                             where + ".outer"),
            region_from_json(detail::field(j, "lake", where),
                             where + ".lake"));
    throw ConfigError(where + ": unknown measure type \"" + t + "\"");
}

inline Json json_of(const MeasureExpr& m) {
    Json j;
    if (const auto* a = std::get_if<AreaM>(&m.v)) {
        j["type"] = "area";
        j["region"] = json_of(a->region);
    } else if (const auto* l = std::get_if<ArclengthM>(&m.v)) {
        j["type"] = "arclength";
        j["curve"] = json_of(l->curve);
    } else if (const auto* at = std::get_if<AtomM>(&m.v)) {
        j["type"] = "atom";
        j["point"] = json_of(at->point);
        j["mass"] = json_of(at->mass);
    } else if (const auto* sc = std::get_if<ScaledM>(&m.v)) {
        j["type"] = "scaled";
        j["weight"] = json_of(sc->weight);
        j["measure"] = json_of(*sc->inner);
    } else if (const auto* su = std::get_if<SumM>(&m.v)) {
        j["type"] = "sum";
        Json ts = Json::array();
        for (const auto& term : su->terms) ts.push_back(json_of(term));
        j["terms"] = std::move(ts);
    } else {
        const auto& lk = std::get<LakeDiffM>(m.v);
        j["type"] = "lake_difference";
        j["outer"] = json_of(lk.outer);
        j["lake"] = json_of(lk.lake);
    }
    return j;
}

/* ---------- family export ---------- */

/** Full-precision snapshot of a family; coefficients are in the z basis. */
inline Json json_of_family(const OrthoFamily& fam) {
    PrecisionScope scope(fam.ctx);
    Json j;
    j["measure"] = json_of(fam.measure);
    j["N"] = fam.N;
    j["center"] = json_of(fam.center);
    j["precision_bits"] = fam.ctx.bits;
    Json gs = Json::array();
    for (const auto& g : fam.gamma) gs.push_back(to_decimal(g));
    j["gamma"] = std::move(gs);
    Json cs = Json::array();
    for (int n = 0; n <= fam.N; ++n) {
        const Polynomial pz = fam.poly_z(n);
        Json row = Json::array();
        for (const auto& c : pz.c) row.push_back(json_of(c));
        cs.push_back(std::move(row));
    }
    j["coeff"] = std::move(cs);
    Json cols = Json::array();
    for (const auto& col : fam.hess) {
        Json jc = Json::array();
        for (const auto& b : col) jc.push_back(json_of(b));
        cols.push_back(std::move(jc));
    }
    j["hess"] = Json{{"columns", std::move(cols)}};
    j["ortho_residual"] = to_decimal(fam.ortho_residual);
    return j;
}

/* ---------- provenance hash ---------- */

/** FNV-1a 64-bit over the canonical (dumped) config text. */
inline std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 14695981039346656037ull;
    for (const unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string config_hash(const Json& config) {
    const std::uint64_t h = fnv1a64(config.dump());
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i)
        out[static_cast<std::size_t>(i)] =
            hex[(h >> (4 * (15 - i))) & 0xf];
    return out;
}

/* ---------- atomic file output ---------- */

/** Writes via a sibling temp file and renames, so readers never see a torn file. */
inline void write_file_atomic(const std::filesystem::path& path,
                              const std::string& content) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot open " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw ConfigError("short write to " + tmp.string());
    }
    fs::rename(tmp, path);
}

/* ---------- CSV writers ---------- */

namespace detail {

inline std::string csv_join(const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) line += ',';
        line += cells[i];
    }
    line += '\n';
    return line;
}

}  // namespace detail

/**
 * Perturbation report CSV: one row per degree with the norm/bound columns
 * followed by (ratio_re, ratio_im, ratio_bound, lam_ratio) per probe and
 * the config hash.  Cells hit by a vanishing denominator are left empty.
 */
inline std::string report_csv(const PerturbationReport& r,
                              const std::string& hash) {
    std::vector<std::string> head{"n",       "ps_norm", "ps_norm0",
                                  "beta",    "beta_lo", "beta_hi",
                                  "diff0",   "diff1",   "eps_tail"};
    for (std::size_t k = 0; k < r.probes.size(); ++k) {
        const std::string s = std::to_string(k);
        head.push_back("ratio" + s + "_re");
        head.push_back("ratio" + s + "_im");
        head.push_back("ratio" + s + "_bound");
        head.push_back("lam_ratio" + s);
    }
    head.push_back("config_hash");
    std::string out = detail::csv_join(head);
    using boost::multiprecision::sqrt;
    for (int n = 0; n <= r.N; ++n) {
        const auto un = static_cast<std::size_t>(n);
        std::vector<std::string> row{
            std::to_string(n),
            to_decimal(r.ps[un]),
            to_decimal(r.ps0[un]),
            to_decimal(r.beta[un]),
            to_decimal(r.beta_lo[un]),
            to_decimal(r.beta_hi[un]),
            to_decimal(sqrt((std::max)(r.d0sq[un], Real(0)))),
            to_decimal(sqrt((std::max)(r.d1sq[un], Real(0)))),
            to_decimal(r.eps[un])};
        for (std::size_t k = 0; k < r.probes.size(); ++k) {
            if (r.ratio_ok[k][un]) {
                row.push_back(to_decimal(r.ratio[k][un].re));
                row.push_back(to_decimal(r.ratio[k][un].im));
            } else {
                row.push_back("");
                row.push_back("");
            }
            row.push_back(to_decimal(r.ratio_bound[k][un]));
            row.push_back(to_decimal(r.lam_ratio[k][un]));
        }
        row.push_back(hash);
        out += detail::csv_join(row);
    }
    return out;
}

/** JSON mirror of the report with full-precision decimal strings. */
inline Json report_json(const PerturbationReport& r, const Json& config,
                        const std::string& hash) {
    Json j;
    j["config"] = config;
    j["config_hash"] = hash;
    j["N"] = r.N;
    auto arr = [](const std::vector<Real>& v) {
        Json a = Json::array();
        for (const auto& x : v) a.push_back(to_decimal(x));
        return a;
    };
    j["ps_norm"] = arr(r.ps);
    j["ps_norm0"] = arr(r.ps0);
    j["beta"] = arr(r.beta);
    j["beta_lo"] = arr(r.beta_lo);
    j["beta_hi"] = arr(r.beta_hi);
    j["diff0_sq"] = arr(r.d0sq);
    j["diff1_sq"] = arr(r.d1sq);
    j["eps_tail"] = arr(r.eps);
    Json probes = Json::array();
    for (std::size_t k = 0; k < r.probes.size(); ++k) {
        Json p;
        p["point"] = json_of(r.probes[k]);
        Json ratio = Json::array(), bound = Json::array(),
             lam = Json::array();
        for (int n = 0; n <= r.N; ++n) {
            const auto un = static_cast<std::size_t>(n);
            ratio.push_back(r.ratio_ok[k][un] ? json_of(r.ratio[k][un])
                                              : Json());
            bound.push_back(to_decimal(r.ratio_bound[k][un]));
            lam.push_back(to_decimal(r.lam_ratio[k][un]));
        }
        p["ratio"] = std::move(ratio);
        p["ratio_bound"] = std::move(bound);
        p["lam_ratio"] = std::move(lam);
        probes.push_back(std::move(p));
    }
    j["probes"] = std::move(probes);
    return j;
}

/** Zero listing CSV: re, im, residual, config_hash. */
inline std::string zeros_csv(const std::vector<ZeroSet>& sets,
                             const std::string& hash) {
    std::string out =
        detail::csv_join({"degree", "re", "im", "residual", "config_hash"});
    for (const auto& zs : sets)
        for (std::size_t i = 0; i < zs.zeros.size(); ++i)
            out += detail::csv_join({std::to_string(zs.degree),
                                     to_decimal(zs.zeros[i].re),
                                     to_decimal(zs.zeros[i].im),
                                     to_decimal(zs.residuals[i]), hash});
    return out;
}

inline Json stats_json(const ZeroSet& zs, const ZeroStats& st) {
    Json j;
    j["degree"] = zs.degree;
    j["precision_bits"] = zs.bits;
    j["moduli_median"] = to_decimal(st.moduli_median);
    j["moduli_mad"] = to_decimal(st.moduli_mad);
    j["ks_uniform_angle"] = to_decimal(st.ks_uniform_angle);
    j["excluded_small"] = st.excluded_small;
    return j;
}

}  // namespace planorth
