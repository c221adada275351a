#pragma once

#include <json.hpp>

#include "kch/augmentation.hpp"
#include "kch/curve.hpp"
#include "kch/reps.hpp"

namespace kch {

using Json = nlohmann::json;

inline Json to_json(Cplx z) { return Json::array({z.real(), z.imag()}); }
inline Cplx complex_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2) throw ParseError("complex value must be [re, im]");
    return Cplx(j[0].get<double>(), j[1].get<double>());
}

inline Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
        rows.push_back(row);
    }
    return rows;
}

/// Solver output: { "mu0": [re,im], "solutions": [ { "lambda0": [re,im],
/// "values": {"a12": [re,im], ...}, "residual": r } ] }
inline Json solve_result_json(const IdealPresentation& ideal, Cplx mu0, const SolveResult& res) {
    Json out;
    out["mu0"] = to_json(mu0);
    out["attempts_total"] = res.attempts_total;
    out["attempts_converged"] = res.attempts_converged;
    Json sols = Json::array();
    for (std::size_t t = 0; t < res.solutions.size(); ++t) {
        const AugAssignment& a = res.solutions[t];
        Json s;
        s["lambda0"] = to_json(a.lambda0);
        Json values;
        for (const auto& [g, v] : a.values)
            values["a" + std::to_string(g.i) + std::to_string(g.j)] = to_json(v);
        s["values"] = values;
        s["residual"] = is_augmentation(ideal, a, 1.0).max_abs;
        s["cluster_size"] = res.cluster_sizes[t];
        sols.push_back(s);
    }
    out["solutions"] = sols;
    return out;
}

inline Json ideal_json(const IdealPresentation& ideal) {
    Json out;
    out["n"] = ideal.n;
    out["writhe"] = ideal.writhe;
    out["braid"] = ideal.braid;
    Json gens = Json::array();
    for (const auto& g : ideal.generators) {
        Json e;
        e["family"] = g.family;
        e["i"] = g.i;
        e["j"] = g.j;
        e["poly"] = g.poly.str();
        gens.push_back(e);
    }
    out["generators"] = gens;
    return out;
}

/// Representation report: matrices row-major as [re,im] pairs, residuals,
/// verdicts.
inline Json rep_report_json(const KCHRep& rep, const RepReport& report, double cord_residual) {
    Json out;
    out["presentation"] = rep.pres.name;
    out["dim"] = rep.dim;
    out["mu0"] = to_json(rep.mu0);
    if (rep.lambda0) out["lambda0"] = to_json(*rep.lambda0);
    Json images;
    for (std::size_t t = 0; t < rep.images.size(); ++t)
        images[rep.pres.gen_names[t]] = matrix_to_json(rep.images[t]);
    out["images"] = images;
    out["relator_residual"] = report.relator_residual;
    out["meridian_defect"] = report.meridian_defect;
    out["longitude_defect"] = report.longitude_defect;
    out["cord_relation_residual"] = cord_residual;
    out["irreducible"] = report.irreducible;
    out["span_dim"] = report.span_dim;
    if (!report.notes.empty()) out["notes"] = report.notes;
    return out;
}

inline Json curve_points_json(const std::vector<CurvePoint>& points) {
    Json arr = Json::array();
    for (const CurvePoint& pt : points) {
        Json e;
        e["family"] = pt.family;
        e["degree"] = pt.degree;
        e["p"] = pt.p;
        e["q"] = pt.q;
        e["k"] = pt.k;
        e["mu0"] = to_json(pt.mu0);
        e["lambda0"] = to_json(pt.lambda0);
        e["residual"] = pt.residual;
        arr.push_back(e);
    }
    return arr;
}

inline std::vector<CurvePoint> curve_points_from_json(const Json& arr) {
    if (!arr.is_array()) throw ParseError("curve JSON must be an array");
    std::vector<CurvePoint> points;
    for (const Json& e : arr) {
        CurvePoint pt;
        pt.family = e.at("family").get<std::string>();
        pt.degree = e.at("degree").get<int>();
        pt.p = e.value("p", 0);
        pt.q = e.value("q", 0);
        pt.k = e.value("k", 0);
        pt.mu0 = complex_from_json(e.at("mu0"));
        pt.lambda0 = complex_from_json(e.at("lambda0"));
        pt.residual = e.at("residual").get<double>();
        points.push_back(pt);
    }
    return points;
}

/// Alias config: [{ "name": ..., "strands": n, "braid": [..],
/// "torus": [p,q], "twobridge": [p,q], "pretzel": k }, ...]
inline std::vector<KnotAlias> aliases_from_json(const Json& arr) {
    std::vector<KnotAlias> out = builtin_aliases();
    if (!arr.is_array()) throw ParseError("alias config must be an array");
    for (const Json& e : arr) {
        KnotAlias a;
        a.name = e.at("name").get<std::string>();
        if (e.contains("braid"))
            a.braid = BraidWord(e.at("strands").get<int>(), e.at("braid").get<std::vector<int>>());
        if (e.contains("torus"))
            a.torus = std::pair<int, int>{e["torus"][0].get<int>(), e["torus"][1].get<int>()};
        if (e.contains("twobridge"))
            a.twobridge = std::pair<int, int>{e["twobridge"][0].get<int>(),
                                              e["twobridge"][1].get<int>()};
        if (e.contains("pretzel")) a.pretzel = e["pretzel"].get<int>();
        out.push_back(std::move(a));
    }
    return out;
}

} // namespace kch
