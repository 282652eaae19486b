#include "qmforge/report.hpp"

namespace qmf {

Json envelope(const std::string& kind) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["kind"] = kind;
    return j;
}

Json natural_or_inf(std::size_t n) {
    if (n == kInfinity) return "inf";
    return n;
}

Json to_json(const PieceSeq& s) {
    Json a = Json::array();
    for (const auto& p : s) a.push_back(p.text());
    return a;
}

Json to_json(const DefectEstimate& e) {
    Json j = envelope("defect");
    j["certified_lower"] = e.certified_lower;
    j["scan_radius"] = e.scan_radius;
    j["pair_mode"] = to_string(e.pair_mode);
    j["theoretical_upper"] = e.theoretical_upper ? Json(*e.theoretical_upper) : Json(nullptr);
    j["upper_source"] = e.upper_source;
    j["witness"] = {e.witness_g.text(), e.witness_h.text()};
    j["pairs_scanned"] = e.pairs_scanned;
    j["consistent"] = e.consistent();
    return j;
}

Json to_json(const KappaReport& k) {
    Json j = envelope("kappa");
    j["kappa"] = k.kappa;
    j["s_kappa"] = k.s_kappa;
    j["l1"] = k.l1;
    j["wl1"] = k.wl1;
    j["nso_support"] = k.nso_support;
    j["classes"] = {{"calegari", k.is_calegari},   {"ell1_br", k.in_ell1_br},         {"wl1_br", k.in_wl1_br},
                    {"kappa_ell1", k.in_kappa_ell1}, {"sigma_ind", k.in_sigma_ind}};
    j["sigma_ind"] = {{"families", k.sigma_ind_families}, {"exact", k.sigma_ind_exact}, {"note", k.sigma_ind_note}};
    return j;
}

Json to_json(const DeltaTriangle& t) {
    Json j = envelope("triangle");
    j["c1"] = to_json(t.c1);
    j["c2"] = to_json(t.c2);
    j["c3"] = to_json(t.c3);
    j["r1"] = to_json(t.r1);
    j["r2"] = to_json(t.r2);
    j["r3"] = to_json(t.r3);
    j["r3_inverse"] = to_json(t.r3_inverse());
    j["max_r"] = t.max_r();
    return j;
}

Json to_json(const AxiomReport& a) {
    Json j = envelope("axioms");
    j["ok"] = a.ok;
    j["axiom"] = a.axiom;
    j["witness"] = a.ok ? Json(nullptr) : Json(a.witness.text());
    j["detail"] = a.detail;
    j["words_checked"] = a.words_checked;
    return j;
}

Json to_json(const ContinuityProfile& p) {
    Json j = envelope("profile");
    j["scan_radius"] = p.scan_radius;
    j["pairs"] = p.pairs;
    j["max_level"] = p.max_level;
    Json xs = Json::array();
    for (const auto& [n, v] : p.x_hat) {
        Json row = {{"N", n}, {"x_hat", v}};
        auto t = p.theoretical.find(n);
        row["theoretical"] = t == p.theoretical.end() ? Json(nullptr) : Json(t->second);
        auto w = p.witness.find(n);
        if (w != p.witness.end())
            row["witness"] = {{w->second.first.first.text(), w->second.first.second.text()},
                              {w->second.second.first.text(), w->second.second.second.text()}};
        xs.push_back(row);
    }
    j["levels"] = xs;
    j["theoretical_source"] = p.theoretical_source;
    j["consistent"] = p.consistent();
    return j;
}

Json to_json(const GraphMetrics& m) {
    Json j;
    j["omega"] = {{"lower", m.omega_lower}, {"upper", m.omega_upper}, {"method", m.omega_method}};
    j["chi"] = {{"lower", m.chi_lower}, {"upper", m.chi_upper}, {"method", m.chi_method}};
    j["lp"] = m.lp ? Json(*m.lp) : Json(nullptr);
    j["lp_method"] = m.lp_method;
    return j;
}

Json to_json(const Digraph& g) {
    Json j;
    Json v = Json::array();
    for (std::size_t i = 0; i < g.size(); ++i) v.push_back(g.label(i));
    j["vertices"] = v;
    Json e = Json::array();
    for (auto [a, b] : g.edges()) e.push_back({a, b});
    j["edges"] = e;
    return j;
}

Json to_json(const OverlapGraphBundle& b, std::size_t exact_limit) {
    Json j = envelope("graph");
    Json words = Json::array();
    for (const auto& w : b.vertices) words.push_back(w.text());
    j["words"] = words;
    for (auto [name, g] : {std::pair<const char*, const Digraph*>{"og", &b.og}, {"sg", &b.sg}, {"osg", &b.osg},
                          {"og_bar", &b.og_bar}, {"sg_bar", &b.sg_bar}, {"osg_bar", &b.osg_bar}}) {
        Json gj = to_json(*g);
        gj["metrics"] = to_json(graph_metrics(*g, exact_limit));
        j[name] = gj;
    }
    j["kappa"] = kappa_of_set(b.vertices);
    return j;
}

Json to_json(const CoefficientMap& c) {
    Json j = envelope("coefficients");
    j["rank"] = c.rank();
    Json e = Json::array();
    for (const auto& w : c.positive_support()) e.push_back({w.text(), c.get(w)});
    j["positive_support"] = e;
    return j;
}

Json to_json(const HomogenizationReport& h) {
    Json j = envelope("homogenization");
    j["values"] = h.values;
    j["defect_bound"] = h.defect_bound;
    j["bound_source"] = h.bound_source;
    j["cauchy_ok"] = h.cauchy_ok;
    j["worst_slack"] = h.worst_slack;
    return j;
}

Json to_json(const StarData& s) {
    Json j = envelope("r_star");
    j["trivial"] = s.trivial();
    j["x"] = s.x.text();
    j["y"] = s.y.text();
    j["i_star"] = s.i_star;
    return j;
}

Json to_json(const UlamWitness& u) {
    Json j = envelope("ulam_witness");
    j["g"] = u.g.text();
    j["candidates_checked"] = u.candidates_checked;
    j["products_checked"] = u.products_checked;
    return j;
}

}  // namespace qmf
