// qmforge: batch front end over the qmforge library.
// exit 0 ok, 1 verified property violated, 2 usage error

#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qmforge/continuity.hpp"
#include "qmforge/decomposition.hpp"
#include "qmforge/free_product.hpp"
#include "qmforge/overlap_graphs.hpp"
#include "qmforge/quasimorphism.hpp"
#include "qmforge/report.hpp"
#include "qmforge/util.hpp"
#include "qmforge/word.hpp"

using namespace qmf;

namespace {

struct Globals {
    int rank = 2;
    std::size_t threads = 0;
    std::string format = "text";
    std::string blocks;
    std::size_t exact_limit = 24;

    bool json() const { return format == "json"; }
    std::optional<BlockStructure> block_structure() const {
        if (blocks.empty()) return std::nullopt;
        return BlockStructure::parse(blocks);
    }
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string num(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

int run_eval(const Globals& G, const std::string& spec_text, const std::vector<std::string>& words) {
    QSpec spec = parse_spec(spec_text, G.rank, G.block_structure());
    Json out = envelope("eval");
    out["spec"] = spec.label;
    Json vals = Json::array();
    for (const auto& s : words) {
        Word g = parse_word(s, G.rank);
        double v = evaluate(spec, g);
        if (G.json())
            vals.push_back({{"word", g.text()}, {"value", v}});
        else
            std::cout << num(v) << "\n";
    }
    if (G.json()) {
        out["values"] = vals;
        emit(out);
    }
    return 0;
}

int run_defect(const Globals& G, const std::string& spec_text, std::size_t radius, const std::string& mode) {
    QSpec spec = parse_spec(spec_text, G.rank, G.block_structure());
    auto est = estimate_defect(spec, radius, parse_pair_mode(mode));
    if (G.json()) {
        Json j = to_json(est);
        j["spec"] = spec.label;
        emit(j);
    } else {
        std::cout << "certified_lower " << num(est.certified_lower) << "\n";
        std::cout << "theoretical_upper " << (est.theoretical_upper ? num(*est.theoretical_upper) : "none") << "\n";
        std::cout << "witness " << est.witness_g.text() << " " << est.witness_h.text() << "\n";
        std::cout << "pairs " << est.pairs_scanned << "\n";
    }
    return est.consistent() ? 0 : 1;
}

int run_expand(const Globals& G, const std::string& table, const std::string& spec_text, std::size_t n) {
    std::function<double(const Word&)> f;
    std::optional<CoefficientMap> tab;
    std::optional<QSpec> spec;
    if (!table.empty()) {
        tab = CoefficientMap::read(table, G.rank);
        f = [&](const Word& w) { return tab->get(w); };
    } else if (!spec_text.empty()) {
        spec = parse_spec(spec_text, G.rank, G.block_structure());
        f = [&](const Word& w) { return evaluate(*spec, w); };
    } else {
        throw UsageError("expand needs --table or --spec");
    }
    CoefficientMap alpha = grigorchuk_expand(f, G.rank, n);
    bool ok = true;
    for (const auto& w : enumerate_ball(G.rank, n))
        if (std::abs(alpha.eval_sum(w) - f(w)) > kTolerance) ok = false;
    if (G.json()) {
        Json j = to_json(alpha);
        j["max_len"] = n;
        j["reconstruction_exact"] = ok;
        emit(j);
    } else {
        for (const auto& w : alpha.positive_support()) std::cout << w.text() << "\t" << num(alpha.get(w)) << "\n";
    }
    return ok ? 0 : 1;
}

int run_kappa(const Globals& G, const std::string& file) {
    auto alpha = CoefficientMap::read(file, G.rank);
    auto rep = kappa_alpha(alpha, G.exact_limit);
    if (G.json()) {
        emit(to_json(rep));
    } else {
        for (std::size_t n = 0; n < rep.kappa.size(); ++n) std::cout << "kappa(" << n << ") " << num(rep.kappa[n]) << "\n";
        std::cout << "S_kappa " << num(rep.s_kappa) << "\n";
        std::cout << "sigma_ind " << (rep.in_sigma_ind ? "yes" : "no") << " families " << rep.sigma_ind_families << "\n";
    }
    return 0;
}

int run_triangle(const Globals& G, const std::string& kind, const std::string& gs, const std::string& hs) {
    Decomposition d = parse_decomposition(kind, G.rank);
    Word g = parse_word(gs, G.rank), h = parse_word(hs, G.rank);
    auto t = delta_triangle(d, g, h);
    bool ok = multiply(multiply(product(t.r1), product(t.r2)), product(t.r3)).empty();
    if (G.json()) {
        Json j = to_json(t);
        j["decomposition"] = d.name;
        j["relation_holds"] = ok;
        emit(j);
    } else {
        auto show = [](const char* name, const PieceSeq& s) {
            std::cout << name;
            for (const auto& p : s) std::cout << " " << p.text();
            std::cout << "\n";
        };
        show("c1", t.c1);
        show("c2", t.c2);
        show("c3", t.c3);
        show("r1", t.r1);
        show("r2", t.r2);
        show("r3^-1", t.r3_inverse());
    }
    return ok ? 0 : 1;
}

int run_decomp_defect(const Globals& G, const std::string& kind, std::size_t radius) {
    Decomposition d = parse_decomposition(kind, G.rank);
    auto ax = validate_axioms(d, radius);
    auto est = estimate_decomposition_defect(d, radius);
    if (G.json()) {
        Json j = to_json(est);
        j["decomposition"] = d.name;
        j["axioms"] = to_json(ax);
        emit(j);
    } else {
        std::cout << "certified_lower " << num(est.certified_lower) << "\n";
        std::cout << "upper " << (est.theoretical_upper ? num(*est.theoretical_upper) : "none") << "\n";
        std::cout << "witness " << est.witness_g.text() << " " << est.witness_h.text() << "\n";
        std::cout << "axioms " << (ax.ok ? "ok" : "violated: axiom " + std::to_string(ax.axiom) + " at " + ax.witness.text())
                  << "\n";
    }
    return ax.ok && est.consistent() ? 0 : 1;
}

int run_profile(const Globals& G, const std::string& spec_text, const std::string& kind, std::size_t radius) {
    QSpec spec = parse_spec(spec_text, G.rank, G.block_structure());
    Decomposition d = parse_decomposition(kind, G.rank);
    auto p = continuity_profile(spec, d, radius);
    if (G.json()) {
        Json j = to_json(p);
        j["spec"] = spec.label;
        j["decomposition"] = d.name;
        emit(j);
    } else {
        for (const auto& [n, v] : p.x_hat) {
            std::cout << "N=" << n << " x_hat=" << num(v);
            auto t = p.theoretical.find(n);
            if (t != p.theoretical.end()) std::cout << " bound=" << num(t->second);
            std::cout << "\n";
        }
    }
    return p.consistent() ? 0 : 1;
}

int run_graph(const Globals& G, const std::string& file, bool symmetrize_input) {
    WordSet ws = read_word_set(file);
    std::vector<Word> V = symmetrize_input ? symmetrize(ws.words) : ws.words;
    auto b = build_overlap_graphs(V);
    auto gm_og = graph_metrics(b.og, G.exact_limit), gm_osg = graph_metrics(b.osg, G.exact_limit);
    auto gm_ogb = graph_metrics(b.og_bar, G.exact_limit), gm_osgb = graph_metrics(b.osg_bar, G.exact_limit);
    std::size_t kappa = kappa_of_set(V);
    // chain: kappa <= omega(OSG), omega(OG) <= omega(OG bar), omega <= chi, chi(OG) <= chi(OG bar)
    bool ok = kappa <= gm_osg.omega_upper && gm_og.omega_lower <= gm_ogb.omega_upper &&
              gm_og.omega_lower <= gm_og.chi_upper && gm_osgb.omega_lower <= gm_osgb.chi_upper &&
              gm_og.chi_lower <= gm_ogb.chi_upper;
    if (G.json()) {
        Json j = to_json(b, G.exact_limit);
        j["chain_ok"] = ok;
        emit(j);
    } else {
        std::cout << "vertices " << b.vertices.size() << "\n";
        std::cout << "kappa " << kappa << "\n";
        auto line = [](const char* name, const GraphMetrics& m) {
            std::cout << name << " omega " << m.omega_lower << (m.omega_exact() ? "" : "+") << " chi " << m.chi_lower;
            if (!m.chi_exact()) std::cout << ".." << m.chi_upper;
            std::cout << " lp " << (m.lp ? std::to_string(*m.lp) : "unavailable") << "\n";
        };
        line("OG", gm_og);
        line("OSG", gm_osg);
        line("OG_bar", gm_ogb);
        line("OSG_bar", gm_osgb);
        std::cout << "OG edges:\n" << b.og.edge_list();
    }
    return ok ? 0 : 1;
}

int run_fundset(const Globals& G, std::size_t max_len, const std::string& order_text) {
    LetterOrder order = order_text.empty() ? LetterOrder::standard(G.rank) : LetterOrder::parse(order_text, G.rank);
    auto fs = generate_fundamental_set(max_len, G.rank, order);
    if (G.json()) {
        Json j = envelope("fundset");
        j["rank"] = G.rank;
        j["max_len"] = max_len;
        Json w = Json::array();
        for (const auto& x : fs) w.push_back(x.text());
        j["words"] = w;
        emit(j);
    } else {
        for (const auto& x : fs) std::cout << x.text() << "\n";
    }
    return 0;
}

int run_iota(const Globals& G, const std::string& spec_text, const std::vector<std::string>& words, int witness_ball) {
    BlockStructure bs = G.blocks.empty() ? BlockStructure::doubled(G.rank) : BlockStructure::parse(G.blocks);
    if (bs.factor_count() != 2 || bs.factor_rank(0) != G.rank || bs.factor_rank(1) != G.rank)
        throw UsageError("iota needs blocks of two copies of F_rank");
    Json out = envelope("iota");
    if (witness_ball >= 0) {
        auto E = enumerate_ball(bs.rank(), static_cast<std::size_t>(witness_ball));
        auto w = ulam_violation_witness(E, bs);
        if (G.json())
            out["witness"] = to_json(w);
        else
            std::cout << "witness " << w.g.text() << " (candidates " << w.candidates_checked << ")\n";
    }
    std::optional<QSpec> spec;
    if (!spec_text.empty()) spec = parse_spec(spec_text, bs.rank(), bs);
    Json vals = Json::array();
    for (const auto& s : words) {
        Word g = parse_word(s, G.rank);
        Word ig = iota(bs, g);
        Json row = {{"word", g.text()}, {"iota", ig.text()}};
        if (spec) row["value"] = pullback_eval(*spec, bs, g);
        if (G.json())
            vals.push_back(row);
        else
            std::cout << ig.text() << (spec ? " " + num(row["value"].get<double>()) : "") << "\n";
    }
    if (G.json()) {
        out["values"] = vals;
        emit(out);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qmforge: quasimorphisms on free groups"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals G;
    app.add_option("--rank", G.rank, "free group rank")->check(CLI::Range(1, kMaxRank));
    app.add_option("--threads", G.threads, "scan threads (default QMFORGE_THREADS, then 1)");
    app.add_option("--format", G.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--blocks", G.blocks, "block structure, e.g. blocks=a,b|c,d");
    app.add_option("--exact-limit", G.exact_limit, "vertex limit for exact graph solvers");

    std::string spec, mode = "all", kind, table, file, order;
    std::size_t radius = 4, max_len = 4;
    std::vector<std::string> words;
    int witness_ball = -1;
    bool sym = false;

    auto* eval = app.add_subcommand("eval", "evaluate a spec on words");
    eval->add_option("--spec", spec)->required();
    eval->add_option("words", words)->required();

    auto* defect = app.add_subcommand("defect", "defect estimate on a ball");
    defect->add_option("--spec", spec)->required();
    defect->add_option("--radius", radius);
    defect->add_option("--mode", mode)->check(CLI::IsMember({"all", "reduced"}));

    auto* expand = app.add_subcommand("expand", "Brooks expansion of an alternating table");
    expand->add_option("--table", table)->check(CLI::ExistingFile);
    expand->add_option("--spec", spec);
    expand->add_option("--max-len", max_len);

    auto* kappa = app.add_subcommand("kappa", "kappa_alpha report for a coefficient file");
    kappa->add_option("file", file)->required()->check(CLI::ExistingFile);

    auto* triangle = app.add_subcommand("triangle", "Delta-triangle of a pair");
    triangle->add_option("--kind", kind)->required();
    triangle->add_option("words", words)->required()->expected(2);

    auto* ddefect = app.add_subcommand("decomp-defect", "decomposition defect and axioms on a ball");
    ddefect->add_option("--kind", kind)->required();
    ddefect->add_option("--radius", radius);

    auto* profile = app.add_subcommand("profile", "continuity profile of a spec against a decomposition");
    profile->add_option("--spec", spec)->required();
    profile->add_option("--kind", kind)->required();
    profile->add_option("--radius", radius);

    auto* graph = app.add_subcommand("graph", "overlap graphs of a word set");
    graph->add_option("file", file)->required()->check(CLI::ExistingFile);
    graph->add_flag("--symmetrize", sym, "close the set under inversion first");

    auto* fundset = app.add_subcommand("fundset", "fundamental set listing");
    fundset->add_option("--max-len", max_len);
    fundset->add_option("--order", order, "letter order, e.g. abAB");

    auto* io = app.add_subcommand("iota", "pullback along g -> iota1(g) iota2(g)");
    io->add_option("--spec", spec, "spec on the doubled group");
    io->add_option("--witness-ball", witness_ball, "search a non-Ulam witness for E = ball(R)");
    io->add_option("words", words);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        set_thread_count(G.threads);
        if (*eval) return run_eval(G, spec, words);
        if (*defect) return run_defect(G, spec, radius, mode);
        if (*expand) return run_expand(G, table, spec, max_len);
        if (*kappa) return run_kappa(G, file);
        if (*triangle) return run_triangle(G, kind, words[0], words[1]);
        if (*ddefect) return run_decomp_defect(G, kind, radius);
        if (*profile) return run_profile(G, spec, kind, radius);
        if (*graph) return run_graph(G, file, sym);
        if (*fundset) return run_fundset(G, max_len, order);
        if (*io) return run_iota(G, spec, words, witness_ball);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        // broken invariant inside a computation, e.g. a decomposition breaking its axioms
        std::cerr << "violation: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
