#include "qmforge/overlap_graphs.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/bron_kerbosch_all_cliques.hpp>
#include <boost/graph/topological_sort.hpp>

namespace qmf {

std::size_t Digraph::edge_count() const {
    std::size_t n = 0;
    for (const auto& row : adj_) n += static_cast<std::size_t>(std::count(row.begin(), row.end(), 1));
    return n;
}

std::vector<std::pair<std::size_t, std::size_t>> Digraph::edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> e;
    for (std::size_t u = 0; u < size(); ++u)
        for (std::size_t v = 0; v < size(); ++v)
            if (adj_[u][v]) e.emplace_back(u, v);
    return e;
}

Digraph Digraph::induced(const std::vector<std::size_t>& keep) const {
    Digraph d(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i) {
        d.set_label(i, labels_[keep[i]]);
        for (std::size_t j = 0; j < keep.size(); ++j)
            if (adj_[keep[i]][keep[j]]) d.add_edge(i, j);
    }
    return d;
}

std::string Digraph::edge_list() const {
    std::ostringstream os;
    for (auto [u, v] : edges()) os << label(u) << " -> " << label(v) << "\n";
    return os.str();
}

namespace {

bool proper_overlap(const Word& w, const Word& w2) {
    const std::string &s = w.letters(), &t = w2.letters();
    std::size_t m = std::min(s.size(), t.size());
    for (std::size_t k = 1; k < m; ++k)
        if (s.compare(s.size() - k, k, t, 0, k) == 0) return true;
    return false;
}

bool strict_subword(const Word& w, const Word& w2) { return w.size() < w2.size() && is_subword(w, w2); }

using UGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
using DGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::directedS>;

UGraph underlying(const Digraph& g) {
    UGraph u(g.size());
    for (std::size_t a = 0; a < g.size(); ++a)
        for (std::size_t b = a + 1; b < g.size(); ++b)
            if (g.adjacent(a, b)) boost::add_edge(a, b, u);
    return u;
}

// k-colourability by backtracking, next vertex chosen by saturation
bool colour_with(const Digraph& g, std::size_t k, std::vector<std::size_t>& col) {
    const std::size_t n = g.size();
    const std::size_t none = static_cast<std::size_t>(-1);
    col.assign(n, none);
    std::vector<std::vector<std::size_t>> nbr(n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (a != b && g.adjacent(a, b)) nbr[a].push_back(b);

    std::function<bool(std::size_t)> rec = [&](std::size_t done) -> bool {
        if (done == n) return true;
        std::size_t best = none, best_sat = 0, best_deg = 0;
        for (std::size_t v = 0; v < n; ++v) {
            if (col[v] != none) continue;
            std::vector<char> seen(k, 0);
            std::size_t sat = 0, deg = 0;
            for (auto w : nbr[v]) {
                if (col[w] == none) {
                    ++deg;
                } else if (!seen[col[w]]) {
                    seen[col[w]] = 1;
                    ++sat;
                }
            }
            if (best == none || sat > best_sat || (sat == best_sat && deg > best_deg)) {
                best = v;
                best_sat = sat;
                best_deg = deg;
            }
        }
        std::vector<char> used(k, 0);
        for (auto w : nbr[best])
            if (col[w] != none) used[col[w]] = 1;
        // symmetry breaking: at most one fresh colour per step
        std::size_t max_used = 0;
        for (std::size_t v = 0; v < n; ++v)
            if (col[v] != none) max_used = std::max(max_used, col[v] + 1);
        for (std::size_t c = 0; c < k && c <= max_used; ++c) {
            if (used[c]) continue;
            col[best] = c;
            if (rec(done + 1)) return true;
        }
        col[best] = none;
        return false;
    };
    return rec(0);
}

}  // namespace

Digraph overlap_graph(const std::vector<Word>& V) {
    Digraph d(V.size());
    for (std::size_t i = 0; i < V.size(); ++i) {
        d.set_label(i, V[i].text());
        for (std::size_t j = 0; j < V.size(); ++j)
            if (i != j && proper_overlap(V[i], V[j])) d.add_edge(i, j);
    }
    return d;
}

OverlapGraphBundle build_overlap_graphs(const std::vector<Word>& V) {
    std::vector<Word> verts = V;
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    for (const auto& w : verts) {
        if (w.empty()) throw std::invalid_argument("overlap graphs: identity in vertex set");
        if (is_self_overlapping(w)) throw std::invalid_argument("overlap graphs: self-overlapping word " + w.text());
        if (!std::binary_search(verts.begin(), verts.end(), invert(w)))
            throw std::invalid_argument("overlap graphs: set is not symmetric (missing inverse of " + w.text() + ")");
    }
    OverlapGraphBundle b;
    b.vertices = verts;
    const std::size_t n = verts.size();
    b.og = Digraph(n);
    b.sg = Digraph(n);
    b.osg = Digraph(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (auto* g : {&b.og, &b.sg, &b.osg}) g->set_label(i, verts[i].text());
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            bool o = proper_overlap(verts[i], verts[j]);
            bool s = strict_subword(verts[i], verts[j]);
            if (o) b.og.add_edge(i, j);
            if (s) b.sg.add_edge(i, j);
            if (o || s) b.osg.add_edge(i, j);
        }
    }
    std::map<Word, std::size_t> cls;
    b.class_of.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        Word lab = std::min(verts[i], invert(verts[i]));
        auto it = cls.find(lab);
        if (it == cls.end()) {
            it = cls.emplace(lab, b.class_labels.size()).first;
            b.class_labels.push_back(lab);
        }
        b.class_of[i] = it->second;
    }
    const std::size_t m = b.class_labels.size();
    b.og_bar = Digraph(m);
    b.sg_bar = Digraph(m);
    b.osg_bar = Digraph(m);
    for (std::size_t c = 0; c < m; ++c)
        for (auto* g : {&b.og_bar, &b.sg_bar, &b.osg_bar}) g->set_label(c, b.class_labels[c].text());
    auto project = [&](const Digraph& src, Digraph& dst) {
        for (auto [u, v] : src.edges())
            if (b.class_of[u] != b.class_of[v]) dst.add_edge(b.class_of[u], b.class_of[v]);
    };
    project(b.og, b.og_bar);
    project(b.sg, b.sg_bar);
    project(b.osg, b.osg_bar);
    return b;
}

std::size_t clique_number(const Digraph& g) {
    if (g.size() == 0) return 0;
    UGraph u = underlying(g);
    // boost reports 0 on edgeless graphs
    return std::max<std::size_t>(1, boost::bron_kerbosch_clique_number(u));
}

std::size_t greedy_clique(const Digraph& g) {
    std::size_t best = g.size() ? 1 : 0;
    for (std::size_t s = 0; s < g.size(); ++s) {
        std::vector<std::size_t> cl{s};
        for (std::size_t v = 0; v < g.size(); ++v) {
            if (v == s) continue;
            bool ok = std::all_of(cl.begin(), cl.end(), [&](std::size_t c) { return g.adjacent(c, v); });
            if (ok) cl.push_back(v);
        }
        best = std::max(best, cl.size());
    }
    return best;
}

std::vector<std::size_t> dsatur_coloring(const Digraph& g) {
    const std::size_t n = g.size();
    const std::size_t none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> col(n, none);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t best = none, best_sat = 0, best_deg = 0;
        for (std::size_t v = 0; v < n; ++v) {
            if (col[v] != none) continue;
            std::vector<std::size_t> cs;
            std::size_t deg = 0;
            for (std::size_t w = 0; w < n; ++w) {
                if (w == v || !g.adjacent(v, w)) continue;
                if (col[w] == none)
                    ++deg;
                else
                    cs.push_back(col[w]);
            }
            std::sort(cs.begin(), cs.end());
            std::size_t sat = static_cast<std::size_t>(std::unique(cs.begin(), cs.end()) - cs.begin());
            if (best == none || sat > best_sat || (sat == best_sat && deg > best_deg)) {
                best = v;
                best_sat = sat;
                best_deg = deg;
            }
        }
        std::vector<char> used(n + 1, 0);
        for (std::size_t w = 0; w < n; ++w)
            if (w != best && g.adjacent(best, w) && col[w] != none) used[col[w]] = 1;
        std::size_t c = 0;
        while (used[c]) ++c;
        col[best] = c;
    }
    return col;
}

std::vector<std::size_t> exact_coloring(const Digraph& g) {
    if (g.size() == 0) return {};
    std::vector<std::size_t> col;
    for (std::size_t k = std::max<std::size_t>(1, clique_number(g));; ++k)
        if (colour_with(g, k, col)) return col;
}

std::size_t chromatic_number(const Digraph& g) {
    auto c = exact_coloring(g);
    return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
}

bool is_acyclic(const Digraph& g) {
    DGraph d(g.size());
    for (auto [u, v] : g.edges()) boost::add_edge(u, v, d);
    std::vector<std::size_t> order;
    try {
        boost::topological_sort(d, std::back_inserter(order));
    } catch (const boost::not_a_dag&) {
        return false;
    }
    return true;
}

std::optional<std::size_t> longest_path(const Digraph& g, std::size_t exhaustive_limit) {
    const std::size_t n = g.size();
    DGraph d(n);
    for (auto [u, v] : g.edges()) boost::add_edge(u, v, d);
    std::vector<std::size_t> order;
    try {
        boost::topological_sort(d, std::back_inserter(order));
    } catch (const boost::not_a_dag&) {
        if (n > exhaustive_limit) return std::nullopt;
        // simple-path search on tiny cyclic graphs
        std::size_t best = 0;
        std::vector<char> on(n, 0);
        std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t v, std::size_t len) {
            best = std::max(best, len);
            on[v] = 1;
            for (std::size_t w = 0; w < n; ++w)
                if (g.has_edge(v, w) && !on[w]) dfs(w, len + 1);
            on[v] = 0;
        };
        for (std::size_t v = 0; v < n; ++v) dfs(v, 0);
        return best;
    }
    // boost emits reverse topological order
    std::vector<std::size_t> dist(n, 0);
    std::size_t best = 0;
    for (auto v : order) {
        for (std::size_t w = 0; w < n; ++w)
            if (g.has_edge(v, w)) dist[v] = std::max(dist[v], dist[w] + 1);
        best = std::max(best, dist[v]);
    }
    return best;
}

GraphMetrics graph_metrics(const Digraph& g, std::size_t exact_limit) {
    GraphMetrics m;
    if (g.size() <= exact_limit) {
        m.omega_lower = m.omega_upper = clique_number(g);
        m.chi_lower = m.chi_upper = chromatic_number(g);
        m.omega_method = "exact (Bron-Kerbosch)";
        m.chi_method = "exact (DSATUR backtracking)";
    } else {
        auto col = dsatur_coloring(g);
        std::size_t k = col.empty() ? 0 : *std::max_element(col.begin(), col.end()) + 1;
        m.omega_lower = greedy_clique(g);
        m.omega_upper = k;
        m.chi_lower = m.omega_lower;
        m.chi_upper = k;
        m.omega_method = "bounds (greedy clique, colouring)";
        m.chi_method = "bounds (clique, DSATUR)";
    }
    m.lp = longest_path(g);
    m.lp_method = m.lp ? (is_acyclic(g) ? "topological DP" : "exhaustive simple paths") : "unavailable (cyclic)";
    return m;
}

bool is_transitive(const Digraph& g) {
    const std::size_t n = g.size();
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v)
            if (g.has_edge(u, v))
                for (std::size_t w = 0; w < n; ++w)
                    if (g.has_edge(v, w) && u != w && !g.has_edge(u, w)) return false;
    return true;
}

bool is_isomorphism(const Digraph& a, const Digraph& b, const std::vector<std::size_t>& map) {
    if (a.size() != b.size() || map.size() != a.size()) return false;
    std::vector<char> hit(b.size(), 0);
    for (auto m : map) {
        if (m >= b.size() || hit[m]) return false;
        hit[m] = 1;
    }
    for (std::size_t u = 0; u < a.size(); ++u)
        for (std::size_t v = 0; v < a.size(); ++v)
            if (a.has_edge(u, v) != b.has_edge(map[u], map[v])) return false;
    return true;
}

std::size_t tournament_pair_index(std::size_t n, std::size_t i, std::size_t j) {
    if (!(1 <= i && i < j && j <= n)) throw std::invalid_argument("tournament pair out of range");
    // rows i = 1..i-1 contribute n-1, n-2, ... vertices
    std::size_t idx = 0;
    for (std::size_t r = 1; r < i; ++r) idx += n - r;
    return idx + (j - i - 1);
}

Digraph transitive_tournament_line_graph(std::size_t n) {
    if (n < 2) throw std::invalid_argument("n must be at least 2");
    Digraph d(n * (n - 1) / 2);
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = i + 1; j <= n; ++j) {
            auto a = tournament_pair_index(n, i, j);
            d.set_label(a, "(" + std::to_string(i) + "," + std::to_string(j) + ")");
            for (std::size_t k = j + 1; k <= n; ++k) d.add_edge(a, tournament_pair_index(n, j, k));
        }
    return d;
}

std::size_t kappa_of_set(const std::vector<Word>& V) {
    if (V.empty()) return 0;
    auto best = max_compatible_weight(V, [](const Word&) { return 1.0; });
    return static_cast<std::size_t>(best.empty() ? 0 : best[0] + 0.5);
}

bool is_independent_family(const std::vector<Word>& I) {
    for (std::size_t i = 0; i < I.size(); ++i) {
        if (I[i].empty() || is_self_overlapping(I[i])) return false;
        for (std::size_t j = i + 1; j < I.size(); ++j)
            if (I[i] == I[j] || overlap_report(I[i], I[j]).overlaps()) return false;
    }
    return true;
}

SigmaIndCertificate sigma_ind_certificate(const std::vector<Word>& V, std::size_t exact_limit) {
    SigmaIndCertificate cert;
    OverlapGraphBundle b = build_overlap_graphs(V);
    const Digraph& q = b.osg_bar;
    std::vector<std::size_t> col;
    if (q.size() <= exact_limit) {
        col = exact_coloring(q);
        cert.exact = true;
    } else {
        col = dsatur_coloring(q);
    }
    std::size_t k = col.empty() ? 0 : *std::max_element(col.begin(), col.end()) + 1;
    cert.families.assign(k, {});
    for (std::size_t v = 0; v < b.vertices.size(); ++v) cert.families[col[b.class_of[v]]].push_back(b.vertices[v]);
    cert.ok = true;
    for (std::size_t c = 0; c < k; ++c) {
        auto& fam = cert.families[c];
        std::sort(fam.begin(), fam.end());
        if (!is_independent_family(fam)) {
            cert.ok = false;
            cert.diagnostics += "class " + std::to_string(c) + " is not independent; ";
        }
        if (symmetrize(fam) != fam) {
            cert.ok = false;
            cert.diagnostics += "class " + std::to_string(c) + " is not symmetric; ";
        }
    }
    std::ostringstream os;
    os << k << " symmetric independent families" << (cert.exact ? " (chromatic number of the quotient)" : " (DSATUR colouring, not proven minimal)");
    if (cert.diagnostics.empty()) cert.diagnostics = os.str();
    return cert;
}

std::size_t ramsey_number(std::size_t k) {
    static const std::size_t table[] = {1, 1, 2, 6, 18};
    if (k > 4) throw std::invalid_argument("ramsey table covers k <= 4");
    return table[k];
}

}  // namespace qmf
