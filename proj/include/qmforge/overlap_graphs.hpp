#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmforge/word.hpp"

namespace qmf {

// small dense digraph; overlap graphs stay at a few hundred vertices
class Digraph {
public:
    explicit Digraph(std::size_t n = 0) : adj_(n, std::vector<char>(n, 0)), labels_(n) {}

    std::size_t size() const { return adj_.size(); }
    void add_edge(std::size_t u, std::size_t v) { adj_[u][v] = 1; }
    bool has_edge(std::size_t u, std::size_t v) const { return adj_[u][v] != 0; }
    bool adjacent(std::size_t u, std::size_t v) const { return adj_[u][v] || adj_[v][u]; }
    std::size_t edge_count() const;
    std::vector<std::pair<std::size_t, std::size_t>> edges() const;

    void set_label(std::size_t v, std::string s) { labels_[v] = std::move(s); }
    const std::string& label(std::size_t v) const { return labels_[v]; }

    Digraph induced(const std::vector<std::size_t>& keep) const;
    std::string edge_list() const;

private:
    std::vector<std::vector<char>> adj_;
    std::vector<std::string> labels_;
};

struct OverlapGraphBundle {
    std::vector<Word> vertices;
    Digraph og, sg, osg;
    std::vector<std::size_t> class_of;  // vertex -> quotient vertex
    std::vector<Word> class_labels;     // smaller of {w, w^-1}
    Digraph og_bar, sg_bar, osg_bar;
};

OverlapGraphBundle build_overlap_graphs(const std::vector<Word>& V);
// OG on a set that need not be symmetric (used for V+ style families)
Digraph overlap_graph(const std::vector<Word>& V);

struct GraphMetrics {
    std::size_t omega_lower = 0, omega_upper = 0;
    std::size_t chi_lower = 0, chi_upper = 0;
    std::optional<std::size_t> lp;  // empty: unavailable (cyclic, too large)
    std::string omega_method, chi_method, lp_method;

    bool omega_exact() const { return omega_lower == omega_upper; }
    bool chi_exact() const { return chi_lower == chi_upper; }
};

GraphMetrics graph_metrics(const Digraph& g, std::size_t exact_limit = 24);

std::size_t clique_number(const Digraph& g);
std::size_t chromatic_number(const Digraph& g);
std::vector<std::size_t> exact_coloring(const Digraph& g);
std::vector<std::size_t> dsatur_coloring(const Digraph& g);
std::size_t greedy_clique(const Digraph& g);
std::optional<std::size_t> longest_path(const Digraph& g, std::size_t exhaustive_limit = 10);
bool is_acyclic(const Digraph& g);
bool is_transitive(const Digraph& g);
bool is_isomorphism(const Digraph& a, const Digraph& b, const std::vector<std::size_t>& map);

Digraph transitive_tournament_line_graph(std::size_t n);
// (i,j) vertex index inside transitive_tournament_line_graph(n), 1 <= i < j <= n
std::size_t tournament_pair_index(std::size_t n, std::size_t i, std::size_t j);

std::size_t kappa_of_set(const std::vector<Word>& V);

struct SigmaIndCertificate {
    bool ok = false;
    bool exact = false;  // colour count is the chromatic number of the quotient
    std::vector<std::vector<Word>> families;
    std::string diagnostics;
};

SigmaIndCertificate sigma_ind_certificate(const std::vector<Word>& V, std::size_t exact_limit = 24);
bool is_independent_family(const std::vector<Word>& I);

// smallest complete graph size forcing a monochromatic K_k in any 2-colouring, k <= 4
std::size_t ramsey_number(std::size_t k);

}  // namespace qmf
