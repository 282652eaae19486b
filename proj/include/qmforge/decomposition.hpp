#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmforge/blocks.hpp"
#include "qmforge/defect.hpp"
#include "qmforge/rolli.hpp"
#include "qmforge/word.hpp"

namespace qmf {

using PieceSeq = std::vector<Word>;

struct Decomposition {
    std::string name;
    int rank = 2;
    std::function<PieceSeq(const Word&)> decompose;
    std::function<bool(const Word&)> is_piece;
    std::optional<int> declared_defect;

    PieceSeq operator()(const Word& g) const { return decompose(g); }
};

Decomposition make_trivial(int rank);
Decomposition make_whole(int rank);  // every nonidentity word is one piece
Decomposition make_rolli_decomposition(int rank);
Decomposition make_brooks_decomposition(int rank, const Word& w);
// I is symmetrized first; throws unless the result is independent
Decomposition make_independent(int rank, const std::vector<Word>& I);
// no independence check: only for negative controls
Decomposition make_independent_unchecked(int rank, const std::vector<Word>& I);
Decomposition make_block_decomposition(const BlockStructure& bs);
Decomposition make_free_product_decomposition(const std::vector<Decomposition>& factors, const BlockStructure& bs);

// "triv", "b", "rolli", "brooks:W", "indep:@FILE", "blocks:a,b|c,d"
Decomposition parse_decomposition(const std::string& text, int rank);

struct AxiomReport {
    bool ok = true;
    int axiom = 0;  // first violated axiom (1..3), 0 when ok
    Word witness;
    std::string detail;
    std::size_t words_checked = 0;
};

AxiomReport validate_axioms(const Decomposition& d, std::size_t radius);

struct DeltaTriangle {
    PieceSeq c1, c2, c3;  // oriented away from the centre
    PieceSeq r1, r2, r3;  // r1 r2 r3 multiplies to 1
    PieceSeq r3_inverse() const;
    std::size_t max_r() const { return std::max({r1.size(), r2.size(), r3.size()}); }
};

bool same_r_part(const DeltaTriangle& a, const DeltaTriangle& b);

Word product(const PieceSeq& s);
PieceSeq inverse_seq(const PieceSeq& s);

DeltaTriangle delta_triangle(const Decomposition& d, const Word& g, const Word& h);
DeltaTriangle triangle_from(const PieceSeq& dg, const PieceSeq& dh, const PieceSeq& dgh);

DefectEstimate estimate_decomposition_defect(const Decomposition& d, std::size_t radius);

struct PieceWeights {
    std::string name;
    std::function<std::optional<double>(const Word&)> weight;
    double sup_bound = 0.0;

    double operator()(const Word& p) const;  // throws when undefined
};

// listed pieces (closed under inversion), everything else gets default_value (if any)
PieceWeights table_weights(const std::map<Word, double>& table, std::optional<double> default_value = 0.0);
// powers s_i^m weighted by lambda_i(m)
PieceWeights rolli_weights(const std::vector<RolliTable>& tables);

double eval_decomposable(const PieceWeights& w, const Decomposition& d, const Word& g);
double eval_pieces(const PieceWeights& w, const PieceSeq& s);

constexpr std::size_t kInfinity = std::numeric_limits<std::size_t>::max();

std::size_t n_delta(const DeltaTriangle& a, const DeltaTriangle& b);
std::size_t n_delta(const Decomposition& d, const std::pair<Word, Word>& p1, const std::pair<Word, Word>& p2);

}  // namespace qmf
