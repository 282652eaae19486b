#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qmforge/blocks.hpp"
#include "qmforge/brooks.hpp"
#include "qmforge/decomposition.hpp"
#include "qmforge/defect.hpp"
#include "qmforge/rolli.hpp"
#include "qmforge/word.hpp"

namespace qmf {

// alternating finitely supported coefficients; stored closed under inversion
class CoefficientMap {
public:
    CoefficientMap() = default;
    CoefficientMap(int rank, const std::map<Word, double>& entries);

    static CoefficientMap parse(const std::string& text, int rank);  // "word<TAB>value" lines
    static CoefficientMap read(const std::string& path, int rank);

    int rank() const { return rank_; }
    std::size_t ceiling() const { return ceiling_; }
    double get(const Word& w) const;
    const std::map<Word, double>& entries() const { return entries_; }
    std::vector<Word> support() const;
    std::vector<Word> positive_support() const;  // one of each {w, w^-1}: the shortlex-smaller
    bool nso_support() const;
    double sup() const;

    // sum of alpha over every subword occurrence of g (= sum over support of alpha_w C_w(g))
    double eval_sum(const Word& g) const;
    // the same over the cyclic word of g (patterns no longer than the core)
    double eval_cyclic(const Word& g) const;
    // contribution of occurrences by pattern length; index = length
    std::vector<double> eval_by_length(const Word& g) const;

    CoefficientMap truncated_above(std::size_t n) const;  // keep |w| > n
    CoefficientMap truncated_to(std::size_t n) const;     // keep |w| <= n

private:
    template <class F>
    void for_each_subword(const Word& g, std::size_t cyclic_len, F&& f) const;

    int rank_ = 2;
    std::size_t ceiling_ = 0;
    std::map<Word, double> entries_;
    std::vector<double> dense_;  // by ball_index when small enough
    std::vector<std::size_t> offsets_;
};

struct QSpec;
struct SpecNode;

struct BrooksBig { Word w; };
struct BrooksSmall { Word w; };
struct BrooksHom { Word w; };
struct Rolli { std::vector<RolliTable> tables; };
struct CoefficientSum { CoefficientMap alpha; BrooksKind kind = BrooksKind::Small; };
struct Decomposable { PieceWeights weights; Decomposition delta; };
struct FreeProduct { std::vector<QSpec> factors; BlockStructure blocks; };
struct Pullback { std::shared_ptr<const QSpec> spec; BlockStructure blocks; };
struct LinearCombination { std::vector<std::pair<double, QSpec>> terms; double constant = 0.0; };
struct AlternatingPart { std::shared_ptr<const QSpec> base; };

struct QSpec {
    std::shared_ptr<const SpecNode> node;
    int rank = 2;
    std::string label;

    static QSpec brooks_big(int rank, const Word& w);
    static QSpec brooks_small(int rank, const Word& w);
    static QSpec brooks_hom(int rank, const Word& w);
    static QSpec rolli(std::vector<RolliTable> tables);
    static QSpec coefficient_sum(CoefficientMap alpha, BrooksKind kind);
    static QSpec decomposable(PieceWeights w, Decomposition d);
    static QSpec free_product(std::vector<QSpec> factors, BlockStructure bs);
    static QSpec pullback(QSpec spec_on_double, BlockStructure bs);
    static QSpec linear(std::vector<std::pair<double, QSpec>> terms, double constant, int rank);
    static QSpec alternating(QSpec base);
    static QSpec zero(int rank) { return linear({}, 0.0, rank); }
};

using SpecVariant = std::variant<BrooksBig, BrooksSmall, BrooksHom, Rolli, CoefficientSum, Decomposable, FreeProduct,
                                 Pullback, LinearCombination, AlternatingPart>;

struct SpecNode {
    SpecVariant v;
};

double evaluate(const QSpec& spec, const Word& g);
double coboundary(const QSpec& spec, const Word& g, const Word& h);
QSpec alternating_part(const QSpec& spec);

// longest word the spec reads (pattern / support ceiling); 1 for the rest
std::size_t support_length(const QSpec& spec);

struct Bound {
    double value;
    std::string source;
};
std::optional<Bound> theoretical_defect(const QSpec& spec, PairMode mode);

DefectEstimate estimate_defect(const QSpec& spec, std::size_t radius, PairMode mode);
// same scan with precomputed values on the ball; the spec is only evaluated on products
DefectEstimate estimate_defect_fn(const std::function<double(const Word&)>& phi, int rank, std::size_t radius,
                                  PairMode mode);

struct HomogenizationReport {
    std::vector<double> values;  // phi(g^k)/k, k = 1..n_max
    double defect_bound = 0.0;
    std::string bound_source;
    bool cauchy_ok = true;
    double worst_slack = 0.0;  // min over (n,m) of bound - gap
};

HomogenizationReport homogenize_sequence(const QSpec& spec, const Word& g, std::size_t n_max,
                                         std::optional<double> defect_bound = std::nullopt);

// f must be alternating on ball(N); returns alpha with sum alpha_w H_w = f on ball(N)
CoefficientMap grigorchuk_expand(const std::function<double(const Word&)>& f, int rank, std::size_t N);

struct KappaReport {
    std::vector<double> kappa;  // index n = 0..L
    double s_kappa = 0.0;
    double l1 = 0.0;   // sum over one of each {w, w^-1}
    double wl1 = 0.0;  // same, weighted by |w|
    bool nso_support = true;
    bool is_calegari = false;
    bool in_ell1_br = false;
    bool in_wl1_br = false;
    bool in_kappa_ell1 = false;
    bool in_sigma_ind = false;
    std::size_t sigma_ind_families = 0;
    bool sigma_ind_exact = false;
    std::string sigma_ind_note;

    double at(std::size_t n) const { return n < kappa.size() ? kappa[n] : 0.0; }
};

KappaReport kappa_alpha(const CoefficientMap& alpha, std::size_t exact_limit = 24);

// spec mini-language; blocks only used by prod:
QSpec parse_spec(const std::string& text, int rank, const std::optional<BlockStructure>& blocks = std::nullopt);
std::vector<RolliTable> read_rolli_tables(const std::string& path, int rank);
std::vector<RolliTable> parse_rolli_tables(const std::string& json_text, int rank);

}  // namespace qmf
