#include "qmforge/quasimorphism.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "qmforge/free_product.hpp"
#include "qmforge/overlap_graphs.hpp"
#include "qmforge/util.hpp"

namespace qmf {

// ---- CoefficientMap ----

namespace {

bool small_ball(int rank, std::size_t n) {
    double b = 1, s = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        s *= (k == 1 ? 2.0 * rank : 2.0 * rank - 1);
        b += s;
    }
    return b <= static_cast<double>(std::size_t{1} << 21);
}

}  // namespace

CoefficientMap::CoefficientMap(int rank, const std::map<Word, double>& entries) : rank_(rank) {
    for (const auto& [w, v] : entries) {
        if (w.empty()) {
            if (std::abs(v) > kTolerance) throw std::invalid_argument("coefficient on the identity must be 0");
            continue;
        }
        if (w.max_generator() >= rank) throw std::invalid_argument("coefficient word outside rank: " + w.text());
        Word wi = invert(w);
        for (auto [x, xv] : {std::pair<Word, double>{w, v}, std::pair<Word, double>{wi, -v}}) {
            auto it = entries_.find(x);
            if (it != entries_.end() && std::abs(it->second - xv) > kTolerance)
                throw std::invalid_argument("coefficients are not alternating at " + w.text());
            entries_[x] = xv;
        }
    }
    for (auto it = entries_.begin(); it != entries_.end();) {
        if (std::abs(it->second) <= 0.0)
            it = entries_.erase(it);
        else
            ++it;
    }
    for (const auto& [w, v] : entries_) ceiling_ = std::max(ceiling_, w.size());
    if (ceiling_ > 0 && small_ball(rank_, ceiling_)) {
        dense_.assign(ball_size(rank_, ceiling_), 0.0);
        for (const auto& [w, v] : entries_) dense_[ball_index(w, rank_)] = v;
        offsets_.resize(ceiling_ + 1);
        for (std::size_t k = 0; k <= ceiling_; ++k) offsets_[k] = ball_size(rank_, k) - sphere_size(rank_, k);
    }
}

CoefficientMap CoefficientMap::parse(const std::string& text, int rank) {
    std::istringstream in(text);
    std::string line;
    std::map<Word, double> raw;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (line.rfind("rank=", 0) == 0) {
            if (std::stoi(line.substr(5)) != rank) throw std::invalid_argument("coefficient file rank differs");
            continue;
        }
        std::istringstream ls(line);
        std::string word;
        double v;
        if (!(ls >> word >> v)) throw std::invalid_argument("coefficient file line " + std::to_string(lineno) + ": expected word<TAB>value");
        Word w = parse_word(word, rank);
        auto it = raw.find(w);
        if (it != raw.end() && std::abs(it->second - v) > kTolerance)
            throw std::invalid_argument("conflicting coefficient for " + w.text());
        raw[w] = v;
    }
    return CoefficientMap(rank, raw);
}

CoefficientMap CoefficientMap::read(const std::string& path, int rank) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse(ss.str(), rank);
}

double CoefficientMap::get(const Word& w) const {
    auto it = entries_.find(w);
    return it == entries_.end() ? 0.0 : it->second;
}

std::vector<Word> CoefficientMap::support() const {
    std::vector<Word> s;
    for (const auto& [w, v] : entries_) s.push_back(w);
    return s;
}

std::vector<Word> CoefficientMap::positive_support() const {
    std::vector<Word> s;
    for (const auto& [w, v] : entries_)
        if (w < invert(w)) s.push_back(w);
    return s;
}

bool CoefficientMap::nso_support() const {
    return std::none_of(entries_.begin(), entries_.end(), [](const auto& e) { return is_self_overlapping(e.first); });
}

double CoefficientMap::sup() const {
    double s = 0;
    for (const auto& [w, v] : entries_) s = std::max(s, std::abs(v));
    return s;
}

template <class F>
void CoefficientMap::for_each_subword(const Word& g, std::size_t cyclic_len, F&& f) const {
    // cyclic_len > 0: host is core.core, starts below cyclic_len, lengths at most cyclic_len
    const std::string host = cyclic_len ? g.letters() + g.letters() : g.letters();
    const std::size_t starts = cyclic_len ? cyclic_len : host.size();
    const std::size_t maxlen = cyclic_len ? std::min(cyclic_len, ceiling_) : ceiling_;
    if (!dense_.empty()) {
        const std::size_t base = static_cast<std::size_t>(2 * rank_ - 1);
        for (std::size_t i = 0; i < starts; ++i) {
            std::size_t lex = 0;
            for (std::size_t len = 1; len <= maxlen && i + len <= host.size(); ++len) {
                char c = host[i + len - 1];
                int k = default_letter_key(c, rank_);
                if (len == 1) {
                    lex = static_cast<std::size_t>(k);
                } else {
                    int banned = default_letter_key(invert_letter(host[i + len - 2]), rank_);
                    lex = lex * base + static_cast<std::size_t>(k > banned ? k - 1 : k);
                }
                f(len, dense_[offsets_[len] + lex]);
            }
        }
        return;
    }
    for (std::size_t i = 0; i < starts; ++i)
        for (std::size_t len = 1; len <= maxlen && i + len <= host.size(); ++len) {
            auto it = entries_.find(Word::from_reduced(host.substr(i, len)));
            if (it != entries_.end()) f(len, it->second);
        }
}

double CoefficientMap::eval_sum(const Word& g) const {
    double t = 0;
    if (ceiling_ == 0) return 0;
    for_each_subword(g, 0, [&](std::size_t, double v) { t += v; });
    return t;
}

double CoefficientMap::eval_cyclic(const Word& g) const {
    Word core = cyclic_core(g);
    double t = 0;
    if (ceiling_ == 0 || core.empty()) return 0;
    for_each_subword(core, core.size(), [&](std::size_t, double v) { t += v; });
    return t;
}

std::vector<double> CoefficientMap::eval_by_length(const Word& g) const {
    std::vector<double> out(ceiling_ + 1, 0.0);
    if (ceiling_ == 0) return out;
    for_each_subword(g, 0, [&](std::size_t len, double v) { out[len] += v; });
    return out;
}

CoefficientMap CoefficientMap::truncated_above(std::size_t n) const {
    std::map<Word, double> e;
    for (const auto& [w, v] : entries_)
        if (w.size() > n) e[w] = v;
    return CoefficientMap(rank_, e);
}

CoefficientMap CoefficientMap::truncated_to(std::size_t n) const {
    std::map<Word, double> e;
    for (const auto& [w, v] : entries_)
        if (w.size() <= n) e[w] = v;
    return CoefficientMap(rank_, e);
}

// ---- spec construction ----

namespace {

QSpec make(SpecVariant v, int rank, std::string label) {
    QSpec s;
    s.node = std::make_shared<SpecNode>(SpecNode{std::move(v)});
    s.rank = rank;
    s.label = std::move(label);
    return s;
}

void need_pattern(const Word& w, int rank) {
    if (w.empty()) throw std::invalid_argument("Brooks pattern must be nonempty");
    if (w.max_generator() >= rank) throw std::invalid_argument("Brooks pattern outside rank");
}

std::string fmt(double x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

}  // namespace

QSpec QSpec::brooks_big(int rank, const Word& w) {
    need_pattern(w, rank);
    return make(BrooksBig{w}, rank, "brooks-big:" + w.text());
}

QSpec QSpec::brooks_small(int rank, const Word& w) {
    need_pattern(w, rank);
    return make(BrooksSmall{w}, rank, "brooks-small:" + w.text());
}

QSpec QSpec::brooks_hom(int rank, const Word& w) {
    need_pattern(w, rank);
    if (is_self_overlapping(w)) throw std::invalid_argument("homogenized Brooks needs a non-self-overlapping word");
    return make(BrooksHom{w}, rank, "brooks-hom:" + w.text());
}

QSpec QSpec::rolli(std::vector<RolliTable> tables) {
    int rank = static_cast<int>(tables.size());
    if (rank < 1 || rank > kMaxRank) throw std::invalid_argument("Rolli spec needs one table per generator");
    return make(Rolli{std::move(tables)}, rank, "rolli");
}

QSpec QSpec::coefficient_sum(CoefficientMap alpha, BrooksKind kind) {
    if (kind == BrooksKind::Small && !alpha.nso_support())
        throw std::invalid_argument("small coefficient sums need non-self-overlapping support");
    int rank = alpha.rank();
    return make(CoefficientSum{std::move(alpha), kind}, rank, kind == BrooksKind::Small ? "sum:small" : "sum:big");
}

QSpec QSpec::decomposable(PieceWeights w, Decomposition d) {
    int rank = d.rank;
    std::string label = "decomp:" + d.name;
    return make(Decomposable{std::move(w), std::move(d)}, rank, label);
}

QSpec QSpec::free_product(std::vector<QSpec> factors, BlockStructure bs) {
    if (factors.size() != bs.factor_count()) throw std::invalid_argument("one spec per factor required");
    std::string label = "prod:";
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (factors[i].rank != bs.factor_rank(static_cast<std::size_t>(i)))
            throw std::invalid_argument("factor spec rank mismatch at factor " + std::to_string(i + 1));
        label += (i ? ";" : "") + factors[i].label;
    }
    int rank = bs.rank();
    return make(FreeProduct{std::move(factors), std::move(bs)}, rank, label);
}

QSpec QSpec::pullback(QSpec spec_on_double, BlockStructure bs) {
    if (bs.factor_count() != 2 || bs.factor_rank(0) != bs.factor_rank(1))
        throw std::invalid_argument("pullback needs two equal blocks");
    if (spec_on_double.rank != bs.rank()) throw std::invalid_argument("pullback spec must live on the doubled group");
    int rank = bs.factor_rank(0);
    std::string label = "pullback(" + spec_on_double.label + ")";
    return make(Pullback{std::make_shared<const QSpec>(std::move(spec_on_double)), std::move(bs)}, rank, label);
}

QSpec QSpec::linear(std::vector<std::pair<double, QSpec>> terms, double constant, int rank) {
    std::string label = "lin:";
    bool first = true;
    for (const auto& [c, s] : terms) {
        if (s.rank != rank) throw std::invalid_argument("linear combination mixes ranks");
        label += (first ? "" : "+") + fmt(c) + "*" + s.label;
        first = false;
    }
    if (constant != 0.0 || first) label += (first ? "" : "+") + fmt(constant);
    return make(LinearCombination{std::move(terms), constant}, rank, label);
}

QSpec QSpec::alternating(QSpec base) {
    int rank = base.rank;
    std::string label = "alt(" + base.label + ")";
    return make(AlternatingPart{std::make_shared<const QSpec>(std::move(base))}, rank, label);
}

// ---- evaluation ----

namespace {

double eval_rolli(const std::vector<RolliTable>& t, const Word& g) {
    double v = 0;
    const std::string& s = g.letters();
    std::size_t i = 0;
    while (i < s.size()) {
        std::size_t j = i + 1;
        while (j < s.size() && s[j] == s[i]) ++j;
        auto gen = static_cast<std::size_t>(generator_of(s[i]));
        if (gen >= t.size()) throw std::invalid_argument("word outside Rolli rank");
        v += t[gen](static_cast<long>(j - i) * sign_of(s[i]));
        i = j;
    }
    return v;
}

struct Evaluator {
    const Word& g;
    double operator()(const BrooksBig& b) const { return static_cast<double>(eval_brooks(BrooksKind::Big, b.w, g)); }
    double operator()(const BrooksSmall& b) const { return static_cast<double>(eval_brooks(BrooksKind::Small, b.w, g)); }
    double operator()(const BrooksHom& b) const { return static_cast<double>(eval_homogenized_brooks(b.w, g)); }
    double operator()(const Rolli& r) const { return eval_rolli(r.tables, g); }
    double operator()(const CoefficientSum& c) const { return c.alpha.eval_sum(g); }
    double operator()(const Decomposable& d) const { return eval_decomposable(d.weights, d.delta, g); }
    double operator()(const FreeProduct& f) const {
        double v = 0;
        for (const auto& bp : block_pieces(f.blocks, g)) v += evaluate(f.factors[bp.factor], f.blocks.to_factor(bp.piece));
        return v;
    }
    double operator()(const Pullback& p) const { return evaluate(*p.spec, iota(p.blocks, g)); }
    double operator()(const LinearCombination& l) const {
        double v = l.constant;
        for (const auto& [c, s] : l.terms) v += c * evaluate(s, g);
        return v;
    }
    double operator()(const AlternatingPart& a) const { return 0.5 * (evaluate(*a.base, g) - evaluate(*a.base, invert(g))); }
};

}  // namespace

double evaluate(const QSpec& spec, const Word& g) { return std::visit(Evaluator{g}, spec.node->v); }

double coboundary(const QSpec& spec, const Word& g, const Word& h) {
    return evaluate(spec, g) + evaluate(spec, h) - evaluate(spec, multiply(g, h));
}

QSpec alternating_part(const QSpec& spec) { return QSpec::alternating(spec); }

std::size_t support_length(const QSpec& spec) {
    struct V {
        std::size_t operator()(const BrooksBig& b) const { return b.w.size(); }
        std::size_t operator()(const BrooksSmall& b) const { return b.w.size(); }
        std::size_t operator()(const BrooksHom& b) const { return b.w.size(); }
        std::size_t operator()(const Rolli&) const { return 1; }
        std::size_t operator()(const CoefficientSum& c) const { return std::max<std::size_t>(1, c.alpha.ceiling()); }
        std::size_t operator()(const Decomposable&) const { return 1; }
        std::size_t operator()(const FreeProduct& f) const {
            std::size_t m = 1;
            for (const auto& s : f.factors) m = std::max(m, support_length(s));
            return m;
        }
        std::size_t operator()(const Pullback& p) const { return std::max<std::size_t>(1, (support_length(*p.spec) + 1) / 2); }
        std::size_t operator()(const LinearCombination& l) const {
            std::size_t m = 1;
            for (const auto& t : l.terms) m = std::max(m, support_length(t.second));
            return m;
        }
        std::size_t operator()(const AlternatingPart& a) const { return support_length(*a.base); }
    };
    return std::visit(V{}, spec.node->v);
}

std::optional<Bound> theoretical_defect(const QSpec& spec, PairMode mode) {
    const bool red = mode == PairMode::Reduced;
    struct V {
        bool red;
        std::optional<Bound> operator()(const BrooksBig& b) const {
            double n = static_cast<double>(b.w.size()) - 1;
            if (red) return Bound{n, "big Brooks reduced defect <= |w|-1"};
            return Bound{3 * n, "big Brooks defect <= 3(|w|-1)"};
        }
        std::optional<Bound> operator()(const BrooksSmall&) const {
            if (red) return Bound{1, "small Brooks reduced defect <= 1"};
            return Bound{3, "small Brooks defect <= 3"};
        }
        std::optional<Bound> operator()(const BrooksHom&) const { return Bound{12, "homogenization: 4 * D(h_w) <= 12"}; }
        std::optional<Bound> operator()(const Rolli& r) const {
            double s = 0;
            for (const auto& t : r.tables) s = std::max(s, t.sup());
            return Bound{3 * s, "Rolli: 3 * sup|lambda| * D(Delta_Rolli)"};
        }
        std::optional<Bound> operator()(const CoefficientSum& c) const {
            if (c.kind == BrooksKind::Small) {
                auto k = max_compatible_weight(c.alpha.support(), [&](const Word& w) { return std::abs(c.alpha.get(w)); });
                double k1 = k.size() > 1 ? k[1] : 0.0;
                if (red) return Bound{k1, "reduced defect <= kappa_alpha(1)"};
                return Bound{3 * k1, "defect <= 3 kappa_alpha(1)"};
            }
            double s = 0;
            for (const auto& w : c.alpha.positive_support()) s += std::abs(c.alpha.get(w)) * (static_cast<double>(w.size()) - 1);
            if (red) return Bound{s, "sum of |alpha_w| (|w|-1)"};
            return Bound{3 * s, "3 * sum of |alpha_w| (|w|-1)"};
        }
        std::optional<Bound> operator()(const Decomposable& d) const {
            if (!d.delta.declared_defect) return std::nullopt;
            return Bound{3 * d.weights.sup_bound * *d.delta.declared_defect, "3 * sup|lambda| * D(Delta)"};
        }
        std::optional<Bound> operator()(const FreeProduct& f) const {
            double m = 0;
            for (const auto& s : f.factors) {
                auto b = theoretical_defect(s, PairMode::All);
                if (!b) return std::nullopt;
                m = std::max(m, b->value);
            }
            return Bound{m, "free product: max of factor defects"};
        }
        std::optional<Bound> operator()(const Pullback& p) const {
            auto b = theoretical_defect(*p.spec, PairMode::All);
            if (!b) return std::nullopt;
            return Bound{11 * b->value, "pullback along iota: 11 * D(spec)"};
        }
        std::optional<Bound> operator()(const LinearCombination& l) const {
            double s = std::abs(l.constant);
            for (const auto& [c, sp] : l.terms) {
                auto b = theoretical_defect(sp, red ? PairMode::Reduced : PairMode::All);
                if (!b) return std::nullopt;
                s += std::abs(c) * b->value;
            }
            return Bound{s, "sublinearity of the defect"};
        }
        std::optional<Bound> operator()(const AlternatingPart& a) const {
            auto b = theoretical_defect(*a.base, red ? PairMode::Reduced : PairMode::All);
            if (!b) return std::nullopt;
            return Bound{b->value, "alternating part: D(phi') <= D(phi)"};
        }
    };
    return std::visit(V{red}, spec.node->v);
}

DefectEstimate estimate_defect_fn(const std::function<double(const Word&)>& phi, int rank, std::size_t radius,
                                  PairMode mode) {
    if (radius < 1) throw std::invalid_argument("radius must be at least 1");
    auto ball = enumerate_ball(rank, radius);
    std::vector<double> val(ball.size());
    for (std::size_t i = 0; i < ball.size(); ++i) val[i] = phi(ball[i]);

    struct Part {
        double best = -1;
        std::size_t i = 0, j = 0, n = 0;
    };
    std::vector<Part> parts(thread_count());
    parallel_chunks(ball.size(), [&](std::size_t b, std::size_t e, std::size_t c) {
        Part p;
        for (std::size_t i = b; i < e; ++i)
            for (std::size_t j = 0; j < ball.size(); ++j) {
                if (mode == PairMode::Reduced && !is_reduced_product(ball[i], ball[j])) continue;
                ++p.n;
                double d = std::abs(val[i] + val[j] - phi(multiply(ball[i], ball[j])));
                if (d > p.best + kTolerance) {
                    p.best = d;
                    p.i = i;
                    p.j = j;
                }
            }
        parts[c] = p;
    });
    DefectEstimate est;
    est.scan_radius = radius;
    est.pair_mode = mode;
    Part best;
    for (const auto& p : parts) {
        est.pairs_scanned += p.n;
        if (p.best > best.best + kTolerance) best = p;
    }
    est.certified_lower = std::max(0.0, best.best);
    est.witness_g = ball[best.i];
    est.witness_h = ball[best.j];
    return est;
}

DefectEstimate estimate_defect(const QSpec& spec, std::size_t radius, PairMode mode) {
    if (radius < support_length(spec))
        throw std::invalid_argument("radius " + std::to_string(radius) + " is below the spec support length " +
                                    std::to_string(support_length(spec)));
    auto est = estimate_defect_fn([&](const Word& g) { return evaluate(spec, g); }, spec.rank, radius, mode);
    if (auto b = theoretical_defect(spec, mode)) {
        est.theoretical_upper = b->value;
        est.upper_source = b->source;
    }
    return est;
}

HomogenizationReport homogenize_sequence(const QSpec& spec, const Word& g, std::size_t n_max,
                                         std::optional<double> defect_bound) {
    if (n_max < 1) throw std::invalid_argument("n_max must be at least 1");
    HomogenizationReport rep;
    if (defect_bound) {
        rep.defect_bound = *defect_bound;
        rep.bound_source = "caller";
    } else if (auto b = theoretical_defect(spec, PairMode::All)) {
        rep.defect_bound = b->value;
        rep.bound_source = b->source;
    } else {
        auto est = estimate_defect(spec, std::max<std::size_t>(3, support_length(spec)), PairMode::All);
        rep.defect_bound = est.certified_lower;
        rep.bound_source = "ball estimate (lower bound only)";
    }
    Word gk;
    for (std::size_t k = 1; k <= n_max; ++k) {
        gk = multiply(gk, g);
        rep.values.push_back(evaluate(spec, gk) / static_cast<double>(k));
    }
    rep.worst_slack = std::numeric_limits<double>::infinity();
    for (std::size_t n = 1; n <= n_max; ++n)
        for (std::size_t m = 1; m <= n_max; ++m) {
            double gap = std::abs(rep.values[n - 1] - rep.values[m - 1]);
            double bound = (1.0 / static_cast<double>(n) + 1.0 / static_cast<double>(m)) * rep.defect_bound;
            rep.worst_slack = std::min(rep.worst_slack, bound - gap);
            if (gap > bound + kTolerance) rep.cauchy_ok = false;
        }
    return rep;
}

CoefficientMap grigorchuk_expand(const std::function<double(const Word&)>& f, int rank, std::size_t N) {
    auto ball = enumerate_ball(rank, N);
    for (const auto& w : ball)
        if (std::abs(f(w) + f(invert(w))) > kTolerance)
            throw std::invalid_argument("table is not alternating at " + w.text());
    std::map<Word, double> alpha;
    CoefficientMap current(rank, {});
    for (std::size_t len = 1; len <= N; ++len) {
        std::map<Word, double> level;
        for (const auto& w : enumerate_sphere(rank, len)) {
            if (!(w < invert(w))) continue;
            // same-length coefficients only see themselves, so one pass per length suffices
            double a = f(w) - current.eval_sum(w);
            if (std::abs(a) > 1e-12) level[w] = a;
        }
        for (auto& [w, a] : level) alpha[w] = a;
        current = CoefficientMap(rank, alpha);
    }
    return current;
}

KappaReport kappa_alpha(const CoefficientMap& alpha, std::size_t exact_limit) {
    if (alpha.ceiling() > 24) throw std::invalid_argument("support ceiling too large for the exact kappa scan");
    KappaReport rep;
    auto support = alpha.support();
    rep.kappa = max_compatible_weight(support, [&](const Word& w) { return std::abs(alpha.get(w)); });
    if (rep.kappa.size() < alpha.ceiling() + 1) rep.kappa.resize(alpha.ceiling() + 1, 0.0);
    if (rep.kappa.empty()) rep.kappa.push_back(0.0);
    for (double k : rep.kappa) rep.s_kappa += k;
    for (const auto& w : alpha.positive_support()) {
        rep.l1 += std::abs(alpha.get(w));
        rep.wl1 += static_cast<double>(w.size()) * std::abs(alpha.get(w));
    }
    rep.nso_support = alpha.nso_support();
    // finite support: every summability condition holds once the support is non-self-overlapping
    rep.is_calegari = rep.in_ell1_br = rep.in_wl1_br = rep.in_kappa_ell1 = rep.nso_support;
    if (rep.nso_support && !support.empty()) {
        auto cert = sigma_ind_certificate(support, exact_limit);
        rep.in_sigma_ind = cert.ok;
        rep.sigma_ind_families = cert.families.size();
        rep.sigma_ind_exact = cert.exact;
        rep.sigma_ind_note = cert.diagnostics;
    } else if (support.empty()) {
        rep.in_sigma_ind = true;
        rep.sigma_ind_note = "zero map";
    }
    return rep;
}

// ---- parsing ----

std::vector<RolliTable> parse_rolli_tables(const std::string& json_text, int rank) {
    auto j = nlohmann::json::parse(json_text);
    if (j.contains("rank") && j["rank"].get<int>() != rank) throw std::invalid_argument("Rolli file rank differs");
    const auto& arr = j.at("tables");
    if (static_cast<int>(arr.size()) != rank) throw std::invalid_argument("Rolli file needs one table per generator");
    std::vector<RolliTable> out;
    for (const auto& t : arr) {
        std::map<long, double> vals;
        if (t.contains("values"))
            for (auto it = t["values"].begin(); it != t["values"].end(); ++it) vals[std::stol(it.key())] = it.value().get<double>();
        out.emplace_back(vals, t.value("default", 0.0));
    }
    return out;
}

std::vector<RolliTable> read_rolli_tables(const std::string& path, int rank) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_rolli_tables(ss.str(), rank);
}

namespace {

std::string file_arg(const std::string& s) {
    if (s.empty() || s[0] != '@') throw std::invalid_argument("expected @FILE, got '" + s + "'");
    return s.substr(1);
}

std::vector<std::string> split_top(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

bool parse_double(const std::string& s, double& v) {
    try {
        std::size_t used = 0;
        v = std::stod(s, &used);
        return used == s.size();
    } catch (...) {
        return false;
    }
}

}  // namespace

QSpec parse_spec(const std::string& text, int rank, const std::optional<BlockStructure>& blocks) {
    auto starts = [&](const char* p) { return text.rfind(p, 0) == 0; };
    auto rest = [&](const char* p) { return text.substr(std::string(p).size()); };
    if (starts("brooks-big:")) return QSpec::brooks_big(rank, parse_word(rest("brooks-big:"), rank));
    if (starts("brooks-small:")) return QSpec::brooks_small(rank, parse_word(rest("brooks-small:"), rank));
    if (starts("brooks-hom:")) return QSpec::brooks_hom(rank, parse_word(rest("brooks-hom:"), rank));
    if (starts("rolli:")) return QSpec::rolli(read_rolli_tables(file_arg(rest("rolli:")), rank));
    if (starts("sum:")) {
        std::string r = rest("sum:");
        BrooksKind kind = BrooksKind::Small;
        if (r.size() > 4 && r.compare(r.size() - 4, 4, ":big") == 0) {
            kind = BrooksKind::Big;
            r.resize(r.size() - 4);
        } else if (r.size() > 6 && r.compare(r.size() - 6, 6, ":small") == 0) {
            r.resize(r.size() - 6);
        }
        return QSpec::coefficient_sum(CoefficientMap::read(file_arg(r), rank), kind);
    }
    if (starts("decomp:")) {
        std::string r = rest("decomp:");
        auto at = r.rfind(":@");
        if (at == std::string::npos) throw std::invalid_argument("decomp spec needs KIND:@WEIGHTS");
        Decomposition d = parse_decomposition(r.substr(0, at), rank);
        std::string wfile = r.substr(at + 2);
        PieceWeights w;
        if (wfile.size() > 5 && wfile.compare(wfile.size() - 5, 5, ".json") == 0) {
            w = rolli_weights(read_rolli_tables(wfile, rank));
        } else {
            auto cm = CoefficientMap::read(wfile, rank);
            w = table_weights(cm.entries(), 0.0);
        }
        return QSpec::decomposable(std::move(w), std::move(d));
    }
    if (starts("prod:")) {
        BlockStructure bs = blocks ? *blocks : BlockStructure::doubled(rank / 2);
        if (bs.rank() != rank) throw std::invalid_argument("block structure rank differs from --rank");
        auto parts = split_top(rest("prod:"), ';');
        if (parts.size() != bs.factor_count()) throw std::invalid_argument("prod: needs one spec per block");
        std::vector<QSpec> fs;
        for (std::size_t i = 0; i < parts.size(); ++i) fs.push_back(parse_spec(parts[i], bs.factor_rank(i)));
        return QSpec::free_product(std::move(fs), bs);
    }
    if (starts("lin:")) {
        std::vector<std::pair<double, QSpec>> terms;
        double constant = 0;
        for (const auto& t : split_top(rest("lin:"), '+')) {
            double c;
            if (parse_double(t, c)) {
                constant += c;
                continue;
            }
            auto star = t.find('*');
            if (star != std::string::npos && parse_double(t.substr(0, star), c)) {
                terms.emplace_back(c, parse_spec(t.substr(star + 1), rank, blocks));
            } else {
                terms.emplace_back(1.0, parse_spec(t, rank, blocks));
            }
        }
        return QSpec::linear(std::move(terms), constant, rank);
    }
    throw std::invalid_argument("unknown spec '" + text + "'");
}

}  // namespace qmf
