#include "qmforge/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <set>
#include <stdexcept>

#include "qmforge/overlap_graphs.hpp"

namespace qmf {

namespace {

PieceSeq split_runs(const Word& g, const std::function<int(char)>& cls) {
    PieceSeq out;
    const std::string& s = g.letters();
    std::size_t i = 0;
    while (i < s.size()) {
        std::size_t j = i + 1;
        while (j < s.size() && cls(s[j]) == cls(s[i])) ++j;
        out.push_back(g.sub(i, j - i));
        i = j;
    }
    return out;
}

bool single_generator_power(const Word& p) {
    if (p.empty()) return false;
    return std::all_of(p.letters().begin(), p.letters().end(), [&](char c) { return c == p[0]; });
}

// isolate occurrences of family members; residues between them become pieces
PieceSeq isolate(const Word& g, const std::vector<Word>& family) {
    PieceSeq out;
    const std::string& s = g.letters();
    std::size_t i = 0, res = 0;
    while (i < s.size()) {
        const Word* hit = nullptr;
        for (const auto& m : family)
            if (s.compare(i, m.size(), m.letters()) == 0) {
                hit = &m;
                break;
            }
        if (!hit) {
            ++i;
            continue;
        }
        if (i > res) out.push_back(g.sub(res, i - res));
        out.push_back(*hit);
        i += hit->size();
        res = i;
    }
    if (s.size() > res) out.push_back(g.sub(res));
    return out;
}

Decomposition isolating(int rank, std::vector<Word> fam, std::string name, int defect) {
    // longest first so the negative-control families still give a deterministic split
    std::stable_sort(fam.begin(), fam.end(), [](const Word& a, const Word& b) { return a.size() > b.size(); });
    auto shared = std::make_shared<const std::vector<Word>>(std::move(fam));
    Decomposition d;
    d.name = std::move(name);
    d.rank = rank;
    d.declared_defect = defect;
    d.decompose = [shared](const Word& g) { return isolate(g, *shared); };
    d.is_piece = [shared](const Word& p) {
        if (p.empty()) return false;
        if (std::find(shared->begin(), shared->end(), p) != shared->end()) return true;
        return std::none_of(shared->begin(), shared->end(), [&](const Word& m) { return is_subword(m, p); });
    };
    return d;
}

}  // namespace

Word product(const PieceSeq& s) {
    Word acc;
    for (const auto& p : s) acc = multiply(acc, p);
    return acc;
}

PieceSeq inverse_seq(const PieceSeq& s) {
    PieceSeq out;
    out.reserve(s.size());
    for (auto it = s.rbegin(); it != s.rend(); ++it) out.push_back(invert(*it));
    return out;
}

PieceSeq DeltaTriangle::r3_inverse() const { return inverse_seq(r3); }

bool same_r_part(const DeltaTriangle& a, const DeltaTriangle& b) {
    return a.r1 == b.r1 && a.r2 == b.r2 && a.r3 == b.r3;
}

Decomposition make_trivial(int rank) {
    Decomposition d;
    d.name = "triv";
    d.rank = rank;
    d.declared_defect = 0;
    d.decompose = [](const Word& g) {
        PieceSeq out;
        for (std::size_t i = 0; i < g.size(); ++i) out.push_back(g.sub(i, 1));
        return out;
    };
    d.is_piece = [](const Word& p) { return p.size() == 1; };
    return d;
}

Decomposition make_whole(int rank) {
    Decomposition d;
    d.name = "b";
    d.rank = rank;
    d.declared_defect = 1;
    d.decompose = [](const Word& g) { return g.empty() ? PieceSeq{} : PieceSeq{g}; };
    d.is_piece = [](const Word& p) { return !p.empty(); };
    return d;
}

Decomposition make_rolli_decomposition(int rank) {
    Decomposition d;
    d.name = "rolli";
    d.rank = rank;
    d.declared_defect = 1;
    d.decompose = [](const Word& g) { return split_runs(g, [](char c) { return static_cast<int>(c); }); };
    d.is_piece = single_generator_power;
    return d;
}

Decomposition make_brooks_decomposition(int rank, const Word& w) {
    if (w.empty() || is_self_overlapping(w))
        throw std::invalid_argument("brooks decomposition needs a non-self-overlapping word");
    return isolating(rank, {w, invert(w)}, "brooks:" + w.text(), 3);
}

Decomposition make_independent(int rank, const std::vector<Word>& I) {
    auto fam = symmetrize(I);
    if (fam.empty()) throw std::invalid_argument("empty family");
    if (!is_independent_family(fam)) throw std::invalid_argument("family is not independent");
    std::string name = "indep:";
    for (std::size_t i = 0; i < I.size(); ++i) name += (i ? "," : "") + I[i].text();
    return isolating(rank, fam, name, 5);
}

Decomposition make_independent_unchecked(int rank, const std::vector<Word>& I) {
    std::string name = "indep-unchecked:";
    for (std::size_t i = 0; i < I.size(); ++i) name += (i ? "," : "") + I[i].text();
    return isolating(rank, symmetrize(I), name, 5);
}

Decomposition make_block_decomposition(const BlockStructure& bs) {
    Decomposition d;
    d.name = "blocks:" + bs.text().substr(7);
    d.rank = bs.rank();
    d.declared_defect = 1;
    d.decompose = [bs](const Word& g) { return block_decompose(bs, g); };
    d.is_piece = [bs](const Word& p) { return !p.empty() && block_pieces(bs, p).size() == 1; };
    return d;
}

Decomposition make_free_product_decomposition(const std::vector<Decomposition>& factors, const BlockStructure& bs) {
    if (factors.size() != bs.factor_count()) throw std::invalid_argument("one decomposition per factor required");
    for (std::size_t i = 0; i < factors.size(); ++i)
        if (factors[i].rank != bs.factor_rank(i))
            throw std::invalid_argument("factor decomposition rank mismatch at factor " + std::to_string(i + 1));
    Decomposition d;
    d.name = "product(";
    int defect = 0;
    bool all_declared = true;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        d.name += (i ? "*" : "") + factors[i].name;
        if (factors[i].declared_defect)
            defect = std::max(defect, *factors[i].declared_defect);
        else
            all_declared = false;
    }
    d.name += ")";
    d.rank = bs.rank();
    if (all_declared) d.declared_defect = std::max(defect, 1);
    d.decompose = [factors, bs](const Word& g) {
        PieceSeq out;
        for (const auto& bp : block_pieces(bs, g))
            for (const auto& p : factors[bp.factor](bs.to_factor(bp.piece))) out.push_back(bs.from_factor(bp.factor, p));
        return out;
    };
    d.is_piece = [factors, bs](const Word& p) {
        auto bp = block_pieces(bs, p);
        return bp.size() == 1 && factors[bp[0].factor].is_piece(bs.to_factor(bp[0].piece));
    };
    return d;
}

Decomposition parse_decomposition(const std::string& text, int rank) {
    if (text == "triv") return make_trivial(rank);
    if (text == "b") return make_whole(rank);
    if (text == "rolli") return make_rolli_decomposition(rank);
    if (text.rfind("brooks:", 0) == 0) return make_brooks_decomposition(rank, parse_word(text.substr(7), rank));
    if (text.rfind("indep:@", 0) == 0) {
        auto ws = read_word_set(text.substr(7));
        if (ws.rank != rank) throw std::invalid_argument("family file rank differs from --rank");
        return make_independent(rank, ws.words);
    }
    if (text.rfind("blocks:", 0) == 0) {
        auto bs = BlockStructure::parse(text.substr(7));
        if (bs.rank() != rank) throw std::invalid_argument("block structure rank differs from --rank");
        return make_block_decomposition(bs);
    }
    throw std::invalid_argument("unknown decomposition '" + text + "'");
}

AxiomReport validate_axioms(const Decomposition& d, std::size_t radius) {
    AxiomReport rep;
    auto fail = [&](int ax, const Word& w, std::string why) {
        rep.ok = false;
        rep.axiom = ax;
        rep.witness = w;
        rep.detail = std::move(why);
    };
    for (const Word& g : enumerate_ball(d.rank, radius)) {
        ++rep.words_checked;
        PieceSeq s = d(g);
        std::string cat;
        for (const auto& p : s) {
            if (!d.is_piece(p)) {
                fail(1, g, "non-piece " + p.text() + " in decomposition");
                return rep;
            }
            cat += p.letters();
        }
        if (cat != g.letters()) {
            fail(1, g, "pieces do not concatenate to the word");
            return rep;
        }
        if (d(invert(g)) != inverse_seq(s)) {
            fail(2, g, "decomposition of the inverse is not the reversed inverse sequence");
            return rep;
        }
        for (std::size_t i = 0; i < s.size(); ++i)
            for (std::size_t j = i + 1; j <= s.size(); ++j) {
                if (i == 0 && j == s.size()) continue;
                PieceSeq part(s.begin() + i, s.begin() + j);
                if (d(product(part)) != part) {
                    fail(3, g, "subrange [" + std::to_string(i) + "," + std::to_string(j) + ") is not infix closed");
                    return rep;
                }
            }
    }
    return rep;
}

DeltaTriangle triangle_from(const PieceSeq& dg, const PieceSeq& dh, const PieceSeq& dgh) {
    std::size_t k1 = 0;
    while (k1 < dg.size() && k1 < dgh.size() && dg[k1] == dgh[k1]) ++k1;
    std::size_t k2 = 0;
    while (k2 < dg.size() && k2 < dh.size() && dh[k2] == invert(dg[dg.size() - 1 - k2])) ++k2;
    std::size_t k3 = 0;
    while (k3 < dh.size() && k3 < dgh.size() && dh[dh.size() - 1 - k3] == dgh[dgh.size() - 1 - k3]) ++k3;
    if (k1 + k2 > dg.size() || k2 + k3 > dh.size() || k1 + k3 > dgh.size())
        throw std::logic_error("c-parts overlap: not a decomposition");
    DeltaTriangle t;
    t.c1 = inverse_seq(PieceSeq(dg.begin(), dg.begin() + k1));
    t.c2 = PieceSeq(dg.end() - k2, dg.end());
    t.c3 = PieceSeq(dh.end() - k3, dh.end());
    t.r1 = PieceSeq(dg.begin() + k1, dg.end() - k2);
    t.r2 = PieceSeq(dh.begin() + k2, dh.end() - k3);
    t.r3 = inverse_seq(PieceSeq(dgh.begin() + k1, dgh.end() - k3));
    return t;
}

DeltaTriangle delta_triangle(const Decomposition& d, const Word& g, const Word& h) {
    return triangle_from(d(g), d(h), d(multiply(g, h)));
}

DefectEstimate estimate_decomposition_defect(const Decomposition& d, std::size_t radius) {
    if (radius < 1) throw std::invalid_argument("radius must be at least 1");
    DefectEstimate est;
    est.scan_radius = radius;
    est.pair_mode = PairMode::All;
    auto ball = enumerate_ball(d.rank, radius);
    std::vector<PieceSeq> dec;
    dec.reserve(ball.size());
    for (const auto& g : ball) dec.push_back(d(g));
    std::size_t best = 0;
    for (std::size_t i = 0; i < ball.size(); ++i)
        for (std::size_t j = 0; j < ball.size(); ++j) {
            ++est.pairs_scanned;
            auto t = triangle_from(dec[i], dec[j], d(multiply(ball[i], ball[j])));
            std::size_t r = t.max_r();
            if (r > best) {
                best = r;
                est.witness_g = ball[i];
                est.witness_h = ball[j];
            }
        }
    est.certified_lower = static_cast<double>(best);
    if (d.declared_defect) {
        est.theoretical_upper = *d.declared_defect;
        est.upper_source = "declared defect of " + d.name;
    }
    return est;
}

double PieceWeights::operator()(const Word& p) const {
    auto v = weight(p);
    if (!v) throw std::invalid_argument("piece weight undefined on " + p.text());
    return *v;
}

PieceWeights table_weights(const std::map<Word, double>& table, std::optional<double> default_value) {
    if (default_value && std::abs(*default_value) > kTolerance)
        throw std::invalid_argument("a nonzero default weight is not alternating");
    auto full = std::make_shared<std::map<Word, double>>();
    double sup = 0;
    for (const auto& [w, v] : table) {
        Word wi = invert(w);
        auto it = full->find(w);
        if (it != full->end() && std::abs(it->second - v) > kTolerance)
            throw std::invalid_argument("weights are not alternating at " + w.text());
        (*full)[w] = v;
        auto jt = full->find(wi);
        if (jt != full->end() && std::abs(jt->second + v) > kTolerance)
            throw std::invalid_argument("weights are not alternating at " + w.text());
        (*full)[wi] = -v;
        sup = std::max(sup, std::abs(v));
    }
    PieceWeights pw;
    pw.name = "table";
    pw.sup_bound = sup;
    pw.weight = [full, default_value](const Word& p) -> std::optional<double> {
        auto it = full->find(p);
        if (it != full->end()) return it->second;
        return default_value;
    };
    return pw;
}

PieceWeights rolli_weights(const std::vector<RolliTable>& tables) {
    PieceWeights pw;
    pw.name = "rolli";
    for (const auto& t : tables) pw.sup_bound = std::max(pw.sup_bound, t.sup());
    pw.weight = [tables](const Word& p) -> std::optional<double> {
        if (!single_generator_power(p)) return std::nullopt;
        auto gen = static_cast<std::size_t>(generator_of(p[0]));
        if (gen >= tables.size()) return std::nullopt;
        long m = static_cast<long>(p.size()) * sign_of(p[0]);
        return tables[gen](m);
    };
    return pw;
}

double eval_pieces(const PieceWeights& w, const PieceSeq& s) {
    double t = 0;
    for (const auto& p : s) t += w(p);
    return t;
}

double eval_decomposable(const PieceWeights& w, const Decomposition& d, const Word& g) {
    return eval_pieces(w, d(g));
}

namespace {

std::size_t lcp_or_inf(const PieceSeq& a, const PieceSeq& b) {
    if (a == b) return kInfinity;
    std::size_t k = 0;
    while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
    return k;
}

}  // namespace

std::size_t n_delta(const DeltaTriangle& a, const DeltaTriangle& b) {
    if (!same_r_part(a, b)) return 0;
    return std::min({lcp_or_inf(a.c1, b.c1), lcp_or_inf(a.c2, b.c2), lcp_or_inf(a.c3, b.c3)});
}

std::size_t n_delta(const Decomposition& d, const std::pair<Word, Word>& p1, const std::pair<Word, Word>& p2) {
    return n_delta(delta_triangle(d, p1.first, p1.second), delta_triangle(d, p2.first, p2.second));
}

}  // namespace qmf
