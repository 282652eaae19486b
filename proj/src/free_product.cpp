#include "qmforge/free_product.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qmforge/decomposition.hpp"

namespace qmf {

namespace {

// letter-level r_* : returns 1-based factor (0 = trivial) and fills x, y in ambient letters
std::size_t star_raw(const BlockStructure& bs, std::string_view g, std::string_view h, std::string& x,
                     std::string& y) {
    std::size_t k = 0;
    while (k < g.size() && k < h.size() && g[g.size() - 1 - k] == invert_letter(h[k])) ++k;
    std::string_view gp = g.substr(0, g.size() - k), t = g.substr(g.size() - k), hp = h.substr(k);
    std::size_t plen = 0, qlen = 0, slen = 0, j = 0;
    auto grow = [&] {
        plen = qlen = 0;
        while (plen < gp.size() && bs.factor_of(gp[gp.size() - 1 - plen]) == j) ++plen;
        while (qlen < hp.size() && bs.factor_of(hp[qlen]) == j) ++qlen;
    };
    if (!t.empty()) {
        j = bs.factor_of(t.front());
        while (slen < t.size() && bs.factor_of(t[slen]) == j) ++slen;
        grow();
    }
    if (plen == 0 && qlen == 0) {
        // the cancelled part is whole blocks; what is left is the gp|hp junction
        slen = 0;
        if (gp.empty() || hp.empty()) return 0;
        j = bs.factor_of(gp.back());
        if (bs.factor_of(hp.front()) != j) return 0;
        grow();
    }
    x.assign(gp.substr(gp.size() - plen));
    x.append(t.substr(0, slen));
    y.clear();
    for (std::size_t i = slen; i-- > 0;) y.push_back(invert_letter(t[i]));
    y.append(hp.substr(0, qlen));
    return j + 1;
}

// ball_index inside one factor, reading ambient letters
struct FactorIndexer {
    std::array<int, 128> key{};
    std::size_t base = 1;
    std::vector<std::size_t> offset;

    FactorIndexer(const BlockStructure& bs, std::size_t f, std::size_t max_len) {
        int fr = bs.factor_rank(f);
        base = static_cast<std::size_t>(2 * fr - 1);
        for (int i = 0; i < fr; ++i)
            for (int s : {1, -1}) {
                char local = make_letter(i, s);
                char amb = bs.from_factor(f, Word::from_reduced(std::string(1, local)))[0];
                key[static_cast<unsigned char>(amb)] = default_letter_key(local, fr);
            }
        offset.resize(max_len + 1);
        for (std::size_t n = 0; n <= max_len; ++n) offset[n] = ball_size(fr, n) - sphere_size(fr, n);
    }

    std::size_t operator()(const char* s, std::size_t n) const {
        if (n == 0) return 0;
        std::size_t lex = static_cast<std::size_t>(key[static_cast<unsigned char>(s[0])]);
        for (std::size_t i = 1; i < n; ++i) {
            int k = key[static_cast<unsigned char>(s[i])];
            int banned = key[static_cast<unsigned char>(invert_letter(s[i - 1]))];
            lex = lex * base + static_cast<std::size_t>(k > banned ? k - 1 : k);
        }
        return offset[n] + lex;
    }
};

}  // namespace

StarData r_star(const BlockStructure& bs, const Word& g, const Word& h) {
    std::string x, y;
    StarData d;
    d.i_star = star_raw(bs, g.letters(), h.letters(), x, y);
    if (d.i_star) {
        d.x = bs.to_factor(Word::from_reduced(x));
        d.y = bs.to_factor(Word::from_reduced(y));
    }
    return d;
}

StarData r_star_via_triangle(const BlockStructure& bs, const Word& g, const Word& h) {
    auto t = delta_triangle(make_block_decomposition(bs), g, h);
    StarData d;
    if (t.r1.empty() && t.r2.empty()) return d;
    if (t.r1.empty() || t.r2.empty()) throw std::logic_error("one-sided r-part in the block triangle");
    const Word& x = t.r1.back();
    const Word& y = t.r2.front();
    d.i_star = bs.factor_of(x[0]) + 1;
    d.x = bs.to_factor(x);
    d.y = bs.to_factor(y);
    return d;
}

double free_product_eval(const std::vector<QSpec>& specs, const BlockStructure& bs, const Word& g) {
    if (specs.size() != bs.factor_count()) throw std::invalid_argument("one spec per factor required");
    double v = 0;
    for (const auto& bp : block_pieces(bs, g)) v += evaluate(specs[bp.factor], bs.to_factor(bp.piece));
    return v;
}

double free_product_eval(const std::vector<FactorFn>& fns, const BlockStructure& bs, const Word& g) {
    if (fns.size() != bs.factor_count()) throw std::invalid_argument("one function per factor required");
    double v = 0;
    for (const auto& bp : block_pieces(bs, g)) v += fns[bp.factor](bs.to_factor(bp.piece));
    return v;
}

Word iota(const BlockStructure& bs, const Word& g) {
    if (bs.factor_count() != 2 || bs.factor_rank(0) != bs.factor_rank(1))
        throw std::invalid_argument("iota needs two blocks of equal rank");
    if (g.max_generator() >= bs.factor_rank(0)) throw std::invalid_argument("iota argument outside the factor");
    return Word::from_reduced(bs.from_factor(0, g).letters() + bs.from_factor(1, g).letters());
}

double pullback_eval(const QSpec& spec_on_double, const BlockStructure& bs, const Word& g) {
    return evaluate(spec_on_double, iota(bs, g));
}

UlamWitness ulam_violation_witness(const std::vector<Word>& E, const BlockStructure& bs, std::size_t extra_length,
                                   std::size_t budget) {
    if (E.empty()) throw std::invalid_argument("E must be nonempty");
    double cube = std::pow(static_cast<double>(E.size()), 3);
    if (cube > static_cast<double>(budget))
        throw std::runtime_error("|E|^3 = " + std::to_string(static_cast<std::size_t>(cube)) + " exceeds the budget");
    std::size_t emax = 0;
    for (const auto& e : E) {
        if (e.max_generator() >= bs.rank()) throw std::invalid_argument("E element outside the doubled group");
        emax = std::max(emax, e.size());
    }
    UlamWitness out;
    int fr = bs.factor_rank(0);
    for (std::size_t len = std::max<std::size_t>(emax + 1, 1); len <= emax + extra_length; ++len) {
        for (const Word& g : enumerate_sphere(fr, len)) {
            if (!is_cyclically_reduced(g)) continue;
            ++out.candidates_checked;
            Word ig = iota(bs, g);
            Word target = iota(bs, multiply(g, g));
            bool hit = false;
            for (const auto& e1 : E) {
                Word a = multiply(e1, ig);
                for (const auto& e2 : E) {
                    Word b = multiply(multiply(a, e2), ig);
                    // lengths must be able to meet the target
                    if (b.size() > target.size() + emax || b.size() + emax < target.size()) {
                        out.products_checked += E.size();
                        continue;
                    }
                    for (const auto& e3 : E) {
                        ++out.products_checked;
                        if (multiply(b, e3) == target) {
                            hit = true;
                            break;
                        }
                    }
                    if (hit) break;
                }
                if (hit) break;
            }
            if (!hit) {
                out.g = g;
                return out;
            }
        }
    }
    throw std::runtime_error("no witness found up to length " + std::to_string(emax + extra_length));
}

ProductFormulaScan scan_product_formula(const BlockStructure& bs, const std::vector<std::vector<FactorFn>>& pairings,
                                        std::size_t radius) {
    const std::size_t nf = bs.factor_count(), np = pairings.size();
    for (const auto& p : pairings)
        if (p.size() != nf) throw std::invalid_argument("each pairing needs one function per factor");
    const std::size_t tab_len = 2 * radius;

    std::vector<FactorIndexer> idx;
    std::vector<std::vector<std::vector<double>>> tab(np, std::vector<std::vector<double>>(nf));
    for (std::size_t f = 0; f < nf; ++f) {
        idx.emplace_back(bs, f, tab_len);
        auto fb = enumerate_ball(bs.factor_rank(f), tab_len);
        for (std::size_t p = 0; p < np; ++p) {
            tab[p][f].resize(fb.size());
            for (std::size_t i = 0; i < fb.size(); ++i) tab[p][f][i] = pairings[p][f](fb[i]);
        }
    }
    std::array<std::size_t, 128> fac{};
    for (int gi = 0; gi < bs.rank(); ++gi)
        for (int s : {1, -1}) fac[static_cast<unsigned char>(make_letter(gi, s))] = bs.factor_of(make_letter(gi, s));

    auto value = [&](std::size_t p, const char* s, std::size_t n) {
        double v = 0;
        std::size_t i = 0;
        while (i < n) {
            std::size_t f = fac[static_cast<unsigned char>(s[i])], j = i + 1;
            while (j < n && fac[static_cast<unsigned char>(s[j])] == f) ++j;
            v += tab[p][f][idx[f](s + i, j - i)];
            i = j;
        }
        return v;
    };

    auto ball = enumerate_ball(bs.rank(), radius);
    std::vector<double> gv(ball.size() * np);
    for (std::size_t i = 0; i < ball.size(); ++i)
        for (std::size_t p = 0; p < np; ++p) gv[i * np + p] = value(p, ball[i].letters().data(), ball[i].size());

    ProductFormulaScan out;
    std::string gh, x, y, xy;
    std::vector<double> ghv(np);
    for (std::size_t i = 0; i < ball.size(); ++i) {
        const std::string& g = ball[i].letters();
        for (std::size_t j = 0; j < ball.size(); ++j) {
            const std::string& h = ball[j].letters();
            std::size_t k = 0;
            while (k < g.size() && k < h.size() && g[g.size() - 1 - k] == invert_letter(h[k])) ++k;
            gh.assign(g, 0, g.size() - k);
            gh.append(h, k, std::string::npos);
            std::size_t star = star_raw(bs, g, h, x, y);
            std::size_t ix = 0, iy = 0, ixy = 0, f = 0;
            if (star) {
                f = star - 1;
                // xy reduces to P Q: cancel the shared s
                std::size_t c = 0;
                while (c < x.size() && c < y.size() && x[x.size() - 1 - c] == invert_letter(y[c])) ++c;
                xy.assign(x, 0, x.size() - c);
                xy.append(y, c, std::string::npos);
                ix = idx[f](x.data(), x.size());
                iy = idx[f](y.data(), y.size());
                ixy = idx[f](xy.data(), xy.size());
            }
            for (std::size_t p = 0; p < np; ++p) {
                double lhs = gv[i * np + p] + gv[j * np + p] - value(p, gh.data(), gh.size());
                double rhs = star ? tab[p][f][ix] + tab[p][f][iy] - tab[p][f][ixy] : 0.0;
                double err = std::abs(lhs - rhs);
                ++out.checks;
                if (err > kTolerance) {
                    if (out.violations == 0) {
                        out.witness_g = ball[i];
                        out.witness_h = ball[j];
                        out.witness_pairing = p;
                    }
                    ++out.violations;
                }
                out.max_error = std::max(out.max_error, err);
            }
            ++out.pairs;
        }
    }
    return out;
}

}  // namespace qmf
