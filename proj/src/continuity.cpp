#include "qmforge/continuity.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace qmf {

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
    // splitmix64 finaliser over the running state
    std::uint64_t z = h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class Interner {
public:
    std::uint32_t id(const Word& w) {
        auto [it, fresh] = ids_.try_emplace(w.letters(), static_cast<std::uint32_t>(ids_.size() + 1));
        return it->second;
    }

private:
    std::unordered_map<std::string, std::uint32_t> ids_;
};

}  // namespace

bool ContinuityProfile::consistent() const {
    for (const auto& [n, v] : x_hat) {
        auto it = theoretical.find(n);
        if (it != theoretical.end() && v > it->second + kTolerance) return false;
    }
    return true;
}

ContinuityProfile continuity_profile_fn(const std::function<double(const Word&)>& phi, const Decomposition& d,
                                        std::size_t radius) {
    if (radius < 1) throw std::invalid_argument("radius must be at least 1");
    auto ball = enumerate_ball(d.rank, radius);
    const std::size_t B = ball.size();
    std::vector<double> val(B);
    std::vector<PieceSeq> dec(B);
    for (std::size_t i = 0; i < B; ++i) {
        val[i] = phi(ball[i]);
        dec[i] = d(ball[i]);
    }
    for (std::size_t i = 0; i < B; ++i) {
        double vi = phi(invert(ball[i]));
        if (std::abs(val[i] + vi) > kTolerance) throw std::invalid_argument("spec is not alternating at " + ball[i].text());
    }

    const std::size_t P = B * B;
    Interner intern;
    std::vector<double> delta(P);
    std::vector<std::uint64_t> rhash(P);
    std::vector<std::array<std::uint8_t, 3>> clen(P);
    std::vector<std::uint64_t> off(P + 1);
    std::vector<std::uint32_t> ids;
    std::size_t max_level = 0;

    for (std::size_t i = 0; i < B; ++i)
        for (std::size_t j = 0; j < B; ++j) {
            const std::size_t p = i * B + j;
            Word gh = multiply(ball[i], ball[j]);
            auto t = triangle_from(dec[i], dec[j], d(gh));
            delta[p] = val[i] + val[j] - phi(gh);
            std::uint64_t h = 0x51ed270b27a1f1c3ULL;
            for (const PieceSeq* r : {&t.r1, &t.r2, &t.r3}) {
                h = mix(h, r->size());
                for (const auto& piece : *r) h = mix(h, intern.id(piece));
            }
            rhash[p] = h;
            off[p] = ids.size();
            std::size_t k = 0;
            for (const PieceSeq* c : {&t.c1, &t.c2, &t.c3}) {
                if (c->size() > 255) throw std::length_error("c-part too long");
                clen[p][k++] = static_cast<std::uint8_t>(c->size());
                max_level = std::max(max_level, c->size());
                for (const auto& piece : *c) ids.push_back(intern.id(piece));
            }
        }
    off[P] = ids.size();

    ContinuityProfile prof;
    prof.scan_radius = radius;
    prof.pairs = P;
    prof.max_level = max_level;

    // state[p][i]: hash of the first min(N, |c_i|) pieces of c_i
    std::vector<std::array<std::uint64_t, 3>> state(P, {0, 0, 0});
    auto key_at = [&](std::size_t p, std::size_t n) {
        std::uint64_t h = rhash[p];
        for (std::size_t i = 0; i < 3; ++i) h = mix(mix(h, state[p][i]), clen[p][i] < n ? 1 + clen[p][i] : 0);
        return h;
    };
    auto advance = [&](std::size_t p, std::size_t n) {  // state from level n to n + 1
        std::uint64_t at = off[p];
        for (std::size_t i = 0; i < 3; ++i) {
            if (clen[p][i] > n) state[p][i] = mix(state[p][i], ids[at + n]);
            at += clen[p][i];
        }
    };

    std::vector<std::uint64_t> cur(P, 0), next(P);
    std::vector<std::uint32_t> order(P);
    auto pair_of = [&](std::size_t p) { return WordPair{ball[p / B], ball[p % B]}; };

    for (std::size_t n = 0; n <= max_level; ++n) {
        for (std::size_t p = 0; p < P; ++p) {
            advance(p, n);
            next[p] = key_at(p, n + 1);
        }
        std::iota(order.begin(), order.end(), 0u);
        std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
            if (cur[a] != cur[b]) return cur[a] < cur[b];
            if (next[a] != next[b]) return next[a] < next[b];
            return a < b;
        });
        double best = 0;
        std::size_t wa = 0, wb = 0;
        bool found = false;
        std::size_t gs = 0;
        while (gs < P) {
            std::size_t ge = gs;
            while (ge < P && cur[order[ge]] == cur[order[gs]]) ++ge;
            struct Sub {
                double mx, mn;
                std::uint32_t amx, amn;
            };
            std::vector<Sub> subs;
            for (std::size_t s = gs; s < ge;) {
                std::size_t e = s;
                Sub sb{-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), 0, 0};
                while (e < ge && next[order[e]] == next[order[s]]) {
                    std::uint32_t p = order[e];
                    if (delta[p] > sb.mx) sb.mx = delta[p], sb.amx = p;
                    if (delta[p] < sb.mn) sb.mn = delta[p], sb.amn = p;
                    ++e;
                }
                subs.push_back(sb);
                s = e;
            }
            if (subs.size() >= 2) {
                // two smallest minima, so each subgroup can pair with the best other one
                std::size_t m1 = 0, m2 = 1;
                if (subs[m2].mn < subs[m1].mn) std::swap(m1, m2);
                for (std::size_t k = 2; k < subs.size(); ++k) {
                    if (subs[k].mn < subs[m1].mn) {
                        m2 = m1;
                        m1 = k;
                    } else if (subs[k].mn < subs[m2].mn) {
                        m2 = k;
                    }
                }
                for (std::size_t k = 0; k < subs.size(); ++k) {
                    std::size_t o = k == m1 ? m2 : m1;
                    double v = subs[k].mx - subs[o].mn;
                    if (!found || v > best) {
                        best = v;
                        wa = subs[k].amx;
                        wb = subs[o].amn;
                        found = true;
                    }
                }
            }
            gs = ge;
        }
        prof.x_hat[n] = found ? std::max(0.0, best) : 0.0;
        if (found && best > kTolerance) prof.witness[n] = {pair_of(wa), pair_of(wb)};
        cur.swap(next);
    }
    prof.x_hat[max_level + 1] = 0.0;
    return prof;
}

std::optional<std::pair<std::map<std::size_t, double>, std::string>> theoretical_profile(const QSpec& spec,
                                                                                       const Decomposition& d,
                                                                                       std::size_t max_n) {
    using Result = std::optional<std::pair<std::map<std::size_t, double>, std::string>>;
    std::map<std::size_t, double> m;
    auto brooks_steps = [&](const Word& w, double defect, const char* src) -> Result {
        for (std::size_t n = 0; n <= max_n; ++n) m[n] = n < w.size() ? 2 * defect : 0.0;
        return std::make_pair(m, std::string(src));
    };
    struct V {
        const Decomposition& d;
        std::size_t max_n;
        std::map<std::size_t, double>& m;
        const std::function<Result(const Word&, double, const char*)>& steps;

        Result operator()(const BrooksBig& b) const {
            return steps(b.w, 3.0 * (static_cast<double>(b.w.size()) - 1), "big Brooks: 2 D(H_w) below |w|, 0 from |w| on");
        }
        Result operator()(const BrooksSmall& b) const {
            if (is_self_overlapping(b.w)) return std::nullopt;
            return steps(b.w, 3.0, "Brooks on a non-self-overlapping word: 0 from |w| on");
        }
        Result operator()(const CoefficientSum& c) const {
            if (c.kind == BrooksKind::Small) {
                auto k = max_compatible_weight(c.alpha.support(), [&](const Word& w) { return std::abs(c.alpha.get(w)); });
                for (std::size_t n = 0; n <= max_n; ++n) m[n] = 36.0 * (n < k.size() ? k[n] : 0.0);
                return std::make_pair(m, std::string("36 kappa_alpha(N)"));
            }
            for (std::size_t n = 0; n <= max_n; ++n) {
                double s = 0;
                for (const auto& [w, a] : c.alpha.entries())
                    if (w.size() > n) s += std::abs(a) * 2 * 3.0 * (static_cast<double>(w.size()) - 1);
                m[n] = s;
            }
            return std::make_pair(m, std::string("sum over |w| > N of 2 |alpha_w| D(H_w)"));
        }
        Result operator()(const Decomposable& dec) const {
            if (dec.delta.name != d.name) return std::nullopt;
            auto b = theoretical_defect(QSpec::decomposable(dec.weights, dec.delta), PairMode::All);
            for (std::size_t n = 1; n <= max_n; ++n) m[n] = 0.0;
            if (b) m[0] = 2 * b->value;
            return std::make_pair(m, std::string("decomposable against its own decomposition: 0 from N = 1"));
        }
        Result operator()(const LinearCombination& l) const {
            std::map<std::size_t, double> acc;
            for (std::size_t n = 0; n <= max_n; ++n) acc[n] = 0.0;
            for (const auto& [c, s] : l.terms) {
                auto sub = theoretical_profile(s, d, max_n);
                if (!sub) return std::nullopt;
                for (std::size_t n = 0; n <= max_n; ++n) {
                    auto it = sub->first.find(n);
                    if (it == sub->first.end()) {
                        acc.erase(n);
                        continue;
                    }
                    if (acc.count(n)) acc[n] += std::abs(c) * it->second;
                }
            }
            return std::make_pair(acc, std::string("sum of |c| times the term profiles"));
        }
        Result operator()(const BrooksHom&) const { return std::nullopt; }
        Result operator()(const Rolli&) const { return std::nullopt; }
        Result operator()(const FreeProduct&) const { return std::nullopt; }
        Result operator()(const Pullback&) const { return std::nullopt; }
        Result operator()(const AlternatingPart&) const { return std::nullopt; }
    };
    std::function<Result(const Word&, double, const char*)> steps = brooks_steps;
    return std::visit(V{d, max_n, m, steps}, spec.node->v);
}

ContinuityProfile continuity_profile(const QSpec& spec, const Decomposition& d, std::size_t radius) {
    if (spec.rank != d.rank) throw std::invalid_argument("spec and decomposition ranks differ");
    auto prof = continuity_profile_fn([&](const Word& g) { return evaluate(spec, g); }, d, radius);
    if (auto t = theoretical_profile(spec, d, prof.max_level + 1)) {
        prof.theoretical = std::move(t->first);
        prof.theoretical_source = std::move(t->second);
    }
    return prof;
}

}  // namespace qmf
