#include "qmforge/word.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace qmf {

namespace {

int shortlex_key(char c) { return is_inverse_letter(c) ? kMaxRank + (c - 'A') : c - 'a'; }

bool valid_code(char c, int rank) {
    if (c >= 'a' && c < 'a' + rank) return true;
    if (c >= 'A' && c < 'A' + rank) return true;
    return false;
}

void check_rank(int rank) {
    if (rank < 1 || rank > kMaxRank) throw std::invalid_argument("rank must be in [1, 26]");
}

}  // namespace

Word Word::from_reduced(std::string letters) { return Word(std::move(letters)); }

int Word::max_generator() const {
    int m = -1;
    for (char c : s_) m = std::max(m, generator_of(c));
    return m;
}

bool operator<(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
        int ka = shortlex_key(a[i]), kb = shortlex_key(b[i]);
        if (ka != kb) return ka < kb;
    }
    return false;
}

int default_letter_key(char c, int rank) { return is_inverse_letter(c) ? rank + (c - 'A') : c - 'a'; }

LetterOrder LetterOrder::standard(int rank) {
    check_rank(rank);
    LetterOrder o;
    o.key.fill(1000);
    for (int i = 0; i < rank; ++i) {
        o.key[static_cast<unsigned char>(make_letter(i, 1))] = i;
        o.key[static_cast<unsigned char>(make_letter(i, -1))] = rank + i;
    }
    return o;
}

LetterOrder LetterOrder::parse(std::string_view letters, int rank) {
    check_rank(rank);
    if (letters.size() != static_cast<std::size_t>(2 * rank))
        throw std::invalid_argument("letter order must list all 2*rank letters");
    LetterOrder o;
    o.key.fill(-1);
    int k = 0;
    for (char c : letters) {
        if (!valid_code(c, rank)) throw std::invalid_argument(std::string("bad letter in order: ") + c);
        auto& slot = o.key[static_cast<unsigned char>(c)];
        if (slot != -1) throw std::invalid_argument(std::string("repeated letter in order: ") + c);
        slot = k++;
    }
    for (auto& v : o.key)
        if (v == -1) v = 1000;
    return o;
}

bool LetterOrder::less(const Word& a, const Word& b) const {
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        int ka = key[static_cast<unsigned char>(a[i])], kb = key[static_cast<unsigned char>(b[i])];
        if (ka != kb) return ka < kb;
    }
    return a.size() < b.size();
}

Word reduce(std::string_view raw, int rank) {
    check_rank(rank);
    std::string out;
    out.reserve(raw.size());
    for (char c : raw) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (!valid_code(c, rank)) throw std::invalid_argument(std::string("invalid generator letter '") + c + "'");
        if (!out.empty() && out.back() == invert_letter(c))
            out.pop_back();
        else
            out.push_back(c);
    }
    return Word::from_reduced(std::move(out));
}

Word reduce(const std::vector<Letter>& raw, int rank) {
    std::string s;
    s.reserve(raw.size());
    for (const auto& l : raw) {
        if (l.generator < 0 || l.generator >= rank || (l.sign != 1 && l.sign != -1))
            throw std::invalid_argument("invalid letter");
        s.push_back(l.code());
    }
    return reduce(s, rank);
}

Word parse_word(std::string_view text, int rank) {
    std::string_view t = text;
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.remove_prefix(1);
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.remove_suffix(1);
    if (t == "1") return Word();
    return reduce(t, rank);
}

std::size_t cancellation_length(const Word& a, const Word& b) {
    std::size_t k = 0, n = std::min(a.size(), b.size());
    while (k < n && a[a.size() - 1 - k] == invert_letter(b[k])) ++k;
    return k;
}

bool is_reduced_product(const Word& a, const Word& b) {
    return a.empty() || b.empty() || a.back() != invert_letter(b.front());
}

Word multiply(const Word& a, const Word& b) {
    std::size_t k = cancellation_length(a, b);
    std::string s;
    s.reserve(a.size() + b.size() - 2 * k);
    s.append(a.letters(), 0, a.size() - k);
    s.append(b.letters(), k, std::string::npos);
    return Word::from_reduced(std::move(s));
}

Word invert(const Word& a) {
    std::string s(a.size(), ' ');
    for (std::size_t i = 0; i < a.size(); ++i) s[a.size() - 1 - i] = invert_letter(a[i]);
    return Word::from_reduced(std::move(s));
}

Word power(const Word& a, long k) {
    Word base = k < 0 ? invert(a) : a;
    Word acc;
    for (long i = 0; i < (k < 0 ? -k : k); ++i) acc = multiply(acc, base);
    return acc;
}

Word conjugate(const Word& x, const Word& g) { return multiply(multiply(x, g), invert(x)); }

bool is_cyclically_reduced(const Word& w) { return w.size() < 2 || w.front() != invert_letter(w.back()); }

Word cyclic_core(const Word& g) {
    std::size_t i = 0, j = g.size();
    while (j - i >= 2 && g[i] == invert_letter(g[j - 1])) {
        ++i;
        --j;
    }
    return g.sub(i, j - i);
}

CyclicReport cyclic_analysis(const Word& g) {
    CyclicReport r;
    std::size_t i = 0, j = g.size();
    while (j - i >= 2 && g[i] == invert_letter(g[j - 1])) {
        ++i;
        --j;
    }
    r.core = g.sub(i, j - i);
    r.conjugator = g.sub(0, i);
    std::set<Word> perms;
    const std::string& c = r.core.letters();
    for (std::size_t k = 0; k < c.size(); ++k) perms.insert(Word::from_reduced(c.substr(k) + c.substr(0, k)));
    r.cyclic_permutations.assign(perms.begin(), perms.end());
    r.simple = !r.core.empty() && perms.size() == r.core.size();
    return r;
}

bool is_proper_power(const Word& w) {
    if (w.size() < 2) return false;
    const std::string& s = w.letters();
    for (std::size_t p = 1; p < s.size(); ++p) {
        if (s.size() % p) continue;
        bool ok = true;
        for (std::size_t i = p; i < s.size() && ok; ++i) ok = s[i] == s[i - p];
        if (ok) return true;
    }
    return false;
}

bool is_conjugate(const Word& a, const Word& b) {
    Word ca = cyclic_core(a), cb = cyclic_core(b);
    if (ca.size() != cb.size()) return false;
    if (ca.empty()) return true;
    std::string doubled = ca.letters() + ca.letters();
    return doubled.find(cb.letters()) != std::string::npos;
}

bool is_subword(const Word& needle, const Word& hay) {
    return hay.letters().find(needle.letters()) != std::string::npos;
}

OverlapReport overlap_report(const Word& w, const Word& w2) {
    if (w.empty() || w2.empty()) throw std::invalid_argument("overlap_report needs nonempty words");
    OverlapReport r;
    r.left_is_subword = w.size() < w2.size() ? is_subword(w, w2) : (w.size() == w2.size() && w == w2);
    r.right_is_subword = w2.size() < w.size() ? is_subword(w2, w) : (w.size() == w2.size() && w == w2);
    std::size_t m = std::min(w.size(), w2.size());
    const std::string &s = w.letters(), &t = w2.letters();
    for (std::size_t k = 1; k < m; ++k) {
        if (s.compare(s.size() - k, k, t, 0, k) == 0) r.proper_overlap_lengths_lr.push_back(k);
        if (t.compare(t.size() - k, k, s, 0, k) == 0) r.proper_overlap_lengths_rl.push_back(k);
    }
    std::optional<std::size_t> best;
    bool from_lr = true;
    if (!r.proper_overlap_lengths_lr.empty()) best = r.proper_overlap_lengths_lr.front();
    if (!r.proper_overlap_lengths_rl.empty() && (!best || r.proper_overlap_lengths_rl.front() < *best)) {
        best = r.proper_overlap_lengths_rl.front();
        from_lr = false;
    }
    if (best) r.minimal_overlap = from_lr ? w2.sub(0, *best) : w.sub(0, *best);
    return r;
}

bool is_self_overlapping(const Word& w) {
    const std::string& s = w.letters();
    for (std::size_t k = 1; k < s.size(); ++k)
        if (s.compare(s.size() - k, k, s, 0, k) == 0) return true;
    return false;
}

std::optional<Word> self_overlap_witness(const Word& w) {
    const std::string& s = w.letters();
    for (std::size_t k = 1; k < s.size(); ++k)
        if (s.compare(s.size() - k, k, s, 0, k) == 0) return w.sub(0, k);
    return std::nullopt;
}

bool is_lyndon(const Word& w, const LetterOrder& order) {
    if (w.empty() || !is_cyclically_reduced(w)) return false;
    const std::string& s = w.letters();
    for (std::size_t k = 1; k < s.size(); ++k) {
        Word rot = Word::from_reduced(s.substr(k) + s.substr(0, k));
        // strict minimality also rules out proper powers (a rotation equals w)
        if (!order.less(w, rot)) return false;
    }
    return true;
}

namespace {

Word lyndon_rep(const Word& w, const LetterOrder& order) {
    const std::string& s = w.letters();
    Word best = w;
    for (std::size_t k = 1; k < s.size(); ++k) {
        Word rot = Word::from_reduced(s.substr(k) + s.substr(0, k));
        if (order.less(rot, best)) best = rot;
    }
    return best;
}

}  // namespace

std::vector<Word> generate_fundamental_set(std::size_t max_len, int rank, const LetterOrder& order) {
    if (max_len < 2) throw std::invalid_argument("max_len must be at least 2");
    std::vector<Word> out;
    for (std::size_t k = 2; k <= max_len; ++k) {
        for (const Word& w : enumerate_sphere(rank, k)) {
            if (!is_lyndon(w, order)) continue;
            Word inv_rep = lyndon_rep(invert(w), order);
            if (!order.less(w, inv_rep)) continue;
            out.push_back(w);
            out.push_back(invert(w));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Word> juncture_family(const ReducedExpression& e, std::size_t max_len) {
    const Word &u = e.left, &v = e.right;
    std::set<Word> out;
    if (u.empty() || v.empty() || !is_reduced_product(u, v)) return {};
    for (std::size_t i = 1; i <= u.size(); ++i)
        for (std::size_t j = 1; j <= v.size() && i + j <= max_len; ++j)
            out.insert(Word::from_reduced(u.letters().substr(u.size() - i) + v.letters().substr(0, j)));
    return {out.begin(), out.end()};
}

bool in_juncture(const Word& w, const ReducedExpression& e) {
    const std::string &u = e.left.letters(), &v = e.right.letters(), &s = w.letters();
    if (u.empty() || v.empty() || !is_reduced_product(e.left, e.right)) return false;
    for (std::size_t i = 1; i < s.size(); ++i) {
        std::size_t j = s.size() - i;
        if (i > u.size() || j > v.size()) continue;
        if (u.compare(u.size() - i, i, s, 0, i) == 0 && v.compare(0, j, s, i, j) == 0) return true;
    }
    return false;
}

std::vector<double> max_compatible_weight(const std::vector<Word>& support,
                                          const std::function<double(const Word&)>& weight) {
    std::unordered_map<std::string, double> wt;
    std::set<std::string> lefts, rights;
    std::size_t maxlen = 0;
    for (const Word& w : support) {
        if (w.size() < 2) continue;
        wt[w.letters()] = weight(w);
        maxlen = std::max(maxlen, w.size());
        for (std::size_t k = 1; k < w.size(); ++k) {
            lefts.insert(w.letters().substr(0, k));
            rights.insert(w.letters().substr(k));
        }
    }
    std::vector<double> best(maxlen + 1, 0.0);
    std::vector<double> bucket(maxlen + 1);
    std::string buf;
    std::vector<const std::string*> seen;  // self-overlapping words can straddle at several splits
    for (const auto& u : lefts) {
        for (const auto& v : rights) {
            if (u.back() == invert_letter(v.front())) continue;
            std::fill(bucket.begin(), bucket.end(), 0.0);
            seen.clear();
            bool any = false;
            for (std::size_t i = 1; i <= u.size(); ++i) {
                for (std::size_t j = 1; j <= v.size() && i + j <= maxlen; ++j) {
                    buf.assign(u, u.size() - i, i);
                    buf.append(v, 0, j);
                    auto it = wt.find(buf);
                    if (it == wt.end()) continue;
                    if (std::find(seen.begin(), seen.end(), &it->first) != seen.end()) continue;
                    seen.push_back(&it->first);
                    bucket[i + j] += it->second;
                    any = true;
                }
            }
            if (!any) continue;
            double tail = 0;
            for (std::size_t k = maxlen + 1; k-- > 0;) {
                // tail is the weight of members strictly longer than k
                best[k] = std::max(best[k], tail);
                tail += bucket[k];
            }
        }
    }
    return best;
}

std::size_t sphere_size(int rank, std::size_t k) {
    if (k == 0) return 1;
    std::size_t s = 2 * rank;
    for (std::size_t i = 1; i < k; ++i) s *= (2 * rank - 1);
    return s;
}

std::size_t ball_size(int rank, std::size_t radius) {
    std::size_t t = 0;
    for (std::size_t k = 0; k <= radius; ++k) t += sphere_size(rank, k);
    return t;
}

namespace {

// letters sorted by the default order
std::vector<char> ordered_letters(int rank) {
    std::vector<char> v;
    for (int i = 0; i < rank; ++i) v.push_back(make_letter(i, 1));
    for (int i = 0; i < rank; ++i) v.push_back(make_letter(i, -1));
    return v;
}

void extend_sphere(const std::vector<char>& alpha, std::string& cur, std::size_t k, std::vector<Word>& out) {
    if (cur.size() == k) {
        out.push_back(Word::from_reduced(cur));
        return;
    }
    for (char c : alpha) {
        if (!cur.empty() && cur.back() == invert_letter(c)) continue;
        cur.push_back(c);
        extend_sphere(alpha, cur, k, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<Word> enumerate_sphere(int rank, std::size_t k) {
    check_rank(rank);
    std::vector<Word> out;
    out.reserve(sphere_size(rank, k));
    std::string cur;
    extend_sphere(ordered_letters(rank), cur, k, out);
    return out;
}

std::vector<Word> enumerate_ball(int rank, std::size_t radius) {
    check_rank(rank);
    std::vector<Word> out;
    out.reserve(ball_size(rank, radius));
    auto alpha = ordered_letters(rank);
    for (std::size_t k = 0; k <= radius; ++k) {
        std::string cur;
        extend_sphere(alpha, cur, k, out);
    }
    return out;
}

std::size_t ball_index(const Word& w, int rank) {
    std::size_t idx = ball_size(rank, w.size()) - sphere_size(rank, w.size());
    if (w.empty()) return 0;
    std::size_t lex = static_cast<std::size_t>(default_letter_key(w[0], rank));
    for (std::size_t i = 1; i < w.size(); ++i) {
        int k = default_letter_key(w[i], rank);
        int banned = default_letter_key(invert_letter(w[i - 1]), rank);
        lex = lex * (2 * rank - 1) + static_cast<std::size_t>(k > banned ? k - 1 : k);
    }
    return idx + lex;
}

WordSet parse_word_set(std::string_view text) {
    WordSet ws;
    bool have_rank = false;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        auto e = line.find_last_not_of(" \t\r");
        std::string t = line.substr(b, e - b + 1);
        if (t.rfind("rank=", 0) == 0) {
            ws.rank = std::stoi(t.substr(5));
            check_rank(ws.rank);
            have_rank = true;
            continue;
        }
        if (!have_rank) throw std::invalid_argument("word set: missing rank=N header before line " + std::to_string(lineno));
        ws.words.push_back(parse_word(t, ws.rank));
    }
    if (!have_rank) throw std::invalid_argument("word set: missing rank=N header");
    return ws;
}

WordSet read_word_set(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_word_set(ss.str());
}

std::string format_word_set(const WordSet& ws) {
    std::string out = "rank=" + std::to_string(ws.rank) + "\n";
    for (const auto& w : ws.words) out += w.text() + "\n";
    return out;
}

std::vector<Word> symmetrize(const std::vector<Word>& v) {
    std::set<Word> s;
    for (const auto& w : v) {
        s.insert(w);
        s.insert(invert(w));
    }
    return {s.begin(), s.end()};
}

}  // namespace qmf
