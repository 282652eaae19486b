#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace qmf {

constexpr int kMaxRank = 26;

// letters are stored as chars: 'a'+i is generator i, 'A'+i its inverse
inline bool is_inverse_letter(char c) { return c >= 'A' && c <= 'Z'; }
inline int generator_of(char c) { return is_inverse_letter(c) ? c - 'A' : c - 'a'; }
inline int sign_of(char c) { return is_inverse_letter(c) ? -1 : 1; }
inline char invert_letter(char c) { return static_cast<char>(c ^ 0x20); }
inline char make_letter(int gen, int sign) { return static_cast<char>((sign > 0 ? 'a' : 'A') + gen); }

struct Letter {
    int generator = 0;
    int sign = 1;
    char code() const { return make_letter(generator, sign); }
};

class Word {
public:
    Word() = default;

    // trusts the caller: text must already be freely reduced letter codes
    static Word from_reduced(std::string letters);

    std::size_t size() const { return s_.size(); }
    bool empty() const { return s_.empty(); }
    char operator[](std::size_t i) const { return s_[i]; }
    char front() const { return s_.front(); }
    char back() const { return s_.back(); }
    Letter letter(std::size_t i) const { return {generator_of(s_[i]), sign_of(s_[i])}; }

    const std::string& letters() const { return s_; }
    std::string text() const { return s_.empty() ? std::string("1") : s_; }
    Word sub(std::size_t pos, std::size_t len = std::string::npos) const { return Word(s_.substr(pos, len)); }
    int max_generator() const;

    friend bool operator==(const Word& a, const Word& b) { return a.s_ == b.s_; }
    friend bool operator!=(const Word& a, const Word& b) { return a.s_ != b.s_; }
    // shortlex under the default letter order; this is the ball enumeration order
    friend bool operator<(const Word& a, const Word& b);

private:
    explicit Word(std::string s) : s_(std::move(s)) {}
    std::string s_;
};

struct WordHash {
    std::size_t operator()(const Word& w) const { return std::hash<std::string>{}(w.letters()); }
};

// total order on S^{+-1}; key[c] is the rank of letter code c
struct LetterOrder {
    std::array<int, 128> key{};
    static LetterOrder standard(int rank);  // a<b<...<A<B<...
    static LetterOrder parse(std::string_view letters, int rank);  // e.g. "abAB"
    bool less(const Word& a, const Word& b) const;  // lexicographic, prefix first
};

int default_letter_key(char c, int rank);

// free reduction; whitespace ignored, "1" is the identity
Word reduce(std::string_view raw, int rank);
Word reduce(const std::vector<Letter>& raw, int rank);
Word parse_word(std::string_view text, int rank);

Word multiply(const Word& a, const Word& b);
Word invert(const Word& a);
Word power(const Word& a, long k);
Word conjugate(const Word& x, const Word& g);  // x g x^-1

std::size_t cancellation_length(const Word& a, const Word& b);
bool is_reduced_product(const Word& a, const Word& b);
bool is_cyclically_reduced(const Word& w);

struct CyclicReport {
    Word core;
    Word conjugator;
    std::vector<Word> cyclic_permutations;  // distinct, sorted
    bool simple = false;
};

CyclicReport cyclic_analysis(const Word& g);
Word cyclic_core(const Word& g);
bool is_conjugate(const Word& a, const Word& b);
bool is_proper_power(const Word& w);

struct OverlapReport {
    bool left_is_subword = false;   // w is a subword of w2
    bool right_is_subword = false;  // w2 is a subword of w
    std::vector<std::size_t> proper_overlap_lengths_lr;  // suffix_k(w) == prefix_k(w2)
    std::vector<std::size_t> proper_overlap_lengths_rl;  // suffix_k(w2) == prefix_k(w)
    std::optional<Word> minimal_overlap;

    bool overlaps() const {
        return left_is_subword || right_is_subword || !proper_overlap_lengths_lr.empty() ||
               !proper_overlap_lengths_rl.empty();
    }
};

OverlapReport overlap_report(const Word& w, const Word& w2);
bool is_self_overlapping(const Word& w);
bool is_subword(const Word& needle, const Word& hay);
// for self-overlapping w: the shortest nonempty x with w = x y x
std::optional<Word> self_overlap_witness(const Word& w);

bool is_lyndon(const Word& w, const LetterOrder& order);
std::vector<Word> generate_fundamental_set(std::size_t max_len, int rank, const LetterOrder& order);

struct ReducedExpression {
    Word left;
    Word right;
};

std::vector<Word> juncture_family(const ReducedExpression& e, std::size_t max_len);
bool in_juncture(const Word& w, const ReducedExpression& e);

// max over reduced expressions u|v of sum_{w in j(u|v)} weight(w), per length bucket.
// result[k] = max over u|v of the weight carried by members of length > k.
std::vector<double> max_compatible_weight(const std::vector<Word>& support,
                                          const std::function<double(const Word&)>& weight);

std::size_t sphere_size(int rank, std::size_t k);
std::size_t ball_size(int rank, std::size_t radius);
std::vector<Word> enumerate_ball(int rank, std::size_t radius);
std::vector<Word> enumerate_sphere(int rank, std::size_t k);
std::size_t ball_index(const Word& w, int rank);

struct WordSet {
    int rank = 2;
    std::vector<Word> words;
};

WordSet parse_word_set(std::string_view text);
WordSet read_word_set(const std::string& path);
std::string format_word_set(const WordSet& ws);

std::vector<Word> symmetrize(const std::vector<Word>& v);

}  // namespace qmf
