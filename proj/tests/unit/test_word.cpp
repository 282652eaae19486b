#include <doctest.h>

#include <random>
#include <set>

#include "../oracles.hpp"
#include "qmforge/word.hpp"

using namespace qmf;

namespace {
Word W(const char* s, int rank = 2) { return parse_word(s, rank); }
}  // namespace

TEST_SUITE("word") {
TEST_CASE("reduce") {
    CHECK(reduce("aA", 2).empty());
    CHECK(reduce("abB c", 3).letters() == "ac");
    CHECK_THROWS(reduce("ac", 2));
    std::mt19937_64 rng(7);
    auto al = oracle::alphabet(2);
    for (int t = 0; t < 500; ++t) {
        std::string raw;
        for (int i = 0; i < 12; ++i) raw.push_back(al[rng() % al.size()]);
        auto r = reduce(raw, 2);
        CHECK(r.letters() == oracle::reduce(raw));
        CHECK(reduce(r.letters(), 2) == r);
    }
}

TEST_CASE("multiply and invert") {
    CHECK(multiply(W("ab"), W("BA")).empty());
    CHECK(multiply(W("ab", 3), W("Bc", 3)).letters() == "ac");
    CHECK(invert(W("ab")).letters() == "BA");
    CHECK(invert(Word{}).empty());
    auto b5 = enumerate_ball(2, 5);
    for (const auto& w : b5) CHECK(invert(invert(w)) == w);
    std::mt19937_64 rng(3);
    for (int t = 0; t < 1000; ++t) {
        const auto& a = b5[rng() % b5.size()];
        const auto& b = b5[rng() % b5.size()];
        const auto& c = b5[rng() % b5.size()];
        CHECK(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
        CHECK(multiply(a, b).letters() == oracle::mul(a.letters(), b.letters()));
    }
}

TEST_CASE("ball enumeration") {
    CHECK(ball_size(2, 0) == 1);
    CHECK(ball_size(2, 1) == 5);
    CHECK(ball_size(2, 3) == 53);
    auto b = enumerate_ball(2, 4);
    auto o = oracle::ball(2, 4);
    REQUIRE(b.size() == o.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
        CHECK(b[i].letters() == o[i]);
        CHECK(ball_index(b[i], 2) == i);
    }
    for (std::size_t i = 1; i < b.size(); ++i) CHECK(b[i - 1] < b[i]);
}

TEST_CASE("cyclic analysis") {
    auto r = cyclic_analysis(W("abA"));
    CHECK(r.core.letters() == "b");
    CHECK(r.conjugator.letters() == "a");
    auto p = cyclic_analysis(W("abab"));
    CHECK(p.core.letters() == "abab");
    CHECK_FALSE(p.simple);
    for (const auto& w : enumerate_ball(2, 6)) {
        if (w.empty() || !is_cyclically_reduced(w)) continue;
        std::set<std::string> rots;
        for (std::size_t i = 0; i < w.size(); ++i) rots.insert(w.letters().substr(i) + w.letters().substr(0, i));
        auto c = cyclic_analysis(w);
        CHECK(c.simple == (rots.size() == w.size()));
        CHECK(c.cyclic_permutations.size() == rots.size());
    }
    for (const auto& g : enumerate_ball(2, 4)) {
        auto c = cyclic_analysis(g);
        CHECK(multiply(multiply(c.conjugator, c.core), invert(c.conjugator)) == g);
        CHECK(is_cyclically_reduced(c.core));
    }
}

TEST_CASE("conjugacy") {
    CHECK(is_conjugate(W("ab"), W("ba")));
    auto b4 = enumerate_ball(2, 4);
    std::mt19937_64 rng(11);
    for (int t = 0; t < 300; ++t) {
        const auto& w = b4[rng() % b4.size()];
        const auto& x = b4[rng() % b4.size()];
        CHECK(is_conjugate(w, conjugate(x, w)));
    }
    for (const auto& w : enumerate_ball(2, 6))
        if (!w.empty()) CHECK_FALSE(is_conjugate(w, invert(w)));
}

TEST_CASE("overlaps") {
    auto r = overlap_report(W("aab"), W("aba"));
    CHECK(r.proper_overlap_lengths_lr == std::vector<std::size_t>{2});
    CHECK(r.proper_overlap_lengths_rl == std::vector<std::size_t>{1});
    REQUIRE(r.minimal_overlap);
    CHECK(r.minimal_overlap->letters() == "a");
    CHECK(is_self_overlapping(W("abab")));
    CHECK(self_overlap_witness(W("abab"))->letters() == "ab");
    CHECK_THROWS(overlap_report(Word{}, W("a")));
    for (const auto& w : enumerate_ball(2, 6)) {
        if (w.empty()) continue;
        CHECK_FALSE(overlap_report(w, invert(w)).overlaps());
        CHECK(is_self_overlapping(w) == oracle::self_overlapping(w.letters()));
        if (auto x = self_overlap_witness(w)) {
            CHECK(2 * x->size() <= w.size());
            CHECK_FALSE(is_self_overlapping(*x));
        }
    }
}

TEST_CASE("lyndon words are not self-overlapping") {
    auto ord = LetterOrder::standard(2);
    for (const auto& w : enumerate_ball(2, 7))
        if (w.size() >= 2 && is_lyndon(w, ord)) CHECK_FALSE(is_self_overlapping(w));
}

TEST_CASE("fundamental set, length 2") {
    auto fs = generate_fundamental_set(2, 2, LetterOrder::standard(2));
    std::set<std::string> got;
    for (const auto& w : fs) got.insert(w.letters());
    CHECK(got == std::set<std::string>{"ab", "aB", "bA", "BA"});
}

TEST_CASE("juncture family") {
    auto fam = juncture_family({W("aa"), W("bb")}, 10);
    std::set<std::string> got;
    for (const auto& w : fam) got.insert(w.letters());
    CHECK(got == std::set<std::string>{"ab", "aab", "abb", "aabb"});
    for (const auto& w : enumerate_ball(2, 4))
        CHECK(in_juncture(w, {W("aa"), W("bb")}) == oracle::in_juncture(w.letters(), "aa", "bb"));
}

TEST_CASE("word set io") {
    auto ws = parse_word_set("rank=3\nab\n# c\nc\n");
    CHECK(ws.rank == 3);
    REQUIRE(ws.words.size() == 2);
    auto back = parse_word_set(format_word_set(ws));
    CHECK(back.words == ws.words);
}
}
