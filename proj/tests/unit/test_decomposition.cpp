#include <doctest.h>

#include <random>

#include "qmforge/decomposition.hpp"
#include "qmforge/quasimorphism.hpp"

using namespace qmf;

namespace {
Word W(const char* s) { return parse_word(s, 2); }

std::vector<std::string> texts(const PieceSeq& s) {
    std::vector<std::string> out;
    for (const auto& p : s) out.push_back(p.letters());
    return out;
}

std::vector<Decomposition> builtins() {
    return {make_trivial(2), make_whole(2), make_rolli_decomposition(2), make_brooks_decomposition(2, W("ab")),
            make_independent(2, {W("abaB"), W("abbaB")})};
}
}  // namespace

TEST_SUITE("decomposition") {
TEST_CASE("examples") {
    CHECK(texts(make_rolli_decomposition(2)(W("aaaBBa"))) == std::vector<std::string>{"aaa", "BB", "a"});
    CHECK(texts(make_brooks_decomposition(2, W("ab"))(W("aabb"))) == std::vector<std::string>{"a", "ab", "b"});
    CHECK(texts(make_trivial(2)(W("abA"))) == std::vector<std::string>{"a", "b", "A"});
    CHECK(make_whole(2)(W("abA")).size() == 1);
    CHECK(make_trivial(2)(Word{}).empty());
    CHECK_THROWS(make_brooks_decomposition(2, W("aba")));
    CHECK_THROWS(make_independent(2, {W("ab"), W("ba")}));
}

TEST_CASE("axioms") {
    for (const auto& d : builtins()) {
        auto r = validate_axioms(d, 5);
        CHECK_MESSAGE(r.ok, d.name << " " << r.detail);
    }
    auto bad = validate_axioms(make_independent_unchecked(2, {W("ab"), W("ba")}), 4);
    CHECK_FALSE(bad.ok);
}

TEST_CASE("triangles") {
    auto t = delta_triangle(make_rolli_decomposition(2), W("aaa"), W("aa"));
    CHECK(texts(t.r1) == std::vector<std::string>{"aaa"});
    CHECK(texts(t.r2) == std::vector<std::string>{"aa"});
    CHECK(texts(t.r3_inverse()) == std::vector<std::string>{"aaaaa"});
    auto w = delta_triangle(make_brooks_decomposition(2, W("ab")), W("a"), W("b"));
    CHECK(texts(w.r3_inverse()) == std::vector<std::string>{"ab"});
    for (const auto& d : builtins()) {
        auto b = enumerate_ball(2, 4);
        for (std::size_t i = 0; i < b.size(); i += 3)
            for (std::size_t j = 0; j < b.size(); j += 5) {
                auto tr = delta_triangle(d, b[i], b[j]);
                CHECK(multiply(multiply(product(tr.r1), product(tr.r2)), product(tr.r3)).empty());
                PieceSeq g = inverse_seq(tr.c1);
                g.insert(g.end(), tr.r1.begin(), tr.r1.end());
                g.insert(g.end(), tr.c2.begin(), tr.c2.end());
                CHECK(g == d(b[i]));
            }
        auto inv = delta_triangle(d, W("abA"), W("aBA"));
        CHECK(inv.max_r() == 0);
        CHECK(inv.c2 == d(W("abA")));
    }
}

TEST_CASE("defect estimates") {
    CHECK(estimate_decomposition_defect(make_trivial(2), 4).certified_lower == 0);
    CHECK(estimate_decomposition_defect(make_whole(2), 4).certified_lower == 1);
    auto e = estimate_decomposition_defect(make_brooks_decomposition(2, W("ab")), 4);
    CHECK(e.certified_lower == 3);
    CHECK(e.consistent());
}

TEST_CASE("decomposable evaluation") {
    auto dw = make_brooks_decomposition(2, W("ab"));
    auto lw = table_weights({{W("ab"), 1.0}});
    auto h = QSpec::brooks_small(2, W("ab"));
    auto tabs = std::vector<RolliTable>{RolliTable({{2, 3.0}}, 1.0), RolliTable::sign()};
    auto rolli = QSpec::rolli(tabs);
    auto dr = make_rolli_decomposition(2);
    auto zero = table_weights({});
    for (const auto& g : enumerate_ball(2, 6)) {
        CHECK(eval_decomposable(lw, dw, g) == doctest::Approx(evaluate(h, g)));
        CHECK(eval_decomposable(rolli_weights(tabs), dr, g) == doctest::Approx(evaluate(rolli, g)));
        CHECK(eval_decomposable(zero, dr, g) == 0);
    }
    auto strict = table_weights({{W("ab"), 1.0}}, std::nullopt);
    CHECK_THROWS(eval_decomposable(strict, dw, W("aa")));
}

TEST_CASE("n_delta") {
    auto d = make_trivial(2);
    std::pair<Word, Word> p{W("ab"), W("ab")};
    CHECK(n_delta(d, p, p) == kInfinity);
    CHECK(n_delta(d, {W("a"), W("b")}, {W("a"), W("a")}) == 0);
    // tripods sharing the centre: g = u a, h = A v; c1 reaches into u
    CHECK(n_delta(d, {W("bba"), W("Ab")}, {W("aba"), W("Ab")}) == 1);
    CHECK(n_delta(d, {W("bba"), W("Ab")}, {W("bbba"), W("Ab")}) == 2);
}

TEST_CASE("parse") {
    CHECK(parse_decomposition("triv", 2).name == make_trivial(2).name);
    CHECK(parse_decomposition("brooks:ab", 2)(W("aabb")).size() == 3);
    CHECK_THROWS(parse_decomposition("zzz", 2));
}
}
