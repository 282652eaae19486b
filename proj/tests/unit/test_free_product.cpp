#include <doctest.h>

#include "qmforge/free_product.hpp"

using namespace qmf;

namespace {
Word W(const char* s, int rank = 4) { return parse_word(s, rank); }
}  // namespace

TEST_SUITE("free_product") {
TEST_CASE("blocks") {
    auto bs = BlockStructure::parse("blocks=a,b|c,d");
    CHECK(bs.factor_count() == 2);
    CHECK(bs == BlockStructure::doubled(2));
    auto p = block_decompose(bs, W("abc"));
    REQUIRE(p.size() == 2);
    CHECK(p[0].letters() == "ab");
    CHECK(p[1].letters() == "c");
    CHECK(block_decompose(bs, Word{}).empty());
    CHECK(bs.to_factor(W("cD")).letters() == "aB");
    CHECK(bs.from_factor(1, W("aB", 2)).letters() == "cD");
}

TEST_CASE("r_star") {
    auto bs = BlockStructure::doubled(2);
    auto s = r_star(bs, W("a"), W("b"));
    CHECK(s.i_star == 1);
    CHECK(s.x.letters() == "a");
    CHECK(s.y.letters() == "b");
    CHECK(r_star(bs, W("a"), W("d")).trivial());
    CHECK(r_star(bs, W("abc"), W("CBA")).trivial());
    auto b = enumerate_ball(4, 3);
    for (const auto& g : b)
        for (const auto& h : b) {
            auto fast = r_star(bs, g, h);
            auto slow = r_star_via_triangle(bs, g, h);
            CHECK(fast.i_star == slow.i_star);
            if (!fast.trivial()) {
                CHECK(fast.x == slow.x);
                CHECK(fast.y == slow.y);
            }
        }
}

TEST_CASE("free product evaluation") {
    auto bs = BlockStructure::doubled(2);
    std::vector<QSpec> specs{QSpec::brooks_small(2, W("ab", 2)), QSpec::zero(2)};
    CHECK(free_product_eval(specs, bs, W("ababab" "c")) == 3);
    std::vector<QSpec> zeros{QSpec::zero(2), QSpec::zero(2)};
    CHECK(free_product_eval(zeros, bs, W("acbd")) == 0);
    auto fp = QSpec::free_product(specs, bs);
    auto e = estimate_defect(fp, 3, PairMode::All);
    CHECK(e.certified_lower <= 1 + kTolerance);
}

TEST_CASE("iota") {
    auto bs = BlockStructure::doubled(2);
    CHECK(iota(bs, Word{}).empty());
    CHECK(iota(bs, W("ab", 2)).letters() == "abcd");
    for (const auto& g : enumerate_ball(2, 6)) CHECK(iota(bs, g).size() == 2 * g.size());
    CHECK_THROWS(iota(BlockStructure::parse("a|b,c"), W("a", 3)));
    std::vector<QSpec> specs{QSpec::brooks_small(2, W("ab", 2)), QSpec::brooks_big(2, W("aa", 2))};
    auto pb = QSpec::pullback(QSpec::free_product(specs, bs), bs);
    for (const auto& g : enumerate_ball(2, 5))
        CHECK(evaluate(pb, g) == doctest::Approx(evaluate(specs[0], g) + evaluate(specs[1], g)));
}

TEST_CASE("ulam witness") {
    auto bs = BlockStructure::doubled(2);
    auto w0 = ulam_violation_witness({Word{}}, bs);
    CHECK(w0.g.size() >= 1);
    auto w1 = ulam_violation_witness(enumerate_ball(4, 1), bs);
    CHECK(w1.g.size() == 2);
    CHECK(is_cyclically_reduced(w1.g));
    CHECK_THROWS(ulam_violation_witness(enumerate_ball(4, 3), bs, 1, 1000));
}

TEST_CASE("product formula scan") {
    auto bs = BlockStructure::doubled(2);
    auto h = QSpec::brooks_small(2, W("ab", 2));
    FactorFn fh = [h](const Word& g) { return evaluate(h, g); };
    FactorFn fz = [](const Word&) { return 0.0; };
    auto r = scan_product_formula(bs, {{fh, fz}, {fz, fh}}, 3);
    CHECK(r.violations == 0);
    CHECK(r.pairs == ball_size(4, 3) * ball_size(4, 3));
    // a non-alternating factor breaks the formula
    FactorFn bad = [](const Word& g) { return double(g.size()); };
    CHECK(scan_product_formula(bs, {{bad, fz}}, 2).violations > 0);
}
}
