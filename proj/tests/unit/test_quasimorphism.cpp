#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "../oracles.hpp"
#include "qmforge/quasimorphism.hpp"

using namespace qmf;

namespace {
Word W(const char* s) { return parse_word(s, 2); }

std::map<std::string, double> as_oracle(const CoefficientMap& c) {
    std::map<std::string, double> m;
    for (const auto& [w, a] : c.entries()) m[w.letters()] = a;
    return m;
}

std::string temp_file(const std::string& name, const std::string& body) {
    auto p = std::filesystem::temp_directory_path() / name;
    std::ofstream(p) << body;
    return p.string();
}
}  // namespace

TEST_SUITE("quasimorphism") {
TEST_CASE("coefficient map") {
    CoefficientMap c(2, {{W("ab"), 1.0}});
    CHECK(c.get(W("BA")) == -1.0);
    CHECK(c.get(W("aa")) == 0.0);
    CHECK(c.support().size() == 2);
    CHECK(c.positive_support().size() == 1);
    CHECK(c.nso_support());
    CHECK_THROWS(CoefficientMap(2, {{W("ab"), 1.0}, {W("BA"), 2.0}}));
    auto p = CoefficientMap::parse("# x\nab\t2\naab 1\n", 2);
    CHECK(p.get(W("BAA")) == -1.0);
    CHECK(p.ceiling() == 3);
}

TEST_CASE("evaluate basics") {
    CHECK(evaluate(QSpec::rolli({RolliTable::sign(), RolliTable::zero()}), W("aaabbA")) == doctest::Approx(0));
    CoefficientMap c(2, {{W("ab"), 1.0}});
    auto s = QSpec::coefficient_sum(c, BrooksKind::Small);
    CHECK(evaluate(s, W("ababab")) == doctest::Approx(3));
    CHECK(coboundary(QSpec::brooks_big(2, W("aa")), W("aa"), W("aa")) == doctest::Approx(-1));
    CHECK(evaluate(QSpec::brooks_big(2, W("abab")), W("ababab")) == doctest::Approx(2));
    for (const auto& sp : {s, QSpec::brooks_small(2, W("ab")), QSpec::brooks_hom(2, W("a"))}) CHECK(evaluate(sp, Word{}) == 0);
    CHECK_THROWS(QSpec::brooks_hom(2, W("aba")));
}

TEST_CASE("sum evaluation matches the oracle") {
    std::mt19937_64 rng(5);
    auto b = enumerate_ball(2, 3);
    for (int t = 0; t < 20; ++t) {
        std::map<Word, double> e;
        for (int k = 0; k < 4; ++k) {
            const auto& w = b[1 + rng() % (b.size() - 1)];
            if (!e.count(invert(w))) e[w] = static_cast<double>(static_cast<int>(rng() % 7) - 3);
        }
        CoefficientMap c(2, e);
        auto orc = as_oracle(c);
        for (const auto& g : enumerate_ball(2, 5)) {
            CHECK(c.eval_sum(g) == doctest::Approx(oracle::sum_eval(orc, g.letters())));
            auto parts = c.eval_by_length(g);
            double tot = 0;
            for (double x : parts) tot += x;
            CHECK(tot == doctest::Approx(c.eval_sum(g)));
        }
    }
}

TEST_CASE("alternating part") {
    auto one = QSpec::linear({}, 1.0, 2);
    auto ap = alternating_part(one);
    auto h = QSpec::brooks_small(2, W("ab"));
    auto hp = alternating_part(h);
    for (const auto& g : enumerate_ball(2, 5)) {
        CHECK(evaluate(ap, g) == doctest::Approx(0));
        CHECK(evaluate(hp, g) == doctest::Approx(evaluate(h, g)));
    }
    auto r = QSpec::rolli({RolliTable({{1, 1.0}, {2, -1.0}}, 0.5), RolliTable::sign()});
    auto est = estimate_defect(r, 6, PairMode::All);
    for (const auto& g : enumerate_ball(2, 6))
        CHECK(std::abs(evaluate(r, g) + evaluate(r, invert(g))) <= 2 * est.certified_lower + kTolerance);
}

TEST_CASE("defect estimates") {
    auto e = estimate_defect(QSpec::brooks_small(2, W("ab")), 6, PairMode::Reduced);
    CHECK(e.certified_lower == doctest::Approx(1));
    REQUIRE(e.theoretical_upper);
    CHECK(*e.theoretical_upper == doctest::Approx(1));
    auto e3 = estimate_defect(QSpec::brooks_big(2, W("aaa")), 4, PairMode::Reduced);
    CHECK(*e3.theoretical_upper == doctest::Approx(2));
    CHECK(e3.certified_lower == doctest::Approx(2));
    auto hom = QSpec::brooks_hom(2, W("a"));
    CHECK(estimate_defect(hom, 4, PairMode::All).certified_lower == 0);
    CHECK(estimate_defect(hom, 4, PairMode::Reduced).certified_lower == 0);
    CHECK_THROWS(estimate_defect(QSpec::brooks_small(2, W("abab")), 3, PairMode::All));
}

TEST_CASE("homogenization") {
    auto h = QSpec::brooks_small(2, W("ab"));
    auto r = homogenize_sequence(h, W("ab"), 8);
    for (double v : r.values) CHECK(v == doctest::Approx(1));
    auto s = homogenize_sequence(h, W("ba"), 30);
    CHECK(s.cauchy_ok);
    CHECK(s.values.back() == doctest::Approx(1).epsilon(0.05));
    auto hom = homogenize_sequence(QSpec::brooks_hom(2, W("a")), W("aab"), 5);
    for (double v : hom.values) CHECK(v == doctest::Approx(2));
}

TEST_CASE("grigorchuk expansion") {
    auto H = QSpec::brooks_big(2, W("ab"));
    auto a = grigorchuk_expand([&](const Word& g) { return evaluate(H, g); }, 2, 4);
    CHECK(a.entries().size() == 2);
    CHECK(a.get(W("ab")) == doctest::Approx(1));
    auto z = grigorchuk_expand([](const Word&) { return 0.0; }, 2, 4);
    CHECK(z.entries().empty());
    CHECK_THROWS(grigorchuk_expand([](const Word& g) { return double(g.size()); }, 2, 2));
}

TEST_CASE("kappa against brute force") {
    CoefficientMap c(2, {{W("ab"), 1.0}});
    auto k = kappa_alpha(c);
    CHECK(k.at(1) == 1);
    CHECK(k.at(2) == 0);
    auto z = kappa_alpha(CoefficientMap(2, {}));
    CHECK(z.at(0) == 0);
    CHECK(z.is_calegari);
    std::mt19937_64 rng(9);
    auto b = enumerate_ball(2, 4);
    for (int t = 0; t < 15; ++t) {
        std::map<Word, double> e;
        for (int i = 0; i < 5; ++i) {
            const auto& w = b[5 + rng() % (b.size() - 5)];
            if (!e.count(invert(w))) e[w] = 1.0 + static_cast<double>(rng() % 3);
        }
        CoefficientMap cm(2, e);
        auto rep = kappa_alpha(cm);
        auto orc = oracle::kappa(as_oracle(cm), 2);
        for (std::size_t n = 0; n < orc.size(); ++n) CHECK(rep.at(n) == doctest::Approx(orc[n]));
        CHECK(rep.at(0) == doctest::Approx(rep.at(1)));
        for (std::size_t n = 1; n < rep.kappa.size(); ++n) CHECK(rep.kappa[n] <= rep.kappa[n - 1] + kTolerance);
        CHECK(rep.at(cm.ceiling()) == 0);
    }
}

TEST_CASE("independent truncation has kappa 1") {
    std::vector<Word> I;
    for (int n = 1; n <= 3; ++n) {
        std::string s(n, 'a');
        for (int i = 0; i < n; ++i) s += "ab";
        s += 'b';
        I.push_back(W(s.c_str()));
    }
    std::map<Word, double> e;
    for (const auto& w : I) e[w] = 1.0;
    auto k = kappa_alpha(CoefficientMap(2, e));
    CHECK(k.at(1) == doctest::Approx(1));
    CHECK(k.in_sigma_ind);
}

TEST_CASE("spec language") {
    CHECK(evaluate(parse_spec("brooks-small:ab", 2), W("ababab")) == 3);
    CHECK(evaluate(parse_spec("lin:2*brooks-big:ab+1", 2), W("ab")) == doctest::Approx(3));
    auto f = temp_file("qmf_unit_sum.txt", "ab\t1\n");
    CHECK(evaluate(parse_spec("sum:@" + f, 2), W("ababab")) == 3);
    auto j = temp_file("qmf_unit_rolli.json", R"({"tables":[{"values":{"1":1},"default":0},{"default":0}]})");
    auto r = parse_spec("rolli:@" + j, 2);
    CHECK(evaluate(r, W("abaa")) == 1);
    CHECK_THROWS(parse_spec("nonsense", 2));
    CHECK_THROWS(parse_spec("brooks-big:xyz", 2));
}
}
