#include <doctest.h>

#include "qmforge/report.hpp"

using namespace qmf;

TEST_SUITE("report") {
TEST_CASE("envelope and estimates") {
    auto e = estimate_defect(QSpec::brooks_small(2, parse_word("ab", 2)), 3, PairMode::Reduced);
    auto j = to_json(e);
    CHECK(j["certified_lower"].get<double>() == 1.0);
    CHECK(j["pair_mode"] == "reduced");
    CHECK(j.contains("theoretical_upper"));
    auto env = envelope("defect");
    CHECK(env["schema"] == kSchemaVersion);
    CHECK(env["kind"] == "defect");
}

TEST_CASE("natural or infinity") {
    CHECK(natural_or_inf(3) == 3);
    CHECK(natural_or_inf(kInfinity) == "inf");
}

TEST_CASE("dump is deterministic") {
    auto k = kappa_alpha(CoefficientMap(2, {{parse_word("ab", 2), 1.0}}));
    CHECK(to_json(k).dump() == to_json(k).dump());
    CHECK(to_json(k)["kappa"].size() == k.kappa.size());
}
}
