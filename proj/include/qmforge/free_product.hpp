#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "qmforge/blocks.hpp"
#include "qmforge/quasimorphism.hpp"
#include "qmforge/word.hpp"

namespace qmf {

using FactorFn = std::function<double(const Word&)>;

// r-part data of the block triangle; x, y in factor coordinates
struct StarData {
    Word x, y;
    std::size_t i_star = 0;  // 1-based factor, 0 when trivial (not meaningful then)
    bool trivial() const { return i_star == 0; }
};

StarData r_star(const BlockStructure& bs, const Word& g, const Word& h);
// same data read off delta_triangle of the block decomposition (slow reference)
StarData r_star_via_triangle(const BlockStructure& bs, const Word& g, const Word& h);

double free_product_eval(const std::vector<QSpec>& specs, const BlockStructure& bs, const Word& g);
double free_product_eval(const std::vector<FactorFn>& fns, const BlockStructure& bs, const Word& g);

// g -> iota_1(g) iota_2(g); bs must be two equal blocks and g lives in the first factor's letters
Word iota(const BlockStructure& bs, const Word& g);
double pullback_eval(const QSpec& spec_on_double, const BlockStructure& bs, const Word& g);

struct UlamWitness {
    Word g;
    std::size_t candidates_checked = 0;
    std::size_t products_checked = 0;
};

// first cyclically reduced g (increasing length, then ball order) with |g| > max|e| and
// iota(g^2) outside E iota(g) E iota(g) E; throws when |E|^3 exceeds budget or nothing is found
UlamWitness ulam_violation_witness(const std::vector<Word>& E, const BlockStructure& bs, std::size_t extra_length = 4,
                                   std::size_t budget = 20'000'000);

struct ProductFormulaScan {
    std::size_t pairs = 0;
    std::size_t checks = 0;  // pairs * pairings
    std::size_t violations = 0;
    double max_error = 0.0;
    Word witness_g, witness_h;
    std::size_t witness_pairing = 0;
};

// checks delta(phi_1 * ... * phi_n)(g,h) = delta phi_{i*}(r*) for every pair of ball(radius),
// pairings[p][f] = function on factor f. Factor values are tabulated on factor ball(2 radius).
ProductFormulaScan scan_product_formula(const BlockStructure& bs, const std::vector<std::vector<FactorFn>>& pairings,
                                        std::size_t radius);

}  // namespace qmf
