#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "qmforge/decomposition.hpp"
#include "qmforge/quasimorphism.hpp"

namespace qmf {

using WordPair = std::pair<Word, Word>;

struct ContinuityProfile {
    std::map<std::size_t, double> x_hat;  // N -> max |delta - delta'| over pair-pairs with n_delta = N
    std::map<std::size_t, std::pair<WordPair, WordPair>> witness;
    std::size_t scan_radius = 0;
    std::size_t pairs = 0;
    std::size_t max_level = 0;  // longest c-part seen; x_hat is 0 beyond it
    std::map<std::size_t, double> theoretical;
    std::string theoretical_source;

    double at(std::size_t n) const {
        auto it = x_hat.find(n);
        return it == x_hat.end() ? 0.0 : it->second;
    }
    bool consistent() const;
};

// exact over all pair-pairs of ball(radius); no theoretical profile attached
ContinuityProfile continuity_profile_fn(const std::function<double(const Word&)>& phi, const Decomposition& d,
                                        std::size_t radius);
ContinuityProfile continuity_profile(const QSpec& spec, const Decomposition& d, std::size_t radius);

// theoretical x_N for N = 0..max_n, when one is known
std::optional<std::pair<std::map<std::size_t, double>, std::string>> theoretical_profile(const QSpec& spec,
                                                                                       const Decomposition& d,
                                                                                       std::size_t max_n);

}  // namespace qmf
