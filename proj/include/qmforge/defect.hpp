#pragma once

#include <optional>
#include <string>

#include "qmforge/word.hpp"

namespace qmf {

enum class PairMode { All, Reduced };

inline const char* to_string(PairMode m) { return m == PairMode::All ? "all" : "reduced"; }
PairMode parse_pair_mode(const std::string& s);

constexpr double kTolerance = 1e-9;

struct DefectEstimate {
    double certified_lower = 0.0;
    std::size_t scan_radius = 0;
    PairMode pair_mode = PairMode::All;
    std::optional<double> theoretical_upper;
    std::string upper_source;  // which bound supplied theoretical_upper
    Word witness_g, witness_h;
    std::size_t pairs_scanned = 0;

    bool consistent() const { return !theoretical_upper || certified_lower <= *theoretical_upper + kTolerance; }
};

}  // namespace qmf
