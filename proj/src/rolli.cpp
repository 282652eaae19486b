#include "qmforge/rolli.hpp"

#include <cmath>
#include <stdexcept>

#include "qmforge/defect.hpp"

namespace qmf {

RolliTable::RolliTable(const std::map<long, double>& values, double default_value) : default_(default_value) {
    for (auto [m, v] : values) {
        if (m == 0) throw std::invalid_argument("Rolli table: exponent 0 is not allowed");
        long k = m > 0 ? m : -m;
        double pv = m > 0 ? v : -v;
        auto it = pos_.find(k);
        if (it != pos_.end() && std::abs(it->second - pv) > kTolerance)
            throw std::invalid_argument("Rolli table is not alternating at exponent " + std::to_string(k));
        pos_[k] = pv;
    }
}

double RolliTable::operator()(long m) const {
    if (m == 0) return 0.0;
    long k = m > 0 ? m : -m;
    auto it = pos_.find(k);
    double v = it == pos_.end() ? default_ : it->second;
    return m > 0 ? v : -v;
}

double RolliTable::sup() const {
    double s = std::abs(default_);
    for (auto [m, v] : pos_) s = std::max(s, std::abs(v));
    return s;
}

RolliTable operator+(const RolliTable& a, const RolliTable& b) {
    std::map<long, double> vals;
    for (auto [m, v] : a.positive_values()) vals[m] = 0;
    for (auto [m, v] : b.positive_values()) vals[m] = 0;
    for (auto& [m, v] : vals) v = a(m) + b(m);
    return RolliTable(vals, a.default_value() + b.default_value());
}

PairMode parse_pair_mode(const std::string& s) {
    if (s == "all") return PairMode::All;
    if (s == "reduced") return PairMode::Reduced;
    throw std::invalid_argument("mode must be all or reduced");
}

}  // namespace qmf
