#pragma once

#include <map>
#include <string>
#include <vector>

namespace qmf {

// alternating bounded map Z\{0} -> R: listed exponents plus a default for the rest
class RolliTable {
public:
    RolliTable() = default;
    // values may list m or -m; a clash between lambda(-m) and -lambda(m) throws
    RolliTable(const std::map<long, double>& values, double default_value);

    static RolliTable sign() { return RolliTable({}, 1.0); }
    static RolliTable zero() { return RolliTable({}, 0.0); }

    double operator()(long m) const;
    double sup() const;
    const std::map<long, double>& positive_values() const { return pos_; }
    double default_value() const { return default_; }

private:
    std::map<long, double> pos_;  // m > 0 only
    double default_ = 0.0;
};

RolliTable operator+(const RolliTable& a, const RolliTable& b);

}  // namespace qmf
