#include "qmforge/brooks.hpp"

#include <stdexcept>

namespace qmf {

namespace {

void need_pattern(const Word& p) {
    if (p.empty()) throw std::invalid_argument("empty pattern");
}

}  // namespace

std::vector<std::size_t> occurrences(const Word& pattern, const Word& host) {
    need_pattern(pattern);
    std::vector<std::size_t> pos;
    const std::string &p = pattern.letters(), &h = host.letters();
    if (p.size() > h.size()) return pos;
    for (std::size_t i = 0; i + p.size() <= h.size(); ++i)
        if (h.compare(i, p.size(), p) == 0) pos.push_back(i);
    return pos;
}

long count_big(const Word& pattern, const Word& host) {
    need_pattern(pattern);
    const std::string &p = pattern.letters(), &h = host.letters();
    long n = 0;
    if (p.size() > h.size()) return 0;
    for (std::size_t i = 0; i + p.size() <= h.size(); ++i)
        if (h.compare(i, p.size(), p) == 0) ++n;
    return n;
}

long count_small(const Word& pattern, const Word& host) {
    need_pattern(pattern);
    const std::string &p = pattern.letters(), &h = host.letters();
    // all occurrences share a length, so earliest start = earliest end
    long n = 0;
    std::size_t i = 0;
    while (i + p.size() <= h.size()) {
        if (h.compare(i, p.size(), p) == 0) {
            ++n;
            i += p.size();
        } else {
            ++i;
        }
    }
    return n;
}

long eval_brooks(BrooksKind kind, const Word& pattern, const Word& g) {
    Word inv = invert(pattern);
    if (kind == BrooksKind::Big) return count_big(pattern, g) - count_big(inv, g);
    return count_small(pattern, g) - count_small(inv, g);
}

long count_cyclic(const Word& pattern, const Word& g) {
    need_pattern(pattern);
    Word core = cyclic_core(g);
    const std::string& p = pattern.letters();
    if (p.size() > core.size()) return 0;
    std::string dbl = core.letters() + core.letters();
    long n = 0;
    for (std::size_t i = 0; i < core.size(); ++i)
        if (dbl.compare(i, p.size(), p) == 0) ++n;
    return n;
}

long eval_homogenized_brooks(const Word& pattern, const Word& g) {
    need_pattern(pattern);
    if (is_self_overlapping(pattern))
        throw std::invalid_argument("homogenized Brooks needs a non-self-overlapping pattern");
    return count_cyclic(pattern, g) - count_cyclic(invert(pattern), g);
}

CyclicWord::CyclicWord(const Word& g) : rep_(cyclic_core(g)) {}

bool operator==(const CyclicWord& a, const CyclicWord& b) {
    return is_conjugate(a.rep_, b.rep_);
}

}  // namespace qmf
