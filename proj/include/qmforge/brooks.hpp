#pragma once

#include <vector>

#include "qmforge/word.hpp"

namespace qmf {

enum class BrooksKind { Big, Small };

// start positions of pattern inside host, increasing
std::vector<std::size_t> occurrences(const Word& pattern, const Word& host);

long count_big(const Word& pattern, const Word& host);
long count_small(const Word& pattern, const Word& host);
long eval_brooks(BrooksKind kind, const Word& pattern, const Word& g);

// occurrences in the cyclic word of g, counted on the cyclic core
long count_cyclic(const Word& pattern, const Word& g);
long eval_homogenized_brooks(const Word& pattern, const Word& g);

class CyclicWord {
public:
    explicit CyclicWord(const Word& g);  // takes the cyclic core of g
    const Word& representative() const { return rep_; }
    std::size_t size() const { return rep_.size(); }
    friend bool operator==(const CyclicWord& a, const CyclicWord& b);

private:
    Word rep_;
};

}  // namespace qmf
