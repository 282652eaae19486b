#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qmforge/word.hpp"

namespace qmf {

// ambient basis split into consecutive blocks; block i is the free factor F_i
class BlockStructure {
public:
    BlockStructure() = default;
    explicit BlockStructure(const std::vector<std::size_t>& sizes);

    static BlockStructure parse(const std::string& text);  // "blocks=a,b|c,d" or "a,b|c,d"
    static BlockStructure doubled(int rank);                // F*F with two copies of F_rank

    int rank() const { return rank_; }
    std::size_t factor_count() const { return first_.size(); }
    int factor_rank(std::size_t i) const { return size_[i]; }
    std::size_t factor_of(char letter) const { return factor_[generator_of(letter)]; }

    // relabel a word living in one block into factor coordinates, and back (iota_i)
    Word to_factor(const Word& w) const;
    Word from_factor(std::size_t i, const Word& w) const;

    std::string text() const;
    friend bool operator==(const BlockStructure& a, const BlockStructure& b) {
        return a.first_ == b.first_ && a.size_ == b.size_;
    }

private:
    int rank_ = 0;
    std::vector<int> first_, size_;
    std::vector<std::size_t> factor_;
};

struct BlockPiece {
    Word piece;          // ambient coordinates
    std::size_t factor;  // 0-based
};

std::vector<BlockPiece> block_pieces(const BlockStructure& bs, const Word& g);
std::vector<Word> block_decompose(const BlockStructure& bs, const Word& g);

}  // namespace qmf
