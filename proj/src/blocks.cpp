#include "qmforge/blocks.hpp"

#include <sstream>
#include <stdexcept>

namespace qmf {

BlockStructure::BlockStructure(const std::vector<std::size_t>& sizes) {
    int at = 0;
    for (auto s : sizes) {
        if (s == 0) throw std::invalid_argument("empty block");
        first_.push_back(at);
        size_.push_back(static_cast<int>(s));
        for (std::size_t k = 0; k < s; ++k) factor_.push_back(first_.size() - 1);
        at += static_cast<int>(s);
    }
    rank_ = at;
    if (rank_ < 1 || rank_ > kMaxRank) throw std::invalid_argument("block structure rank out of range");
}

BlockStructure BlockStructure::parse(const std::string& text) {
    std::string t = text;
    if (t.rfind("blocks=", 0) == 0) t = t.substr(7);
    std::vector<std::size_t> sizes;
    int expect = 0;
    std::stringstream ss(t);
    std::string blk;
    while (std::getline(ss, blk, '|')) {
        std::stringstream bs(blk);
        std::string g;
        std::size_t n = 0;
        while (std::getline(bs, g, ',')) {
            if (g.size() != 1 || g[0] != 'a' + expect)
                throw std::invalid_argument("blocks must list consecutive generators a,b,...: bad '" + g + "'");
            ++expect;
            ++n;
        }
        sizes.push_back(n);
    }
    if (sizes.size() < 1) throw std::invalid_argument("no blocks given");
    return BlockStructure(sizes);
}

BlockStructure BlockStructure::doubled(int rank) {
    return BlockStructure({static_cast<std::size_t>(rank), static_cast<std::size_t>(rank)});
}

Word BlockStructure::to_factor(const Word& w) const {
    std::string s = w.letters();
    for (auto& c : s) c = make_letter(generator_of(c) - first_[factor_[generator_of(c)]], sign_of(c));
    return Word::from_reduced(std::move(s));
}

Word BlockStructure::from_factor(std::size_t i, const Word& w) const {
    std::string s = w.letters();
    for (auto& c : s) {
        if (generator_of(c) >= size_[i]) throw std::invalid_argument("word does not fit factor " + std::to_string(i + 1));
        c = make_letter(generator_of(c) + first_[i], sign_of(c));
    }
    return Word::from_reduced(std::move(s));
}

std::string BlockStructure::text() const {
    std::string out = "blocks=";
    for (std::size_t i = 0; i < first_.size(); ++i) {
        if (i) out += '|';
        for (int k = 0; k < size_[i]; ++k) {
            if (k) out += ',';
            out += static_cast<char>('a' + first_[i] + k);
        }
    }
    return out;
}

std::vector<BlockPiece> block_pieces(const BlockStructure& bs, const Word& g) {
    std::vector<BlockPiece> out;
    std::size_t i = 0;
    const std::string& s = g.letters();
    if (g.max_generator() >= bs.rank()) throw std::invalid_argument("word outside the block structure");
    while (i < s.size()) {
        std::size_t f = bs.factor_of(s[i]), j = i + 1;
        while (j < s.size() && bs.factor_of(s[j]) == f) ++j;
        out.push_back({g.sub(i, j - i), f});
        i = j;
    }
    return out;
}

std::vector<Word> block_decompose(const BlockStructure& bs, const Word& g) {
    std::vector<Word> out;
    for (auto& p : block_pieces(bs, g)) out.push_back(std::move(p.piece));
    return out;
}

}  // namespace qmf
