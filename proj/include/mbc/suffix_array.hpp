#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mbc/grammar.hpp"

namespace mbc {

// Suffix array with LCP and per-position repeat lengths, sized for strings
// below 2^31 symbols. Suffixes are ordered lexicographically by symbol
// value, a proper prefix sorting first.
struct SuffixIndex {
    // order[r] = start of the r-th smallest suffix.
    std::vector<std::int32_t> order;
    // lcp[r] = longest common prefix of suffixes order[r-1] and order[r];
    // lcp[0] = 0 and lcp[n] = 0 as sentinels.
    std::vector<std::int32_t> lcp;
    // repeat[i] = length of the longest prefix of suffix i that also starts
    // at some other position.
    std::vector<std::int32_t> repeat;

    std::int32_t longest_repeat() const noexcept;
};

SuffixIndex build_suffix_index(std::span<const Symbol> s);

}  // namespace mbc
