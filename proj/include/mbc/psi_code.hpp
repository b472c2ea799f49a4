#pragma once

#include <cstdint>

#include "mbc/bitstream.hpp"

namespace mbc {

// Extended natural numbers {-1, 0, 1, ...}. -1 and 0 act as separators in
// the grammar encoding, 1..m are terminals, m+1.. are rule identifiers.
using ExtendedNatural = std::int64_t;

inline constexpr ExtendedNatural kGrammarEnd = -1;
inline constexpr ExtendedNatural kRuleEnd = 0;

// Prefix-free code for extended naturals parameterized by the alphabet size m.
//
// Codewords come in two subtrees:
//   '0' + (c1 - 1)-bit big-endian binary of n + 1      for -1 <= n <= m
//   '10' + Elias-delta(n - m)                           for n > m
// so |psi(n)| = c1 = ceil(log2(m + 2)) + 1 on the first class and
// |psi(m + j)| = floor(log2 j) + 2 floor(log2(floor(log2 j) + 1)) + 3.
// The prefix '11' is never emitted.
class PsiCode {
public:
    // Smallest additive constant c2 with
    //   |psi(m + j)| <= log2 j + 2 log2 log2 j + c2   for all j >= 2.
    // The supremum is attained at j = 2 (6 <= 1 + 0 + 5).
    static constexpr unsigned kLengthSlack = 5;

    explicit PsiCode(std::uint32_t alphabet_size);

    std::uint32_t alphabet_size() const noexcept { return m_; }
    unsigned fixed_length() const noexcept { return c1_; }

    unsigned length(ExtendedNatural n) const;
    // Length of the codeword for rule rank j >= 1, i.e. |psi(m + j)|.
    static unsigned rank_length(std::uint64_t j) noexcept;

    void encode(ExtendedNatural n, BitString& out) const;
    BitString encode(ExtendedNatural n) const;
    ExtendedNatural decode(BitReader& in) const;

    friend bool operator==(const PsiCode&, const PsiCode&) = default;

private:
    std::uint32_t m_;
    unsigned c1_;
};

}  // namespace mbc
