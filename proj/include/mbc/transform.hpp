#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mbc/bitstream.hpp"
#include "mbc/grammar.hpp"
#include "mbc/psi_code.hpp"

namespace mbc {

struct RankedBlock {
    SymbolString block;
    std::uint64_t count = 0;

    friend bool operator==(const RankedBlock&, const RankedBlock&) = default;
};

// Distinct k-blocks of one parse, most frequent first, ties in ascending
// lexicographic order. Entry i (0-based) gets identifier m + i + 1.
struct RankedBlockTable {
    std::size_t block_length = 0;
    std::vector<RankedBlock> entries;

    std::uint64_t total_count() const noexcept;

    friend bool operator==(const RankedBlockTable&, const RankedBlockTable&) = default;
};

// Parses u[shift, ...) into consecutive k-blocks (dropping the incomplete
// last one) and ranks them.
RankedBlockTable rank_blocks(std::span<const Symbol> u, std::size_t block_length,
                             std::size_t shift);

// |psi*(G)| of the ranked k-block grammar for a parse with `head` leading and
// `tail` trailing terminals:
//   D (k+1) c1 + (head + tail + 2) c1 + sum_i count_i |psi(m + i)|.
// With an empty table the runs may have any length (the terminal grammar).
// Throws PreconditionError if the table is not sorted or runs are too long.
std::uint64_t block_cost(const PsiCode& code, const RankedBlockTable& table,
                         std::size_t block_length, std::size_t head, std::size_t tail);

struct TransformOptions {
    // Caps the block lengths searched. The result is then minimal only
    // among block grammars with k <= max_block_length.
    std::optional<std::size_t> max_block_length;
};

struct TransformResult {
    BlockGrammar grammar;
    RankedBlockTable table;
    std::uint64_t code_bits = 0;

    // V, including the primary rule.
    std::size_t rule_count() const noexcept { return grammar.rules().rule_count(); }
    // L, the common length of secondary rules; 0 without secondary rules.
    std::size_t rule_length() const noexcept { return grammar.block_length(); }
    // l, the head run before the first block; 0 without secondary rules.
    std::size_t shift() const noexcept { return grammar.is_terminal() ? 0 : grammar.head(); }
};

// The block grammar producing u with the smallest |psi*(G)| over every block
// length, every shift and every identifier assignment, the grammar without
// secondary rules included. Ties go to the grammar without secondary rules,
// then to smaller k, then to smaller shift.
// Throws DomainError if a symbol of u is outside 1..m.
TransformResult minimal_block_transform(const PsiCode& code, std::span<const Symbol> u,
                                        const TransformOptions& options = {});

BitString encode(const PsiCode& code, std::span<const Symbol> u,
                 const TransformOptions& options = {});

struct DecodedText {
    SymbolString text;
    // False if the decoded grammar is a valid dictionary grammar without the
    // block layout; it is still expanded.
    bool block_shaped = true;
};

DecodedText decode(const PsiCode& code, const BitString& bits);

}  // namespace mbc
