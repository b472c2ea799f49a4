#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mbc/bitstream.hpp"
#include "mbc/psi_code.hpp"

namespace mbc {

// Terminals are 1..m, nonterminals m+1..m+V.
using Symbol = std::uint32_t;
using SymbolString = std::vector<Symbol>;

// Rule table of a dictionary grammar. Rule i (0-based) defines symbol
// m + i + 1; the last rule is the primary one. Every element of the rule
// for symbol r lies in [1, r - 1], so expansion always terminates.
class DictionaryGrammar {
public:
    // Throws PreconditionError if there are no rules or an element is out
    // of range for its rule.
    DictionaryGrammar(std::uint32_t alphabet_size, std::vector<SymbolString> rules);

    std::uint32_t alphabet_size() const noexcept { return m_; }
    // V_G, counting the primary rule.
    std::size_t rule_count() const noexcept { return rules_.size(); }
    const std::vector<SymbolString>& rules() const noexcept { return rules_; }

    // r in m+1 .. m+V.
    const SymbolString& rule(Symbol r) const;
    const SymbolString& primary() const noexcept { return rules_.back(); }
    Symbol primary_symbol() const noexcept {
        return m_ + static_cast<Symbol>(rules_.size());
    }

    friend bool operator==(const DictionaryGrammar&, const DictionaryGrammar&) = default;

private:
    std::uint32_t m_;
    std::vector<SymbolString> rules_;
};

// Dictionary grammar whose secondary rules are all terminal strings of a
// common length k, and whose primary rule is
//     head terminals, p nonterminals, tail terminals      head, tail < k.
// block_length() == 0 marks the grammar without secondary rules, whose
// primary rule spells the whole string as its head.
class BlockGrammar {
public:
    // Throws PreconditionError when `rules` does not have the stated shape.
    BlockGrammar(DictionaryGrammar rules, std::size_t block_length, std::size_t head,
                 std::size_t tail);

    // Recovers the block layout of an arbitrary dictionary grammar, if it
    // has one. The head run is taken as long as possible.
    static std::optional<BlockGrammar> detect(const DictionaryGrammar& g);

    const DictionaryGrammar& rules() const noexcept { return rules_; }
    std::size_t block_length() const noexcept { return k_; }
    std::size_t head() const noexcept { return head_; }
    std::size_t tail() const noexcept { return tail_; }
    std::size_t block_count() const noexcept { return rules_.primary().size() - head_ - tail_; }
    bool is_terminal() const noexcept { return k_ == 0; }

    friend bool operator==(const BlockGrammar&, const BlockGrammar&) = default;

private:
    DictionaryGrammar rules_;
    std::size_t k_;
    std::size_t head_;
    std::size_t tail_;
};

// G'(r). Terminals expand to themselves. Throws DomainError for r outside
// 1..m+V.
SymbolString expand(const DictionaryGrammar& g, Symbol r);
// The string produced by the grammar.
SymbolString expand(const DictionaryGrammar& g);

// psi*(G) = psi*(G(m+1)) ... psi*(G(m+V)) psi(-1), each rule followed by psi(0).
BitString encode_grammar(const PsiCode& code, const DictionaryGrammar& g);
void encode_grammar(const PsiCode& code, const DictionaryGrammar& g, BitString& out);
std::uint64_t grammar_code_length(const PsiCode& code, const DictionaryGrammar& g);

// Inverse of encode_grammar. The stream must hold exactly one encoded
// grammar. Throws TruncationError or CorruptionError.
DictionaryGrammar decode_grammar(const PsiCode& code, const BitString& bits);

}  // namespace mbc
