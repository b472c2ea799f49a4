#include "mbc/grammar.hpp"

#include <algorithm>
#include <string>

#include "mbc/errors.hpp"

namespace mbc {

namespace {

void require_same_alphabet(const PsiCode& code, const DictionaryGrammar& g) {
    if (code.alphabet_size() != g.alphabet_size()) {
        throw PreconditionError("grammar alphabet size " + std::to_string(g.alphabet_size()) +
                                " does not match code alphabet size " +
                                std::to_string(code.alphabet_size()));
    }
}

bool all_terminals(std::span<const Symbol> s, std::uint32_t m) {
    for (Symbol x : s) {
        if (x > m) return false;
    }
    return true;
}

}  // namespace

DictionaryGrammar::DictionaryGrammar(std::uint32_t alphabet_size, std::vector<SymbolString> rules)
    : m_(alphabet_size), rules_(std::move(rules)) {
    if (rules_.empty()) throw PreconditionError("dictionary grammar needs a primary rule");
    for (std::size_t i = 0; i < rules_.size(); ++i) {
        const std::uint64_t r = std::uint64_t{m_} + i + 1;
        for (Symbol x : rules_[i]) {
            if (x == 0 || x >= r) {
                throw PreconditionError("rule " + std::to_string(r) + " references symbol " +
                                        std::to_string(x));
            }
        }
    }
}

const SymbolString& DictionaryGrammar::rule(Symbol r) const {
    if (r <= m_ || r > primary_symbol()) {
        throw DomainError("no rule for symbol " + std::to_string(r));
    }
    return rules_[r - m_ - 1];
}

BlockGrammar::BlockGrammar(DictionaryGrammar rules, std::size_t block_length, std::size_t head,
                           std::size_t tail)
    : rules_(std::move(rules)), k_(block_length), head_(head), tail_(tail) {
    const std::uint32_t m = rules_.alphabet_size();
    const SymbolString& primary = rules_.primary();
    if (head_ + tail_ > primary.size()) throw PreconditionError("block grammar: runs exceed primary");

    if (k_ == 0) {
        if (rules_.rule_count() != 1 || tail_ != 0 || head_ != primary.size() ||
            !all_terminals(primary, m)) {
            throw PreconditionError("block grammar: malformed terminal grammar");
        }
        return;
    }
    if (head_ >= k_ || tail_ >= k_) throw PreconditionError("block grammar: run not shorter than k");
    for (std::size_t i = 0; i + 1 < rules_.rule_count(); ++i) {
        const SymbolString& rule = rules_.rules()[i];
        if (rule.size() != k_ || !all_terminals(rule, m)) {
            throw PreconditionError("block grammar: secondary rule is not a terminal k-block");
        }
    }
    const std::span<const Symbol> p(primary);
    if (!all_terminals(p.first(head_), m) || !all_terminals(p.last(tail_), m)) {
        throw PreconditionError("block grammar: nonterminal in a terminal run");
    }
    for (Symbol x : p.subspan(head_, primary.size() - head_ - tail_)) {
        if (x <= m) throw PreconditionError("block grammar: terminal among block identifiers");
    }
}

std::optional<BlockGrammar> BlockGrammar::detect(const DictionaryGrammar& g) {
    const std::uint32_t m = g.alphabet_size();
    const SymbolString& primary = g.primary();
    if (g.rule_count() == 1) {
        if (!all_terminals(primary, m)) return std::nullopt;
        return BlockGrammar(g, 0, primary.size(), 0);
    }
    const std::size_t k = g.rules().front().size();
    if (k == 0) return std::nullopt;

    std::size_t head = 0;
    while (head < primary.size() && primary[head] <= m) ++head;
    std::size_t tail = 0;
    if (head == primary.size()) {
        // No identifiers at all: split the terminals between the two runs.
        head = std::min(head, k - 1);
        tail = primary.size() - head;
    } else {
        while (primary[primary.size() - 1 - tail] <= m) ++tail;
    }
    try {
        return BlockGrammar(g, k, head, tail);
    } catch (const PreconditionError&) {
        return std::nullopt;
    }
}

SymbolString expand(const DictionaryGrammar& g, Symbol r) {
    const std::uint32_t m = g.alphabet_size();
    if (r == 0 || r > g.primary_symbol()) throw DomainError("expand: symbol out of range");
    SymbolString out;
    if (r <= m) {
        out.push_back(r);
        return out;
    }
    struct Frame {
        const SymbolString* rule;
        std::size_t next;
    };
    std::vector<Frame> stack{{&g.rule(r), 0}};
    while (!stack.empty()) {
        Frame& top = stack.back();
        if (top.next == top.rule->size()) {
            stack.pop_back();
            continue;
        }
        const Symbol x = (*top.rule)[top.next++];
        if (x <= m) {
            out.push_back(x);
        } else {
            stack.push_back({&g.rule(x), 0});
        }
    }
    return out;
}

SymbolString expand(const DictionaryGrammar& g) { return expand(g, g.primary_symbol()); }

void encode_grammar(const PsiCode& code, const DictionaryGrammar& g, BitString& out) {
    require_same_alphabet(code, g);
    for (const SymbolString& rule : g.rules()) {
        for (Symbol x : rule) code.encode(x, out);
        code.encode(kRuleEnd, out);
    }
    code.encode(kGrammarEnd, out);
}

BitString encode_grammar(const PsiCode& code, const DictionaryGrammar& g) {
    BitString out;
    out.reserve_bits(grammar_code_length(code, g));
    encode_grammar(code, g, out);
    return out;
}

std::uint64_t grammar_code_length(const PsiCode& code, const DictionaryGrammar& g) {
    require_same_alphabet(code, g);
    const std::uint64_t c1 = code.fixed_length();
    std::uint64_t bits = c1;  // psi(-1)
    for (const SymbolString& rule : g.rules()) {
        for (Symbol x : rule) bits += code.length(x);
        bits += c1;  // psi(0)
    }
    return bits;
}

DictionaryGrammar decode_grammar(const PsiCode& code, const BitString& bits) {
    const std::uint64_t m = code.alphabet_size();
    BitReader in(bits);
    std::vector<SymbolString> rules;
    SymbolString current;
    for (;;) {
        const ExtendedNatural x = code.decode(in);
        if (x == kGrammarEnd) {
            if (!current.empty() || rules.empty()) {
                throw CorruptionError("grammar terminator before the primary rule was closed");
            }
            break;
        }
        if (x == kRuleEnd) {
            rules.push_back(std::move(current));
            current.clear();
            continue;
        }
        const std::uint64_t r = m + rules.size() + 1;
        if (static_cast<std::uint64_t>(x) >= r) {
            throw CorruptionError("rule " + std::to_string(r) + " references symbol " +
                                  std::to_string(x));
        }
        current.push_back(static_cast<Symbol>(x));
    }
    if (!in.at_end()) throw CorruptionError("trailing bits after grammar terminator");
    return DictionaryGrammar(static_cast<std::uint32_t>(m), std::move(rules));
}

}  // namespace mbc
