#include "oracle/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace mbc::oracle {

namespace {

std::uint64_t cost_of(const PsiCode& code, const DictionaryGrammar& g, std::span<const Symbol> u) {
    if (!std::ranges::equal(expand(g), u)) throw std::logic_error("oracle grammar does not produce u");
    return encode_grammar(code, g).size();
}

}  // namespace

std::uint64_t best_assignment_cost(const PsiCode& code, std::span<const Symbol> u, std::size_t k,
                                   std::size_t shift, const EnumerationBudget& budget) {
    const std::uint32_t m = code.alphabet_size();
    if (k == 0 || shift >= k || shift + k > u.size()) throw std::invalid_argument("parse has no block");

    std::vector<SymbolString> distinct;
    std::vector<std::size_t> block_index;  // per parse position
    const std::size_t blocks = (u.size() - shift) / k;
    for (std::size_t j = 0; j < blocks; ++j) {
        SymbolString b(u.begin() + static_cast<std::ptrdiff_t>(shift + j * k),
                       u.begin() + static_cast<std::ptrdiff_t>(shift + (j + 1) * k));
        auto it = std::find(distinct.begin(), distinct.end(), b);
        if (it == distinct.end()) {
            distinct.push_back(b);
            it = distinct.end() - 1;
        }
        block_index.push_back(static_cast<std::size_t>(it - distinct.begin()));
    }
    if (distinct.size() > budget.max_distinct) throw BudgetExceeded("too many distinct blocks");

    // slot[b] = 0-based identifier position of distinct block b.
    std::vector<std::size_t> slot(distinct.size());
    std::iota(slot.begin(), slot.end(), 0);
    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    do {
        std::vector<SymbolString> rules(distinct.size());
        for (std::size_t b = 0; b < distinct.size(); ++b) rules[slot[b]] = distinct[b];
        SymbolString primary(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(shift));
        for (std::size_t b : block_index) primary.push_back(m + static_cast<Symbol>(slot[b]) + 1);
        primary.insert(primary.end(), u.begin() + static_cast<std::ptrdiff_t>(shift + blocks * k), u.end());
        rules.push_back(std::move(primary));
        best = std::min(best, cost_of(code, DictionaryGrammar(m, std::move(rules)), u));
    } while (std::next_permutation(slot.begin(), slot.end()));
    return best;
}

std::uint64_t brute_force_min_block(const PsiCode& code, std::span<const Symbol> u,
                                    const EnumerationBudget& budget) {
    if (u.size() > budget.max_n) throw BudgetExceeded("string longer than budget");
    const std::uint32_t m = code.alphabet_size();
    std::uint64_t best = cost_of(code, DictionaryGrammar(m, {SymbolString(u.begin(), u.end())}), u);
    const std::size_t k_limit = std::min(u.size() + 1, budget.max_k);
    for (std::size_t k = 1; k <= k_limit; ++k) {
        for (std::size_t shift = 0; shift < k && shift + k <= u.size(); ++shift) {
            best = std::min(best, best_assignment_cost(code, u, k, shift, budget));
        }
    }
    return best;
}

double criterion_block_constant(const PsiCode& code, std::size_t k) {
    const double m = code.alphabet_size();
    const double kk = static_cast<double>(k);
    return (std::pow(m, kk) * (kk + 1) + 2 * kk + 2) * code.length(code.alphabet_size());
}

double criterion_constant(const PsiCode& code, std::size_t n, std::size_t k) {
    const double m = code.alphabet_size();
    const double kk = static_cast<double>(k);
    return criterion_block_constant(code, k) +
           static_cast<double>(n) / kk *
               (2 * std::log2(std::log2(m)) + 2 * std::log2(kk) + PsiCode::kLengthSlack);
}

double criterion_rhs(const PsiCode& code, std::span<const Symbol> x, std::size_t k,
                     const BlockProbability& pi) {
    double log_sum = 0.0;
    for (std::size_t i = 0; i + k <= x.size(); ++i) {
        const double p = pi(x.subspan(i, k));
        if (p <= 0.0) return std::numeric_limits<double>::infinity();
        log_sum += std::log2(p);
    }
    return criterion_constant(code, x.size(), k) - log_sum / static_cast<double>(k);
}

}  // namespace mbc::oracle
