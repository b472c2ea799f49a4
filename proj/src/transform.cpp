#include "mbc/transform.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <string>

#include "mbc/errors.hpp"
#include "mbc/suffix_array.hpp"

namespace mbc {

namespace {

bool ranked_before(const RankedBlock& a, const RankedBlock& b) {
    if (a.count != b.count) return a.count > b.count;
    return a.block < b.block;
}

void check_alphabet(const PsiCode& code, std::span<const Symbol> u) {
    const std::uint32_t m = code.alphabet_size();
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] == 0 || u[i] > m) {
            throw DomainError("symbol " + std::to_string(u[i]) + " at position " + std::to_string(i) +
                              " outside alphabet 1.." + std::to_string(m));
        }
    }
}

// Every parse of u into k-blocks costs at least (n - covered + 2) c1, where
// `covered` counts positions inside some k-substring that occurs twice in u:
// a block seen once in its parse costs more than spelling it out. The bound
// is nonincreasing in k.
std::uint64_t coverage_lower_bound(std::span<const std::int32_t> repeat, std::size_t k,
                                   std::uint64_t c1) {
    const std::size_t n = repeat.size();
    std::size_t covered = 0;
    std::size_t covered_end = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (static_cast<std::size_t>(repeat[i]) < k) continue;
        const std::size_t start = std::max(i, covered_end);
        const std::size_t end = i + k;
        if (end > start) covered += end - start;
        covered_end = std::max(covered_end, end);
    }
    return (n - covered + 2) * c1;
}

struct SpanLess {
    bool operator()(std::span<const Symbol> a, std::span<const Symbol> b) const {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }
};

struct Candidate {
    std::uint64_t bits;
    std::size_t block_length;  // 0: no secondary rules
    std::size_t shift;
};

Candidate search(const PsiCode& code, std::span<const Symbol> u, const TransformOptions& options) {
    const std::size_t n = u.size();
    const std::uint64_t c1 = code.fixed_length();
    Candidate best{(n + 2) * c1, 0, 0};
    if (n == 0) return best;

    const SuffixIndex idx = build_suffix_index(u);
    // Beyond the longest repeat every block of every parse is unique.
    std::size_t k_max = std::min<std::size_t>(n, static_cast<std::size_t>(idx.longest_repeat()));
    if (options.max_block_length) k_max = std::min(k_max, *options.max_block_length);

    std::vector<std::int32_t> block_id(n);
    std::vector<std::uint32_t> count(n, 0);
    std::vector<std::int32_t> touched;
    std::vector<std::uint32_t> counts;

    for (std::size_t k = 1; k <= k_max; ++k) {
        if ((k + 1) * c1 >= best.bits) break;
        if (coverage_lower_bound(idx.repeat, k, c1) >= best.bits) break;

        // Equal k-blocks share the first suffix-array rank of their group.
        std::int32_t group = 0;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == 0 || static_cast<std::size_t>(idx.lcp[r]) < k) group = static_cast<std::int32_t>(r);
            block_id[static_cast<std::size_t>(idx.order[r])] = group;
        }

        for (std::size_t shift = 0; shift < k && shift + k <= n; ++shift) {
            const std::size_t blocks = (n - shift) / k;
            const std::size_t tail = (n - shift) % k;
            touched.clear();
            for (std::size_t j = 0, pos = shift; j < blocks; ++j, pos += k) {
                const auto id = block_id[pos];
                if (count[static_cast<std::size_t>(id)]++ == 0) touched.push_back(id);
            }
            counts.clear();
            for (auto id : touched) {
                counts.push_back(count[static_cast<std::size_t>(id)]);
                count[static_cast<std::size_t>(id)] = 0;
            }
            std::sort(counts.begin(), counts.end(), std::greater<>());

            std::uint64_t bits = (counts.size() * (k + 1) + shift + tail + 2) * c1;
            for (std::size_t rank = 0; rank < counts.size() && bits < best.bits; ++rank) {
                bits += std::uint64_t{counts[rank]} * PsiCode::rank_length(rank + 1);
            }
            if (bits < best.bits) best = {bits, k, shift};
        }
    }
    return best;
}

}  // namespace

std::uint64_t RankedBlockTable::total_count() const noexcept {
    std::uint64_t total = 0;
    for (const auto& e : entries) total += e.count;
    return total;
}

RankedBlockTable rank_blocks(std::span<const Symbol> u, std::size_t block_length,
                             std::size_t shift) {
    if (block_length == 0) throw DomainError("rank_blocks: block length must be positive");
    RankedBlockTable table;
    table.block_length = block_length;
    if (shift >= u.size()) return table;

    const std::size_t k = block_length;
    std::vector<std::size_t> starts;
    for (std::size_t pos = shift; pos + k <= u.size(); pos += k) starts.push_back(pos);
    auto block_at = [&](std::size_t pos) { return u.subspan(pos, k); };
    std::sort(starts.begin(), starts.end(), [&](std::size_t a, std::size_t b) {
        const auto x = block_at(a), y = block_at(b);
        return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
    });
    for (std::size_t i = 0; i < starts.size();) {
        const auto block = block_at(starts[i]);
        std::size_t j = i + 1;
        while (j < starts.size() && std::ranges::equal(block_at(starts[j]), block)) ++j;
        table.entries.push_back({SymbolString(block.begin(), block.end()), j - i});
        i = j;
    }
    std::stable_sort(table.entries.begin(), table.entries.end(),
                     [](const RankedBlock& a, const RankedBlock& b) { return a.count > b.count; });
    return table;
}

std::uint64_t block_cost(const PsiCode& code, const RankedBlockTable& table,
                         std::size_t block_length, std::size_t head, std::size_t tail) {
    const std::uint64_t c1 = code.fixed_length();
    const auto& entries = table.entries;
    if (!entries.empty()) {
        if (block_length == 0 || head >= block_length || tail >= block_length) {
            throw PreconditionError("block_cost: terminal runs must be shorter than the block length");
        }
    }
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (entries[i].count == 0 || entries[i].block.size() != block_length) {
            throw PreconditionError("block_cost: malformed table entry");
        }
        if (i > 0 && !ranked_before(entries[i - 1], entries[i])) {
            throw PreconditionError("block_cost: table not in ranked order");
        }
    }
    std::uint64_t bits = (entries.size() * (block_length + 1) + head + tail + 2) * c1;
    for (std::size_t rank = 0; rank < entries.size(); ++rank) {
        bits += entries[rank].count * PsiCode::rank_length(rank + 1);
    }
    return bits;
}

TransformResult minimal_block_transform(const PsiCode& code, std::span<const Symbol> u,
                                        const TransformOptions& options) {
    check_alphabet(code, u);
    const Candidate best = search(code, u, options);
    const std::uint32_t m = code.alphabet_size();

    if (best.block_length == 0) {
        DictionaryGrammar g(m, {SymbolString(u.begin(), u.end())});
        return {BlockGrammar(std::move(g), 0, u.size(), 0), RankedBlockTable{}, best.bits};
    }

    const std::size_t k = best.block_length;
    RankedBlockTable table = rank_blocks(u, k, best.shift);
    std::map<std::span<const Symbol>, Symbol, SpanLess> identifier;
    std::vector<SymbolString> rules;
    rules.reserve(table.entries.size() + 1);
    for (std::size_t i = 0; i < table.entries.size(); ++i) {
        rules.push_back(table.entries[i].block);
        identifier.emplace(table.entries[i].block, m + static_cast<Symbol>(i) + 1);
    }

    const std::size_t blocks = (u.size() - best.shift) / k;
    const std::size_t tail = (u.size() - best.shift) % k;
    SymbolString primary(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(best.shift));
    primary.reserve(best.shift + blocks + tail);
    for (std::size_t j = 0; j < blocks; ++j) {
        primary.push_back(identifier.at(u.subspan(best.shift + j * k, k)));
    }
    primary.insert(primary.end(), u.end() - static_cast<std::ptrdiff_t>(tail), u.end());
    rules.push_back(std::move(primary));

    TransformResult result{
        BlockGrammar(DictionaryGrammar(m, std::move(rules)), k, best.shift, tail),
        std::move(table), best.bits};
    assert(result.code_bits == grammar_code_length(code, result.grammar.rules()));
    return result;
}

BitString encode(const PsiCode& code, std::span<const Symbol> u, const TransformOptions& options) {
    const TransformResult result = minimal_block_transform(code, u, options);
    return encode_grammar(code, result.grammar.rules());
}

DecodedText decode(const PsiCode& code, const BitString& bits) {
    const DictionaryGrammar g = decode_grammar(code, bits);
    DecodedText out;
    out.block_shaped = BlockGrammar::detect(g).has_value();
    out.text = expand(g);
    return out;
}

}  // namespace mbc
