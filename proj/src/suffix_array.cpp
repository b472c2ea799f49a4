#include "mbc/suffix_array.hpp"

#include <algorithm>
#include <limits>

#include "mbc/errors.hpp"

namespace mbc {

namespace {

// Prefix doubling over cyclic shifts of s + sentinel, with counting sorts.
// Stops once every class is distinct, so the number of rounds is about
// log2 of the longest repeat.
std::vector<std::int32_t> sort_suffixes(std::span<const Symbol> s) {
    const auto n = static_cast<std::int32_t>(s.size()) + 1;
    Symbol max_symbol = 0;
    for (Symbol x : s) max_symbol = std::max(max_symbol, x);

    std::vector<std::int32_t> p(n), c(n), pn(n), cn(n);
    std::vector<std::int32_t> cnt(std::max<std::size_t>(max_symbol + 1, static_cast<std::size_t>(n)), 0);

    auto sym = [&](std::int32_t i) -> std::int32_t {
        return i + 1 == n ? 0 : static_cast<std::int32_t>(s[static_cast<std::size_t>(i)]);
    };
    for (std::int32_t i = 0; i < n; ++i) ++cnt[static_cast<std::size_t>(sym(i))];
    for (std::size_t v = 1; v <= max_symbol; ++v) cnt[v] += cnt[v - 1];
    for (std::int32_t i = n - 1; i >= 0; --i) p[--cnt[static_cast<std::size_t>(sym(i))]] = i;
    std::int32_t classes = 1;
    c[p[0]] = 0;
    for (std::int32_t i = 1; i < n; ++i) {
        if (sym(p[i]) != sym(p[i - 1])) ++classes;
        c[p[i]] = classes - 1;
    }

    for (std::int64_t h = 1; classes < n && h < n; h <<= 1) {
        const auto shift = static_cast<std::int32_t>(h);
        for (std::int32_t i = 0; i < n; ++i) {
            pn[i] = p[i] - shift;
            if (pn[i] < 0) pn[i] += n;
        }
        std::fill(cnt.begin(), cnt.begin() + classes, 0);
        for (std::int32_t i = 0; i < n; ++i) ++cnt[c[pn[i]]];
        for (std::int32_t v = 1; v < classes; ++v) cnt[v] += cnt[v - 1];
        for (std::int32_t i = n - 1; i >= 0; --i) p[--cnt[c[pn[i]]]] = pn[i];

        cn[p[0]] = 0;
        classes = 1;
        for (std::int32_t i = 1; i < n; ++i) {
            const std::int32_t a = p[i], b = p[i - 1];
            const std::int32_t a2 = a + shift < n ? a + shift : a + shift - n;
            const std::int32_t b2 = b + shift < n ? b + shift : b + shift - n;
            if (c[a] != c[b] || c[a2] != c[b2]) ++classes;
            cn[a] = classes - 1;
        }
        c.swap(cn);
    }
    p.erase(p.begin());  // the sentinel suffix sorts first
    return p;
}

}  // namespace

std::int32_t SuffixIndex::longest_repeat() const noexcept {
    std::int32_t best = 0;
    for (std::int32_t v : lcp) best = std::max(best, v);
    return best;
}

SuffixIndex build_suffix_index(std::span<const Symbol> s) {
    if (s.size() >= static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max())) {
        throw DomainError("suffix index: input too long");
    }
    const auto n = static_cast<std::int32_t>(s.size());
    SuffixIndex idx;
    idx.order = sort_suffixes(s);
    idx.lcp.assign(static_cast<std::size_t>(n) + 1, 0);
    idx.repeat.assign(static_cast<std::size_t>(n), 0);

    std::vector<std::int32_t> rank(static_cast<std::size_t>(n));
    for (std::int32_t r = 0; r < n; ++r) rank[idx.order[r]] = r;

    // Kasai et al.
    std::int32_t h = 0;
    for (std::int32_t i = 0; i < n; ++i) {
        const std::int32_t r = rank[i];
        if (r == 0) {
            h = 0;
            continue;
        }
        const std::int32_t j = idx.order[r - 1];
        while (i + h < n && j + h < n && s[static_cast<std::size_t>(i + h)] == s[static_cast<std::size_t>(j + h)]) ++h;
        idx.lcp[r] = h;
        if (h > 0) --h;
    }
    for (std::int32_t i = 0; i < n; ++i) {
        const std::int32_t r = rank[i];
        idx.repeat[i] = std::max(idx.lcp[r], idx.lcp[r + 1]);
    }
    return idx;
}

}  // namespace mbc
