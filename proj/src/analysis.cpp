#include "mbc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "mbc/errors.hpp"

namespace mbc {

std::int64_t pointwise_mi(const PsiCode& code, std::span<const Symbol> u,
                          std::span<const Symbol> v) {
    SymbolString uv(u.begin(), u.end());
    uv.insert(uv.end(), v.begin(), v.end());
    const auto bu = minimal_block_transform(code, u).code_bits;
    const auto bv = minimal_block_transform(code, v).code_bits;
    const auto buv = minimal_block_transform(code, uv).code_bits;
    return static_cast<std::int64_t>(bu + bv) - static_cast<std::int64_t>(buv);
}

std::uint64_t mi_bound(const PsiCode& code, const TransformResult& result) {
    return std::uint64_t{result.rule_count()} * (result.rule_length() + 1) *
           code.length(code.alphabet_size());
}

GrowthSeries::GrowthSeries(std::vector<GrowthPoint> points) {
    for (const auto& p : points) push_back(p);
}

void GrowthSeries::push_back(GrowthPoint p) {
    if (p.n == 0) throw PreconditionError("growth series: n must be positive");
    if (!(p.value >= 0.0)) throw PreconditionError("growth series: negative value");
    if (!points_.empty() && p.n <= points_.back().n) {
        throw PreconditionError("growth series: n must strictly increase");
    }
    points_.push_back(p);
}

LogLogFit loglog_fit(const GrowthSeries& series, const FitWindow& window) {
    std::vector<double> xs, ys;
    for (const auto& p : series.points()) {
        if (p.value <= 0.0) continue;
        if (window.min_n && p.n < *window.min_n) continue;
        if (window.max_n && p.n > *window.max_n) continue;
        xs.push_back(std::log2(static_cast<double>(p.n)));
        ys.push_back(std::log2(p.value));
    }
    if (xs.size() < 2) {
        throw InsufficientDataError("log-log fit needs at least two positive points, got " +
                                    std::to_string(xs.size()));
    }
    const auto count = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= count;
    my /= count;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    LogLogFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.points = xs.size();
    return fit;
}

double hilberg_exponent(const GrowthSeries& series, const FitWindow& window) {
    return std::max(0.0, loglog_fit(series, window).slope);
}

double BlockDistribution::operator()(std::span<const Symbol> block) const {
    const auto it = probability.find(SymbolString(block.begin(), block.end()));
    return it == probability.end() ? 0.0 : it->second;
}

namespace {

// Counts of the blocks x[i, i+k) for i = 0, step, 2 step, ...
std::map<SymbolString, std::uint64_t> count_blocks(std::span<const Symbol> x, std::size_t k,
                                                   std::size_t step) {
    std::vector<std::size_t> starts;
    for (std::size_t i = 0; i + k <= x.size(); i += step) starts.push_back(i);
    auto at = [&](std::size_t i) { return x.subspan(i, k); };
    std::sort(starts.begin(), starts.end(), [&](std::size_t a, std::size_t b) {
        const auto s = at(a), t = at(b);
        return std::lexicographical_compare(s.begin(), s.end(), t.begin(), t.end());
    });
    std::map<SymbolString, std::uint64_t> counts;
    for (std::size_t i = 0; i < starts.size();) {
        std::size_t j = i + 1;
        while (j < starts.size() && std::ranges::equal(at(starts[j]), at(starts[i]))) ++j;
        const auto b = at(starts[i]);
        counts.emplace_hint(counts.end(), SymbolString(b.begin(), b.end()), j - i);
        i = j;
    }
    return counts;
}

void check_block_length(std::span<const Symbol> x, std::size_t k) {
    if (k == 0 || k > x.size()) {
        throw DomainError("block length " + std::to_string(k) + " invalid for string of length " +
                          std::to_string(x.size()));
    }
}

}  // namespace

BlockDistribution empirical_block_distribution(std::span<const Symbol> x, std::size_t k,
                                               BlockOverlap overlap) {
    check_block_length(x, k);
    const auto counts = count_blocks(x, k, overlap == BlockOverlap::overlapping ? 1 : k);
    std::uint64_t total = 0;
    for (const auto& [block, c] : counts) total += c;
    BlockDistribution d;
    d.block_length = k;
    for (const auto& [block, c] : counts) {
        d.probability.emplace_hint(d.probability.end(), block,
                                   static_cast<double>(c) / static_cast<double>(total));
    }
    return d;
}

double block_entropy(std::span<const Symbol> x, std::size_t k) {
    check_block_length(x, k);
    const auto counts = count_blocks(x, k, 1);
    const auto total = static_cast<double>(x.size() - k + 1);
    double h = 0.0;
    for (const auto& [block, c] : counts) {
        const double p = static_cast<double>(c) / total;
        h -= p * std::log2(p);
    }
    return h;
}

ProbabilityTable::ProbabilityTable(std::vector<double> probabilities) : p_(std::move(probabilities)) {
    double mass = 0.0;
    for (double p : p_) {
        if (!(p >= 0.0 && p <= 1.0)) throw DomainError("probability outside [0, 1]");
        mass += p;
    }
    if (mass > 1.0 + kMassTolerance) throw DomainError("probabilities sum to more than one");
}

ProbabilityTable ProbabilityTable::from_counts(std::span<const std::uint64_t> counts) {
    std::uint64_t total = 0;
    for (auto c : counts) total += c;
    std::vector<double> p;
    p.reserve(counts.size());
    for (auto c : counts) p.push_back(total == 0 ? 0.0 : static_cast<double>(c) / static_cast<double>(total));
    return ProbabilityTable(std::move(p));
}

ProbabilityTable ProbabilityTable::from_blocks(const RankedBlockTable& table) {
    std::vector<std::uint64_t> counts;
    counts.reserve(table.entries.size());
    for (const auto& e : table.entries) counts.push_back(e.count);
    return from_counts(counts);
}

std::optional<std::size_t> zipf_check(const ProbabilityTable& table) {
    std::vector<double> p = table.probabilities();
    std::sort(p.begin(), p.end(), std::greater<>());
    for (std::size_t i = 0; i < p.size(); ++i) {
        const std::size_t rank = i + 1;
        if (p[i] > 1.0 / static_cast<double>(rank)) return rank;
    }
    return std::nullopt;
}

}  // namespace mbc
