#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "mbc/grammar.hpp"
#include "mbc/psi_code.hpp"
#include "mbc/transform.hpp"

namespace mbc {

// |B(u)| + |B(v)| - |B(uv)| for the minimal block code B. May be negative.
std::int64_t pointwise_mi(const PsiCode& code, std::span<const Symbol> u,
                          std::span<const Symbol> v);

// V (L + 1) |psi(m)| for the minimal block grammar of uv.
std::uint64_t mi_bound(const PsiCode& code, const TransformResult& result);

struct GrowthPoint {
    std::uint64_t n = 0;
    double value = 0.0;
};

// Statistic sampled at increasing prefix lengths.
class GrowthSeries {
public:
    GrowthSeries() = default;
    // Throws PreconditionError unless n >= 1 strictly increases and values are >= 0.
    explicit GrowthSeries(std::vector<GrowthPoint> points);

    void push_back(GrowthPoint p);
    const std::vector<GrowthPoint>& points() const noexcept { return points_; }

private:
    std::vector<GrowthPoint> points_;
};

// Inclusive range of n kept for a regression.
struct FitWindow {
    std::optional<std::uint64_t> min_n;
    std::optional<std::uint64_t> max_n;
};

struct LogLogFit {
    double slope = 0.0;
    double intercept = 0.0;  // log2 value at log2 n = 0
    std::size_t points = 0;
};

// Least-squares line through (log2 n, log2 value) over the positive points
// in the window. Throws InsufficientDataError with fewer than two of them.
LogLogFit loglog_fit(const GrowthSeries& series, const FitWindow& window = {});

// max(0, slope of loglog_fit).
double hilberg_exponent(const GrowthSeries& series, const FitWindow& window = {});

enum class BlockOverlap { overlapping, disjoint };

// Empirical distribution of k-blocks: either every window x[i, i+k), or
// consecutive blocks starting at 0.
struct BlockDistribution {
    std::size_t block_length = 0;
    std::map<SymbolString, double> probability;

    // Zero for blocks never seen.
    double operator()(std::span<const Symbol> block) const;
};

BlockDistribution empirical_block_distribution(std::span<const Symbol> x, std::size_t k,
                                               BlockOverlap overlap = BlockOverlap::overlapping);

// Plug-in entropy in bits of the overlapping k-block distribution of x, i.e.
// -(1 / (n-k+1)) sum_i log2 pi(x[i, i+k)). Throws DomainError if k == 0 or k > n.
double block_entropy(std::span<const Symbol> x, std::size_t k);

// Probabilities of disjoint events.
class ProbabilityTable {
public:
    // Tolerance on the total mass, for rounding in normalized tables.
    static constexpr double kMassTolerance = 1e-12;

    // Throws DomainError if an entry is outside [0, 1] or the mass exceeds one.
    explicit ProbabilityTable(std::vector<double> probabilities);
    static ProbabilityTable from_counts(std::span<const std::uint64_t> counts);
    static ProbabilityTable from_blocks(const RankedBlockTable& table);

    const std::vector<double>& probabilities() const noexcept { return p_; }

private:
    std::vector<double> p_;
};

// Sorts descending and checks pi_n <= 1/n at every rank n. Returns the first
// violating rank (1-based), or nullopt when the bound holds throughout.
std::optional<std::size_t> zipf_check(const ProbabilityTable& table);

}  // namespace mbc
