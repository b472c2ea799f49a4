#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <string_view>

#include "mbc/analysis.hpp"
#include "mbc/errors.hpp"
#include "mbc/sources.hpp"

using namespace mbc;

namespace {

SymbolString digits(std::string_view s) {
    SymbolString out;
    for (char c : s) out.push_back(static_cast<Symbol>(c - '0'));
    return out;
}

SymbolString concat(std::span<const Symbol> a, std::span<const Symbol> b) {
    SymbolString out(a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

// Bound obtained by re-parsing both halves with the block grammar of uv.
// Without secondary rules both halves are spelled out, giving 2 c1; with
// them, the block cut by the split costs up to c1 - |psi(m+1)| more than
// the V (L+1) c1 term accounts for.
std::uint64_t split_bound(const PsiCode& code, const TransformResult& r) {
    const std::uint64_t c1 = code.fixed_length();
    if (r.grammar.is_terminal()) return 2 * c1;
    return r.rule_count() * (r.rule_length() + 1) * c1 + (c1 - PsiCode::rank_length(1));
}

}  // namespace

TEST_CASE("pointwise mutual information examples") {
    const PsiCode code(2);
    const SymbolString none;
    for (std::string_view v : {"", "1", "1221", "1212121212"}) {
        CHECK(pointwise_mi(code, none, digits(v)) == 6);
        CHECK(pointwise_mi(code, digits(v), none) == 6);
    }

    const SymbolString u = digits("1212121212");
    const auto whole = minimal_block_transform(code, concat(u, u));
    CHECK(whole.code_bits == 36);  // four-symbol block "1212" used five times
    CHECK(pointwise_mi(code, u, u) == 60 - 36);
    CHECK(pointwise_mi(code, u, u) <= static_cast<std::int64_t>(mi_bound(code, whole)));

    CHECK_THROWS_AS(pointwise_mi(code, digits("3"), u), DomainError);
}

TEST_CASE("mutual information bound examples") {
    const PsiCode code(2);
    CHECK(mi_bound(code, minimal_block_transform(code, digits("1212121212"))) == 18);
    CHECK(mi_bound(code, minimal_block_transform(code, digits("1221"))) == 3);
}

TEST_CASE("the bound fails without secondary rules") {
    // An empty half makes J = 2 c1, while V (L+1) c1 = c1 for the grammar
    // that spells uv out.
    const PsiCode code(2);
    const SymbolString u = digits("1"), v = digits("2");
    const auto whole = minimal_block_transform(code, concat(u, v));
    REQUIRE(whole.grammar.is_terminal());
    CHECK(pointwise_mi(code, u, v) == 6);
    CHECK(mi_bound(code, whole) == 3);
    CHECK(pointwise_mi(code, u, v) > static_cast<std::int64_t>(mi_bound(code, whole)));
}

TEST_CASE("split bound holds on random pairs") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 600; ++trial) {
        const std::uint32_t m = std::array<std::uint32_t, 3>{2, 3, 27}[trial % 3];
        const PsiCode code(m);
        const std::uint32_t used = 1 + static_cast<std::uint32_t>(rng() % std::min<std::uint32_t>(m, 3));
        SymbolString uv(rng() % 400);
        const std::size_t period = 1 + rng() % 9;
        for (std::size_t i = 0; i < uv.size(); ++i) {
            uv[i] = (i >= period && rng() % 8) ? uv[i - period] : 1 + static_cast<Symbol>(rng() % used);
        }
        const std::size_t cut = uv.empty() ? 0 : rng() % (uv.size() + 1);
        const std::span<const Symbol> all(uv);
        const auto whole = minimal_block_transform(code, uv);
        const std::int64_t j = pointwise_mi(code, all.first(cut), all.subspan(cut));
        CHECK(j <= static_cast<std::int64_t>(split_bound(code, whole)));
        if (m == 2 && !whole.grammar.is_terminal()) {
            CHECK(j <= static_cast<std::int64_t>(mi_bound(code, whole)));
        }
    }
}

TEST_CASE("log-log regression") {
    GrowthSeries root, flat, scaled, noisy;
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> jitter(-0.01, 0.01);
    for (unsigned j = 4; j <= 22; ++j) {
        const double n = std::ldexp(1.0, static_cast<int>(j));
        root.push_back({static_cast<std::uint64_t>(n), std::sqrt(n)});
        scaled.push_back({static_cast<std::uint64_t>(n), 37.5 * std::sqrt(n)});
        flat.push_back({static_cast<std::uint64_t>(n), 7.0});
        noisy.push_back({static_cast<std::uint64_t>(n), std::pow(n, 0.8) * (1 + jitter(rng))});
    }
    CHECK(hilberg_exponent(root) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(hilberg_exponent(scaled) == doctest::Approx(hilberg_exponent(root)).epsilon(1e-12));
    CHECK(loglog_fit(scaled).intercept == doctest::Approx(std::log2(37.5)).epsilon(1e-9));
    CHECK(hilberg_exponent(flat) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::abs(hilberg_exponent(noisy) - 0.8) <= 0.05);

    GrowthSeries falling({{2, 8.0}, {4, 4.0}, {8, 2.0}});
    CHECK(loglog_fit(falling).slope == doctest::Approx(-1.0));
    CHECK(hilberg_exponent(falling) == 0.0);

    FitWindow window;
    window.min_n = 1u << 10;
    window.max_n = 1u << 12;
    CHECK(loglog_fit(root, window).points == 3);

    GrowthSeries sparse({{1, 0.0}, {2, 5.0}, {4, 0.0}});
    CHECK_THROWS_AS(hilberg_exponent(sparse), InsufficientDataError);
    CHECK_THROWS_AS(hilberg_exponent(GrowthSeries{}), InsufficientDataError);

    CHECK_THROWS_AS(GrowthSeries({{4, 1.0}, {4, 2.0}}), PreconditionError);
    CHECK_THROWS_AS(GrowthSeries({{0, 1.0}}), PreconditionError);
    CHECK_THROWS_AS(GrowthSeries({{1, -1.0}}), PreconditionError);
}

TEST_CASE("block entropy") {
    const SymbolString ones(16, 1);
    for (std::size_t k = 1; k <= 16; ++k) CHECK(block_entropy(ones, k) == 0.0);

    // Each of the eight 3-blocks occurs exactly once.
    CHECK(block_entropy(digits("1112122211"), 3) == doctest::Approx(3.0));
    // Windows of "12121212" alternate between two 2-blocks: 4 x "12", 3 x "21".
    const double h = -(4.0 / 7 * std::log2(4.0 / 7) + 3.0 / 7 * std::log2(3.0 / 7));
    CHECK(block_entropy(digits("12121212"), 2) == doctest::Approx(h));

    const SymbolString coin = gen_bernoulli(std::vector<double>{0.5, 0.5}, 1u << 20, 1);
    CHECK(std::abs(block_entropy(coin, 1) - 1.0) <= 0.01);

    CHECK_THROWS_AS(block_entropy(digits("12"), 3), DomainError);
    CHECK_THROWS_AS(block_entropy(digits("12"), 0), DomainError);
}

TEST_CASE("empirical block distributions") {
    const SymbolString x = digits("1121");
    const auto overlapping = empirical_block_distribution(x, 2);
    CHECK(overlapping(digits("11")) == doctest::Approx(1.0 / 3));
    CHECK(overlapping(digits("22")) == 0.0);
    const auto disjoint = empirical_block_distribution(x, 2, BlockOverlap::disjoint);
    CHECK(disjoint(digits("11")) == doctest::Approx(0.5));
    CHECK(disjoint(digits("12")) == 0.0);
}

TEST_CASE("Zipf domination") {
    CHECK_FALSE(zipf_check(ProbabilityTable({0.5, 0.3, 0.2})).has_value());
    CHECK_FALSE(zipf_check(ProbabilityTable(std::vector<double>(10, 0.1))).has_value());
    CHECK_FALSE(zipf_check(ProbabilityTable({})).has_value());

    CHECK_THROWS_AS(ProbabilityTable({0.5, -0.1}), DomainError);
    CHECK_THROWS_AS(ProbabilityTable({1.5}), DomainError);
    CHECK_THROWS_AS(ProbabilityTable({0.6, 0.6}), DomainError);

    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 500; ++trial) {
        SymbolString u(1 + rng() % 3000);
        const std::uint32_t m = 2 + static_cast<std::uint32_t>(rng() % 5);
        for (auto& s : u) s = 1 + static_cast<Symbol>(rng() % m);
        const std::size_t k = 1 + rng() % 4;
        const auto table = rank_blocks(u, k, rng() % k);
        CHECK_FALSE(zipf_check(ProbabilityTable::from_blocks(table)).has_value());
    }
}
