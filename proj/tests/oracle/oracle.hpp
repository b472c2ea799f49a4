#pragma once

// Brute-force references for the test suite. Nothing here shares code with
// the transform's search: costs come from materializing psi*(G) bits.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>

#include "mbc/grammar.hpp"
#include "mbc/psi_code.hpp"

namespace mbc::oracle {

struct EnumerationBudget {
    std::size_t max_n = 10;
    std::size_t max_distinct = 6;  // D! assignments per parse
    std::size_t max_k = 11;
};

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Minimum |psi*(G)| over the grammar without secondary rules and every
// k-block grammar (k = 1..n+1, every shift, every assignment of
// identifiers to the distinct blocks) producing u.
std::uint64_t brute_force_min_block(const PsiCode& code, std::span<const Symbol> u,
                                    const EnumerationBudget& budget = {});

// Minimum over identifier assignments for one parse (k, shift), p >= 1.
std::uint64_t best_assignment_cost(const PsiCode& code, std::span<const Symbol> u, std::size_t k,
                                   std::size_t shift, const EnumerationBudget& budget = {});

using BlockProbability = std::function<double(std::span<const Symbol>)>;

// C(k) = [m^k (k+1) + 2k + 2] |psi(m)|
double criterion_block_constant(const PsiCode& code, std::size_t k);
// C(n,k) = C(k) + (n/k) [2 log log m + 2 log k + c2]
double criterion_constant(const PsiCode& code, std::size_t n, std::size_t k);

// C(n,k) - (1/k) sum_{i=0}^{n-k} log2 pi(x[i, i+k)). +infinity when pi gives
// zero mass to a block of x.
double criterion_rhs(const PsiCode& code, std::span<const Symbol> x, std::size_t k,
                     const BlockProbability& pi);

}  // namespace mbc::oracle
