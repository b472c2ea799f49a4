#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mbc/grammar.hpp"

namespace mbc {

// SplitMix64 (Steele, Lea, Flood 2014): a Weyl counter stepped by the
// golden-ratio increment, passed through a fixed 64-bit finalizer. Output
// depends only on the seed and the call count, so streams are identical on
// every platform. This is the generator behind all seeded output of the
// toolkit; changing it changes every fixture.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept;
    // Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept;
    // Uniform on [0, bound), bound >= 1, by rejection (no modulo bias).
    std::uint64_t below(std::uint64_t bound) noexcept;

private:
    std::uint64_t state_;
};

// Entries in [0, 1] summing to one within 1e-12. Throws DomainError otherwise.
void check_probability_vector(std::span<const double> p);

// n i.i.d. draws from p over symbols 1..p.size().
SymbolString gen_bernoulli(std::span<const double> p, std::size_t n, std::uint64_t seed);

// Markov chain over 1..m with row-stochastic transitions[from][to]; the first
// symbol is drawn from `initial`.
SymbolString gen_markov(const std::vector<std::vector<double>>& transitions,
                        std::span<const double> initial, std::size_t n, std::uint64_t seed);

// Byte text mapped onto symbols 1..m by order of first appearance.
struct Corpus {
    SymbolString text;
    // alphabet[s - 1] is the byte behind symbol s.
    std::vector<std::uint8_t> alphabet;

    std::uint32_t alphabet_size() const noexcept { return static_cast<std::uint32_t>(alphabet.size()); }
    std::vector<std::uint8_t> to_bytes(std::span<const Symbol> symbols) const;
};

// Maps bytes to symbols, extending `seed_alphabet` (kept in order) with bytes
// it does not contain, in order of first appearance.
Corpus map_bytes(std::span<const std::uint8_t> bytes, std::vector<std::uint8_t> seed_alphabet = {});

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);

// Reads a file as raw bytes. An empty file gives an empty text with m = 0.
// Throws IoError if the file cannot be read.
Corpus ingest_corpus(const std::filesystem::path& path);

// Uniform random permutation (Fisher-Yates) of the symbols of u.
SymbolString permute_characters(std::span<const Symbol> u, std::uint64_t seed);

// Description of a symbol source used by experiments. Text form:
//   bernoulli[:p1,p2,...]        default 0.5,0.5
//   markov:p11,p12,...;p21,...   rows of the transition matrix, uniform start
//   corpus:PATH
//   permuted-corpus:PATH         corpus with its characters shuffled
struct SourceSpec {
    enum class Kind { bernoulli, markov, corpus, permuted_corpus };

    Kind kind = Kind::bernoulli;
    std::vector<double> probabilities{0.5, 0.5};
    std::vector<std::vector<double>> transitions;
    std::filesystem::path path;
    std::uint64_t seed = 0;

    // Throws DomainError on malformed text.
    static SourceSpec parse(std::string_view text, std::uint64_t seed);
    std::string label() const;
};

struct SourceData {
    SymbolString text;
    // Coding alphabet size, at least 2.
    std::uint32_t alphabet_size = 2;
};

// Synthetic sources produce exactly `length` symbols; corpora produce the
// whole (possibly permuted) file and ignore `length`.
SourceData materialize(const SourceSpec& spec, std::size_t length);

}  // namespace mbc
