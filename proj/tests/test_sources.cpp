#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <string>

#include <unistd.h>

#include "mbc/analysis.hpp"
#include "mbc/errors.hpp"
#include "mbc/psi_code.hpp"
#include "mbc/sources.hpp"

using namespace mbc;
namespace fs = std::filesystem;

namespace {

class TempFile {
public:
    explicit TempFile(const std::string& contents) {
        static int counter = 0;
        path_ = fs::temp_directory_path() /
                ("mbc-sources-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        std::ofstream(path_, std::ios::binary) << contents;
    }
    ~TempFile() { fs::remove(path_); }
    const fs::path& path() const { return path_; }

private:
    fs::path path_;
};

}  // namespace

TEST_CASE("SplitMix64 reference stream") {
    // First outputs for seed 0 as published with the reference implementation.
    SplitMix64 g(0);
    CHECK(g.next() == 0xE220A8397B1DCDAFull);
    CHECK(g.next() == 0x6E789E6AA1B965F4ull);
    CHECK(g.next() == 0x06C45D188009454Full);

    SplitMix64 h(42);
    for (int i = 0; i < 10000; ++i) {
        const double x = h.uniform();
        CHECK((x >= 0.0 && x < 1.0));
        CHECK(h.below(7) < 7);
    }
    CHECK(h.below(1) == 0);
}

TEST_CASE("Bernoulli sources") {
    const SymbolString ones = gen_bernoulli(std::vector<double>{1.0}, 1000, 5);
    CHECK(std::all_of(ones.begin(), ones.end(), [](Symbol s) { return s == 1; }));

    const std::vector<double> fair{0.5, 0.5};
    const SymbolString coin = gen_bernoulli(fair, 1u << 20, 2024);
    const double freq = static_cast<double>(std::count(coin.begin(), coin.end(), 1u)) / coin.size();
    CHECK(freq >= 0.498);
    CHECK(freq <= 0.502);

    CHECK(gen_bernoulli(fair, 5000, 9) == gen_bernoulli(fair, 5000, 9));
    CHECK(gen_bernoulli(fair, 5000, 9) != gen_bernoulli(fair, 5000, 10));
    CHECK(gen_bernoulli(fair, 0, 1).empty());

    CHECK_THROWS_AS(gen_bernoulli(std::vector<double>{0.5, 0.6}, 10, 1), DomainError);
    CHECK_THROWS_AS(gen_bernoulli(std::vector<double>{1.2, -0.2}, 10, 1), DomainError);
    CHECK_THROWS_AS(gen_bernoulli(std::vector<double>{}, 10, 1), DomainError);
}

TEST_CASE("Markov sources") {
    const std::vector<std::vector<double>> flip{{0.0, 1.0}, {1.0, 0.0}};
    const SymbolString alt = gen_markov(flip, std::vector<double>{1.0, 0.0}, 9, 3);
    CHECK(alt == SymbolString{1, 2, 1, 2, 1, 2, 1, 2, 1});

    const std::vector<std::vector<double>> sticky{{0.9, 0.1}, {0.1, 0.9}};
    const SymbolString x = gen_markov(sticky, std::vector<double>{0.5, 0.5}, 1u << 18, 4);
    std::size_t changes = 0;
    for (std::size_t i = 1; i < x.size(); ++i) changes += x[i] != x[i - 1];
    const double rate = static_cast<double>(changes) / (x.size() - 1);
    CHECK(rate == doctest::Approx(0.1).epsilon(0.05));

    CHECK_THROWS_AS(gen_markov({{1.0}}, std::vector<double>{0.5, 0.5}, 4, 1), DomainError);
}

TEST_CASE("corpus ingestion") {
    TempFile abab("abab");
    const Corpus c = ingest_corpus(abab.path());
    CHECK(c.text == SymbolString{1, 2, 1, 2});
    CHECK(c.alphabet_size() == 2);
    CHECK(c.alphabet == std::vector<std::uint8_t>{'a', 'b'});
    CHECK(c.to_bytes(c.text) == std::vector<std::uint8_t>{'a', 'b', 'a', 'b'});

    const Corpus again = ingest_corpus(abab.path());
    CHECK(again.text == c.text);
    CHECK(again.alphabet == c.alphabet);

    std::string wide;
    for (int b = 0; b < 64; ++b) wide.push_back(static_cast<char>(200 - b));
    TempFile sixty_four(wide + wide);
    const Corpus w = ingest_corpus(sixty_four.path());
    CHECK(w.alphabet_size() == 64);
    CHECK(PsiCode(w.alphabet_size()).fixed_length() == 8);

    TempFile empty("");
    const Corpus e = ingest_corpus(empty.path());
    CHECK(e.text.empty());
    CHECK(e.alphabet_size() == 0);

    CHECK_THROWS_AS(ingest_corpus(fs::temp_directory_path() / "mbc-no-such-file"), IoError);
    CHECK_THROWS_AS(ingest_corpus(fs::temp_directory_path()), IoError);
}

TEST_CASE("seeded byte mapping") {
    const std::vector<std::uint8_t> bytes{'b', 'c', 'a'};
    const Corpus c = map_bytes(bytes, {'a', 'z'});
    CHECK(c.alphabet == std::vector<std::uint8_t>{'a', 'z', 'b', 'c'});
    CHECK(c.text == SymbolString{3, 4, 1});
    CHECK_THROWS_AS(c.to_bytes(SymbolString{5}), DomainError);
}

TEST_CASE("character permutation") {
    SymbolString u;
    for (int i = 0; i < 5000; ++i) u.push_back(1 + static_cast<Symbol>((i * i + i / 7) % 11));
    const SymbolString p = permute_characters(u, 77);
    CHECK(p != u);
    SymbolString a = u, b = p;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);
    CHECK(block_entropy(p, 1) == doctest::Approx(block_entropy(u, 1)).epsilon(1e-12));
    CHECK(block_entropy(p, 2) >= block_entropy(u, 2));
    CHECK(permute_characters(u, 77) == p);

    CHECK(permute_characters(SymbolString{3}, 1) == SymbolString{3});
    CHECK(permute_characters(SymbolString{}, 1).empty());
}

TEST_CASE("source descriptions") {
    const auto coin = SourceSpec::parse("bernoulli", 1);
    CHECK(coin.kind == SourceSpec::Kind::bernoulli);
    CHECK(coin.probabilities == std::vector<double>{0.5, 0.5});
    CHECK(coin.label() == "bernoulli(0.5 0.5)");

    const auto biased = SourceSpec::parse("bernoulli:0.25,0.75", 1);
    CHECK(biased.probabilities == std::vector<double>{0.25, 0.75});
    const auto data = materialize(biased, 100);
    CHECK(data.text.size() == 100);
    CHECK(data.alphabet_size == 2);
    CHECK(materialize(SourceSpec::parse("bernoulli:1", 1), 5).alphabet_size == 2);

    const auto chain = SourceSpec::parse("markov:0.9,0.1;0.2,0.8", 3);
    CHECK(chain.kind == SourceSpec::Kind::markov);
    CHECK(chain.transitions.size() == 2);
    CHECK(materialize(chain, 64).text.size() == 64);

    CHECK(SourceSpec::parse("corpus:/tmp/x.txt", 0).kind == SourceSpec::Kind::corpus);
    const auto shuffled = SourceSpec::parse("permuted-corpus:/tmp/x.txt", 0);
    CHECK(shuffled.kind == SourceSpec::Kind::permuted_corpus);
    CHECK(shuffled.label() == "permuted x.txt");

    CHECK_THROWS_AS(SourceSpec::parse("gaussian", 0), DomainError);
    CHECK_THROWS_AS(SourceSpec::parse("bernoulli:0.5,abc", 0), DomainError);
    CHECK_THROWS_AS(SourceSpec::parse("bernoulli:0.5,0.6", 0), DomainError);
    CHECK_THROWS_AS(SourceSpec::parse("markov:1;0,1", 0), DomainError);
    CHECK_THROWS_AS(SourceSpec::parse("corpus", 0), DomainError);
}
