#include "mbc/sources.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <stdexcept>
#include <string>

#include "mbc/errors.hpp"

namespace mbc {

std::uint64_t SplitMix64::next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double SplitMix64::uniform() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::uint64_t SplitMix64::below(std::uint64_t bound) noexcept {
    // Largest multiple of bound representable, minus one.
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound + 1) % bound;
    std::uint64_t x;
    do {
        x = next();
    } while (x > limit);
    return x % bound;
}

void check_probability_vector(std::span<const double> p) {
    if (p.empty()) throw DomainError("empty probability vector");
    double sum = 0.0;
    for (double x : p) {
        if (!(x >= 0.0 && x <= 1.0)) throw DomainError("probability outside [0, 1]");
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw DomainError("probabilities sum to " + std::to_string(sum) + ", not 1");
    }
}

namespace {

Symbol draw(std::span<const double> p, SplitMix64& rng) {
    const double u = rng.uniform();
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        acc += p[i];
        if (u < acc) return static_cast<Symbol>(i + 1);
    }
    // Last symbol with positive mass absorbs rounding in the cumulative sum.
    std::size_t last = p.size();
    while (last > 1 && p[last - 1] == 0.0) --last;
    return static_cast<Symbol>(last);
}

}  // namespace

SymbolString gen_bernoulli(std::span<const double> p, std::size_t n, std::uint64_t seed) {
    check_probability_vector(p);
    SplitMix64 rng(seed);
    SymbolString out(n);
    for (auto& x : out) x = draw(p, rng);
    return out;
}

SymbolString gen_markov(const std::vector<std::vector<double>>& transitions,
                        std::span<const double> initial, std::size_t n, std::uint64_t seed) {
    const std::size_t m = transitions.size();
    check_probability_vector(initial);
    if (initial.size() != m) throw DomainError("markov: initial distribution size mismatch");
    for (const auto& row : transitions) {
        if (row.size() != m) throw DomainError("markov: transition matrix is not square");
        check_probability_vector(row);
    }
    SplitMix64 rng(seed);
    SymbolString out;
    out.reserve(n);
    if (n == 0) return out;
    out.push_back(draw(initial, rng));
    while (out.size() < n) out.push_back(draw(transitions[out.back() - 1], rng));
    return out;
}

std::vector<std::uint8_t> Corpus::to_bytes(std::span<const Symbol> symbols) const {
    std::vector<std::uint8_t> out;
    out.reserve(symbols.size());
    for (Symbol s : symbols) {
        if (s == 0 || s > alphabet.size()) throw DomainError("symbol outside corpus alphabet");
        out.push_back(alphabet[s - 1]);
    }
    return out;
}

Corpus map_bytes(std::span<const std::uint8_t> bytes, std::vector<std::uint8_t> seed_alphabet) {
    std::array<Symbol, 256> symbol_of{};
    Corpus c;
    for (std::uint8_t b : seed_alphabet) {
        if (symbol_of[b] == 0) {
            c.alphabet.push_back(b);
            symbol_of[b] = static_cast<Symbol>(c.alphabet.size());
        }
    }
    c.text.reserve(bytes.size());
    for (std::uint8_t b : bytes) {
        if (symbol_of[b] == 0) {
            c.alphabet.push_back(b);
            symbol_of[b] = static_cast<Symbol>(c.alphabet.size());
        }
        c.text.push_back(symbol_of[b]);
    }
    return c;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
    std::error_code ec;
    if (std::filesystem::is_directory(path, ec)) throw IoError(path.string() + " is a directory");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("error reading " + path.string());
    return bytes;
}

Corpus ingest_corpus(const std::filesystem::path& path) { return map_bytes(read_file(path)); }

SymbolString permute_characters(std::span<const Symbol> u, std::uint64_t seed) {
    SymbolString out(u.begin(), u.end());
    SplitMix64 rng(seed);
    for (std::size_t i = out.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.below(i));
        std::swap(out[i - 1], out[j]);
    }
    return out;
}

namespace {

std::vector<double> parse_numbers(std::string_view text) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = std::min(text.find(',', start), text.size());
        const std::string item(text.substr(start, end - start));
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw DomainError("not a number: '" + item + "'");
        }
        start = end + 1;
    }
    return out;
}

}  // namespace

SourceSpec SourceSpec::parse(std::string_view text, std::uint64_t seed) {
    SourceSpec spec;
    spec.seed = seed;
    const std::size_t colon = text.find(':');
    const std::string_view kind = text.substr(0, colon);
    const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);

    if (kind == "bernoulli") {
        spec.kind = Kind::bernoulli;
        if (!arg.empty()) spec.probabilities = parse_numbers(arg);
        check_probability_vector(spec.probabilities);
    } else if (kind == "markov") {
        spec.kind = Kind::markov;
        std::size_t start = 0;
        while (start <= arg.size()) {
            const std::size_t end = std::min(arg.find(';', start), arg.size());
            spec.transitions.push_back(parse_numbers(arg.substr(start, end - start)));
            start = end + 1;
        }
        for (const auto& row : spec.transitions) {
            if (row.size() != spec.transitions.size()) throw DomainError("markov: matrix is not square");
            check_probability_vector(row);
        }
        spec.probabilities.assign(spec.transitions.size(), 1.0 / static_cast<double>(spec.transitions.size()));
    } else if (kind == "corpus" || kind == "permuted-corpus") {
        spec.kind = kind == "corpus" ? Kind::corpus : Kind::permuted_corpus;
        if (arg.empty()) throw DomainError(std::string(kind) + " needs a file path");
        spec.path = std::string(arg);
    } else {
        throw DomainError("unknown source kind '" + std::string(kind) + "'");
    }
    return spec;
}

std::string SourceSpec::label() const {
    switch (kind) {
        case Kind::bernoulli: {
            std::string s = "bernoulli(";
            for (std::size_t i = 0; i < probabilities.size(); ++i) {
                char buf[32];
                const auto r = std::to_chars(buf, buf + sizeof buf, probabilities[i]);
                if (i) s += ' ';
                s.append(buf, r.ptr);
            }
            return s + ")";
        }
        case Kind::markov: return "markov" + std::to_string(transitions.size());
        case Kind::corpus: return path.filename().string();
        case Kind::permuted_corpus: return "permuted " + path.filename().string();
    }
    return {};
}

SourceData materialize(const SourceSpec& spec, std::size_t length) {
    SourceData d;
    switch (spec.kind) {
        case SourceSpec::Kind::bernoulli:
            d.text = gen_bernoulli(spec.probabilities, length, spec.seed);
            d.alphabet_size = static_cast<std::uint32_t>(spec.probabilities.size());
            break;
        case SourceSpec::Kind::markov:
            d.text = gen_markov(spec.transitions, spec.probabilities, length, spec.seed);
            d.alphabet_size = static_cast<std::uint32_t>(spec.transitions.size());
            break;
        case SourceSpec::Kind::corpus:
        case SourceSpec::Kind::permuted_corpus: {
            Corpus c = ingest_corpus(spec.path);
            d.alphabet_size = c.alphabet_size();
            d.text = spec.kind == SourceSpec::Kind::corpus ? std::move(c.text)
                                                           : permute_characters(c.text, spec.seed);
            break;
        }
    }
    d.alphabet_size = std::max<std::uint32_t>(d.alphabet_size, 2);
    return d;
}

}  // namespace mbc
