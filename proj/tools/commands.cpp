#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>

#include "experiment.hpp"
#include "mbc/container.hpp"
#include "mbc/errors.hpp"
#include "mbc/transform.hpp"
#include "svg_plot.hpp"

namespace mbc::cli {

namespace {

// Printable symbols used by `gen` when no raw output is requested.
constexpr std::string_view kPrintable =
    "0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";

std::vector<std::uint8_t> seed_alphabet(const std::string& path) {
    if (path.empty()) return {};
    return map_bytes(read_file(path)).alphabet;
}

std::uint32_t coding_alphabet(const Corpus& c) { return std::max<std::uint32_t>(c.alphabet_size(), 2); }

struct Options {
    std::string input, output, second;
    std::string alphabet_file;
    std::uint64_t seed = 1;
    std::optional<std::size_t> kmax;
    std::vector<std::string> sources;
    std::string probabilities = "0.5,0.5";
    std::size_t length = 0;
    std::string csv, svg;
    std::string n_grid;
    unsigned jobs = 1;
    bool no_timing = false;
    bool raw = false;
    std::size_t max_k = 8;
};

TransformOptions transform_options(const Options& o) {
    TransformOptions t;
    t.max_block_length = o.kmax;
    return t;
}

int cmd_encode(const Options& o, std::ostream& out) {
    const Corpus corpus = map_bytes(read_file(o.input), seed_alphabet(o.alphabet_file));
    const std::uint32_t m = coding_alphabet(corpus);
    if (m > 0xFFFF) throw DomainError("alphabet too large for the container");
    const PsiCode code(m);
    const TransformResult result = minimal_block_transform(code, corpus.text, transform_options(o));

    Container c;
    c.alphabet_size = static_cast<std::uint16_t>(m);
    c.payload = encode_grammar(code, result.grammar.rules());
    c.alphabet = corpus.alphabet;
    write_file_atomically(o.output, write_container(c));

    out << "symbols " << corpus.text.size() << ", alphabet " << m << ", k " << result.rule_length()
        << ", shift " << result.shift() << ", rules " << result.rule_count() << ", payload bits "
        << result.code_bits << '\n';
    return kOk;
}

int cmd_decode(const Options& o, std::ostream& err) {
    const std::vector<std::uint8_t> bytes = read_file(o.input);
    const Container c = read_container(bytes);
    if (c.alphabet_size < 2) throw CorruptionError("container: alphabet size below 2");
    const PsiCode code(c.alphabet_size);
    const DecodedText decoded = decode(code, c.payload);
    if (!decoded.block_shaped) err << "warning: decoded grammar is not a block grammar\n";

    std::vector<std::uint8_t> text;
    text.reserve(decoded.text.size());
    for (Symbol s : decoded.text) {
        if (c.alphabet.empty()) {
            if (s > 256) throw CorruptionError("symbol has no byte value");
            text.push_back(static_cast<std::uint8_t>(s - 1));
        } else {
            if (s > c.alphabet.size()) throw CorruptionError("symbol outside the stored alphabet");
            text.push_back(c.alphabet[s - 1]);
        }
    }
    write_file_atomically(o.output, text);
    return kOk;
}

int cmd_mi(const Options& o, std::ostream& out) {
    const auto u_bytes = read_file(o.input);
    const auto v_bytes = read_file(o.second);
    std::vector<std::uint8_t> joined = u_bytes;
    joined.insert(joined.end(), v_bytes.begin(), v_bytes.end());
    const Corpus both = map_bytes(joined, seed_alphabet(o.alphabet_file));
    const PsiCode code(coding_alphabet(both));

    const std::span<const Symbol> uv(both.text);
    const auto u = uv.first(u_bytes.size());
    const auto v = uv.subspan(u_bytes.size());
    const TransformOptions t = transform_options(o);
    const auto bu = minimal_block_transform(code, u, t).code_bits;
    const auto bv = minimal_block_transform(code, v, t).code_bits;
    const TransformResult whole = minimal_block_transform(code, uv, t);
    const auto j = static_cast<std::int64_t>(bu + bv) - static_cast<std::int64_t>(whole.code_bits);
    const auto bound = mi_bound(code, whole);

    out << "|B(u)|   " << bu << '\n'
        << "|B(v)|   " << bv << '\n'
        << "|B(uv)|  " << whole.code_bits << '\n'
        << "J        " << j << '\n'
        << "V        " << whole.rule_count() << '\n'
        << "L        " << whole.rule_length() << '\n'
        << "c1       " << code.fixed_length() << '\n'
        << "bound    " << bound << '\n'
        << "slack    " << static_cast<std::int64_t>(bound) - j << '\n';
    return kOk;
}

int cmd_gen(const Options& o) {
    std::vector<double> p;
    {
        std::stringstream ss(o.probabilities);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                p.push_back(std::stod(item));
            } catch (const std::exception&) {
                throw DomainError("not a probability: '" + item + "'");
            }
        }
    }
    if (!o.raw && p.size() > kPrintable.size()) throw DomainError("too many symbols for printable output, use --raw");
    if (o.raw && p.size() > 256) throw DomainError("at most 256 symbols");
    const SymbolString s = gen_bernoulli(p, o.length, o.seed);
    std::string text;
    text.reserve(s.size());
    for (Symbol x : s) text.push_back(o.raw ? static_cast<char>(x - 1) : kPrintable[x - 1]);
    write_file_atomically(o.output, text);
    return kOk;
}

int cmd_permute(const Options& o) {
    const Corpus c = ingest_corpus(o.input);
    write_file_atomically(o.output, c.to_bytes(permute_characters(c.text, o.seed)));
    return kOk;
}

int cmd_entropy(const Options& o, std::ostream& out) {
    const Corpus c = ingest_corpus(o.input);
    out << "k,block_entropy_bits,bits_per_symbol\n";
    char buf[96];
    for (std::size_t k = 1; k <= o.max_k && k <= c.text.size(); ++k) {
        const double h = block_entropy(c.text, k);
        std::snprintf(buf, sizeof buf, "%zu,%.6f,%.6f\n", k, h, h / static_cast<double>(k));
        out << buf;
    }
    return kOk;
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
    std::vector<SourceSpec> specs;
    for (const auto& s : o.sources) specs.push_back(SourceSpec::parse(s, o.seed));
    if (specs.empty()) specs.push_back(SourceSpec::parse("bernoulli", o.seed));

    SweepOptions so;
    so.n_grid = o.n_grid.empty() ? default_n_grid() : parse_n_grid(o.n_grid);
    so.transform = transform_options(o);
    so.jobs = o.jobs;
    so.record_timing = !o.no_timing;
    const SweepResult result = run_sweep(specs, so);
    for (const auto& w : result.warnings) {
        err << "warning: skipping n=" << w.n << " for " << w.source << ": " << w.message << '\n';
    }

    std::ostringstream csv;
    write_csv(csv, result.records);
    if (o.csv.empty() || o.csv == "-") {
        out << csv.str();
    } else {
        write_file_atomically(o.csv, csv.str());
    }

    std::vector<PlotSeries> rules, lengths;
    for (const auto& spec : specs) {
        const std::string label = spec.label();
        const FitWindow window = block_rule_window(result.records, label);
        PlotSeries v{label, rule_count_series(result.records, label), std::nullopt, window.min_n};
        PlotSeries l{label, rule_length_series(result.records, label), std::nullopt, window.min_n};
        std::string slopes[2];
        for (int i = 0; i < 2; ++i) {
            PlotSeries& s = i == 0 ? v : l;
            try {
                s.fit = loglog_fit(s.points, window);
                slopes[i] = std::to_string(std::max(0.0, s.fit->slope));
            } catch (const InsufficientDataError&) {
                slopes[i] = "n/a";
            }
        }
        err << label << ": rules slope " << slopes[0] << ", rule length slope " << slopes[1] << '\n';
        rules.push_back(std::move(v));
        lengths.push_back(std::move(l));
    }
    if (!o.svg.empty()) {
        write_file_atomically(o.svg + "-rules.svg",
                              render_loglog_svg("Number of rules", "rules V", rules));
        write_file_atomically(o.svg + "-lengths.svg",
                              render_loglog_svg("Rule length", "rule length L", lengths));
    }
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Minimal block grammar code: compression and analysis tools", "mbc"};
    app.require_subcommand(1);
    Options o;

    auto add_alphabet = [&](CLI::App* c) {
        c->add_option("--alphabet-from-file", o.alphabet_file,
                      "Assign symbols to the bytes of this file first (first-appearance order)")
            ->check(CLI::ExistingFile);
    };
    auto add_kmax = [&](CLI::App* c) {
        c->add_option("--kmax-override", o.kmax, "Search block lengths up to this value only");
    };

    auto* encode = app.add_subcommand("encode", "Compress a file");
    encode->add_option("input", o.input)->required();
    encode->add_option("output", o.output)->required();
    add_alphabet(encode);
    add_kmax(encode);

    auto* decode = app.add_subcommand("decode", "Decompress a file");
    decode->add_option("input", o.input)->required();
    decode->add_option("output", o.output)->required();

    auto* sweep = app.add_subcommand("sweep", "Grammar statistics over growing prefixes");
    sweep->add_option("--source", o.sources,
                      "bernoulli[:p,..], markov:row;row, corpus:PATH or permuted-corpus:PATH (repeatable)");
    sweep->add_option("--n-grid", o.n_grid, "A:B for 2^A..2^B, or a comma list (default 10:22)");
    sweep->add_option("--csv", o.csv, "CSV output path ('-' for stdout)");
    sweep->add_option("--svg", o.svg, "Write PREFIX-rules.svg and PREFIX-lengths.svg");
    sweep->add_option("--seed", o.seed, "PRNG seed");
    sweep->add_option("--jobs", o.jobs, "Prefix lengths processed in parallel")->check(CLI::PositiveNumber);
    sweep->add_flag("--no-timing", o.no_timing, "Write 0 for wall_seconds so reruns are byte-identical");
    add_kmax(sweep);

    auto* mi = app.add_subcommand("mi", "Pointwise mutual information of two files");
    mi->add_option("u", o.input)->required();
    mi->add_option("v", o.second)->required();
    add_alphabet(mi);
    add_kmax(mi);

    auto* gen = app.add_subcommand("gen", "Write an i.i.d. sample");
    gen->add_option("output", o.output)->required();
    gen->add_option("--p", o.probabilities, "Comma-separated symbol probabilities");
    gen->add_option("--n", o.length, "Length")->required();
    gen->add_option("--seed", o.seed, "PRNG seed");
    gen->add_flag("--raw", o.raw, "Write symbol s as byte s-1");

    auto* permute = app.add_subcommand("permute", "Shuffle the characters of a file");
    permute->add_option("input", o.input)->required();
    permute->add_option("output", o.output)->required();
    permute->add_option("--seed", o.seed, "PRNG seed");

    auto* entropy = app.add_subcommand("entropy", "Empirical block entropies of a file");
    entropy->add_option("input", o.input)->required();
    entropy->add_option("--k", o.max_k, "Largest block length")->check(CLI::PositiveNumber);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "mbc: " << e.what() << '\n';
        if (!app.get_subcommands().empty()) err << app.get_subcommands().front()->help();
        return kUsage;
    }

    try {
        if (*encode) return cmd_encode(o, out);
        if (*decode) return cmd_decode(o, err);
        if (*sweep) return cmd_sweep(o, out, err);
        if (*mi) return cmd_mi(o, out);
        if (*gen) return cmd_gen(o);
        if (*permute) return cmd_permute(o);
        if (*entropy) return cmd_entropy(o, out);
    } catch (const IoError& e) {
        err << "mbc: " << e.what() << '\n';
        return kIo;
    } catch (const DecodeError& e) {
        err << "mbc: " << e.what() << '\n';
        return kCorrupt;
    } catch (const std::exception& e) {
        err << "mbc: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace mbc::cli
