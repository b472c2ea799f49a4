#include "experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <future>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "mbc/errors.hpp"

namespace mbc::cli {

ExperimentRecord run_experiment(const std::string& label, const SourceData& data, std::size_t n,
                                const TransformOptions& options) {
    const PsiCode code(data.alphabet_size);
    const auto start = std::chrono::steady_clock::now();
    const TransformResult result =
        minimal_block_transform(code, std::span<const Symbol>(data.text).first(n), options);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

    ExperimentRecord r;
    r.source = label;
    r.n = n;
    r.block_length = result.grammar.block_length();
    r.shift = result.shift();
    r.rules = result.rule_count();
    r.rule_length = result.rule_length();
    r.code_bits = result.code_bits;
    r.bits_per_symbol = n == 0 ? 0.0 : static_cast<double>(result.code_bits) / static_cast<double>(n);
    r.wall_seconds = elapsed.count();
    return r;
}

SweepResult run_sweep(const std::vector<SourceSpec>& sources, const SweepOptions& options) {
    std::vector<std::uint64_t> grid = options.n_grid;
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    const std::uint64_t longest = grid.empty() ? 0 : grid.back();

    SweepResult out;
    for (const SourceSpec& spec : sources) {
        const SourceData data = materialize(spec, static_cast<std::size_t>(longest));
        const std::string label = spec.label();

        std::vector<std::uint64_t> lengths;
        for (std::uint64_t n : grid) {
            if (n > data.text.size()) {
                out.warnings.push_back({label, n,
                                        "source has only " + std::to_string(data.text.size()) + " symbols"});
            } else {
                lengths.push_back(n);
            }
        }

        std::vector<ExperimentRecord> rows(lengths.size());
        const unsigned jobs = std::max(1u, options.jobs);
        // Largest prefixes first so the slowest rows start early.
        for (std::size_t done = 0; done < lengths.size();) {
            std::vector<std::future<void>> batch;
            for (unsigned j = 0; j < jobs && done < lengths.size(); ++j, ++done) {
                const std::size_t row = lengths.size() - 1 - done;
                batch.push_back(std::async(jobs == 1 ? std::launch::deferred : std::launch::async, [&, row] {
                    rows[row] = run_experiment(label, data, static_cast<std::size_t>(lengths[row]),
                                               options.transform);
                }));
            }
            for (auto& f : batch) f.get();
        }
        for (auto& r : rows) {
            if (!options.record_timing) r.wall_seconds = 0.0;
            out.records.push_back(std::move(r));
        }
    }
    return out;
}

std::vector<std::uint64_t> default_n_grid() { return parse_n_grid("10:22"); }

std::vector<std::uint64_t> parse_n_grid(const std::string& text) {
    std::vector<std::uint64_t> grid;
    auto number = [&](const std::string& s) -> std::uint64_t {
        std::size_t used = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != s.size()) throw DomainError("bad n-grid entry '" + s + "'");
        return v;
    };
    if (const auto colon = text.find(':'); colon != std::string::npos) {
        const auto lo = number(text.substr(0, colon));
        const auto hi = number(text.substr(colon + 1));
        if (lo > hi || hi > 40) throw DomainError("bad dyadic n-grid '" + text + "'");
        for (auto e = lo; e <= hi; ++e) grid.push_back(std::uint64_t{1} << e);
    } else {
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) grid.push_back(number(item));
    }
    for (auto n : grid) {
        if (n == 0) throw DomainError("n-grid entries must be positive");
    }
    if (grid.empty()) throw DomainError("empty n-grid");
    return grid;
}

namespace {

std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + '"';
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                fields.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                fields.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else {
            fields.back() += c;
        }
    }
    return fields;
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& records) {
    out << kCsvHeader << '\n';
    char buf[64];
    for (const auto& r : records) {
        out << quote(r.source) << ',' << r.n << ',' << r.block_length << ',' << r.shift << ','
            << r.rules << ',' << r.rule_length << ',' << r.code_bits << ',';
        std::snprintf(buf, sizeof buf, "%.6f,%.3f", r.bits_per_symbol, r.wall_seconds);
        out << buf << '\n';
    }
}

std::vector<ExperimentRecord> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) throw CorruptionError("csv: unexpected header");
    std::vector<ExperimentRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 9) throw CorruptionError("csv: expected 9 fields");
        ExperimentRecord r;
        r.source = f[0];
        r.n = std::stoull(f[1]);
        r.block_length = std::stoull(f[2]);
        r.shift = std::stoull(f[3]);
        r.rules = std::stoull(f[4]);
        r.rule_length = std::stoull(f[5]);
        r.code_bits = std::stoull(f[6]);
        r.bits_per_symbol = std::stod(f[7]);
        r.wall_seconds = std::stod(f[8]);
        records.push_back(std::move(r));
    }
    return records;
}

namespace {

GrowthSeries series_of(const std::vector<ExperimentRecord>& records, const std::string& source,
                       double (*value)(const ExperimentRecord&)) {
    GrowthSeries s;
    for (const auto& r : records) {
        if (r.source == source) s.push_back({r.n, value(r)});
    }
    return s;
}

}  // namespace

GrowthSeries rule_count_series(const std::vector<ExperimentRecord>& records, const std::string& source) {
    return series_of(records, source, [](const ExperimentRecord& r) { return static_cast<double>(r.rules); });
}

GrowthSeries rule_length_series(const std::vector<ExperimentRecord>& records, const std::string& source) {
    return series_of(records, source,
                     [](const ExperimentRecord& r) { return static_cast<double>(r.rule_length); });
}

FitWindow block_rule_window(const std::vector<ExperimentRecord>& records, const std::string& source) {
    FitWindow w;
    w.min_n = std::numeric_limits<std::uint64_t>::max();
    for (const auto& r : records) {
        if (r.source == source && r.rule_length > 0) w.min_n = std::min(*w.min_n, r.n);
    }
    return w;
}

namespace {

template <typename Bytes>
void write_atomically(const std::filesystem::path& path, const Bytes& contents) {
    std::filesystem::path tmp = path;
    tmp += ".partial";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + tmp.string());
        out.write(reinterpret_cast<const char*>(contents.data()), static_cast<std::streamsize>(contents.size()));
        out.flush();
        if (!out) {
            out.close();
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw IoError("error writing " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("cannot rename into " + path.string());
    }
}

}  // namespace

void write_file_atomically(const std::filesystem::path& path, const std::string& contents) {
    write_atomically(path, contents);
}

void write_file_atomically(const std::filesystem::path& path, const std::vector<std::uint8_t>& contents) {
    write_atomically(path, contents);
}

}  // namespace mbc::cli
