#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "mbc/analysis.hpp"
#include "mbc/sources.hpp"

namespace mbc::cli {

// One transform run on a length-n prefix of a source.
struct ExperimentRecord {
    std::string source;
    std::uint64_t n = 0;
    std::size_t block_length = 0;  // chosen k, 0 without secondary rules
    std::size_t shift = 0;
    std::size_t rules = 0;        // V
    std::size_t rule_length = 0;  // L
    std::uint64_t code_bits = 0;
    double bits_per_symbol = 0.0;
    double wall_seconds = 0.0;
};

ExperimentRecord run_experiment(const std::string& label, const SourceData& data, std::size_t n,
                                const TransformOptions& options = {});

struct SweepOptions {
    std::vector<std::uint64_t> n_grid;
    TransformOptions transform;
    unsigned jobs = 1;
    bool record_timing = true;
};

struct SweepWarning {
    std::string source;
    std::uint64_t n;
    std::string message;
};

struct SweepResult {
    std::vector<ExperimentRecord> records;  // grouped by source, n ascending
    std::vector<SweepWarning> warnings;
};

// Runs the transform on every prefix length of the grid for every source.
// Lengths beyond a source are skipped with a warning.
SweepResult run_sweep(const std::vector<SourceSpec>& sources, const SweepOptions& options);

// Parses "A:B" (dyadic 2^A .. 2^B) or a comma list of lengths.
std::vector<std::uint64_t> parse_n_grid(const std::string& text);
std::vector<std::uint64_t> default_n_grid();

inline constexpr const char* kCsvHeader =
    "source,n,k,shift,rules,rule_length,code_bits,bits_per_symbol,wall_seconds";

void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& records);
std::vector<ExperimentRecord> read_csv(std::istream& in);

// V and L against n for one source, as growth series.
GrowthSeries rule_count_series(const std::vector<ExperimentRecord>& records, const std::string& source);
GrowthSeries rule_length_series(const std::vector<ExperimentRecord>& records, const std::string& source);

// Prefix lengths from the first one whose grammar has secondary rules. Before
// it V is 1 and L is 0 by construction, so growth fits start there. Empty
// (no admissible n) when no grammar of the source has secondary rules.
FitWindow block_rule_window(const std::vector<ExperimentRecord>& records, const std::string& source);

// Writes through a temporary file renamed into place, so a failed run leaves
// no partial output. Throws IoError.
void write_file_atomically(const std::filesystem::path& path, const std::string& contents);
void write_file_atomically(const std::filesystem::path& path, const std::vector<std::uint8_t>& contents);

}  // namespace mbc::cli
