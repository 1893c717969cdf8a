#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "zodps/ensemble.hpp"
#include "zodps/records.hpp"

namespace zodps::csv {

/// Shortest decimal form that parses back to the identical double.
std::string format_double(double v);

/// Strict full-string parse; throws ValidationError on anything else.
double parse_double(std::string_view s);
long parse_long(std::string_view s);

/// Ordered key/value pairs emitted as `# key: value` header lines.
using Metadata = std::vector<std::pair<std::string, std::string>>;

/// First value for `key`, if present.
std::optional<std::string> metadata_value(const Metadata& meta, std::string_view key);

/**
 * Ensemble file: `#` metadata lines, then one particle per row with dim
 * comma-separated coordinates.  Round-trips bitwise (format_double).
 */
void write_ensemble(const std::string& path, const Ensemble& ensemble,
                    const Metadata& meta);

struct EnsembleFile {
    Ensemble ensemble;
    Metadata metadata;
};
EnsembleFile read_ensemble(const std::string& path);

/**
 * Run-record file: `#` metadata lines, a fixed column-header line, then one
 * row per record in iteration order.
 */
void write_run_records(const std::string& path, std::span<const RunRecord> records,
                       const Metadata& meta);

struct RunRecordsFile {
    std::vector<RunRecord> records;
    Metadata metadata;
};
RunRecordsFile read_run_records(const std::string& path);

/// The fixed run-record column-header line.
std::string_view run_record_header();

} // namespace zodps::csv
