#include "zodps/csv.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "zodps/errors.hpp"

namespace zodps::csv {

namespace {

constexpr std::string_view kRunHeader =
    "iteration,wall_time,kl,kl_variance,occ_t1,occ_t2,occ_out,degenerate_events,"
    "rgo_rejections";

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open for writing: " + path);
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open for reading: " + path);
    return in;
}

void write_metadata(std::ofstream& out, const Metadata& meta) {
    for (const auto& [key, value] : meta) out << "# " << key << ": " << value << "\n";
}

// Pulls `# key: value` lines off the front of the stream; leaves the first
// non-metadata line in `carry`.
Metadata read_metadata(std::ifstream& in, std::string& carry) {
    Metadata meta;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.front() != '#') {
            carry = line;
            return meta;
        }
        std::string_view body(line);
        body.remove_prefix(1);
        if (!body.empty() && body.front() == ' ') body.remove_prefix(1);
        const std::size_t colon = body.find(": ");
        if (colon == std::string_view::npos) {
            meta.emplace_back(std::string(body), "");
        } else {
            meta.emplace_back(std::string(body.substr(0, colon)),
                              std::string(body.substr(colon + 2)));
        }
    }
    carry.clear();
    return meta;
}

std::vector<std::string_view> split_cells(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            cells.push_back(line.substr(start));
            break;
        }
        cells.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return cells;
}

template <typename T>
std::string cell(const std::optional<T>& v) {
    if (!v) return "";
    if constexpr (std::is_same_v<T, double>)
        return format_double(*v);
    else
        return std::to_string(*v);
}

std::optional<double> parse_opt_double(std::string_view s) {
    if (s.empty()) return std::nullopt;
    return parse_double(s);
}

std::optional<long> parse_opt_long(std::string_view s) {
    if (s.empty()) return std::nullopt;
    return parse_long(s);
}

} // namespace

std::string format_double(double v) {
    std::array<char, 40> buf;
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

double parse_double(std::string_view s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw ValidationError("malformed numeric cell: '" + std::string(s) + "'");
    return v;
}

long parse_long(std::string_view s) {
    long v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw ValidationError("malformed integer cell: '" + std::string(s) + "'");
    return v;
}

std::optional<std::string> metadata_value(const Metadata& meta, std::string_view key) {
    for (const auto& [k, v] : meta)
        if (k == key) return v;
    return std::nullopt;
}

void write_ensemble(const std::string& path, const Ensemble& ensemble,
                    const Metadata& meta) {
    std::ofstream out = open_out(path);
    write_metadata(out, meta);
    for (int i = 0; i < ensemble.n(); ++i) {
        for (int j = 0; j < ensemble.dim(); ++j) {
            if (j > 0) out << ',';
            out << format_double(ensemble.at(i, j));
        }
        out << '\n';
    }
    if (!out.good()) throw ValidationError("write failed: " + path);
}

EnsembleFile read_ensemble(const std::string& path) {
    std::ifstream in = open_in(path);
    EnsembleFile file;
    std::string line;
    file.metadata = read_metadata(in, line);
    std::vector<double> data;
    int dim = -1;
    int n = 0;
    auto consume = [&](std::string_view row) {
        if (row.empty()) return;
        const std::vector<std::string_view> cells = split_cells(row);
        if (dim < 0) dim = static_cast<int>(cells.size());
        if (static_cast<int>(cells.size()) != dim)
            throw ValidationError("ensemble CSV has ragged rows: " + path);
        for (const std::string_view c : cells) data.push_back(parse_double(c));
        ++n;
    };
    consume(line);
    while (std::getline(in, line)) consume(line);
    if (dim < 0) dim = 1;  // empty ensemble file
    file.ensemble = Ensemble(n, dim, std::move(data));
    return file;
}

std::string_view run_record_header() { return kRunHeader; }

void write_run_records(const std::string& path, std::span<const RunRecord> records,
                       const Metadata& meta) {
    std::ofstream out = open_out(path);
    write_metadata(out, meta);
    out << kRunHeader << '\n';
    for (const RunRecord& r : records) {
        out << r.iteration << ',' << cell(r.wall_time) << ',' << cell(r.kl) << ','
            << cell(r.kl_variance) << ',';
        if (r.occupancy) {
            out << r.occupancy->t1 << ',' << r.occupancy->t2 << ',' << r.occupancy->outside;
        } else {
            out << ",,";
        }
        out << ',' << r.degenerate_events << ',' << cell(r.rgo_rejections) << '\n';
    }
    if (!out.good()) throw ValidationError("write failed: " + path);
}

RunRecordsFile read_run_records(const std::string& path) {
    std::ifstream in = open_in(path);
    RunRecordsFile file;
    std::string line;
    file.metadata = read_metadata(in, line);
    if (line != kRunHeader)
        throw ValidationError("run-record CSV is missing its column header: " + path);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const std::vector<std::string_view> cells = split_cells(line);
        if (cells.size() != 9)
            throw ValidationError("run-record CSV row has wrong arity: " + path);
        RunRecord r;
        r.iteration = static_cast<int>(parse_long(cells[0]));
        r.wall_time = parse_opt_double(cells[1]);
        r.kl = parse_opt_double(cells[2]);
        r.kl_variance = parse_opt_double(cells[3]);
        const std::optional<long> t1 = parse_opt_long(cells[4]);
        const std::optional<long> t2 = parse_opt_long(cells[5]);
        const std::optional<long> outside = parse_opt_long(cells[6]);
        if (t1.has_value() != t2.has_value() || t1.has_value() != outside.has_value())
            throw ValidationError("run-record CSV has a partial occupancy triple: " + path);
        if (t1) r.occupancy = Occupancy{*t1, *t2, *outside};
        r.degenerate_events = parse_long(cells[7]);
        r.rgo_rejections = parse_opt_long(cells[8]);
        file.records.push_back(r);
    }
    return file;
}

} // namespace zodps::csv
