#include "fiberlab/csv.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>

#include "fiberlab/errors.hpp"
#include "fiberlab/version.hpp"

namespace fiberlab {

std::string format_double(double v) {
    char buf[40];
    if (std::isfinite(v) && v == std::floor(v) && std::fabs(v) < 1e15) {
        std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(v));
        return buf;
    }
    // Try the shortest precision that round-trips, so values read back
    // exactly and files stay diff-friendly.
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        double back = 0.0;
        std::sscanf(buf, "%lf", &back);
        if (back == v || (v != v && back != back)) return buf;
    }
    return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& columns,
                     const std::vector<std::string>& comments)
    : out_(path, std::ios::binary), columns_(columns.size()), path_(path) {
    if (!out_) throw ConfigError("cannot open output file '" + path + "'");
    if (columns.empty()) throw std::invalid_argument("CSV needs at least one column");
    for (const auto& c : comments) out_ << "# " << c << "\n";
    for (size_t i = 0; i < columns.size(); ++i)
        out_ << columns[i] << (i + 1 < columns.size() ? "," : "\n");
}

void CsvWriter::row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(format_double(v));
    text_row(cells);
}

void CsvWriter::text_row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_)
        throw std::invalid_argument("row width does not match the column count");
    for (size_t i = 0; i < cells.size(); ++i)
        out_ << cells[i] << (i + 1 < cells.size() ? "," : "\n");
    if (!out_) throw NumericError("write failed on '" + path_ + "'");
}

std::vector<std::string> provenance_comments(uint64_t config_hash, uint64_t master_seed) {
    return {
        "config_hash = " + std::to_string(config_hash),
        "master_seed = " + std::to_string(master_seed),
        "version = " + std::string(kVersion),
    };
}

} // namespace fiberlab
