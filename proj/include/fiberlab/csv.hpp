#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

namespace fiberlab {

// Shortest round-trip decimal form of a double (%.17g trimmed by parse
// check); deterministic across platforms using IEEE doubles.
std::string format_double(double v);

// CSV file with '#' comment headers carrying run provenance, then one column
// name row, then data rows. All numbers are written with format_double.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns,
              const std::vector<std::string>& comments);

    void row(const std::vector<double>& values);
    void text_row(const std::vector<std::string>& cells);

private:
    std::ofstream out_;
    size_t columns_ = 0;
    std::string path_;
};

// Standard provenance comment block for result files.
std::vector<std::string> provenance_comments(uint64_t config_hash, uint64_t master_seed);

} // namespace fiberlab
