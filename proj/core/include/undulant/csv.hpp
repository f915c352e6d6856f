#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace undulant {

/// One named column of a table; an empty `values` vector marks a column with no data.
struct CsvColumn {
    std::string name;
    std::vector<double> values;
};

/// The diagnostics column order shared by every surface and pulse CSV.
const std::vector<std::string>& diagnostic_columns();

/// Shortest round-trip decimal text for finite values; empty string for NaN or infinity.
std::string format_number(double v);

/// Writes a header row and one row per sample. Columns without data (or NaN entries) are left
/// empty. All non-empty columns must share one length.
void write_csv(const std::filesystem::path& path, const std::vector<CsvColumn>& columns);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns;  // NaN for empty cells

    const std::vector<double>& column(const std::string& name) const;
};

CsvTable read_csv(const std::filesystem::path& path);

}  // namespace undulant
