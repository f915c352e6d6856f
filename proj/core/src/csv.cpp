#include "undulant/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "undulant/errors.hpp"

namespace undulant {

const std::vector<std::string>& diagnostic_columns() {
    static const std::vector<std::string> cols{"t",        "X0",      "X1",      "Xc",     "Y1",
                                               "W",        "perp_h10", "avg_h10", "gap_h10", "pulse_x"};
    return cols;
}

std::string format_number(double v) {
    if (!std::isfinite(v)) return {};
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_csv(const std::filesystem::path& path, const std::vector<CsvColumn>& columns) {
    std::size_t rows = 0;
    bool sized = false;
    for (const auto& c : columns) {
        if (c.values.empty()) continue;
        if (sized && c.values.size() != rows)
            throw Error(ErrorCode::ShapeMismatch, "column " + c.name + " has " + std::to_string(c.values.size()) +
                                                      " rows, expected " + std::to_string(rows));
        rows = c.values.size();
        sized = true;
    }
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
    for (std::size_t k = 0; k < columns.size(); ++k) out << (k ? "," : "") << columns[k].name;
    out << '\n';
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t k = 0; k < columns.size(); ++k) {
            if (k) out << ',';
            if (!columns[k].values.empty()) out << format_number(columns[k].values[r]);
        }
        out << '\n';
    }
    if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

const std::vector<double>& CsvTable::column(const std::string& name) const {
    for (std::size_t k = 0; k < header.size(); ++k)
        if (header[k] == name) return columns[k];
    throw Error(ErrorCode::InvalidArgument, "no column named " + name);
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    CsvTable t;
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorCode::IoError, path.string() + " is empty");
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) t.header.push_back(cell);
        if (!line.empty() && line.back() == ',') t.header.emplace_back();
    }
    t.columns.resize(t.header.size());
    while (std::getline(in, line)) {
        std::size_t start = 0;
        for (std::size_t k = 0; k < t.header.size(); ++k) {
            const std::size_t end = std::min(line.find(',', start), line.size());
            double v = std::numeric_limits<double>::quiet_NaN();
            if (end > start) {
                const auto res = std::from_chars(line.data() + start, line.data() + end, v);
                if (res.ec != std::errc())
                    throw Error(ErrorCode::IoError, "bad number in " + path.string() + ": " + line.substr(start, end - start));
            }
            t.columns[k].push_back(v);
            start = end + 1;
        }
    }
    return t;
}

}  // namespace undulant
