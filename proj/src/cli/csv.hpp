#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

// Deterministic CSV emission: '#'-prefixed metadata lines, one header row,
// numeric rows with 17 significant digits, LF newlines.

namespace tfgkp::cli {

struct ResultTable {
    using Cell = std::variant<double, long, std::string>;

    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
};

std::string format_double(double v);

std::string render_csv(const ResultTable& table);

// Empty path writes to stdout. I/O failures raise IoError naming the path.
void emit_report(const ResultTable& table, const std::string& path);

std::uint64_t fnv1a64(const std::string& text);

}  // namespace tfgkp::cli
