#include "csv.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

#include "tfgkp/common.hpp"

namespace tfgkp::cli {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string render_csv(const ResultTable& table) {
    std::string out;
    for (const auto& [key, value] : table.metadata)
        out += "# " + key + ": " + value + "\n";
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i) out += ',';
        out += table.header[i];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            if (const double* d = std::get_if<double>(&row[i]))
                out += format_double(*d);
            else if (const long* l = std::get_if<long>(&row[i]))
                out += std::to_string(*l);
            else
                out += std::get<std::string>(row[i]);
        }
        out += '\n';
    }
    return out;
}

void emit_report(const ResultTable& table, const std::string& path) {
    const std::string body = render_csv(table);
    if (path.empty()) {
        std::cout << body;
        std::cout.flush();
        if (!std::cout) throw IoError("failed writing report to stdout");
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f << body;
    f.close();
    if (!f) throw IoError("failed writing report to '" + path + "'");
}

std::uint64_t fnv1a64(const std::string& text) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace tfgkp::cli
