#pragma once

#include "bousq/functional_value.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace bousq {

/// Shortest exact representation up to 17 significant digits.
inline std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// One file per functional: columns time, value, term:<name>...
inline void write_functional_csv(const std::filesystem::path& file,
                                 const std::vector<FunctionalValue>& series) {
    std::ofstream out(file);
    if (!out) throw std::runtime_error("cannot write '" + file.string() + "'");
    out << "time,value";
    if (!series.empty())
        for (const auto& [name, _] : series.front().terms) out << ",term:" << name;
    out << "\n";
    for (const auto& fv : series) {
        out << format_g17(fv.time) << "," << format_g17(fv.value);
        for (const auto& [_, v] : fv.terms) out << "," << format_g17(v);
        out << "\n";
    }
}

inline void write_columns_csv(const std::filesystem::path& file,
                              const std::vector<std::string>& headers,
                              const std::vector<std::vector<double>>& columns) {
    std::ofstream out(file);
    if (!out) throw std::runtime_error("cannot write '" + file.string() + "'");
    for (size_t c = 0; c < headers.size(); ++c) out << (c ? "," : "") << headers[c];
    out << "\n";
    const size_t rows = columns.empty() ? 0 : columns.front().size();
    for (size_t r = 0; r < rows; ++r) {
        for (size_t c = 0; c < columns.size(); ++c)
            out << (c ? "," : "") << format_g17(columns[c][r]);
        out << "\n";
    }
}

}  // namespace bousq
