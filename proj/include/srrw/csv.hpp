#pragma once

#include <Eigen/Dense>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "srrw/errors.hpp"

namespace srrw {

// Doubles are written with %.17g so emitted files are byte-stable for
// identical inputs and round-trip to the same value.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

class CsvWriter {
public:
    explicit CsvWriter(const std::string& path) : out_(path, std::ios::binary) {
        if (!out_) throw ParseError("cannot open output file: " + path);
    }

    template <typename... Cells>
    void row(const Cells&... cells) {
        bool first = true;
        ((write_cell(cells, first), first = false), ...);
        out_ << '\n';
    }

private:
    void write_cell(double v, bool first) { sep(first); out_ << format_double(v); }
    void write_cell(int v, bool first) { sep(first); out_ << v; }
    void write_cell(long v, bool first) { sep(first); out_ << v; }
    void write_cell(long long v, bool first) { sep(first); out_ << v; }
    void write_cell(std::size_t v, bool first) { sep(first); out_ << v; }
    void write_cell(const char* v, bool first) { sep(first); out_ << v; }
    void write_cell(const std::string& v, bool first) { sep(first); out_ << v; }
    void sep(bool first) {
        if (!first) out_ << ',';
    }

    std::ofstream out_;
};

// Reads a CSV of fixed column count; a leading header line (first cell not
// numeric) is skipped. Returns data cells as strings.
std::vector<std::vector<std::string>> read_csv(const std::string& path, std::size_t cols);

int parse_int(const std::string& s, const std::string& context);
double parse_double(const std::string& s, const std::string& context);

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m);

} // namespace srrw
