#include "srrw/csv.hpp"

#include <charconv>
#include <cstdlib>

namespace srrw {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            cells.push_back(line.substr(start));
            break;
        }
        cells.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return cells;
}

bool looks_numeric(const std::string& s) {
    char* end = nullptr;
    std::strtod(s.c_str(), &end);
    return end != s.c_str() && end == s.c_str() + s.size();
}

} // namespace

std::vector<std::vector<std::string>> read_csv(const std::string& path, std::size_t cols) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto cells = split_line(line);
        if (line_no == 1 && !cells.empty() && !looks_numeric(cells[0])) continue;
        if (cells.size() != cols)
            throw ParseError(path + " line " + std::to_string(line_no) +
                             ": expected " + std::to_string(cols) + " columns");
        rows.push_back(std::move(cells));
    }
    return rows;
}

int parse_int(const std::string& s, const std::string& context) {
    int v = 0;
    auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc{} || r.ptr != s.data() + s.size())
        throw ParseError(context + ": not an integer: " + s);
    return v;
}

double parse_double(const std::string& s, const std::string& context) {
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || end != s.c_str() + s.size())
        throw ParseError(context + ": not a number: " + s);
    return v;
}

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m) {
    CsvWriter w(path);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        std::string line;
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) line += ',';
            line += format_double(m(i, j));
        }
        w.row(line);
    }
}

} // namespace srrw
