#include "sdr/io.hpp"

#include "sdr/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <vector>

namespace sdr {

namespace {

bool is_separator(char c) { return c == ',' || c == ' ' || c == '\t' || c == '\r' || c == ';'; }

std::vector<double> parse_line(const std::string& line, std::size_t line_no) {
    std::vector<double> out;
    const char* p = line.data();
    const char* end = p + line.size();
    while (p < end) {
        while (p < end && is_separator(*p)) ++p;
        if (p == end) break;
        const char* field = p;
        while (p < end && !is_separator(*p)) ++p;
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(field, p, v);
        if (ec != std::errc() || ptr != p)
            throw DataError("line " + std::to_string(line_no) + ": cannot parse '" +
                            std::string(field, p) + "'");
        out.push_back(v);
    }
    return out;
}

}  // namespace

DataSet parse_matrix(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        auto row = parse_line(line, line_no);
        if (!rows.empty() && row.size() != rows.front().size())
            throw DataError("line " + std::to_string(line_no) + ": expected " +
                            std::to_string(rows.front().size()) + " fields, got " +
                            std::to_string(row.size()));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw DataError("no data rows");

    DataSet m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
    return m;
}

DataSet read_matrix(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    try {
        return parse_matrix(in);
    } catch (const DataError& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

std::string format_double(double v) {
    if (std::isnan(v)) return "NaN";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace sdr
