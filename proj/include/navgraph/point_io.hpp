#pragma once

#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "navgraph/errors.hpp"
#include "navgraph/metric.hpp"

namespace navgraph {

/// Parses one coordinate row.  Commas and whitespace both separate fields.
inline std::vector<double> parse_coord_line(const std::string& line, std::size_t lineno = 0) {
    std::string cleaned = line;
    for (char& c : cleaned)
        if (c == ',') c = ' ';
    std::istringstream iss(cleaned);
    std::vector<double> row;
    std::string tok;
    while (iss >> tok) {
        try {
            std::size_t used = 0;
            const double v = std::stod(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            row.push_back(v);
        } catch (const std::exception&) {
            throw DataError("line " + std::to_string(lineno) + ": cannot parse '" + tok +
                            "' as a number");
        }
    }
    return row;
}

/// Reads a whitespace / comma separated point file.  Lines beginning with '#'
/// (after optional leading blanks) and empty lines are skipped.
inline std::vector<std::vector<double>> read_point_rows(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '#') continue;
        auto row = parse_coord_line(line, lineno);
        if (!row.empty()) rows.push_back(std::move(row));
    }
    return rows;
}

inline PointSet load_points(std::istream& in, MetricKind metric) {
    return PointSet::from_rows(read_point_rows(in), metric);
}

inline PointSet load_points_file(const std::string& path, MetricKind metric) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open point file '" + path + "'");
    return load_points(in, metric);
}

} // namespace navgraph
