#pragma once

#include <stdexcept>
#include <string>

namespace navgraph {

/// Caller violated a precondition (bad parameter, mismatched dimensions, ...).
struct UsageError : std::invalid_argument {
    explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

/// Input data is malformed (unparsable point file, duplicate points, ...).
struct DataError : std::runtime_error {
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// File or stream level failure (missing file, truncated index, bad checksum).
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace navgraph
