#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fluctoptics/errors.hpp"

// Deterministic text output. Every number is rendered in scientific
// notation with a fixed number of significant digits and a '.' decimal
// separator, independent of the process locale, so identical inputs give
// byte-identical files.

namespace fluctoptics::io {

inline constexpr int default_precision = 17;  // significant digits

// "1.234500000000000e+02" style; sig_digits clamped to [1, 17].
std::string format_sci(double value, int sig_digits = default_precision);

// Column-oriented table; all columns must have equal length.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> data;

    void require_consistent() const;
    size_t rows() const { return data.empty() ? 0 : data[0].size(); }
};

// Header row plus data rows, comma separated, LF line endings.
std::string to_csv(const Table& t, int sig_digits = default_precision);

// {"meta": {...}, "series": {column: [...], ...}} with the same float
// formatting as the CSV path.
struct JsonMeta {
    std::string version;
    std::string config_hash;
    std::string scenario;
    std::string command;
};

std::string to_json(const JsonMeta& meta, const Table& t,
                    int sig_digits = default_precision);

// FNV-1a 64-bit over bytes; stable fingerprint for config provenance.
std::uint64_t fnv1a64(const std::string& bytes);
std::string fnv1a64_hex(const std::string& bytes);

// Write a file atomically enough for tests: truncate + write + flush.
// Throws FileError when the path cannot be opened.
void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace fluctoptics::io
