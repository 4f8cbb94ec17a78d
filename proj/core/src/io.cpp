#include "fluctoptics/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace fluctoptics::io {

std::string format_sci(double value, int sig_digits) {
    const int digits = std::clamp(sig_digits, 1, 17);
    char buf[64];
    // %e is locale-dependent only in the decimal separator; the library
    // never calls setlocale, so the C locale's '.' applies. Guard anyway.
    std::snprintf(buf, sizeof buf, "%.*e", digits - 1, value);
    for (char& c : buf) {
        if (c == ',') c = '.';
        if (c == '\0') break;
    }
    return buf;
}

void Table::require_consistent() const {
    if (columns.size() != data.size()) {
        throw Error("table has " + std::to_string(columns.size()) +
                    " column names but " + std::to_string(data.size()) +
                    " data columns");
    }
    for (size_t i = 1; i < data.size(); ++i) {
        if (data[i].size() != data[0].size()) {
            throw Error("table columns have unequal lengths");
        }
    }
}

std::string to_csv(const Table& t, int sig_digits) {
    t.require_consistent();
    std::ostringstream os;
    for (size_t c = 0; c < t.columns.size(); ++c) {
        if (c) os << ',';
        os << t.columns[c];
    }
    os << '\n';
    const size_t rows = t.rows();
    for (size_t r = 0; r < rows; ++r) {
        for (size_t c = 0; c < t.data.size(); ++c) {
            if (c) os << ',';
            os << format_sci(t.data[c][r], sig_digits);
        }
        os << '\n';
    }
    return os.str();
}

namespace {

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

}  // namespace

std::string to_json(const JsonMeta& meta, const Table& t, int sig_digits) {
    t.require_consistent();
    std::ostringstream os;
    os << "{\n  \"meta\": {\n";
    os << "    \"version\": \"" << json_escape(meta.version) << "\",\n";
    os << "    \"config_hash\": \"" << json_escape(meta.config_hash) << "\",\n";
    os << "    \"scenario\": \"" << json_escape(meta.scenario) << "\",\n";
    os << "    \"command\": \"" << json_escape(meta.command) << "\"\n";
    os << "  },\n  \"series\": {\n";
    for (size_t c = 0; c < t.columns.size(); ++c) {
        os << "    \"" << json_escape(t.columns[c]) << "\": [";
        const auto& col = t.data[c];
        for (size_t r = 0; r < col.size(); ++r) {
            if (r) os << ", ";
            os << format_sci(col[r], sig_digits);
        }
        os << ']' << (c + 1 < t.columns.size() ? "," : "") << '\n';
    }
    os << "  }\n}\n";
    return os.str();
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string fnv1a64_hex(const std::string& bytes) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw FileError("cannot open '" + path + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw FileError("failed writing '" + path + "'");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileError("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace fluctoptics::io
