#pragma once

#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ratekit/util.hpp"

namespace ratekit {

/// RFC 4180 field quoting: fields containing comma, double quote, CR or LF
/// are wrapped in quotes with embedded quotes doubled.
inline std::string csv_escape(std::string_view field) {
    bool needs_quotes = field.find_first_of(",\"\r\n") != std::string_view::npos;
    if (!needs_quotes) return std::string(field);
    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

/// Row-oriented CSV writer. Rows are buffered and written on save() so a
/// failed run never leaves a truncated file behind.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
        append_row(header);
    }

    void append_row(const std::vector<std::string>& fields) {
        if (fields.size() != columns_)
            throw std::runtime_error("csv row has " + std::to_string(fields.size()) +
                                     " fields, expected " + std::to_string(columns_));
        std::string line;
        for (size_t i = 0; i < fields.size(); ++i) {
            if (i) line.push_back(',');
            line += csv_escape(fields[i]);
        }
        line += "\r\n";
        body_ += line;
    }

    const std::string& content() const { return body_; }

    void save(const std::filesystem::path& path) const { write_file(path, body_); }

private:
    size_t columns_;
    std::string body_;
};

}  // namespace ratekit
