#pragma once

// Minimal RFC-4180 CSV reader/writer. Quoted fields may contain commas,
// escaped quotes ("") and embedded newlines; both LF and CRLF records are
// accepted.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fakenews/error.hpp"

namespace fakenews {

using CsvRecord = std::vector<std::string>;

// Parses the whole file, header included, into records. Every record must
// have the same field count as the header; a mismatch reports the 1-based
// record number (the header is record 1).
inline std::vector<CsvRecord> read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(ErrorKind::FileNotFound, "cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();

    std::vector<CsvRecord> records;
    CsvRecord record;
    std::string field;
    bool in_quotes = false;
    bool any_field = false;

    auto end_field = [&] {
        record.push_back(std::move(field));
        field.clear();
        any_field = false;
    };
    auto end_record = [&] {
        end_field();
        records.push_back(std::move(record));
        record.clear();
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        switch (c) {
            case '"':
                in_quotes = true;
                any_field = true;
                break;
            case ',':
                end_field();
                break;
            case '\r':
                if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
                end_record();
                break;
            case '\n':
                end_record();
                break;
            default:
                field += c;
                any_field = true;
                break;
        }
    }
    if (in_quotes)
        raise(ErrorKind::MalformedCsv,
              path + ": unterminated quoted field at end of file");
    // Final record without trailing newline.
    if (any_field || !field.empty() || !record.empty()) end_record();

    if (records.empty())
        raise(ErrorKind::MalformedCsv, path + ": empty file (no header row)");

    const std::size_t width = records.front().size();
    for (std::size_t r = 1; r < records.size(); ++r) {
        if (records[r].size() != width) {
            std::ostringstream msg;
            msg << path << ": row " << (r + 1) << " has " << records[r].size()
                << " fields, expected " << width;
            raise(ErrorKind::MalformedCsv, msg.str());
        }
    }
    return records;
}

inline std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline void write_csv(std::ostream& out, const std::vector<CsvRecord>& records) {
    for (const auto& record : records) {
        for (std::size_t i = 0; i < record.size(); ++i) {
            if (i) out << ',';
            out << csv_quote(record[i]);
        }
        out << '\n';
    }
}

}  // namespace fakenews
