// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 npkg contributors

#pragma once

// Line-oriented TSV with backslash escapes so free-text fields (sentences)
// survive round trips: \t, \n, \r, \\.

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "npkg/errors.hpp"

namespace npkg {

inline std::string tsv_escape(std::string_view field) {
    std::string out;
    out.reserve(field.size());
    for (char c : field) {
        switch (c) {
            case '\\': out += "\\\\"; break;
            case '\t': out += "\\t"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            default: out += c;
        }
    }
    return out;
}

inline std::string tsv_unescape(std::string_view field) {
    std::string out;
    out.reserve(field.size());
    for (std::size_t i = 0; i < field.size(); ++i) {
        if (field[i] != '\\' || i + 1 == field.size()) {
            out += field[i];
            continue;
        }
        switch (field[++i]) {
            case '\\': out += '\\'; break;
            case 't': out += '\t'; break;
            case 'n': out += '\n'; break;
            case 'r': out += '\r'; break;
            default:
                out += '\\';
                out += field[i];
        }
    }
    return out;
}

class TsvReader {
public:
    explicit TsvReader(const std::string& path) : path_(path), in_(path) {
        if (!in_) {
            throw IoError(path, "cannot open file");
        }
    }

    const std::string& path() const noexcept { return path_; }
    std::size_t line_number() const noexcept { return line_; }

    // Reads the next non-empty line into fields; returns false at EOF.
    bool next(std::vector<std::string>& fields) {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_;
            if (!line.empty() && line.back() == '\r') {
                line.pop_back();
            }
            if (line.empty()) {
                continue;
            }
            split(line, fields);
            return true;
        }
        return false;
    }

    // Consumes the header row and checks the column names.
    void expect_header(std::initializer_list<std::string_view> columns) {
        std::vector<std::string> fields;
        if (!next(fields)) {
            throw ParseError(path_, line_, "missing header row");
        }
        if (fields.size() != columns.size() ||
            !std::equal(fields.begin(), fields.end(), columns.begin())) {
            std::string expected;
            for (auto c : columns) {
                if (!expected.empty()) {
                    expected += '\t';
                }
                expected += c;
            }
            throw ParseError(path_, line_, "unexpected header; expected: " + expected);
        }
    }

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(path_, line_, what); }

private:
    static void split(std::string_view line, std::vector<std::string>& fields) {
        fields.clear();
        std::size_t start = 0;
        while (true) {
            auto tab = line.find('\t', start);
            if (tab == std::string_view::npos) {
                fields.push_back(tsv_unescape(line.substr(start)));
                break;
            }
            fields.push_back(tsv_unescape(line.substr(start, tab - start)));
            start = tab + 1;
        }
    }

    std::string path_;
    std::ifstream in_;
    std::size_t line_ = 0;
};

inline void write_tsv_row(std::ostream& out, std::span<const std::string> fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) {
            out << '\t';
        }
        out << tsv_escape(fields[i]);
    }
    out << '\n';
}

}  // namespace npkg
