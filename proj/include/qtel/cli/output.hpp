// Copyright 2026 The qtel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


/**
 * @file
 * Tabular output: CSV with 17 significant digits, or JSON.
 */

#pragma once

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "qtel/cli/config.hpp"

namespace qtel::cli {

enum class Format { Csv, Json };

inline Format format_from_string(const std::string &s) {
    if (s == "csv") return Format::Csv;
    if (s == "json") return Format::Json;
    throw ConfigError("unknown format '" + s + "'");
}

/// Empty cell (std::monostate) prints as nothing in CSV and null in JSON.
using Cell = std::variant<std::monostate, double, std::int64_t, std::string, bool>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row) {
        if (row.size() != columns.size()) throw NumericalError("table row width mismatch");
        rows.push_back(std::move(row));
    }
};

inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

inline std::string csv_escape(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline std::string cell_text(const Cell &c) {
    struct V {
        std::string operator()(std::monostate) const { return ""; }
        std::string operator()(double v) const { return format_double(v); }
        std::string operator()(std::int64_t v) const { return std::to_string(v); }
        std::string operator()(const std::string &v) const { return csv_escape(v); }
        std::string operator()(bool v) const { return v ? "true" : "false"; }
    };
    return std::visit(V{}, c);
}

inline nlohmann::ordered_json cell_json(const Cell &c) {
    struct V {
        nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
        nlohmann::ordered_json operator()(double v) const {
            // JSON has no NaN; non-finite values become null.
            return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
        }
        nlohmann::ordered_json operator()(std::int64_t v) const { return v; }
        nlohmann::ordered_json operator()(const std::string &v) const { return v; }
        nlohmann::ordered_json operator()(bool v) const { return v; }
    };
    return std::visit(V{}, c);
}

inline void write_csv(std::ostream &os, const Table &t) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto &row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i]);
        os << '\n';
    }
}

inline nlohmann::ordered_json table_json(const Table &t) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto &row : t.rows) {
        nlohmann::ordered_json o = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) o[t.columns[i]] = cell_json(row[i]);
        arr.push_back(std::move(o));
    }
    return arr;
}

inline void write_table(std::ostream &os, const Table &t, Format f) {
    if (f == Format::Csv)
        write_csv(os, t);
    else
        os << table_json(t).dump(2) << '\n';
}

/// Where a command sends its results: files under `dir`, or `out` when
/// no directory is given.
struct Sink {
    std::ostream &out;
    std::string dir;
    Format format = Format::Csv;

    bool to_files() const { return !dir.empty(); }

    std::ofstream open(const std::string &name) const {
        std::filesystem::create_directories(dir);
        std::ofstream f(std::filesystem::path(dir) / name);
        if (!f) throw ConfigError("cannot write '" + (std::filesystem::path(dir) / name).string() + "'");
        return f;
    }

    const char *extension() const { return format == Format::Csv ? ".csv" : ".json"; }

    void emit(const std::string &stem, const Table &t) const {
        if (to_files()) {
            auto f = open(stem + extension());
            write_table(f, t, format);
        } else {
            write_table(out, t, format);
        }
    }
};

} // namespace qtel::cli
