/* Copyright (C) 2026 The schurlab authors
 * This program is Licensed under the Apache License, Version 2.0
 * (the "License"); you may not use this file except in compliance
 * with the License. You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License. See accompanying LICENSE file.
 */
#pragma once

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "errors.hpp"

namespace schurlab {

/// 17 significant digits, locale-independent. Identical configs produce
/// byte-identical report files.
inline std::string fmt17(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

/// Structured experiment report. Rows are arrays matching `columns`;
/// wall-clock time is deliberately not part of the file, so reruns with an
/// identical config reproduce it bit for bit.
struct Report {
    std::string suite;
    nlohmann::json config;
    std::vector<std::string> columns;
    std::vector<nlohmann::json> rows;
    nlohmann::json summary;

    void add_row(nlohmann::json row) {
        if (row.size() != columns.size()) throw dimension_error("report row arity mismatch");
        rows.push_back(std::move(row));
    }
};

namespace detail {

inline std::string csv_cell(const nlohmann::json& v) {
    if (v.is_number_float()) return fmt17(v.get<double>());
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
    if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

} // namespace detail

inline void emit_csv(const Report& report, std::ostream& os) {
    os << "# schurlab-report v1\n";
    os << "# suite=" << report.suite << "\n";
    os << "# config=" << report.config.dump() << "\n";
    for (std::size_t c = 0; c < report.columns.size(); ++c)
        os << report.columns[c] << (c + 1 < report.columns.size() ? "," : "");
    os << "\n";
    for (const auto& row : report.rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
            os << detail::csv_cell(row[c]) << (c + 1 < row.size() ? "," : "");
        os << "\n";
    }
    os << "# summary=" << report.summary.dump() << "\n";
}

inline nlohmann::json report_to_json(const Report& report) {
    nlohmann::json j;
    j["schema"] = "schurlab-report/1";
    j["suite"] = report.suite;
    j["config"] = report.config;
    j["columns"] = report.columns;
    j["rows"] = report.rows;
    j["summary"] = report.summary;
    return j;
}

inline Report report_from_json(const nlohmann::json& j) {
    if (j.value("schema", std::string()) != "schurlab-report/1")
        throw config_error("unknown report schema");
    Report r;
    r.suite = j.at("suite").get<std::string>();
    r.config = j.at("config");
    r.columns = j.at("columns").get<std::vector<std::string>>();
    for (const auto& row : j.at("rows")) r.rows.push_back(row);
    r.summary = j.at("summary");
    return r;
}

inline std::string render_report(const Report& report, const std::string& format) {
    if (format == "csv") {
        std::ostringstream os;
        emit_csv(report, os);
        return os.str();
    }
    if (format == "json") return report_to_json(report).dump(2) + "\n";
    throw config_error("unknown report format: " + format);
}

/// Write to a file, or to the given stream when path is "-".
inline void write_report(const Report& report, const std::string& path, const std::string& format,
                         std::ostream& console) {
    const std::string body = render_report(report, format);
    if (path == "-" || path.empty()) {
        console << body;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open report path: " + path);
    out << body;
    if (!out.good()) throw io_error("failed writing report: " + path);
}

} // namespace schurlab
