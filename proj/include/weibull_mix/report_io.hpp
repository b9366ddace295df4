#pragma once

// Tabular reports written as CSV or JSON, and read back.
//
// CSV: "# key: value" metadata lines, a header row, then one row per record.
// String cells are always quoted and numeric cells never are, so the reader
// recovers cell types exactly. Non-finite numbers are written as nan, inf, -inf.
//
// JSON: {"metadata": {...}, "columns": [...], "records": [{column: value, ...}, ...]}
// with record keys in column order. Non-finite numbers are written as null (read back as NaN).

#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "errors.hpp"

namespace wmix {

using Cell = std::variant<double, std::string>;

enum class OutputFormat { csv, json };

inline OutputFormat output_format_from_string(const std::string& s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  throw DomainError("unknown output format '" + s + "' (csv, json)");
}

struct Report {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw DomainError("Report: row width does not match header");
    rows.push_back(std::move(row));
  }

  /// Metadata value for `key`, or nullptr.
  const std::string* meta(const std::string& key) const {
    for (const auto& [k, v] : metadata) {
      if (k == key) return &v;
    }
    return nullptr;
  }

  std::size_t column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (columns[i] == name) return i;
    }
    throw DomainError("Report: no column '" + name + "'");
  }

  bool operator==(const Report&) const = default;
};

namespace detail {

inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline bool parse_number(const std::string& s, double& out) {
  if (s == "nan") return out = std::numeric_limits<double>::quiet_NaN(), true;
  if (s == "inf") return out = std::numeric_limits<double>::infinity(), true;
  if (s == "-inf") return out = -std::numeric_limits<double>::infinity(), true;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

inline std::string quote_csv(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

/// Splits one CSV record; `quoted[i]` tells whether field i was quoted.
inline std::vector<std::string> split_csv(const std::string& line, std::vector<bool>& quoted) {
  std::vector<std::string> fields;
  quoted.clear();
  std::size_t i = 0;
  while (true) {
    std::string field;
    bool q = false;
    if (i < line.size() && line[i] == '"') {
      q = true;
      ++i;
      while (true) {
        if (i >= line.size()) throw DomainError("CSV: unterminated quoted field");
        if (line[i] == '"') {
          if (i + 1 < line.size() && line[i + 1] == '"') {
            field += '"';
            i += 2;
            continue;
          }
          ++i;
          break;
        }
        field += line[i++];
      }
    } else {
      while (i < line.size() && line[i] != ',') field += line[i++];
    }
    fields.push_back(std::move(field));
    quoted.push_back(q);
    if (i >= line.size()) break;
    if (line[i] != ',') throw DomainError("CSV: unexpected character after quoted field");
    ++i;
  }
  return fields;
}

inline std::string single_line(std::string s) {
  for (char& c : s) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

}  // namespace detail

inline void write_csv(const Report& report, std::ostream& out) {
  for (const auto& [k, v] : report.metadata) {
    out << "# " << detail::single_line(k) << ": " << detail::single_line(v) << '\n';
  }
  for (std::size_t i = 0; i < report.columns.size(); ++i) {
    out << (i ? "," : "") << report.columns[i];
  }
  out << '\n';
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      if (const auto* d = std::get_if<double>(&row[i])) {
        out << detail::format_number(*d);
      } else {
        out << detail::quote_csv(detail::single_line(std::get<std::string>(row[i])));
      }
    }
    out << '\n';
  }
}

inline Report read_csv(std::istream& in) {
  Report report;
  std::string line;
  bool have_header = false;
  std::vector<bool> quoted;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!have_header && line.rfind("# ", 0) == 0) {
      const auto sep = line.find(": ", 2);
      if (sep == std::string::npos) throw DomainError("CSV: malformed metadata line");
      report.metadata.emplace_back(line.substr(2, sep - 2), line.substr(sep + 2));
      continue;
    }
    if (!have_header) {
      report.columns = detail::split_csv(line, quoted);
      have_header = true;
      continue;
    }
    if (line.empty()) continue;
    const auto fields = detail::split_csv(line, quoted);
    std::vector<Cell> row;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (quoted[i]) {
        row.emplace_back(fields[i]);
        continue;
      }
      double v = 0.0;
      if (!detail::parse_number(fields[i], v)) throw DomainError("CSV: bad numeric cell '" + fields[i] + "'");
      row.emplace_back(v);
    }
    report.add_row(std::move(row));
  }
  if (!have_header) throw DomainError("CSV: missing header");
  return report;
}

inline void write_json(const Report& report, std::ostream& out) {
  nlohmann::ordered_json doc;
  doc["metadata"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : report.metadata) doc["metadata"][k] = v;
  doc["columns"] = report.columns;
  doc["records"] = nlohmann::ordered_json::array();
  for (const auto& row : report.rows) {
    nlohmann::ordered_json rec = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (const auto* d = std::get_if<double>(&row[i])) {
        rec[report.columns[i]] = std::isfinite(*d) ? nlohmann::ordered_json(*d) : nlohmann::ordered_json();
      } else {
        rec[report.columns[i]] = std::get<std::string>(row[i]);
      }
    }
    doc["records"].push_back(std::move(rec));
  }
  out << doc.dump(2) << '\n';
}

/// Columns come from "columns" if present, else from the first record.
inline Report read_json(std::istream& in) {
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("metadata") || !doc.contains("records")) {
    throw DomainError("JSON: expected an object with metadata and records");
  }
  Report report;
  for (const auto& [k, v] : doc["metadata"].items()) {
    report.metadata.emplace_back(k, v.is_string() ? v.get<std::string>() : v.dump());
  }
  if (doc.contains("columns")) {
    for (const auto& c : doc["columns"]) report.columns.push_back(c.get<std::string>());
  }
  for (const auto& rec : doc["records"]) {
    if (report.columns.empty()) {
      for (const auto& [k, v] : rec.items()) report.columns.push_back(k);
    }
    std::vector<Cell> row;
    for (const auto& col : report.columns) {
      if (!rec.contains(col)) throw DomainError("JSON: record missing '" + col + "'");
      const auto& v = rec[col];
      if (v.is_null()) {
        row.emplace_back(std::numeric_limits<double>::quiet_NaN());
      } else if (v.is_number()) {
        row.emplace_back(v.get<double>());
      } else if (v.is_string()) {
        row.emplace_back(v.get<std::string>());
      } else {
        row.emplace_back(v.dump());
      }
    }
    report.add_row(std::move(row));
  }
  return report;
}

inline void write_report(const Report& report, OutputFormat format, std::ostream& out) {
  format == OutputFormat::csv ? write_csv(report, out) : write_json(report, out);
}

inline Report read_report(std::istream& in, OutputFormat format) {
  return format == OutputFormat::csv ? read_csv(in) : read_json(in);
}

inline std::string to_string(const Report& report, OutputFormat format) {
  std::ostringstream os;
  write_report(report, format, os);
  return os.str();
}

}  // namespace wmix
