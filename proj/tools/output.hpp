#pragma once

// Tabular and key/value emitters shared by the pcclone subcommands.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

namespace pcclone::cli {

enum class OutputFormat { csv, json, tsv };

inline std::optional<OutputFormat> parse_format(std::string_view s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  if (s == "tsv") return OutputFormat::tsv;
  return std::nullopt;
}

// Shortest decimal that parses back to the same double.
inline std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

using Cell = std::variant<std::int64_t, double, std::string, bool>;

inline std::string cell_text(const Cell& c) {
  struct Visitor {
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_number(v); }
    std::string operator()(const std::string& v) const { return v; }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
  };
  return std::visit(Visitor{}, c);
}

inline nlohmann::ordered_json cell_json(const Cell& c) {
  struct Visitor {
    nlohmann::ordered_json operator()(std::int64_t v) const { return v; }
    nlohmann::ordered_json operator()(double v) const {
      if (std::isfinite(v)) return v;
      return format_number(v);
    }
    nlohmann::ordered_json operator()(const std::string& v) const { return v; }
    nlohmann::ordered_json operator()(bool v) const { return v; }
  };
  return std::visit(Visitor{}, c);
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

inline std::string tsv_escape(const std::string& s) {
  if (s.find_first_of("\t\r\n") != std::string::npos) {
    throw std::invalid_argument("TSV cell contains a tab or newline: " + s);
  }
  return s;
}

using Fields = std::vector<std::pair<std::string, Cell>>;

// A command result: either a table (columns + rows) or a flat report.
struct Document {
  std::string command;
  Fields params;
  Fields metadata;  // '#' comments in CSV/TSV, an object in JSON
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::optional<Fields> report;
  nlohmann::ordered_json json_report_override;  // richer JSON shape, if set
};

namespace detail {
inline void write_delimited_line(std::ostream& out, const std::vector<std::string>& cells,
                                 OutputFormat fmt) {
  const char sep = fmt == OutputFormat::tsv ? '\t' : ',';
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << sep;
    out << (fmt == OutputFormat::tsv ? tsv_escape(cells[i]) : csv_escape(cells[i]));
  }
  out << '\n';
}
}  // namespace detail

inline void emit(std::ostream& out, const Document& doc, OutputFormat fmt) {
  if (fmt == OutputFormat::json) {
    nlohmann::ordered_json j;
    j["command"] = doc.command;
    j["params"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : doc.params) j["params"][k] = cell_json(v);
    if (!doc.metadata.empty()) {
      j["metadata"] = nlohmann::ordered_json::object();
      for (const auto& [k, v] : doc.metadata) j["metadata"][k] = cell_json(v);
    }
    if (doc.report) {
      if (!doc.json_report_override.is_null()) {
        j["report"] = doc.json_report_override;
      } else {
        j["report"] = nlohmann::ordered_json::object();
        for (const auto& [k, v] : *doc.report) j["report"][k] = cell_json(v);
      }
    } else {
      j["rows"] = nlohmann::ordered_json::array();
      for (const auto& row : doc.rows) {
        nlohmann::ordered_json r;
        for (std::size_t i = 0; i < doc.columns.size(); ++i) r[doc.columns[i]] = cell_json(row[i]);
        j["rows"].push_back(std::move(r));
      }
    }
    out << j.dump(2) << '\n';
    return;
  }

  for (const auto& [k, v] : doc.metadata) out << "# " << k << '=' << cell_text(v) << '\n';
  if (doc.report) {
    detail::write_delimited_line(out, {"key", "value"}, fmt);
    for (const auto& [k, v] : *doc.report) detail::write_delimited_line(out, {k, cell_text(v)}, fmt);
    return;
  }
  detail::write_delimited_line(out, doc.columns, fmt);
  for (const auto& row : doc.rows) {
    std::vector<std::string> cells;
    cells.reserve(row.size());
    for (const auto& c : row) cells.push_back(cell_text(c));
    detail::write_delimited_line(out, cells, fmt);
  }
}

}  // namespace pcclone::cli
