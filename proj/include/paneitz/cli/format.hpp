#pragma once

#include <charconv>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace paneitz::cli {

using Cell = std::variant<long long, double, std::string>;

/// Fixed 17-significant-digit scientific form, locale-free; identical bytes
/// across runs, platforms, and thread counts.
inline std::string format_double(double v) {
  char buf[48];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 16);
  return std::string(buf, res.ptr);
}

inline std::string format_cell(const Cell& cell) {
  struct Visitor {
    std::string operator()(long long x) const { return std::to_string(x); }
    std::string operator()(double x) const { return format_double(x); }
    std::string operator()(const std::string& s) const { return s; }
  };
  return std::visit(Visitor{}, cell);
}

/// One command's resolved output: parameters echoed in fixed order, named
/// columns, and rows of cells.
struct Table {
  std::string command;
  std::vector<std::pair<std::string, Cell>> params;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::string> trailing_comments;  // '#'-prefixed lines, CSV only
};

inline void write_csv(const Table& table, std::ostream& os) {
  for (std::size_t i = 0; i < table.columns.size(); ++i)
    os << (i ? "," : "") << table.columns[i];
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      os << (i ? "," : "") << format_cell(row[i]);
    os << '\n';
  }
  for (const auto& line : table.trailing_comments) os << "# " << line << '\n';
}

inline std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

inline void write_json_cell(const Cell& cell, std::ostream& os) {
  if (std::holds_alternative<std::string>(cell))
    os << '"' << json_escape(std::get<std::string>(cell)) << '"';
  else
    os << format_cell(cell);
}

/// Single object, keys in fixed order: schema_version, command, params, rows.
inline void write_json(const Table& table, std::ostream& os) {
  os << "{\"schema_version\":1,\"command\":\"" << json_escape(table.command)
     << "\",\"params\":{";
  for (std::size_t i = 0; i < table.params.size(); ++i) {
    if (i) os << ',';
    os << '"' << json_escape(table.params[i].first) << "\":";
    write_json_cell(table.params[i].second, os);
  }
  os << "},\"rows\":[";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    if (r) os << ',';
    os << '{';
    for (std::size_t i = 0; i < table.rows[r].size(); ++i) {
      if (i) os << ',';
      os << '"' << json_escape(table.columns[i]) << "\":";
      write_json_cell(table.rows[r][i], os);
    }
    os << '}';
  }
  os << "]}\n";
}

}  // namespace paneitz::cli
