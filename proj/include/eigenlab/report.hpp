#ifndef EIGENLAB_REPORT_HPP
#define EIGENLAB_REPORT_HPP

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "eigenlab/check.hpp"
#include "eigenlab/error.hpp"

namespace eigenlab {

inline constexpr int kSchemaVersion = 1;

/// 17 significant digits; non-finite values spelled inf, -inf, nan.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  Table(std::string n, std::vector<std::string> cols) : name(std::move(n)), columns(std::move(cols)) {}

  void add(std::vector<Cell> row) {
    if (row.size() != columns.size())
      throw InvariantViolation("row width " + std::to_string(row.size()) + " does not match table '" + name + "'");
    rows.push_back(std::move(row));
  }
};

namespace detail {

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

inline std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

inline nlohmann::json cell_json(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d)) return format_double(*d);
    return *d;
  }
  if (const auto* i = std::get_if<long long>(&c)) return *i;
  return std::get<std::string>(c);
}

}  // namespace detail

/// First line names the schema and its version; then a header and the rows.
inline std::string to_csv(const Table& t) {
  std::string out = "# eigenlab " + t.name + " schema v" + std::to_string(kSchemaVersion) + "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + detail::csv_escape(t.columns[i]);
  out += "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + detail::csv_escape(detail::cell_text(row[i]));
    out += "\n";
  }
  return out;
}

inline nlohmann::json to_json(const Table& t) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : t.rows) {
    nlohmann::json r = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size(); ++i) r[t.columns[i]] = detail::cell_json(row[i]);
    rows.push_back(std::move(r));
  }
  return {{"schema", t.name}, {"version", kSchemaVersion}, {"columns", t.columns}, {"rows", rows}};
}

inline nlohmann::json json_number(double v) {
  if (!std::isfinite(v)) return format_double(v);
  return v;
}

inline Table checks_table(const std::vector<Check>& checks) {
  Table t("checks", {"check", "ok", "value", "bound", "provenance"});
  for (const auto& c : checks) t.add({c.name, c.ok ? "true" : "false", c.value, c.bound, c.provenance});
  return t;
}

/// Output of one command. The first table goes to <command>.csv, the others
/// to <command>_<table>.csv; the JSON file carries all of them.
struct Report {
  std::string command;
  std::vector<Table> tables;
  nlohmann::json summary = nlohmann::json::object();

  explicit Report(std::string cmd) : command(std::move(cmd)) {}

  Table& add(Table t) {
    tables.push_back(std::move(t));
    return tables.back();
  }

  nlohmann::json json() const {
    nlohmann::json tabs = nlohmann::json::object();
    for (const auto& t : tables) tabs[t.name] = to_json(t);
    return {{"command", command}, {"version", kSchemaVersion}, {"summary", summary}, {"tables", tabs}};
  }

  void write(const std::filesystem::path& dir) const {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw ConfigError(0, "--out", "cannot create directory " + dir.string());
    auto put = [&](const std::filesystem::path& p, const std::string& text) {
      std::ofstream f(p, std::ios::binary);
      if (!f) throw ConfigError(0, "--out", "cannot write " + p.string());
      f << text;
    };
    for (std::size_t i = 0; i < tables.size(); ++i) {
      const std::string stem = i == 0 ? command : command + "_" + tables[i].name;
      put(dir / (stem + ".csv"), to_csv(tables[i]));
    }
    put(dir / (command + ".json"), json().dump(2) + "\n");
  }
};

}  // namespace eigenlab

#endif  // EIGENLAB_REPORT_HPP
