#include "ghzsim_app/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "ghzsim/version.hpp"

namespace ghzsim::app {

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw std::logic_error("table '" + name + "': row width does not match header");
  }
  rows.push_back(std::move(row));
}

std::size_t Table::column(const std::string& key) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == key) return i;
  }
  throw std::out_of_range("table '" + name + "' has no column '" + key + "'");
}

const Table& RunResult::table(const std::string& key) const {
  for (const auto& t : tables) {
    if (t.name == key) return t;
  }
  throw std::out_of_range("result has no table '" + key + "'");
}

Format parse_format(const std::string& text) {
  if (text == "csv") return Format::csv;
  if (text == "json") return Format::json;
  throw std::invalid_argument("unknown output format '" + text + "' (expected csv or json)");
}

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string csv_field(const Cell& cell) {
  struct {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_real(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::string& v) const {
      if (v.find_first_of(",\"\n") == std::string::npos) return v;
      std::string quoted = "\"";
      for (char c : v) {
        if (c == '"') quoted += '"';
        quoted += c;
      }
      return quoted + '"';
    }
  } visitor;
  return std::visit(visitor, cell);
}

nlohmann::ordered_json json_value(const Cell& cell) {
  struct {
    nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
    nlohmann::ordered_json operator()(std::int64_t v) const { return v; }
    nlohmann::ordered_json operator()(double v) const {
      // JSON has no infinities; keep them readable instead of silently nulling.
      if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
      if (std::isnan(v)) return nullptr;
      return v;
    }
    nlohmann::ordered_json operator()(bool v) const { return v; }
    nlohmann::ordered_json operator()(const std::string& v) const { return v; }
  } visitor;
  return std::visit(visitor, cell);
}

void write_header_row(std::ostream& out, const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << '\n';
}

}  // namespace

void write_csv(std::ostream& out, const RunResult& result) {
  out << "# tool: ghzsim " << kVersion << '\n';
  out << "# subcommand: " << result.subcommand << '\n';
  if (result.config.contains("seed")) out << "# seed: " << result.config["seed"].dump() << '\n';
  out << "# config: " << result.config.dump() << '\n';
  bool first = true;
  for (const auto& t : result.tables) {
    if (!first) out << '\n';
    out << "# table: " << t.name << '\n';
    write_header_row(out, t);
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
      out << '\n';
    }
    first = false;
  }
}

void write_json(std::ostream& out, const RunResult& result) {
  nlohmann::ordered_json doc;
  doc["config"] = result.config;
  doc["config"]["subcommand"] = result.subcommand;
  doc["config"]["version"] = std::string(kVersion);
  nlohmann::ordered_json results = nlohmann::ordered_json::object();
  for (const auto& t : result.tables) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
      nlohmann::ordered_json obj = nlohmann::ordered_json::object();
      for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = json_value(row[i]);
      rows.push_back(std::move(obj));
    }
    results[t.name] = std::move(rows);
  }
  doc["results"] = std::move(results);
  doc["diagnostics"] = result.diagnostics;
  out << doc.dump(2) << '\n';
}

void write_result(std::ostream& out, const RunResult& result, Format format) {
  if (format == Format::csv) {
    write_csv(out, result);
  } else {
    write_json(out, result);
  }
}

void write_result_file(const std::string& path, const RunResult& result, Format format) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_result(file, result, format);
  file.flush();
  if (!file) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace ghzsim::app
