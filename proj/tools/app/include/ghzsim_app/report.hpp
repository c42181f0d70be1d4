#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace ghzsim::app {

/// One table cell. monostate renders as an empty CSV field / JSON null.
using Cell = std::variant<std::monostate, std::int64_t, double, bool, std::string>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
  /// Index of a column; throws std::out_of_range if absent.
  std::size_t column(const std::string& name) const;
};

/// Everything a subcommand produces. `config` is the echo written into every
/// output file; it deliberately excludes settings that must not change the
/// bytes of a result (worker count, output paths).
struct RunResult {
  std::string subcommand;
  nlohmann::ordered_json config;
  std::vector<Table> tables;
  nlohmann::ordered_json diagnostics = nlohmann::ordered_json::object();

  const Table& table(const std::string& name) const;
};

enum class Format { csv, json };

Format parse_format(const std::string& text);

/// Reals are written with 17 significant digits.
std::string format_real(double x);

/// '#'-prefixed metadata (tool version, subcommand, seed, config echo), then
/// each table as a header row plus data rows. Tables after the first are
/// introduced by a blank line and a "# table: <name>" line.
void write_csv(std::ostream& out, const RunResult& result);

/// Single object {config, results, diagnostics}; results maps table names to
/// arrays of row objects.
void write_json(std::ostream& out, const RunResult& result);

void write_result(std::ostream& out, const RunResult& result, Format format);

/// Writes to `path`, throwing std::runtime_error on I/O failure.
void write_result_file(const std::string& path, const RunResult& result, Format format);

}  // namespace ghzsim::app
