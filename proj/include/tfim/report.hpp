#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

namespace tfim {

using Cell = std::variant<std::int64_t, double, std::string, bool>;

/// Columnar command output plus trailing scalar metadata.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, Cell>> metadata;
};

/// Shortest decimal form that parses back to the same double.
std::string format_number(double value);

std::string format_cell(const Cell& cell);

/// Header row, comma-separated rows, LF endings. Metadata follows as
/// "# key,value" lines.
void write_csv(std::ostream& out, const Table& table);

/// {"config": ..., "rows": [{column: value, ...}, ...], "metadata": {...}}.
nlohmann::ordered_json to_json(const Table& table, const nlohmann::ordered_json& config);

void write_json(std::ostream& out, const Table& table, const nlohmann::ordered_json& config);

}  // namespace tfim
