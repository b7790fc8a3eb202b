#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tfim/report.hpp"

namespace tfim {

enum class Command { correlators, rfs, sweep, peak, scaling, collapse, thermo };
enum class OutputFormat { csv, json };

std::string_view to_string(Command command) noexcept;
std::optional<Command> parse_command(std::string_view name) noexcept;

struct LambdaRange {
  double min = 0.8;
  double max = 1.1;
  int steps = 31;
};

struct RunConfig {
  Command command = Command::sweep;
  std::vector<std::int64_t> sizes;
  LambdaRange lambda_range;
  std::vector<double> lambdas;  // explicit grid; overrides lambda_range when non-empty
  double delta = 1e-4;
  double nu = 1.0;
  std::pair<double, double> window{-10.0, 10.0};  // collapse window in units of 1/N
  OutputFormat output_format = OutputFormat::csv;
  std::string output_path;  // empty: stdout
  bool verify = false;
};

/// Per-command defaults for sizes and the lambda grid.
RunConfig default_config(Command command);

/// Throws PreconditionError on a malformed config (odd sizes, min >= max, ...).
void validate(const RunConfig& cfg);

std::vector<double> lambda_grid(const RunConfig& cfg);

nlohmann::ordered_json to_json(const RunConfig& cfg);

/// Runs cfg.command and returns its table. Rows follow a fixed order
/// (size-major, lambda ascending) regardless of threading.
Table run(const RunConfig& cfg);

Table cmd_correlators(const RunConfig& cfg);
Table cmd_rfs(const RunConfig& cfg);
Table cmd_sweep(const RunConfig& cfg);
Table cmd_peak(const RunConfig& cfg);
Table cmd_scaling(const RunConfig& cfg);
Table cmd_collapse(const RunConfig& cfg);
Table cmd_thermo(const RunConfig& cfg);

}  // namespace tfim
