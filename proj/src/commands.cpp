#include "tfim/commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "tfim/correlators.hpp"
#include "tfim/errors.hpp"
#include "tfim/parallel.hpp"
#include "tfim/rdm.hpp"
#include "tfim/rfs.hpp"
#include "tfim/scaling.hpp"

namespace tfim {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct GridPoint {
  std::int64_t n_sites;
  double lambda;
};

std::vector<GridPoint> cartesian(const RunConfig& cfg) {
  std::vector<GridPoint> points;
  const auto lambdas = lambda_grid(cfg);
  for (auto n : cfg.sizes) {
    for (double l : lambdas) points.push_back({n, l});
  }
  return points;
}

// One susceptibility row: closed form, optional oracle, and a flag string.
struct RfsRow {
  double chi = kNaN;
  double chi_block1 = kNaN;
  double chi_block2 = kNaN;
  double chi_oracle = kNaN;
  double discrepancy = kNaN;
  std::string flag;
};

RfsRow evaluate_rfs(const GridPoint& p, const RunConfig& cfg) {
  RfsRow row;
  try {
    const RfsValue v = rfs_finite({p.n_sites, p.lambda});
    row.chi = v.chi;
    row.chi_block1 = v.chi_block1;
    row.chi_block2 = v.chi_block2;
  } catch (const SingularBlockError&) {
    row.flag = "singular_block";
  }
  if (cfg.verify) {
    try {
      const RfsValue o = rfs_oracle({p.n_sites, p.lambda}, cfg.delta);
      row.chi_oracle = o.chi;
      if (o.discrepancy) row.discrepancy = *o.discrepancy;
    } catch (const DomainError&) {
      if (!row.flag.empty()) row.flag += ';';
      row.flag += "oracle_unavailable";
    }
  }
  return row;
}

std::string join_failures(const std::vector<std::string>& failures) {
  std::string out;
  for (const auto& f : failures) {
    if (!out.empty()) out += "; ";
    out += f;
  }
  return out;
}

}  // namespace

std::string_view to_string(Command command) noexcept {
  switch (command) {
    case Command::correlators: return "correlators";
    case Command::rfs: return "rfs";
    case Command::sweep: return "sweep";
    case Command::peak: return "peak";
    case Command::scaling: return "scaling";
    case Command::collapse: return "collapse";
    case Command::thermo: return "thermo";
  }
  return "?";
}

std::optional<Command> parse_command(std::string_view name) noexcept {
  for (auto c : {Command::correlators, Command::rfs, Command::sweep, Command::peak,
                 Command::scaling, Command::collapse, Command::thermo}) {
    if (to_string(c) == name) return c;
  }
  return std::nullopt;
}

RunConfig default_config(Command command) {
  RunConfig cfg;
  cfg.command = command;
  switch (command) {
    case Command::correlators:
      cfg.sizes = {1024};
      cfg.lambda_range = {0.5, 1.5, 11};
      break;
    case Command::rfs:
      cfg.sizes = {1000};
      cfg.lambda_range = {0.9, 1.1, 3};
      break;
    case Command::sweep:
      cfg.sizes = {12, 52, 252};
      cfg.lambda_range = {0.8, 1.1, 61};
      break;
    case Command::peak:
      cfg.sizes = {12, 52, 252, 1024, 4096};
      break;
    case Command::scaling:
      cfg.sizes = {512, 1024, 2048, 4096, 8192, 16384};
      break;
    case Command::collapse:
      cfg.sizes = {512, 1024, 2048, 4096};
      break;
    case Command::thermo:
      // Decades approaching the transition from below; the range below is
      // used once the explicit list is cleared.
      cfg.lambdas = {0.99, 0.999, 0.9999, 0.99999};
      cfg.lambda_range = {0.91, 0.999, 12};
      break;
  }
  return cfg;
}

void validate(const RunConfig& cfg) {
  for (auto n : cfg.sizes) {
    if (n < 4 || n % 2 != 0) {
      throw PreconditionError("sizes must be even and >= 4, got " + std::to_string(n));
    }
  }
  const auto& r = cfg.lambda_range;
  if (cfg.lambdas.empty()) {
    if (!(r.min < r.max)) throw PreconditionError("lambda-min must be < lambda-max");
    if (r.steps < 1) throw PreconditionError("steps must be >= 1");
    if (r.min < 0.0) throw PreconditionError("lambda must be >= 0");
  }
  for (double l : cfg.lambdas) {
    if (!(l >= 0.0) || !std::isfinite(l)) throw PreconditionError("lambda must be finite and >= 0");
  }
  if (!(cfg.delta > 0.0)) throw PreconditionError("delta must be positive");
  if (!(cfg.nu > 0.0)) throw PreconditionError("nu must be positive");
  if (!(cfg.window.first < cfg.window.second)) throw PreconditionError("window needs lo < hi");
  const bool needs_sizes = cfg.command != Command::thermo;
  if (needs_sizes && cfg.sizes.empty()) throw PreconditionError("no sizes given");
  const std::size_t distinct = std::set<std::int64_t>(cfg.sizes.begin(), cfg.sizes.end()).size();
  if (cfg.command == Command::scaling && distinct < 5) {
    throw PreconditionError("scaling needs at least 5 distinct sizes");
  }
  if (cfg.command == Command::collapse && distinct < 3) {
    throw PreconditionError("collapse needs at least 3 distinct sizes");
  }
}

std::vector<double> lambda_grid(const RunConfig& cfg) {
  if (!cfg.lambdas.empty()) return cfg.lambdas;
  const auto& r = cfg.lambda_range;
  std::vector<double> grid;
  if (r.steps == 1) return {r.min};
  for (int i = 0; i < r.steps; ++i) {
    grid.push_back(r.min + (r.max - r.min) * i / (r.steps - 1));
  }
  return grid;
}

nlohmann::ordered_json to_json(const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["command"] = std::string(to_string(cfg.command));
  j["sizes"] = cfg.sizes;
  j["lambda_range"] = {{"min", cfg.lambda_range.min},
                       {"max", cfg.lambda_range.max},
                       {"steps", cfg.lambda_range.steps}};
  j["lambdas"] = cfg.lambdas;
  j["delta"] = cfg.delta;
  j["nu"] = cfg.nu;
  j["window"] = {cfg.window.first, cfg.window.second};
  j["output_format"] = cfg.output_format == OutputFormat::csv ? "csv" : "json";
  j["output_path"] = cfg.output_path;
  j["verify"] = cfg.verify;
  return j;
}

Table cmd_correlators(const RunConfig& cfg) {
  validate(cfg);
  const auto points = cartesian(cfg);
  std::vector<CorrelatorSet> sets(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    sets[i] = correlators_finite({points[i].n_sites, points[i].lambda});
  });
  Table t;
  t.columns = {"n_sites", "lambda", "sz", "xx", "yy", "zz", "d_sz", "d_xx", "d_yy", "d_zz"};
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& c = sets[i];
    t.rows.push_back({points[i].n_sites, points[i].lambda, c.sz, c.xx, c.yy, c.zz, c.d_sz,
                      c.d_xx, c.d_yy, c.d_zz});
  }
  return t;
}

Table cmd_rfs(const RunConfig& cfg) {
  validate(cfg);
  const auto points = cartesian(cfg);
  std::vector<RfsRow> rows(points.size());
  parallel_for(points.size(), [&](std::size_t i) { rows[i] = evaluate_rfs(points[i], cfg); });
  Table t;
  t.columns = {"n_sites", "lambda", "chi", "chi_block1", "chi_block2"};
  if (cfg.verify) {
    t.columns.push_back("chi_oracle");
    t.columns.push_back("discrepancy");
  }
  t.columns.push_back("flag");
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& r = rows[i];
    std::vector<Cell> row{points[i].n_sites, points[i].lambda, r.chi, r.chi_block1, r.chi_block2};
    if (cfg.verify) {
      row.emplace_back(r.chi_oracle);
      row.emplace_back(r.discrepancy);
    }
    row.emplace_back(r.flag);
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table cmd_sweep(const RunConfig& cfg) {
  validate(cfg);
  const auto points = cartesian(cfg);
  std::vector<RfsRow> rows(points.size());
  parallel_for(points.size(), [&](std::size_t i) { rows[i] = evaluate_rfs(points[i], cfg); });
  Table t;
  t.columns = {"n_sites", "lambda", "chi"};
  if (cfg.verify) {
    t.columns.push_back("chi_oracle");
    t.columns.push_back("discrepancy");
  }
  t.columns.push_back("flag");
  double worst = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& r = rows[i];
    std::vector<Cell> row{points[i].n_sites, points[i].lambda, r.chi};
    if (cfg.verify) {
      row.emplace_back(r.chi_oracle);
      row.emplace_back(r.discrepancy);
      if (std::isfinite(r.discrepancy)) worst = std::max(worst, r.discrepancy);
    }
    row.emplace_back(r.flag);
    t.rows.push_back(std::move(row));
  }
  if (cfg.verify) t.metadata.emplace_back("max_discrepancy", worst);
  return t;
}

namespace {

struct PeakOutcome {
  std::optional<PeakRecord> peak;
  double chi_critical = kNaN;
  std::string error;
};

std::vector<PeakOutcome> search_peaks(const std::vector<std::int64_t>& sizes) {
  std::vector<PeakOutcome> out(sizes.size());
  parallel_for(sizes.size(), [&](std::size_t i) {
    try {
      out[i].peak = find_peak(sizes[i]);
      out[i].chi_critical = rfs_finite({sizes[i], 1.0}).chi;
    } catch (const NumericError& e) {
      out[i].error = "N=" + std::to_string(sizes[i]) + ": " + e.what();
    }
  });
  return out;
}

}  // namespace

Table cmd_peak(const RunConfig& cfg) {
  validate(cfg);
  const auto outcomes = search_peaks(cfg.sizes);
  Table t;
  t.columns = {"n_sites", "lambda_m", "chi_m", "chi_at_critical"};
  std::vector<std::string> failures;
  for (const auto& o : outcomes) {
    if (!o.peak) {
      failures.push_back(o.error);
      continue;
    }
    t.rows.push_back({o.peak->n_sites, o.peak->lambda_m, o.peak->chi_m, o.chi_critical});
  }
  if (t.rows.empty()) throw NumericError("peak search failed for every size: " + join_failures(failures));
  if (!failures.empty()) t.metadata.emplace_back("failures", join_failures(failures));
  return t;
}

Table cmd_scaling(const RunConfig& cfg) {
  validate(cfg);
  const auto outcomes = search_peaks(cfg.sizes);
  Table t;
  t.columns = {"n_sites", "ln_n", "lambda_m", "chi_m", "sqrt_chi_m", "chi_at_critical"};
  std::vector<PeakRecord> peaks;
  std::vector<std::string> failures;
  for (const auto& o : outcomes) {
    if (!o.peak) {
      failures.push_back(o.error);
      continue;
    }
    const auto& p = *o.peak;
    peaks.push_back(p);
    t.rows.push_back({p.n_sites, std::log(static_cast<double>(p.n_sites)), p.lambda_m, p.chi_m,
                      std::sqrt(p.chi_m), o.chi_critical});
  }
  if (peaks.size() < 5) {
    throw NumericError("fewer than 5 peak searches succeeded: " + join_failures(failures));
  }
  const ScalingFit fit = fit_finite_size(peaks);
  t.metadata = {{"model", std::string(to_string(fit.model))},
                {"slope", fit.slope},
                {"intercept", fit.intercept},
                {"r_squared", fit.r_squared},
                {"flagged", fit.flagged},
                {"a1", fit.params.at("a1")},
                {"sqrt_a1", fit.params.at("sqrt_a1")},
                {"deviation_percent", 100.0 * fit.params.at("deviation")}};
  if (!failures.empty()) t.metadata.emplace_back("failures", join_failures(failures));
  return t;
}

Table cmd_collapse(const RunConfig& cfg) {
  validate(cfg);
  const CollapseCurve curve = data_collapse(cfg.sizes, cfg.nu, cfg.window);
  const double quality = collapse_quality(curve);
  Table t;
  t.columns = {"n_sites", "x", "y"};
  for (const auto& p : curve.points) t.rows.push_back({p.n_sites, p.x, p.y});
  t.metadata = {{"nu", cfg.nu},
                {"window_lo", cfg.window.first},
                {"window_hi", cfg.window.second},
                {"collapse_quality", quality}};
  return t;
}

Table cmd_thermo(const RunConfig& cfg) {
  validate(cfg);
  const auto lambdas = lambda_grid(cfg);
  struct Row {
    CorrelatorSet c;
    RfsValue v;
    std::string flag;
  };
  std::vector<Row> rows(lambdas.size());
  parallel_for(lambdas.size(), [&](std::size_t i) {
    rows[i].c = correlators_thermo(lambdas[i]);
    if (lambdas[i] == 1.0) {
      rows[i].v.chi = rows[i].v.chi_block1 = rows[i].v.chi_block2 =
          std::numeric_limits<double>::infinity();
      rows[i].flag = "divergent";
      return;
    }
    try {
      rows[i].v = rfs_thermo(lambdas[i]);
    } catch (const SingularBlockError&) {
      rows[i].v.chi = rows[i].v.chi_block1 = rows[i].v.chi_block2 = kNaN;
      rows[i].flag = "singular_block";
    }
  });

  Table t;
  t.columns = {"lambda", "ln_inv_distance", "chi", "chi_block1", "chi_block2",
               "sz",     "xx",              "yy",  "zz",         "flag"};
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const auto& r = rows[i];
    t.rows.push_back({lambdas[i], std::log(1.0 / std::abs(1.0 - lambdas[i])), r.v.chi,
                      r.v.chi_block1, r.v.chi_block2, r.c.sz, r.c.xx, r.c.yy, r.c.zz, r.flag});
  }
  try {
    // Divergent or singular rows carry no finite chi and are left out.
    std::vector<double> fit_lambdas, chis;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (!rows[i].flag.empty()) continue;
      fit_lambdas.push_back(lambdas[i]);
      chis.push_back(rows[i].v.chi);
    }
    require_thermo_window(fit_lambdas);
    const ScalingFit fit = fit_thermo_samples(fit_lambdas, chis);
    t.metadata = {{"model", std::string(to_string(fit.model))},
                  {"A2", fit.params.at("A2")},
                  {"d1", fit.params.at("d1")},
                  {"d2", fit.params.at("d2")},
                  {"r_squared", fit.r_squared},
                  {"flagged", fit.flagged},
                  {"a1", fit.params.at("a1")},
                  {"deviation_percent", 100.0 * fit.params.at("deviation")}};
  } catch (const FitError& e) {
    t.metadata.emplace_back("fit_error", std::string(e.what()));
  }
  return t;
}

Table run(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::correlators: return cmd_correlators(cfg);
    case Command::rfs: return cmd_rfs(cfg);
    case Command::sweep: return cmd_sweep(cfg);
    case Command::peak: return cmd_peak(cfg);
    case Command::scaling: return cmd_scaling(cfg);
    case Command::collapse: return cmd_collapse(cfg);
    case Command::thermo: return cmd_thermo(cfg);
  }
  throw PreconditionError("unknown command");
}

}  // namespace tfim
