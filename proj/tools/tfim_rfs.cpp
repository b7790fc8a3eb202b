// tfim-rfs: reduced fidelity susceptibility of the transverse-field Ising chain.
//
//   tfim-rfs <command> [--sizes 512,1024,...] [--lambda-min X --lambda-max Y --steps K]
//            [--delta D] [--nu V] [--verify] [--format csv|json] [--out PATH]
//
// Exit codes: 0 success, 1 internal/numeric error, 2 usage/precondition error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tfim/commands.hpp"
#include "tfim/errors.hpp"
#include "tfim/parallel.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reduced fidelity susceptibility of the 1D transverse-field Ising model"};
  app.set_config("--config", "", "Flat key=value file with option defaults (flags override it)");

  std::string command_name;
  std::vector<std::int64_t> sizes;
  std::vector<double> lambdas;
  std::optional<double> lambda_min, lambda_max;
  std::optional<int> steps;
  std::optional<double> delta, nu;
  std::vector<double> window;
  std::string format = "csv";
  std::string out_path;
  bool verify = false;

  app.add_option("command", command_name,
                 "correlators | rfs | sweep | peak | scaling | collapse | thermo")
      ->required()
      ->check(CLI::IsMember({"correlators", "rfs", "sweep", "peak", "scaling", "collapse", "thermo"}));
  app.add_option("--sizes", sizes, "Even chain lengths, comma separated")->delimiter(',');
  app.add_option("--lambdas", lambdas, "Explicit lambda values (overrides the range)")
      ->delimiter(',');
  app.add_option("--lambda-min", lambda_min, "Lower end of the lambda grid");
  app.add_option("--lambda-max", lambda_max, "Upper end of the lambda grid");
  app.add_option("--steps", steps, "Number of lambda grid points")->check(CLI::PositiveNumber);
  app.add_option("--delta", delta, "Oracle step for --verify (default 1e-4)");
  app.add_option("--nu", nu, "Scaling exponent for collapse (default 1)");
  app.add_option("--window", window, "Collapse window lo,hi in units of 1/N (default -10,10)")
      ->delimiter(',')
      ->expected(2);
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", out_path, "Output file (default stdout)");
  app.add_flag("--verify", verify, "Evaluate the fidelity oracle alongside the closed form");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  tfim::configure_threads_from_env();

  try {
    tfim::RunConfig cfg = tfim::default_config(*tfim::parse_command(command_name));
    if (!sizes.empty()) cfg.sizes = sizes;
    if (!lambdas.empty()) {
      cfg.lambdas = lambdas;
    } else if (lambda_min || lambda_max || steps) {
      cfg.lambdas.clear();
    }
    if (lambda_min) cfg.lambda_range.min = *lambda_min;
    if (lambda_max) cfg.lambda_range.max = *lambda_max;
    if (steps) cfg.lambda_range.steps = *steps;
    if (delta) cfg.delta = *delta;
    if (nu) cfg.nu = *nu;
    if (window.size() == 2) cfg.window = {window[0], window[1]};
    cfg.output_format = format == "json" ? tfim::OutputFormat::json : tfim::OutputFormat::csv;
    cfg.output_path = out_path;
    cfg.verify = verify;

    const tfim::Table table = tfim::run(cfg);

    std::ofstream file;
    if (!out_path.empty()) {
      file.open(out_path, std::ios::binary | std::ios::trunc);
      if (!file) {
        std::cerr << "tfim-rfs: cannot open output file '" << out_path << "'\n";
        return kExitInternal;
      }
    }
    std::ostream& out = out_path.empty() ? std::cout : file;
    if (cfg.output_format == tfim::OutputFormat::json) {
      tfim::write_json(out, table, tfim::to_json(cfg));
    } else {
      tfim::write_csv(out, table);
    }
    out.flush();
    if (!out) {
      std::cerr << "tfim-rfs: write failed for '" << (out_path.empty() ? "<stdout>" : out_path)
                << "'\n";
      return kExitInternal;
    }
  } catch (const tfim::PreconditionError& e) {
    std::cerr << "tfim-rfs: " << e.what() << '\n';
    return kExitUsage;
  } catch (const tfim::DomainError& e) {
    std::cerr << "tfim-rfs: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "tfim-rfs: error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitOk;
}
