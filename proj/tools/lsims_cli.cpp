// Command-line front end: offline basis construction, online solves,
// parameter sweeps, fine reference runs and local eigen oracles, all driven
// by a flat key = value config file.

#include <CLI11.hpp>
#include <iostream>

#include "lsims/errors.hpp"
#include "lsims/experiments.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  lsims::RunOptions opts;
};

void add_common(CLI::App* sub, CommonArgs& args) {
  sub->add_option("--config", args.config_path, "config file (key = value)")
      ->required();
  sub->add_option("--out", args.opts.out_dir,
                  "output directory (overrides output.dir)");
  sub->add_flag("--parallel-subdomains", args.opts.parallel_subdomains,
                "build local bases concurrently");
  sub->add_flag("--override-stability", args.opts.override_stability,
                "run the splitting scheme past its stability limit");
}

void print_rows(const std::vector<lsims::ErrorReport>& rows) {
  std::cout << lsims::report_csv_header() << "\n";
  for (const auto& r : rows) std::cout << lsims::report_csv_row(r) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lsims: localized spectral multiscale solver for parabolic "
               "diffusion in heterogeneous media"};
  app.require_subcommand(1);

  CommonArgs args;
  CLI::App* cmd_basis =
      app.add_subcommand("basis", "offline basis construction and export");
  CLI::App* cmd_solve =
      app.add_subcommand("solve", "online solve with fresh or imported basis");
  CLI::App* cmd_sweep =
      app.add_subcommand("sweep", "run the sweep axis from the config");
  CLI::App* cmd_reference =
      app.add_subcommand("reference", "fine-grid reference solve only");
  CLI::App* cmd_oracle =
      app.add_subcommand("oracle", "dense local eigenpairs for one subdomain");
  for (CLI::App* sub :
       {cmd_basis, cmd_solve, cmd_sweep, cmd_reference, cmd_oracle})
    add_common(sub, args);

  CLI11_PARSE(app, argc, argv);

  try {
    const lsims::ExperimentConfig cfg =
        lsims::parse_config_file(args.config_path);
    if (cmd_basis->parsed()) {
      print_rows(lsims::run_basis(cfg, args.opts));
    } else if (cmd_solve->parsed()) {
      print_rows(lsims::run_solve(cfg, args.opts));
    } else if (cmd_sweep->parsed()) {
      print_rows(lsims::run_sweep(cfg, args.opts));
    } else if (cmd_reference->parsed()) {
      print_rows(lsims::run_reference(cfg, args.opts));
    } else if (cmd_oracle->parsed()) {
      lsims::run_oracle(cfg, args.opts);
    }
  } catch (const lsims::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    try {
      std::rethrow_if_nested(e);
    } catch (const std::exception& inner) {
      std::cerr << "  caused by: " << inner.what() << "\n";
    } catch (...) {
    }
    return 3;
  }
  return 0;
}
