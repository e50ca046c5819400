#ifndef LSIMS_EXPERIMENTS_HPP
#define LSIMS_EXPERIMENTS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lsims/metrics.hpp"

namespace lsims {

enum class SweepAxis { none, iter, oversampling, contrast, split_compare };

/// Flat key = value configuration with dotted keys; '#' starts a comment.
/// Unknown keys are rejected with file/line context.
struct ExperimentConfig {
  int nc = 10, r = 10;

  std::string field_kind = "inclusions";
  double contrast = 1e4;
  std::uint64_t seed = 7;
  std::string raster_path;
  double raster_threshold = 0.5;
  double raster_kappa_low = 1.0, raster_kappa_high = 1e4;

  std::string method = "lksi";
  int m = 4, k = 4, L = 0;  // L = 0: method default

  int split_l = -1;          // -1: no split configured
  bool split_auto = false;   // pick l_i at the largest spectral gap
  double omega = 1.0;

  double tau = 1e-4, T = 0.1;
  int stride = 10;

  std::string scheme = "implicit_coarse";

  SweepAxis sweep = SweepAxis::none;
  int k_min = 1, k_max = 4;
  int m_min = 1, m_max = 4;
  std::vector<double> contrasts;

  std::string source_kind = "sinsin";
  double source_amplitude = 2.0 * 3.14159265358979323846 *
                            3.14159265358979323846;
  std::string u0_kind = "zero";
  double u0_amplitude = 1.0;

  std::string out_dir = "out";
  std::string basis_file;  // import for `solve`, export target for `basis`

  int oracle_subdomain = 0;
  int oracle_count = 8;
};

ExperimentConfig parse_config(std::istream& in, const std::string& name);
ExperimentConfig parse_config_file(const std::string& path);

struct RunOptions {
  std::string out_dir;  // overrides config when nonempty
  bool parallel_subdomains = false;
  bool override_stability = false;
};

/// Orchestration entry points behind the CLI subcommands. All of them
/// write CSV artifacts under the output directory and return the rows
/// they appended to report.csv.
std::vector<ErrorReport> run_reference(const ExperimentConfig& cfg,
                                       const RunOptions& opts);
std::vector<ErrorReport> run_basis(const ExperimentConfig& cfg,
                                   const RunOptions& opts);
std::vector<ErrorReport> run_solve(const ExperimentConfig& cfg,
                                   const RunOptions& opts);
std::vector<ErrorReport> run_sweep(const ExperimentConfig& cfg,
                                   const RunOptions& opts);
void run_oracle(const ExperimentConfig& cfg, const RunOptions& opts);

}  // namespace lsims

#endif
