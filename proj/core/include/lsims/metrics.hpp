#ifndef LSIMS_METRICS_HPP
#define LSIMS_METRICS_HPP

#include <string>
#include <vector>

#include "lsims/timestep.hpp"

namespace lsims {

/// ||u_ref - P c||_A / ||u_ref||_A (or the absolute numerator). The 0/0
/// case reports 0; a zero reference with a nonzero numerator throws
/// ZeroReference.
double energy_error(const Eigen::VectorXd& u_ref, const Eigen::VectorXd& c,
                    const MultiscaleSpace& space, const SparseSymMatrix& a,
                    bool relative = true);

/// Same with the mass matrix.
double l2_error(const Eigen::VectorXd& u_ref, const Eigen::VectorXd& c,
                const MultiscaleSpace& space, const SparseSymMatrix& m,
                bool relative = true);

struct ErrorSeries {
  std::vector<double> times;
  std::vector<double> energy;
  std::vector<double> l2;
};

/// Per-snapshot relative errors of a coarse trajectory against the fine
/// reference; snapshot times must match.
ErrorSeries error_series(const Trajectory& traj_ref,
                         const Trajectory& traj_coarse,
                         const MultiscaleSpace& space, const SparseSymMatrix& a,
                         const SparseSymMatrix& m);

/// Diagnostic spatial-error proxy: overlap_M * sqrt(lambda^{L+1}) with
/// lambda^{L+1} the largest discarded Ritz estimate over all subdomains
/// (falls back to the smallest kept estimate when nothing was discarded).
double delta_lsi_estimate(const MultiscaleSpace& space, int overlap_m);

/// One row per experiment; written atomically by write_report_csv.
struct ErrorReport {
  std::string method;  // lssi | lksi | reference
  std::string scheme;
  std::string field_kind;
  int nc = 0, r = 0, m = 0, k = 0, L = 0, l = -1;
  double omega = 1.0, tau = 0.0, T = 0.0;
  double contrast = 1.0;
  std::uint64_t seed = 0;
  int dof = 0;
  long long nolp = 0;
  double rq = 0.0, gamma = 0.0, tau_max = 0.0;
  double energy_err = 0.0, l2_err = 0.0;
  double wall_offline_s = 0.0, wall_online_s = 0.0;
};

std::string report_csv_header();
std::string report_csv_row(const ErrorReport& row);
/// Whole-file write through a temp file + rename.
void write_report_csv(const std::vector<ErrorReport>& rows,
                      const std::string& path);
void write_series_csv(const ErrorSeries& series, const std::string& path);

}  // namespace lsims

#endif
