#ifndef LSIMS_TIMESTEP_HPP
#define LSIMS_TIMESTEP_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "lsims/coarse_space.hpp"

namespace lsims {

enum class Scheme { fine_reference, implicit_coarse, splitting };

Scheme scheme_from_string(const std::string& s);
std::string to_string(Scheme s);

struct SchemeConfig {
  double tau = 1e-4;
  double T = 0.1;
  double omega = 1.0;  // splitting parameter
  Scheme scheme = Scheme::fine_reference;
  int snapshot_stride = 1;
  bool override_stability = false;
};

/// Snapshot times and coefficient vectors (fine dofs for the reference,
/// coarse dofs otherwise). The final time is always included.
struct Trajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> snapshots;
  std::string scheme;
  bool stability_warning = false;
};

/// Backward Euler on the fine grid: (M + tau A) u^{n+1} = M u^n + tau f^{n+1}.
Trajectory solve_fine_reference(const FineOperators& ops,
                                const SourceSpec& source,
                                const Eigen::VectorXd& u0_fine,
                                const SchemeConfig& cfg);

/// Backward Euler in the multiscale space; the initial coefficient vector
/// is the coarse L2 projection of u0.
Trajectory solve_implicit_coarse(const MultiscaleSpace& space,
                                 const FineOperators& ops,
                                 const SourceSpec& source,
                                 const Eigen::VectorXd& u0_fine,
                                 const SchemeConfig& cfg);

/// Partially explicit scheme: the implicit block is advanced first,
///   (M11 + tau A11) u1^{n+1} =
///       M11 u1^n - M12 (u2^n - u2^{n-1}) - tau A12 u2^n + tau f1^{n+1},
/// then the explicit block,
///   M22 u2^{n+1} = M22 u2^n - M21 (u1^n - u1^{n-1})
///       - tau (A21 ((1-omega) u1^n + omega u1^{n+1}) + A22 u2^n) + tau f2^n.
/// Throws StabilityViolation when tau exceeds the stability limit and the
/// override flag is not set; throws BlowUp when the M-norm of the iterate
/// exceeds 1e6 times the accumulated data scale.
Trajectory solve_splitting(const SplitSpace& split,
                           const MultiscaleSpace& space,
                           const FineOperators& ops, const SourceSpec& source,
                           const Eigen::VectorXd& u0_fine,
                           const SchemeConfig& cfg);

/// CSV export with columns (step, time, M-norm, energy-norm); gram_m and
/// gram_a must match the trajectory's coefficient space. Optionally writes
/// full snapshots, one dof per row, next to the summary file.
void trajectory_to_csv(const Trajectory& traj, const Eigen::MatrixXd& gram_m,
                       const Eigen::MatrixXd& gram_a, const std::string& path,
                       bool full_snapshots = false);
void trajectory_to_csv(const Trajectory& traj, const SparseSymMatrix& gram_m,
                       const SparseSymMatrix& gram_a, const std::string& path,
                       bool full_snapshots = false);

}  // namespace lsims

#endif
