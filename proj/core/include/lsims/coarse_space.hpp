#ifndef LSIMS_COARSE_SPACE_HPP
#define LSIMS_COARSE_SPACE_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "lsims/local_basis.hpp"

namespace lsims {

struct BasisColumn {
  int subdomain = -1;
  int local_rank = 0;   // 0 = smallest theta (largest lambda) in its block
  double theta = 0.0;
  double lambda = 0.0;  // 1/theta
};

/// Global multiscale space: prolongation P from coarse coefficients to
/// fine free dofs plus the Galerkin matrices A_c = P^T A P, M_c = P^T M P.
struct MultiscaleSpace {
  int n_fine = 0;
  BasisMethod method = BasisMethod::lssi;
  int m = 0, k = 0, L = 0;
  long long nolp = 0;  // saddle solves spent in construction
  // P stored by column: (fine free dof, value) pairs, dofs ascending.
  std::vector<std::vector<std::pair<int, double>>> columns;
  std::vector<BasisColumn> info;
  // Ritz values dropped by spectral selection, one entry per subdomain
  // (empty when nothing was discarded).
  std::vector<Eigen::VectorXd> discarded_thetas;
  Eigen::MatrixXd A_c, M_c;

  int dim() const { return static_cast<int>(columns.size()); }
  Eigen::VectorXd prolong(const Eigen::VectorXd& c) const;       // P c
  Eigen::VectorXd restrict_t(const Eigen::VectorXd& fine) const; // P^T v

  /// Degenerate coarse space with P = identity on the fine free dofs.
  static MultiscaleSpace identity(const FineOperators& ops);
};

struct SpaceConfig {
  BasisMethod method = BasisMethod::lksi;
  int m = 4;
  int k = 4;
  int L = 0;  // 0: default (4 for LSSI, k for LKSI)
  bool parallel = false;
  double drop_tol = 1e-10;
};

MultiscaleSpace build_multiscale_space(const CoarseFineGrid& grid,
                                       const PermeabilityField& field,
                                       const FineOperators& ops,
                                       const SpaceConfig& cfg);

/// Implicit/explicit partition of the coarse dofs with the Galerkin blocks
/// needed by the splitting scheme. I2 holds, per subdomain, the l_i columns
/// with the largest lambda estimates.
struct SplitSpace {
  std::vector<int> i1, i2;  // global column indices, ascending
  Eigen::MatrixXd a11, a12, a22;
  Eigen::MatrixXd m11, m12, m22;
};

SplitSpace split_space(const MultiscaleSpace& space, int l_uniform);
/// Per-subdomain l_i at the largest relative gap lambda_j / lambda_{j+1}.
SplitSpace split_space_auto(const MultiscaleSpace& space);
/// Explicit split from per-column membership (diagnostics / negative tests).
SplitSpace split_space_custom(const MultiscaleSpace& space,
                              const std::vector<bool>& in_explicit);

/// Largest generalized eigenvalue of (A22, M22).
double explicit_rayleigh_quotient(const SplitSpace& split);

/// Strengthened Cauchy-Schwarz constant between the two blocks in the mass
/// inner product: largest singular value of C1^{-1} M12 C2^{-T}.
double cauchy_schwarz_gamma(const SplitSpace& split);

/// tau_max = (1 - gamma^2) / ((2 - omega) * RQ).
double stability_limit(double rq, double gamma, double omega);

/// Text export/import of the space (per-subdomain blocks with Ritz values),
/// enabling offline basis reuse. Import recomputes the Galerkin matrices.
void export_space(const MultiscaleSpace& space, const std::string& path);
MultiscaleSpace import_space(const std::string& path, const FineOperators& ops);

}  // namespace lsims

#endif
