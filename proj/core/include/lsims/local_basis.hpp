#ifndef LSIMS_LOCAL_BASIS_HPP
#define LSIMS_LOCAL_BASIS_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "lsims/assembly.hpp"
#include "lsims/linalg.hpp"

namespace lsims {

enum class BasisMethod { lssi, lksi };

BasisMethod basis_method_from_string(const std::string& s);
std::string to_string(BasisMethod m);

/// Local multiscale basis on one subdomain. Vectors are in subdomain-local
/// coordinates, M_i-orthonormal Ritz vectors of the pencil (A_i, M_i);
/// thetas are the Ritz values (ascending) and lambdas() = 1/theta are the
/// estimates of the local inverse-operator eigenvalues (descending).
struct LocalBasis {
  int subdomain = -1;
  BasisMethod method = BasisMethod::lssi;
  int iterations = 0;
  std::vector<Eigen::VectorXd> vectors;
  Eigen::VectorXd thetas;
  Eigen::VectorXd discarded_thetas;  // from spectral selection, ascending
  bool krylov_breakdown = false;

  int size() const { return static_cast<int>(vectors.size()); }
  Eigen::VectorXd lambdas() const { return thetas.cwiseInverse(); }
};

/// Initial iterate space on the central element K_i: the four corner hat
/// functions (LSSI) or the K_i node indicator (LKSI), clipped to the
/// subdomain interior.
std::vector<Eigen::VectorXd> initial_functions(const CoarseFineGrid& grid,
                                               const Subdomain& sd,
                                               BasisMethod method);

/// k steps of block inverse iteration through multi-constraint saddle
/// solves, then mass-orthonormalization and Rayleigh-Ritz.
LocalBasis lssi_iterate(const SparseSymMatrix& a_i, const SparseSymMatrix& m_i,
                        const std::vector<Eigen::VectorXd>& phi0, int k);

/// Single-vector inverse-power recurrence; collects the iterates
/// psi^1..psi^k, orthonormalizing incrementally. Stops early with
/// krylov_breakdown set when a new iterate is dropped.
LocalBasis lksi_iterate(const SparseSymMatrix& a_i, const SparseSymMatrix& m_i,
                        const Eigen::VectorXd& psi0, int k,
                        double drop_tol = 1e-10);

/// Rayleigh-Ritz on span(vectors): keeps the Ritz vectors of the L
/// smallest thetas, records the discarded Ritz values.
LocalBasis rayleigh_ritz_select(const std::vector<Eigen::VectorXd>& vectors,
                                const SparseSymMatrix& a_i,
                                const SparseSymMatrix& m_i, int L);

/// Dense reference eigensolve of the local pencil; interior dof count
/// capped at 12000.
EigPairs local_eig_oracle(const SparseSymMatrix& a_i,
                          const SparseSymMatrix& m_i, int count);

/// Energy-norm distance between v (scaled to unit M-norm, sign-aligned)
/// and the reference eigenvector ref (assumed M-normalized).
double aligned_energy_distance(const Eigen::VectorXd& v,
                               const Eigen::VectorXd& ref,
                               const SparseSymMatrix& a_i,
                               const SparseSymMatrix& m_i);

/// Energy norm of the residual of the a-orthogonal projection of ref onto
/// span(basis); basis need not be orthonormal in the a inner product.
double a_projection_distance(const std::vector<Eigen::VectorXd>& basis,
                             const Eigen::VectorXd& ref,
                             const SparseSymMatrix& a_i);

}  // namespace lsims

#endif
