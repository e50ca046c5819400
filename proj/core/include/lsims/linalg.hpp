#ifndef LSIMS_LINALG_HPP
#define LSIMS_LINALG_HPP

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "lsims/sparse.hpp"

namespace lsims {

/// Reusable SPD factorization handle (sparse Cholesky). Immutable after
/// construction and safe for concurrent solves.
class SpdFactorization {
 public:
  int size() const { return n_; }
  Eigen::VectorXd solve(const Eigen::VectorXd& b) const;
  Eigen::MatrixXd solve(const Eigen::MatrixXd& b) const;

 private:
  friend SpdFactorization factorize_spd(const SparseSymMatrix& a);
  struct Impl;
  std::shared_ptr<const Impl> impl_;
  int n_ = 0;
};

/// Throws NotPositiveDefinite if a nonpositive pivot is met.
SpdFactorization factorize_spd(const SparseSymMatrix& a);

/// Dense symmetric pencil (a, m) with m positive definite.
struct DenseSymPencil {
  Eigen::MatrixXd a_mat;
  Eigen::MatrixXd m_mat;
};

struct EigPairs {
  Eigen::VectorXd thetas;   // ascending
  Eigen::MatrixXd vectors;  // columns, m-orthonormal
};

/// Generalized symmetric-definite eigensolve a v = theta m v.
/// Throws MassNotSpd if m is not positive definite.
EigPairs dense_sym_gen_eig(const DenseSymPencil& p);

struct SaddleSolution {
  Eigen::MatrixXd x;   // n x L
  Eigen::MatrixXd mu;  // L x L
};

/// Solves, for each canonical target e_j, the constrained system
///   A x_j + B mu_j = 0,   B^T x_j = e_j,
/// via the Schur complement S = B^T A^{-1} B:  X = A^{-1} B S^{-1},
/// Mu = -S^{-1}. Throws RankDeficientConstraints if S is singular to
/// 1e-12 * ||S||.
SaddleSolution solve_saddle(const SpdFactorization& afact,
                            const Eigen::MatrixXd& b);

/// Modified Gram-Schmidt in the M inner product with one
/// reorthogonalization pass. Vectors whose residual M-norm falls below
/// drop_tol times their original M-norm are dropped. Throws EmptyBasis if
/// everything is dropped.
std::vector<Eigen::VectorXd> m_orthonormalize(
    const std::vector<Eigen::VectorXd>& v, const SparseSymMatrix& m,
    double drop_tol);

/// Orthogonalizes v against the M-orthonormal set q and appends it unless
/// its residual M-norm drops below drop_tol times its original M-norm.
/// Returns false (and leaves q unchanged) when the vector is dropped.
bool m_orthonormalize_append(std::vector<Eigen::VectorXd>& q,
                             const Eigen::VectorXd& v,
                             const SparseSymMatrix& m, double drop_tol);

/// Plain conjugate gradients; relative residual tolerance, iteration cap
/// 20n. Throws MaxIterations when the cap is hit.
Eigen::VectorXd cg_solve(const SparseSymMatrix& a, const Eigen::VectorXd& b,
                         double tol);

}  // namespace lsims

#endif
