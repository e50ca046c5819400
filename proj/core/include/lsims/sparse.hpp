#ifndef LSIMS_SPARSE_HPP
#define LSIMS_SPARSE_HPP

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <span>
#include <string>
#include <vector>

namespace lsims {

/// Symmetric sparse matrix in compressed-row form. Both triangles are
/// stored; column indices are strictly increasing within each row and the
/// entries are numerically symmetric (checked at construction).
struct SparseSymMatrix {
  int n = 0;
  std::vector<int> row_ptr;  // size n+1
  std::vector<int> col_idx;
  std::vector<double> values;

  SparseSymMatrix() : row_ptr(1, 0) {}

  static SparseSymMatrix identity(int n);
  static SparseSymMatrix diagonal(const Eigen::VectorXd& d);

  /// Build from (i, j, v) triplets; duplicates are summed. Throws
  /// DimensionMismatch on out-of-range indices and Error if the result is
  /// not symmetric to 1e-12 relative.
  static SparseSymMatrix from_triplets(
      int n, const std::vector<Eigen::Triplet<double>>& triplets);

  int nnz() const { return static_cast<int>(values.size()); }
  double max_abs() const;

  /// Entry lookup by binary search within the row; zero if not stored.
  double coeff(int i, int j) const;

  Eigen::VectorXd multiply(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd multiply(const Eigen::MatrixXd& x) const;

  /// this + alpha * other, pattern union.
  SparseSymMatrix plus(const SparseSymMatrix& other, double alpha) const;

  /// Principal submatrix A[keep, keep]; keep must be strictly increasing.
  SparseSymMatrix principal_submatrix(std::span<const int> keep) const;

  Eigen::MatrixXd to_dense() const;
  Eigen::SparseMatrix<double> to_eigen() const;

  /// Largest |A_ij - A_ji| over stored entries.
  double symmetry_defect() const;
};

/// Matrix Market exchange format (coordinate symmetric real), lower
/// triangle stored, 1-based indices.
void mm_write(const SparseSymMatrix& a, const std::string& path);
SparseSymMatrix mm_read(const std::string& path);

}  // namespace lsims

#endif
