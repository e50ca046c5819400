#include "lsims/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>
#include <cmath>

#include "lsims/errors.hpp"

namespace lsims {

struct SpdFactorization::Impl {
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt;
};

Eigen::VectorXd SpdFactorization::solve(const Eigen::VectorXd& b) const {
  return impl_->llt.solve(b);
}

Eigen::MatrixXd SpdFactorization::solve(const Eigen::MatrixXd& b) const {
  return impl_->llt.solve(b);
}

SpdFactorization factorize_spd(const SparseSymMatrix& a) {
  auto impl = std::make_shared<SpdFactorization::Impl>();
  impl->llt.compute(a.to_eigen());
  if (impl->llt.info() != Eigen::Success)
    throw NotPositiveDefinite(
        "sparse Cholesky failed at n=" + std::to_string(a.n) +
        " (check BC elimination / assembly symmetry)");
  SpdFactorization f;
  f.impl_ = std::move(impl);
  f.n_ = a.n;
  return f;
}

EigPairs dense_sym_gen_eig(const DenseSymPencil& p) {
  const auto n = p.a_mat.rows();
  if (p.a_mat.cols() != n || p.m_mat.rows() != n || p.m_mat.cols() != n)
    throw DimensionMismatch("dense_sym_gen_eig: pencil sizes differ");
  const double scale_a = std::max(1e-300, p.a_mat.cwiseAbs().maxCoeff());
  const double scale_m = std::max(1e-300, p.m_mat.cwiseAbs().maxCoeff());
  if ((p.a_mat - p.a_mat.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale_a)
    throw Error("dense_sym_gen_eig: a_mat not symmetric");
  if ((p.m_mat - p.m_mat.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale_m)
    throw Error("dense_sym_gen_eig: m_mat not symmetric");
  Eigen::LLT<Eigen::MatrixXd> mllt(p.m_mat);
  if (mllt.info() != Eigen::Success)
    throw MassNotSpd("mass matrix Cholesky failed at n=" + std::to_string(n));
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(
      p.a_mat, p.m_mat, Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
  if (es.info() != Eigen::Success)
    throw Error("dense_sym_gen_eig: eigensolver did not converge");
  return EigPairs{es.eigenvalues(), es.eigenvectors()};
}

SaddleSolution solve_saddle(const SpdFactorization& afact,
                            const Eigen::MatrixXd& b) {
  const auto L = b.cols();
  if (L < 1) throw DimensionMismatch("solve_saddle: empty constraint block");
  if (b.rows() != afact.size())
    throw DimensionMismatch("solve_saddle: B row count mismatch");
  const Eigen::MatrixXd y = afact.solve(b);       // A^{-1} B
  const Eigen::MatrixXd s = b.transpose() * y;    // Schur complement
  Eigen::FullPivLU<Eigen::MatrixXd> lu(s);
  lu.setThreshold(1e-12);
  if (lu.rank() < L)
    throw RankDeficientConstraints(
        "Schur complement singular (collapsed iterate space), L=" +
        std::to_string(L));
  const Eigen::MatrixXd s_inv =
      lu.solve(Eigen::MatrixXd::Identity(L, L));
  SaddleSolution sol;
  sol.x = y * s_inv;
  sol.mu = -s_inv;
  return sol;
}

namespace {

double m_norm(const Eigen::VectorXd& v, const SparseSymMatrix& m) {
  return std::sqrt(std::max(0.0, v.dot(m.multiply(v))));
}

}  // namespace

bool m_orthonormalize_append(std::vector<Eigen::VectorXd>& q,
                             const Eigen::VectorXd& v,
                             const SparseSymMatrix& m, double drop_tol) {
  if (!(drop_tol > 0.0 && drop_tol < 1.0))
    throw Error("m_orthonormalize: drop_tol must be in (0,1)");
  const double norm0 = m_norm(v, m);
  if (norm0 == 0.0) return false;
  Eigen::VectorXd r = v;
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& b : q) {
      const double c = b.dot(m.multiply(r));
      r -= c * b;
    }
  }
  const double norm1 = m_norm(r, m);
  if (norm1 < drop_tol * norm0) return false;
  q.push_back(r / norm1);
  return true;
}

std::vector<Eigen::VectorXd> m_orthonormalize(
    const std::vector<Eigen::VectorXd>& v, const SparseSymMatrix& m,
    double drop_tol) {
  std::vector<Eigen::VectorXd> q;
  q.reserve(v.size());
  for (const auto& vec : v) m_orthonormalize_append(q, vec, m, drop_tol);
  if (q.empty()) throw EmptyBasis("all vectors dropped");
  return q;
}

Eigen::VectorXd cg_solve(const SparseSymMatrix& a, const Eigen::VectorXd& b,
                         double tol) {
  const int n = a.n;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  const double bnorm = b.norm();
  if (bnorm == 0.0) return x;
  Eigen::VectorXd r = b;
  Eigen::VectorXd p = r;
  double rs = r.squaredNorm();
  const long max_it = 20L * n;
  for (long it = 0; it < max_it; ++it) {
    if (std::sqrt(rs) <= tol * bnorm) return x;
    const Eigen::VectorXd ap = a.multiply(p);
    const double alpha = rs / p.dot(ap);
    x += alpha * p;
    r -= alpha * ap;
    const double rs_new = r.squaredNorm();
    p = r + (rs_new / rs) * p;
    rs = rs_new;
  }
  if (std::sqrt(rs) <= tol * bnorm) return x;
  throw MaxIterations("cg_solve: no convergence within 20n iterations");
}

}  // namespace lsims
