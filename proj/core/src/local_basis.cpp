#include "lsims/local_basis.hpp"

#include <array>
#include <cmath>

#include "lsims/errors.hpp"

namespace lsims {

BasisMethod basis_method_from_string(const std::string& s) {
  if (s == "lssi") return BasisMethod::lssi;
  if (s == "lksi") return BasisMethod::lksi;
  throw UnknownKind("basis method '" + s + "'");
}

std::string to_string(BasisMethod m) {
  return m == BasisMethod::lssi ? "lssi" : "lksi";
}

namespace {

// Rayleigh-Ritz on an M-orthonormal set: rotate to Ritz vectors, attach
// ascending Ritz values.
LocalBasis ritz_rotate(const std::vector<Eigen::VectorXd>& q,
                       const SparseSymMatrix& a_i,
                       const SparseSymMatrix& m_i) {
  const int d = static_cast<int>(q.size());
  const int n = static_cast<int>(q.front().size());
  Eigen::MatrixXd v(n, d);
  for (int j = 0; j < d; ++j) v.col(j) = q[j];
  const Eigen::MatrixXd av = a_i.multiply(v);
  const Eigen::MatrixXd mv = m_i.multiply(v);
  DenseSymPencil pencil{v.transpose() * av, v.transpose() * mv};
  // Symmetrize away roundoff before the eigensolve.
  pencil.a_mat = 0.5 * (pencil.a_mat + pencil.a_mat.transpose()).eval();
  pencil.m_mat = 0.5 * (pencil.m_mat + pencil.m_mat.transpose()).eval();
  const EigPairs eig = dense_sym_gen_eig(pencil);
  const Eigen::MatrixXd ritz = v * eig.vectors;
  LocalBasis basis;
  basis.thetas = eig.thetas;
  basis.vectors.reserve(d);
  for (int j = 0; j < d; ++j) basis.vectors.push_back(ritz.col(j));
  return basis;
}

}  // namespace

std::vector<Eigen::VectorXd> initial_functions(const CoarseFineGrid& grid,
                                               const Subdomain& sd,
                                               BasisMethod method) {
  const int r = grid.r;
  const int ccx = sd.coarse_cell % grid.nc;
  const int ccy = sd.coarse_cell / grid.nc;
  const int kx0 = ccx * r, ky0 = ccy * r;  // fine-node origin of K_i

  std::vector<Eigen::VectorXd> out;
  const int n = sd.size();
  if (method == BasisMethod::lksi) {
    Eigen::VectorXd psi = Eigen::VectorXd::Zero(n);
    for (int loc : sd.central) psi[loc] = 1.0;
    if (psi.norm() == 0.0)
      throw DegenerateInit("K_i indicator vanished after boundary clipping");
    out.push_back(std::move(psi));
    return out;
  }

  // LSSI: bilinear hat of each corner of K_i on the K_i node set.
  const std::array<std::array<int, 2>, 4> corners = {
      {{kx0, ky0}, {kx0 + r, ky0}, {kx0 + r, ky0 + r}, {kx0, ky0 + r}}};
  for (const auto& c : corners) {
    Eigen::VectorXd phi = Eigen::VectorXd::Zero(n);
    for (int loc : sd.central) {
      const int dof = sd.interior[loc];
      int ix, iy;
      grid.free_to_node(dof, ix, iy);
      const double wx = 1.0 - std::abs(ix - c[0]) / static_cast<double>(r);
      const double wy = 1.0 - std::abs(iy - c[1]) / static_cast<double>(r);
      phi[loc] = wx * wy;
    }
    if (phi.norm() == 0.0)
      throw DegenerateInit("corner hat vanished after boundary clipping");
    out.push_back(std::move(phi));
  }
  return out;
}

LocalBasis lssi_iterate(const SparseSymMatrix& a_i, const SparseSymMatrix& m_i,
                        const std::vector<Eigen::VectorXd>& phi0, int k) {
  const int L = static_cast<int>(phi0.size());
  if (L == 0) throw DegenerateInit("empty initial space");
  const int n = a_i.n;
  Eigen::MatrixXd phi(n, L);
  for (int j = 0; j < L; ++j) phi.col(j) = phi0[j];

  const SpdFactorization fact = factorize_spd(a_i);
  for (int step = 0; step < k; ++step) {
    const Eigen::MatrixXd b = m_i.multiply(phi);
    phi = solve_saddle(fact, b).x;
  }

  std::vector<Eigen::VectorXd> cols(L);
  for (int j = 0; j < L; ++j) cols[j] = phi.col(j);
  const auto q = m_orthonormalize(cols, m_i, 1e-12);
  if (static_cast<int>(q.size()) < L)
    throw RankDeficientConstraints("iterate space lost rank: " +
                                   std::to_string(q.size()) + " of " +
                                   std::to_string(L) + " vectors survive");
  LocalBasis basis = ritz_rotate(q, a_i, m_i);
  basis.method = BasisMethod::lssi;
  basis.iterations = k;
  return basis;
}

LocalBasis lksi_iterate(const SparseSymMatrix& a_i, const SparseSymMatrix& m_i,
                        const Eigen::VectorXd& psi0, int k, double drop_tol) {
  if (psi0.norm() == 0.0) throw DegenerateInit("psi0 is zero");
  if (k < 1) throw InsufficientVectors("lksi needs k >= 1");
  const SpdFactorization fact = factorize_spd(a_i);

  std::vector<Eigen::VectorXd> q;
  bool breakdown = false;
  Eigen::VectorXd psi = psi0;
  for (int s = 0; s < k; ++s) {
    // a(psi^{s+1}, v) + mu <psi^s, v> = 0 with <psi^s, psi^{s+1}> = 1.
    const Eigen::MatrixXd b = m_i.multiply(Eigen::MatrixXd(psi));
    psi = solve_saddle(fact, b).x.col(0);
    if (!m_orthonormalize_append(q, psi, m_i, drop_tol)) {
      breakdown = true;  // invariant subspace reached
      break;
    }
  }
  if (q.empty()) throw EmptyBasis("no Krylov vector survived");
  LocalBasis basis = ritz_rotate(q, a_i, m_i);
  basis.method = BasisMethod::lksi;
  basis.iterations = k;
  basis.krylov_breakdown = breakdown;
  return basis;
}

LocalBasis rayleigh_ritz_select(const std::vector<Eigen::VectorXd>& vectors,
                                const SparseSymMatrix& a_i,
                                const SparseSymMatrix& m_i, int L) {
  const int d = static_cast<int>(vectors.size());
  if (d < L)
    throw InsufficientVectors("have " + std::to_string(d) + ", want " +
                              std::to_string(L));
  LocalBasis all = ritz_rotate(vectors, a_i, m_i);
  LocalBasis out;
  out.thetas = all.thetas.head(L);
  out.discarded_thetas = all.thetas.tail(d - L);
  out.vectors.assign(all.vectors.begin(), all.vectors.begin() + L);
  return out;
}

EigPairs local_eig_oracle(const SparseSymMatrix& a_i,
                          const SparseSymMatrix& m_i, int count) {
  if (a_i.n > 12000)
    throw TooLarge("densification infeasible at n=" + std::to_string(a_i.n));
  const EigPairs full = dense_sym_gen_eig({a_i.to_dense(), m_i.to_dense()});
  const int keep = std::min(count, a_i.n);
  return EigPairs{full.thetas.head(keep), full.vectors.leftCols(keep)};
}

double aligned_energy_distance(const Eigen::VectorXd& v,
                               const Eigen::VectorXd& ref,
                               const SparseSymMatrix& a_i,
                               const SparseSymMatrix& m_i) {
  Eigen::VectorXd w = v;
  const double nrm = std::sqrt(w.dot(m_i.multiply(w)));
  if (nrm > 0) w /= nrm;
  if (w.dot(m_i.multiply(ref)) < 0) w = -w;
  const Eigen::VectorXd d = w - ref;
  return std::sqrt(std::max(0.0, d.dot(a_i.multiply(d))));
}

double a_projection_distance(const std::vector<Eigen::VectorXd>& basis,
                             const Eigen::VectorXd& ref,
                             const SparseSymMatrix& a_i) {
  const int d = static_cast<int>(basis.size());
  const int n = static_cast<int>(ref.size());
  Eigen::MatrixXd v(n, d);
  for (int j = 0; j < d; ++j) v.col(j) = basis[j];
  const Eigen::MatrixXd av = a_i.multiply(v);
  const Eigen::MatrixXd gram = v.transpose() * av;
  const Eigen::VectorXd rhs = av.transpose() * ref;
  const Eigen::VectorXd coef = gram.ldlt().solve(rhs);
  const Eigen::VectorXd res = ref - v * coef;
  return std::sqrt(std::max(0.0, res.dot(a_i.multiply(res))));
}

}  // namespace lsims
