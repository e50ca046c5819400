#include "lsims/assembly.hpp"

#include <array>
#include <cmath>

#include "lsims/errors.hpp"

namespace lsims {

namespace {

// Reference Q1 element matrices via 2x2 Gauss quadrature, corners ordered
// (0,0),(1,0),(1,1),(0,1). Exact for cell-constant kappa on squares:
// stiffness is independent of h, mass scales with h^2.
struct ElementMatrices {
  std::array<std::array<double, 4>, 4> k{};  // unit kappa
  std::array<std::array<double, 4>, 4> m{};  // unit h
};

ElementMatrices reference_element() {
  ElementMatrices em;
  const double g = 1.0 / std::sqrt(3.0);
  const std::array<double, 2> pts = {-g, g};
  const std::array<std::array<double, 2>, 4> corner = {
      {{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}};
  for (double xi : pts)
    for (double eta : pts) {
      std::array<double, 4> n, dx, dy;
      for (int c = 0; c < 4; ++c) {
        const double sx = corner[c][0], sy = corner[c][1];
        n[c] = 0.25 * (1 + sx * xi) * (1 + sy * eta);
        dx[c] = 0.25 * sx * (1 + sy * eta);  // d/dxi
        dy[c] = 0.25 * sy * (1 + sx * xi);   // d/deta
      }
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          // Jacobian h/2 per direction: grad_x = (2/h) grad_xi and
          // |J| = h^2/4, so stiffness loses h and mass keeps h^2.
          em.k[a][b] += dx[a] * dx[b] + dy[a] * dy[b];
          em.m[a][b] += 0.25 * n[a] * n[b];
        }
    }
  return em;
}

template <typename DofOf>
std::pair<SparseSymMatrix, SparseSymMatrix> assemble_impl(
    const CoarseFineGrid& grid, const PermeabilityField& field, int ndof,
    DofOf dof_of) {
  const ElementMatrices em = reference_element();
  const double h2 = grid.h() * grid.h();
  std::vector<Eigen::Triplet<double>> ta, tm;
  ta.reserve(static_cast<size_t>(grid.fine_cell_count()) * 16);
  tm.reserve(ta.capacity());
  const int nx = grid.nx();
  for (int cy = 0; cy < nx; ++cy)
    for (int cx = 0; cx < nx; ++cx) {
      const double kap = field.at(cx, cy);
      const std::array<int, 4> dofs = {
          dof_of(cx, cy), dof_of(cx + 1, cy), dof_of(cx + 1, cy + 1),
          dof_of(cx, cy + 1)};
      for (int a = 0; a < 4; ++a) {
        if (dofs[a] < 0) continue;
        for (int b = 0; b < 4; ++b) {
          if (dofs[b] < 0) continue;
          ta.emplace_back(dofs[a], dofs[b], kap * em.k[a][b]);
          tm.emplace_back(dofs[a], dofs[b], h2 * em.m[a][b]);
        }
      }
    }
  return {SparseSymMatrix::from_triplets(ndof, ta),
          SparseSymMatrix::from_triplets(ndof, tm)};
}

void check_field(const CoarseFineGrid& grid, const PermeabilityField& field) {
  if (field.nfx != grid.nx() || field.nfy != grid.nx())
    throw DimensionMismatch("field not sized to grid");
}

}  // namespace

FineOperators assemble(const CoarseFineGrid& grid,
                       const PermeabilityField& field) {
  check_field(grid, field);
  auto [a, m] = assemble_impl(
      grid, field, grid.free_dof_count(),
      [&](int ix, int iy) { return grid.node_to_free(ix, iy); });
  return FineOperators{grid, std::move(a), std::move(m)};
}

std::pair<SparseSymMatrix, SparseSymMatrix> assemble_unconstrained(
    const CoarseFineGrid& grid, const PermeabilityField& field) {
  check_field(grid, field);
  return assemble_impl(grid, field, grid.fine_node_count(),
                       [&](int ix, int iy) { return grid.node_index(ix, iy); });
}

Eigen::VectorXd assemble_load(const FineOperators& ops, const SourceSpec& src,
                              double t) {
  const CoarseFineGrid& grid = ops.grid;
  Eigen::VectorXd f_nodes(grid.free_dof_count());
  for (int dof = 0; dof < grid.free_dof_count(); ++dof) {
    int ix, iy;
    grid.free_to_node(dof, ix, iy);
    f_nodes[dof] = src.f(grid.node_x(ix), grid.node_y(iy), t);
  }
  return ops.M.multiply(f_nodes);
}

Eigen::VectorXd initial_fine_vector(const CoarseFineGrid& grid,
                                    const SourceSpec& src) {
  Eigen::VectorXd u0(grid.free_dof_count());
  for (int dof = 0; dof < grid.free_dof_count(); ++dof) {
    int ix, iy;
    grid.free_to_node(dof, ix, iy);
    u0[dof] = src.u0(grid.node_x(ix), grid.node_y(iy));
  }
  return u0;
}

std::pair<SparseSymMatrix, SparseSymMatrix> restrict_local(
    const FineOperators& ops, const Subdomain& sd) {
  if (sd.interior.empty())
    throw EmptySubdomain("subdomain " + std::to_string(sd.coarse_cell) +
                         " has no interior dofs");
  return {ops.A.principal_submatrix(sd.interior),
          ops.M.principal_submatrix(sd.interior)};
}

}  // namespace lsims
