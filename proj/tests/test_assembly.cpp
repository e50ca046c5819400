#include <doctest.h>

#include <cmath>

#include "lsims/assembly.hpp"
#include "lsims/errors.hpp"
#include "lsims/linalg.hpp"
#include "lsims/local_basis.hpp"

using namespace lsims;

namespace {

constexpr double kPi = 3.14159265358979323846;

FineOperators unit_ops(int nc, int r) {
  const auto g = build_grid(nc, r);
  return assemble(g, generate_field(g, FieldKind::constant, 1.0, 0));
}

}  // namespace

TEST_CASE("pre-elimination stiffness rows sum to zero for kappa=1") {
  const auto g = build_grid(3, 3);
  const auto field = generate_field(g, FieldKind::constant, 1.0, 0);
  const auto [a_full, m_full] = assemble_unconstrained(g, field);
  for (int i = 0; i < a_full.n; ++i) {
    double row = 0.0;
    for (int p = a_full.row_ptr[i]; p < a_full.row_ptr[i + 1]; ++p)
      row += a_full.values[p];
    CHECK(std::abs(row) <= 1e-12);
  }
}

TEST_CASE("pre-elimination mass entries sum to the domain area") {
  const auto g = build_grid(4, 3);
  const auto field = generate_field(g, FieldKind::inclusions, 1e4, 5);
  const auto [a_full, m_full] = assemble_unconstrained(g, field);
  double total = 0.0;
  for (double v : m_full.values) total += v;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  for (double v : m_full.values) CHECK(v >= 0.0);
}

TEST_CASE("interior node matches the hand-computed 4-element sums") {
  // Summing the four Q1 element matrices around an interior node gives
  // A = 8/3 (h-independent) and M = 4 h^2 / 9 for kappa = 1.
  const auto g = build_grid(2, 2);
  const auto field = generate_field(g, FieldKind::constant, 1.0, 0);
  const auto [a_full, m_full] = assemble_unconstrained(g, field);
  const int node = g.node_index(2, 2);
  const double h = g.h();
  CHECK(a_full.coeff(node, node) == doctest::Approx(8.0 / 3).epsilon(1e-12));
  CHECK(m_full.coeff(node, node) ==
        doctest::Approx(4.0 * h * h / 9).epsilon(1e-12));
}

TEST_CASE("load vector: zero source") {
  const auto ops = unit_ops(3, 3);
  SourceSpec src;
  src.f_kind = SourceSpec::Kind::zero;
  CHECK(assemble_load(ops, src, 0.0).norm() == 0.0);
}

TEST_CASE("load vector: constant source sums to ~interior area") {
  const auto ops = unit_ops(5, 5);
  SourceSpec src;
  src.f_kind = SourceSpec::Kind::constant;
  src.f_amplitude = 1.0;
  const Eigen::VectorXd load = assemble_load(ops, src, 0.0);
  // M*1 sums the interior mass; boundary strips account for the deficit.
  CHECK(load.sum() == doctest::Approx(1.0).epsilon(0.2));
  CHECK(load.minCoeff() > 0.0);
}

TEST_CASE("load vector: sin*sin source is symmetric under x1<->x2") {
  const auto g = build_grid(9, 11);
  const auto ops = assemble(g, generate_field(g, FieldKind::constant, 1.0, 0));
  SourceSpec src;  // default: 2 pi^2 sin sin
  const Eigen::VectorXd load = assemble_load(ops, src, 0.3);
  for (int dof = 0; dof < g.free_dof_count(); ++dof) {
    int ix, iy;
    g.free_to_node(dof, ix, iy);
    const int swapped = g.node_to_free(iy, ix);
    CHECK(std::abs(load[dof] - load[swapped]) <= 1e-12);
  }
}

TEST_CASE("restrict_local on the whole domain is the identity") {
  const auto g = build_grid(3, 4);
  const auto ops = assemble(g, generate_field(g, FieldKind::inclusions, 10, 3));
  const auto sd = oversample(g, 0, g.nc);  // box clips to the whole square
  REQUIRE(sd.size() == g.free_dof_count());
  const auto [a_i, m_i] = restrict_local(ops, sd);
  CHECK(a_i.plus(ops.A, -1.0).max_abs() == 0.0);
  CHECK(m_i.plus(ops.M, -1.0).max_abs() == 0.0);
}

TEST_CASE("disjoint subdomains have disjoint interiors") {
  const auto g = build_grid(6, 3);
  const auto sd0 = oversample(g, g.coarse_index(0, 0), 1);
  const auto sd1 = oversample(g, g.coarse_index(4, 4), 1);
  for (int dof : sd0.interior) CHECK(sd1.local_of_global(dof) == -1);
}

TEST_CASE("local pencil reproduces the Dirichlet Laplacian spectrum") {
  // kappa = 1, square side s: theta_1 = 2 pi^2 / s^2 within 2% once
  // r*s/h >= 40 fine cells span the box.
  const auto g = build_grid(5, 10);
  const auto ops = assemble(g, generate_field(g, FieldKind::constant, 1.0, 0));
  const auto sd = oversample(g, g.coarse_index(2, 2), 1);  // 3x3 coarse box
  const double side = 3.0 * g.H();
  const auto [a_i, m_i] = restrict_local(ops, sd);
  const EigPairs eig = local_eig_oracle(a_i, m_i, 1);
  const double expected = 2.0 * kPi * kPi / (side * side);
  CHECK(eig.thetas[0] == doctest::Approx(expected).epsilon(0.02));
}

TEST_CASE("kappa scaling scales A exactly and leaves M unchanged") {
  const auto g = build_grid(4, 4);
  auto field = generate_field(g, FieldKind::inclusions, 100, 9);
  const auto ops1 = assemble(g, field);
  const double c = 3.5;
  for (double& v : field.kappa) v *= c;
  field.kappa_min *= c;
  field.kappa_max *= c;
  const auto ops2 = assemble(g, field);
  REQUIRE(ops1.A.nnz() == ops2.A.nnz());
  for (int p = 0; p < ops1.A.nnz(); ++p)
    CHECK(ops2.A.values[p] ==
          doctest::Approx(c * ops1.A.values[p]).epsilon(1e-12));
  CHECK(ops1.M.plus(ops2.M, -1.0).max_abs() == 0.0);
}

TEST_CASE("Galerkin consistency: O(h^2) L2 convergence on sin*sin") {
  // Steady solve A u_h = load(2 pi^2 sin sin); exact solution sin sin.
  std::vector<double> errors;
  for (int n : {10, 20, 40}) {
    const auto g = build_grid(2, n / 2);
    const auto ops =
        assemble(g, generate_field(g, FieldKind::constant, 1.0, 0));
    SourceSpec src;  // defaults give f = 2 pi^2 sin sin
    const Eigen::VectorXd u_h =
        factorize_spd(ops.A).solve(assemble_load(ops, src, 0.0));
    Eigen::VectorXd u_exact(g.free_dof_count());
    for (int dof = 0; dof < g.free_dof_count(); ++dof) {
      int ix, iy;
      g.free_to_node(dof, ix, iy);
      u_exact[dof] = std::sin(kPi * g.node_x(ix)) * std::sin(kPi * g.node_y(iy));
    }
    const Eigen::VectorXd diff = u_h - u_exact;
    errors.push_back(std::sqrt(diff.dot(ops.M.multiply(diff))));
  }
  const double order1 = std::log2(errors[0] / errors[1]);
  const double order2 = std::log2(errors[1] / errors[2]);
  CHECK(order1 >= 1.9);
  CHECK(order2 >= 1.9);
}

TEST_CASE("restrict_local rejects an empty subdomain") {
  const auto g = build_grid(3, 3);
  const auto ops = assemble(g, generate_field(g, FieldKind::constant, 1.0, 0));
  Subdomain sd;
  sd.coarse_cell = 0;
  CHECK_THROWS_AS(restrict_local(ops, sd), EmptySubdomain);
}
