#ifndef LSIMS_ASSEMBLY_HPP
#define LSIMS_ASSEMBLY_HPP

#include <Eigen/Dense>
#include <utility>

#include "lsims/fields.hpp"
#include "lsims/grid.hpp"
#include "lsims/sparse.hpp"

namespace lsims {

/// Q1 stiffness and mass on the free dofs (Dirichlet rows/cols eliminated).
struct FineOperators {
  CoarseFineGrid grid;
  SparseSymMatrix A;  // integral of kappa grad u . grad v
  SparseSymMatrix M;  // integral of u v
};

FineOperators assemble(const CoarseFineGrid& grid,
                       const PermeabilityField& field);

/// Full-node matrices without BC elimination (kernel/row-sum diagnostics).
std::pair<SparseSymMatrix, SparseSymMatrix> assemble_unconstrained(
    const CoarseFineGrid& grid, const PermeabilityField& field);

/// Load vector on free dofs: mass matrix times the nodal interpolant of
/// f(., t).
Eigen::VectorXd assemble_load(const FineOperators& ops, const SourceSpec& src,
                              double t);

/// Nodal interpolant of u0 on the free dofs.
Eigen::VectorXd initial_fine_vector(const CoarseFineGrid& grid,
                                    const SourceSpec& src);

/// Principal submatrices of (A, M) on the subdomain interior dofs.
std::pair<SparseSymMatrix, SparseSymMatrix> restrict_local(
    const FineOperators& ops, const Subdomain& sd);

}  // namespace lsims

#endif
