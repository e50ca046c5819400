#ifndef LSIMS_GRID_HPP
#define LSIMS_GRID_HPP

#include <vector>

namespace lsims {

/// Two-level structured quadrilateral mesh on the unit square: nc coarse
/// cells per side, each refined into r x r fine cells. Homogeneous
/// Dirichlet boundary; free dofs are the interior fine nodes.
struct CoarseFineGrid {
  int nc = 0;  // coarse cells per side
  int r = 0;   // refinement factor

  int nx() const { return nc * r; }            // fine cells per side
  double H() const { return 1.0 / nc; }
  double h() const { return 1.0 / (nc * r); }

  int fine_node_count() const { return (nx() + 1) * (nx() + 1); }
  int fine_cell_count() const { return nx() * nx(); }
  int free_dof_count() const { return (nx() - 1) * (nx() - 1); }
  int coarse_cell_count() const { return nc * nc; }  // N_c

  int node_index(int ix, int iy) const { return iy * (nx() + 1) + ix; }
  int cell_index(int cx, int cy) const { return cy * nx() + cx; }
  int coarse_index(int cx, int cy) const { return cy * nc + cx; }

  bool boundary_node(int ix, int iy) const {
    return ix == 0 || iy == 0 || ix == nx() || iy == nx();
  }
  /// Free-dof numbering: interior nodes row-major, -1 on the boundary.
  int node_to_free(int ix, int iy) const {
    if (boundary_node(ix, iy)) return -1;
    return (iy - 1) * (nx() - 1) + (ix - 1);
  }
  void free_to_node(int dof, int& ix, int& iy) const {
    ix = dof % (nx() - 1) + 1;
    iy = dof / (nx() - 1) + 1;
  }
  int coarse_of_fine_cell(int cx, int cy) const {
    return coarse_index(cx / r, cy / r);
  }
  double node_x(int ix) const { return ix * h(); }
  double node_y(int iy) const { return iy * h(); }
};

/// Oversampled subdomain around coarse cell `coarse_cell`: the box of
/// coarse cells within Chebyshev distance `layers`, clipped at the domain
/// boundary. Interior dofs exclude both the subdomain boundary and the
/// outer Dirichlet boundary.
struct Subdomain {
  int coarse_cell = -1;
  int layers = 0;
  int cx0 = 0, cx1 = 0, cy0 = 0, cy1 = 0;  // coarse-cell box, inclusive

  /// Global free-dof indices of the subdomain interior, ascending.
  std::vector<int> interior;
  /// Positions (into `interior`) of the dofs of the central element K_i.
  std::vector<int> central;

  int size() const { return static_cast<int>(interior.size()); }
  /// Local index for a global free dof, -1 if not interior to the box.
  int local_of_global(int dof) const;
};

CoarseFineGrid build_grid(int nc, int r);
Subdomain oversample(const CoarseFineGrid& grid, int coarse_cell, int layers);

/// Maximum over fine cells of the number of subdomains containing it.
int overlap_count(const CoarseFineGrid& grid, int layers);

}  // namespace lsims

#endif
