#include "lsims/grid.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace lsims {

int Subdomain::local_of_global(int dof) const {
  auto it = std::lower_bound(interior.begin(), interior.end(), dof);
  if (it == interior.end() || *it != dof) return -1;
  return static_cast<int>(it - interior.begin());
}

CoarseFineGrid build_grid(int nc, int r) {
  if (nc < 2 || r < 2)
    throw std::invalid_argument("build_grid: need nc >= 2 and r >= 2, got nc=" +
                                std::to_string(nc) + " r=" + std::to_string(r));
  return CoarseFineGrid{nc, r};
}

Subdomain oversample(const CoarseFineGrid& grid, int coarse_cell, int layers) {
  if (coarse_cell < 0 || coarse_cell >= grid.coarse_cell_count())
    throw std::invalid_argument("oversample: coarse cell out of range");
  if (layers < 0) throw std::invalid_argument("oversample: layers < 0");

  Subdomain sd;
  sd.coarse_cell = coarse_cell;
  sd.layers = layers;
  const int ccx = coarse_cell % grid.nc;
  const int ccy = coarse_cell / grid.nc;
  sd.cx0 = std::max(0, ccx - layers);
  sd.cx1 = std::min(grid.nc - 1, ccx + layers);
  sd.cy0 = std::max(0, ccy - layers);
  sd.cy1 = std::min(grid.nc - 1, ccy + layers);

  // Fine-node window strictly inside the box (Dirichlet on the box
  // boundary; coincides with the outer boundary where the box is clipped).
  const int r = grid.r;
  const int ix0 = sd.cx0 * r + 1, ix1 = (sd.cx1 + 1) * r - 1;
  const int iy0 = sd.cy0 * r + 1, iy1 = (sd.cy1 + 1) * r - 1;
  sd.interior.reserve((ix1 - ix0 + 1) * (iy1 - iy0 + 1));
  for (int iy = iy0; iy <= iy1; ++iy)
    for (int ix = ix0; ix <= ix1; ++ix)
      sd.interior.push_back(grid.node_to_free(ix, iy));

  // Dofs of the closed central element, restricted to the interior set.
  const int kx0 = ccx * r, kx1 = (ccx + 1) * r;
  const int ky0 = ccy * r, ky1 = (ccy + 1) * r;
  for (int iy = std::max(ky0, iy0); iy <= std::min(ky1, iy1); ++iy)
    for (int ix = std::max(kx0, ix0); ix <= std::min(kx1, ix1); ++ix)
      sd.central.push_back(sd.local_of_global(grid.node_to_free(ix, iy)));
  return sd;
}

int overlap_count(const CoarseFineGrid& grid, int layers) {
  int best = 0;
  for (int cy = 0; cy < grid.nc; ++cy)
    for (int cx = 0; cx < grid.nc; ++cx) {
      const int nx_cover = std::min(grid.nc - 1, cx + layers) -
                           std::max(0, cx - layers) + 1;
      const int ny_cover = std::min(grid.nc - 1, cy + layers) -
                           std::max(0, cy - layers) + 1;
      best = std::max(best, nx_cover * ny_cover);
    }
  return best;
}

}  // namespace lsims
