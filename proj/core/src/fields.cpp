#include "lsims/fields.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "lsims/errors.hpp"

namespace lsims {

namespace {

constexpr double kPi = 3.14159265358979323846;

void finalize_bounds(PermeabilityField& f) {
  f.kappa_min = *std::min_element(f.kappa.begin(), f.kappa.end());
  f.kappa_max = *std::max_element(f.kappa.begin(), f.kappa.end());
  if (!(f.kappa_min > 0.0))
    throw Error("permeability must be uniformly positive");
}

void paint_rect(PermeabilityField& f, int x0, int y0, int w, int h,
                double value) {
  for (int cy = y0; cy < y0 + h; ++cy)
    for (int cx = x0; cx < x0 + w; ++cx) f.kappa[cy * f.nfx + cx] = value;
}

}  // namespace

FieldKind field_kind_from_string(const std::string& s) {
  if (s == "constant") return FieldKind::constant;
  if (s == "inclusions") return FieldKind::inclusions;
  if (s == "channels") return FieldKind::channels;
  if (s == "fracture_synthetic") return FieldKind::fracture_synthetic;
  throw UnknownKind("field kind '" + s + "'");
}

std::string to_string(FieldKind k) {
  switch (k) {
    case FieldKind::constant: return "constant";
    case FieldKind::inclusions: return "inclusions";
    case FieldKind::channels: return "channels";
    case FieldKind::fracture_synthetic: return "fracture_synthetic";
  }
  return "?";
}

PermeabilityField generate_field(const CoarseFineGrid& grid, FieldKind kind,
                                 double contrast, std::uint64_t seed) {
  if (!(contrast >= 1.0)) throw Error("generate_field: contrast must be >= 1");
  PermeabilityField f;
  f.nfx = f.nfy = grid.nx();
  f.kappa.assign(static_cast<size_t>(f.nfx) * f.nfy, 1.0);
  SplitMix64 rng(seed);

  switch (kind) {
    case FieldKind::constant:
      break;

    case FieldKind::inclusions: {
      // Square blobs, side between r/5 and r/2 fine cells.
      const int count = std::max(8, grid.nc * grid.nc / 2);
      const int smin = std::max(1, grid.r / 5);
      const int smax = std::max(smin + 1, grid.r / 2);
      for (int i = 0; i < count; ++i) {
        const int w = smin + static_cast<int>(rng.next_below(smax - smin + 1));
        const int x0 = static_cast<int>(rng.next_below(f.nfx - w + 1));
        const int y0 = static_cast<int>(rng.next_below(f.nfy - w + 1));
        paint_rect(f, x0, y0, w, w, contrast);
      }
      break;
    }

    case FieldKind::channels: {
      // Full-width horizontal stripes plus a few vertical ones.
      const int n_horiz = std::max(3, grid.nc / 2);
      const int n_vert = std::max(2, grid.nc / 3);
      for (int i = 0; i < n_horiz; ++i) {
        const int t = 1 + static_cast<int>(rng.next_below(2));
        const int y0 = static_cast<int>(rng.next_below(f.nfy - t + 1));
        paint_rect(f, 0, y0, f.nfx, t, contrast);
      }
      for (int i = 0; i < n_vert; ++i) {
        const int t = 1 + static_cast<int>(rng.next_below(2));
        const int x0 = static_cast<int>(rng.next_below(f.nfx - t + 1));
        paint_rect(f, x0, 0, t, f.nfy, contrast);
      }
      break;
    }

    case FieldKind::fracture_synthetic: {
      // Random line segments rasterized one cell wide.
      const int n_frac = 3 * grid.nc;
      const double h = grid.h();
      for (int i = 0; i < n_frac; ++i) {
        const double x0 = rng.next_double(), y0 = rng.next_double();
        const double ang = 2.0 * kPi * rng.next_double();
        const double len = 0.1 + 0.4 * rng.next_double();
        const double x1 = x0 + len * std::cos(ang);
        const double y1 = y0 + len * std::sin(ang);
        const int steps = static_cast<int>(2.0 * len / h) + 1;
        for (int s = 0; s <= steps; ++s) {
          const double t = static_cast<double>(s) / steps;
          const double px = x0 + t * (x1 - x0);
          const double py = y0 + t * (y1 - y0);
          const int cx = static_cast<int>(std::floor(px / h));
          const int cy = static_cast<int>(std::floor(py / h));
          if (cx >= 0 && cx < f.nfx && cy >= 0 && cy < f.nfy)
            f.kappa[cy * f.nfx + cx] = contrast;
        }
      }
      break;
    }
  }
  finalize_bounds(f);
  return f;
}

PermeabilityField load_raster(const std::string& path, double threshold,
                              double kappa_low, double kappa_high,
                              const CoarseFineGrid& grid) {
  std::ifstream in(path);
  if (!in) throw MalformedRaster("cannot open " + path);
  long rows = 0, cols = 0;
  double maxval = 0.0;
  if (!(in >> rows >> cols >> maxval) || rows <= 0 || cols <= 0)
    throw MalformedRaster("bad header in " + path);
  const int nfx = grid.nx(), nfy = grid.nx();
  if (rows < nfy || cols < nfx)
    throw DimensionMismatch("raster " + std::to_string(rows) + "x" +
                            std::to_string(cols) + " smaller than fine grid " +
                            std::to_string(nfy) + "x" + std::to_string(nfx));
  std::vector<double> pix(static_cast<size_t>(rows) * cols);
  for (auto& v : pix)
    if (!(in >> v)) throw MalformedRaster("truncated raster " + path);

  PermeabilityField f;
  f.nfx = nfx;
  f.nfy = nfy;
  f.kappa.resize(static_cast<size_t>(nfx) * nfy);
  for (int cy = 0; cy < nfy; ++cy)
    for (int cx = 0; cx < nfx; ++cx) {
      // Nearest pixel to the cell center; raster row 0 maps to cy = 0.
      const long i = std::min<long>(rows - 1, (2L * cy + 1) * rows / (2L * nfy));
      const long j = std::min<long>(cols - 1, (2L * cx + 1) * cols / (2L * nfx));
      const double v = pix[i * cols + j];
      f.kappa[cy * nfx + cx] = v > threshold ? kappa_high : kappa_low;
    }
  finalize_bounds(f);
  return f;
}

void field_to_csv(const PermeabilityField& field, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path);
  out.precision(17);
  for (int cy = 0; cy < field.nfy; ++cy) {
    for (int cx = 0; cx < field.nfx; ++cx) {
      if (cx) out << ',';
      out << field.at(cx, cy);
    }
    out << '\n';
  }
}

double SourceSpec::f(double x, double y, double t) const {
  (void)t;
  switch (f_kind) {
    case Kind::zero: return 0.0;
    case Kind::constant: return f_amplitude;
    case Kind::sinsin:
      return f_amplitude * std::sin(kPi * x) * std::sin(kPi * y);
  }
  return 0.0;
}

double SourceSpec::u0(double x, double y) const {
  switch (u0_kind) {
    case Kind::zero: return 0.0;
    case Kind::constant: return u0_amplitude;
    case Kind::sinsin:
      return u0_amplitude * std::sin(kPi * x) * std::sin(kPi * y);
  }
  return 0.0;
}

SourceSpec::Kind source_kind_from_string(const std::string& s) {
  if (s == "zero") return SourceSpec::Kind::zero;
  if (s == "constant") return SourceSpec::Kind::constant;
  if (s == "sinsin") return SourceSpec::Kind::sinsin;
  throw UnknownKind("source kind '" + s + "'");
}

}  // namespace lsims
