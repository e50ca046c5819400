#ifndef LSIMS_FIELDS_HPP
#define LSIMS_FIELDS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "lsims/grid.hpp"

namespace lsims {

/// splitmix64 sequence; fixed across platforms so seeded fields are
/// bit-exact regardless of implementation language.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  /// Uniform in [0,1) from the top 53 bits.
  double next_double() { return (next() >> 11) * 0x1.0p-53; }
  std::uint64_t next_below(std::uint64_t n) { return next() % n; }
};

/// Per-fine-cell permeability, row-major (cy * nfx + cx).
struct PermeabilityField {
  int nfx = 0, nfy = 0;
  std::vector<double> kappa;
  double kappa_min = 1.0, kappa_max = 1.0;

  double contrast() const { return kappa_max / kappa_min; }
  double at(int cx, int cy) const { return kappa[cy * nfx + cx]; }
};

enum class FieldKind { constant, inclusions, channels, fracture_synthetic };

FieldKind field_kind_from_string(const std::string& s);  // throws UnknownKind
std::string to_string(FieldKind k);

/// Seeded synthetic high-contrast field: background 1, features = contrast.
PermeabilityField generate_field(const CoarseFineGrid& grid, FieldKind kind,
                                 double contrast, std::uint64_t seed);

/// Plain-text grayscale raster (header "rows cols maxval", then row-major
/// values); nearest-neighbor downsample, threshold into a binary field.
PermeabilityField load_raster(const std::string& path, double threshold,
                              double kappa_low, double kappa_high,
                              const CoarseFineGrid& grid);

/// Row-major cell values, one row per line.
void field_to_csv(const PermeabilityField& field, const std::string& path);

/// Source term f(x,t) and initial condition u0(x) as closed-form
/// descriptors; evaluation is deterministic.
struct SourceSpec {
  enum class Kind { zero, constant, sinsin };
  Kind f_kind = Kind::sinsin;
  double f_amplitude = 2.0 * 3.14159265358979323846 *
                       3.14159265358979323846;  // matches -Δu for sin·sin
  Kind u0_kind = Kind::zero;
  double u0_amplitude = 1.0;

  double f(double x, double y, double t) const;
  double u0(double x, double y) const;
  /// All supported descriptors are constant in t; lets steppers cache loads.
  bool time_independent() const { return true; }
};

SourceSpec::Kind source_kind_from_string(const std::string& s);

}  // namespace lsims

#endif
