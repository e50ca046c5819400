#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "lsims/errors.hpp"
#include "lsims/metrics.hpp"

using namespace lsims;

namespace {

struct Setup {
  CoarseFineGrid grid;
  PermeabilityField field;
  FineOperators ops;
  MultiscaleSpace space;
};

Setup make_setup(int nc = 3, int r = 5) {
  Setup s;
  s.grid = build_grid(nc, r);
  s.field = generate_field(s.grid, FieldKind::inclusions, 100, 4);
  s.ops = assemble(s.grid, s.field);
  SpaceConfig cfg;
  cfg.method = BasisMethod::lksi;
  cfg.m = 1;
  cfg.k = 3;
  s.space = build_multiscale_space(s.grid, s.field, s.ops, cfg);
  return s;
}

}  // namespace

TEST_CASE("energy and l2 errors: exact, zero, and scaled perturbations") {
  const Setup s = make_setup();
  Eigen::VectorXd c = Eigen::VectorXd::Zero(s.space.dim());
  c[0] = 1.0;
  c[5] = -0.5;
  const Eigen::VectorXd u_ref = s.space.prolong(c);
  CHECK(energy_error(u_ref, c, s.space, s.ops.A) <= 1e-12);
  CHECK(l2_error(u_ref, c, s.space, s.ops.M) <= 1e-12);
  // c = 0: relative error is exactly 1.
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(s.space.dim());
  CHECK(energy_error(u_ref, zero, s.space, s.ops.A) ==
        doctest::Approx(1.0).epsilon(1e-12));
  // Linearity: perturb the reference by eps * w.
  Eigen::VectorXd w(s.ops.A.n);
  for (int i = 0; i < w.size(); ++i) w[i] = std::sin(1.7 * i);
  const double eps = 1e-3;
  const double wa = std::sqrt(w.dot(s.ops.A.multiply(w)));
  const double ua = std::sqrt(u_ref.dot(s.ops.A.multiply(u_ref)));
  const double err =
      energy_error(Eigen::VectorXd(u_ref + eps * w), c, s.space, s.ops.A);
  CHECK(err == doctest::Approx(eps * wa /
                               std::sqrt(u_ref.dot(s.ops.A.multiply(u_ref)) +
                                         2 * eps * u_ref.dot(s.ops.A.multiply(w)) +
                                         eps * eps * wa * wa))
                   .epsilon(1e-10));
  (void)ua;
  // Absolute variant.
  CHECK(energy_error(u_ref, zero, s.space, s.ops.A, false) ==
        doctest::Approx(ua).epsilon(1e-12));
}

TEST_CASE("zero reference with nonzero numerator is rejected") {
  const Setup s = make_setup();
  const Eigen::VectorXd zero_ref = Eigen::VectorXd::Zero(s.ops.A.n);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(s.space.dim());
  CHECK(energy_error(zero_ref, c, s.space, s.ops.A) == 0.0);  // 0/0 -> 0
  c[0] = 1.0;
  CHECK_THROWS_AS(energy_error(zero_ref, c, s.space, s.ops.A), ZeroReference);
}

TEST_CASE("error series: identical trajectories give zeros") {
  const Setup s = make_setup();
  SourceSpec src;
  const Eigen::VectorXd u0 = Eigen::VectorXd::Zero(s.ops.A.n);
  SchemeConfig cfg;
  cfg.tau = 1e-3;
  cfg.T = 1e-2;
  cfg.snapshot_stride = 2;
  const auto fine = solve_fine_reference(s.ops, src, u0, cfg);
  const auto ident = MultiscaleSpace::identity(s.ops);
  const auto same = solve_implicit_coarse(ident, s.ops, src, u0, cfg);
  const auto series = error_series(fine, same, ident, s.ops.A, s.ops.M);
  CHECK(series.times.size() == fine.times.size());
  for (double e : series.energy) CHECK(e <= 1e-9);
  for (double e : series.l2) CHECK(e <= 1e-9);
}

TEST_CASE("error series rejects mismatched time grids") {
  const Setup s = make_setup();
  SourceSpec src;
  const Eigen::VectorXd u0 = Eigen::VectorXd::Zero(s.ops.A.n);
  SchemeConfig cfg;
  cfg.tau = 1e-3;
  cfg.T = 1e-2;
  const auto fine = solve_fine_reference(s.ops, src, u0, cfg);
  auto coarse = solve_implicit_coarse(s.space, s.ops, src, u0, cfg);
  auto truncated = coarse;
  truncated.times.pop_back();
  truncated.snapshots.pop_back();
  CHECK_THROWS_AS(error_series(fine, truncated, s.space, s.ops.A, s.ops.M),
                  TimeGridMismatch);
  auto shifted = coarse;
  shifted.times[1] += 1e-3;
  CHECK_THROWS_AS(error_series(fine, shifted, s.space, s.ops.A, s.ops.M),
                  TimeGridMismatch);
}

TEST_CASE("error series decays monotonically toward a steady value") {
  const Setup s = make_setup();
  SourceSpec src;
  const Eigen::VectorXd u0 = Eigen::VectorXd::Zero(s.ops.A.n);
  SchemeConfig cfg;
  cfg.tau = 1e-3;
  cfg.T = 0.1;
  cfg.snapshot_stride = 5;
  const auto fine = solve_fine_reference(s.ops, src, u0, cfg);
  const auto coarse = solve_implicit_coarse(s.space, s.ops, src, u0, cfg);
  const auto series = error_series(fine, coarse, s.space, s.ops.A, s.ops.M);
  REQUIRE(series.times.size() == fine.times.size());
  // Past the startup transient the error decreases snapshot to snapshot
  // and settles: the last two values differ by well under 5%.
  for (size_t i = 2; i < series.energy.size(); ++i)
    CHECK(series.energy[i] <= series.energy[i - 1] * (1 + 1e-9));
  const size_t n = series.energy.size();
  CHECK(std::abs(series.energy[n - 1] - series.energy[n - 2]) <=
        0.05 * series.energy[n - 1]);
}

TEST_CASE("relative errors are invariant under joint scaling of data") {
  const Setup s = make_setup();
  SourceSpec src;  // sinsin source
  SchemeConfig cfg;
  cfg.tau = 1e-3;
  cfg.T = 1e-2;
  const Eigen::VectorXd u0 = Eigen::VectorXd::Zero(s.ops.A.n);
  const auto fine = solve_fine_reference(s.ops, src, u0, cfg);
  const auto coarse = solve_implicit_coarse(s.space, s.ops, src, u0, cfg);
  const auto base = error_series(fine, coarse, s.space, s.ops.A, s.ops.M);
  SourceSpec scaled = src;
  scaled.f_amplitude *= 12.5;
  const auto fine2 = solve_fine_reference(s.ops, scaled, u0, cfg);
  const auto coarse2 = solve_implicit_coarse(s.space, s.ops, scaled, u0, cfg);
  const auto twice = error_series(fine2, coarse2, s.space, s.ops.A, s.ops.M);
  for (size_t i = 1; i < base.energy.size(); ++i) {
    CHECK(twice.energy[i] == doctest::Approx(base.energy[i]).epsilon(1e-9));
    CHECK(twice.l2[i] == doctest::Approx(base.l2[i]).epsilon(1e-9));
  }
}

TEST_CASE("delta estimate: identical subdomains and linearity in overlap") {
  const Setup s = make_setup();
  const double d1 = delta_lsi_estimate(s.space, 1);
  const double d2 = delta_lsi_estimate(s.space, 2);
  CHECK(d2 == doctest::Approx(2.0 * d1).epsilon(1e-14));
  CHECK(d1 > 0.0);
}

TEST_CASE("delta estimate scales like H on a uniform field") {
  // Fixed h = 1/80, coarse sizes 1/4, 1/8, 1/16; LKSI with selection so a
  // discarded Ritz value is available.
  std::vector<double> hs, deltas;
  for (int nc : {4, 8, 16}) {
    const auto grid = build_grid(nc, 80 / nc);
    const auto field = generate_field(grid, FieldKind::constant, 1.0, 0);
    const auto ops = assemble(grid, field);
    SpaceConfig cfg;
    cfg.method = BasisMethod::lksi;
    cfg.m = 1;
    cfg.k = 6;
    cfg.L = 4;
    cfg.parallel = true;
    const auto space = build_multiscale_space(grid, field, ops, cfg);
    hs.push_back(grid.H());
    deltas.push_back(delta_lsi_estimate(space, overlap_count(grid, 1)));
  }
  const double slope =
      std::log(deltas[0] / deltas[2]) / std::log(hs[0] / hs[2]);
  CHECK(slope >= 0.8);
}

TEST_CASE("report csv is atomic and parseable") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto path = (dir / "lsims_report.csv").string();
  ErrorReport row;
  row.method = "lksi";
  row.scheme = "implicit_coarse";
  row.field_kind = "inclusions";
  row.nc = 10;
  row.energy_err = 1.25e-3;
  write_report_csv({row}, path);
  CHECK(!std::filesystem::exists(path + ".tmp"));
  std::ifstream in(path);
  std::string header, line;
  std::getline(in, header);
  CHECK(header == report_csv_header());
  std::getline(in, line);
  CHECK(line.find("lksi") == 0);
  CHECK(line.find("0.00125") != std::string::npos);
  std::filesystem::remove(path);
}
