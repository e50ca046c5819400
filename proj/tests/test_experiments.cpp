#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "lsims/errors.hpp"
#include "lsims/experiments.hpp"

using namespace lsims;

namespace {

namespace fs = std::filesystem;

ExperimentConfig parse_str(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in, "inline");
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// All report lines with the wall-time columns blanked out.
std::vector<std::string> report_without_timing(const fs::path& csv) {
  std::vector<std::string> rows;
  std::ifstream in(csv);
  REQUIRE(in.good());
  std::string line;
  while (std::getline(in, line)) {
    // wall_offline_s and wall_online_s are the last two columns.
    auto cut = line.rfind(',');
    cut = line.rfind(',', cut - 1);
    rows.push_back(line.substr(0, cut));
  }
  return rows;
}

}  // namespace

TEST_CASE("config parsing: defaults, comments, dotted keys") {
  const auto cfg = parse_str(
      "# a comment\n"
      "grid.nc = 5\n"
      "grid.r = 4   # trailing comment\n"
      "basis.method = lssi\n"
      "split.l = auto\n"
      "time.tau = 2e-3\n");
  CHECK(cfg.nc == 5);
  CHECK(cfg.r == 4);
  CHECK(cfg.method == "lssi");
  CHECK(cfg.split_auto);
  CHECK(cfg.tau == doctest::Approx(2e-3));
  CHECK(cfg.m == 4);  // default
}

TEST_CASE("config parsing: error context includes file and line") {
  try {
    parse_str("grid.nc = 5\ngrid.bogus = 1\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("inline:2") != std::string::npos);
    CHECK(msg.find("grid.bogus") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_str("grid.nc == 5\n"), ConfigError);
  CHECK_THROWS_AS(parse_str("grid.nc = five\n"), ConfigError);
  CHECK_THROWS_AS(parse_str("grid.nc = 5\ngrid.nc = 6\n"), ConfigError);
  CHECK_THROWS_AS(parse_str("sweep.axis = iter\nsweep.k_min = 3\n"
                            "sweep.k_max = 1\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_str("split.l = maybe\n"), ConfigError);
}

TEST_CASE("config parsing: contrast list") {
  const auto cfg = parse_str(
      "sweep.axis = contrast\nsweep.contrasts = 1e4, 1e6, 1e8\n");
  REQUIRE(cfg.contrasts.size() == 3);
  CHECK(cfg.contrasts[1] == doctest::Approx(1e6));
  CHECK_THROWS_AS(parse_str("sweep.axis = contrast\n"), ConfigError);
}

TEST_CASE("reference run writes trajectory and report") {
  const auto dir = fresh_dir("lsims_exp_ref");
  auto cfg = parse_str(
      "grid.nc = 3\ngrid.r = 4\nfield.kind = constant\nfield.contrast = 1\n"
      "time.tau = 1e-3\ntime.T = 5e-3\ntime.stride = 1\n");
  cfg.out_dir = dir.string();
  const auto rows = run_reference(cfg, {});
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].scheme == "fine_reference");
  CHECK(fs::exists(dir / "reference.csv"));
  CHECK(fs::exists(dir / "report.csv"));
  fs::remove_all(dir);
}

TEST_CASE("basis export then solve with the imported basis") {
  const auto dir = fresh_dir("lsims_exp_basis");
  const std::string base_cfg =
      "grid.nc = 3\ngrid.r = 5\nfield.kind = inclusions\n"
      "field.contrast = 1e3\nfield.seed = 4\nbasis.method = lksi\n"
      "basis.m = 1\nbasis.k = 3\ntime.tau = 1e-3\ntime.T = 5e-3\n"
      "time.stride = 1\n";
  auto cfg = parse_str(base_cfg);
  cfg.out_dir = dir.string();
  run_basis(cfg, {});
  REQUIRE(fs::exists(dir / "space.txt"));

  auto cfg2 = parse_str(base_cfg + "scheme = implicit_coarse\n");
  cfg2.out_dir = (dir / "online").string();
  cfg2.basis_file = (dir / "space.txt").string();
  const auto rows = run_solve(cfg2, {});
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].dof == 9 * 3);
  CHECK(rows[0].energy_err > 0.0);
  CHECK(rows[0].energy_err < 1.0);

  // Building the space fresh gives the same numbers as the import path.
  auto cfg3 = parse_str(base_cfg + "scheme = implicit_coarse\n");
  cfg3.out_dir = (dir / "fresh").string();
  const auto rows2 = run_solve(cfg3, {});
  CHECK(rows2[0].energy_err ==
        doctest::Approx(rows[0].energy_err).epsilon(1e-12));
  fs::remove_all(dir);
}

TEST_CASE("iteration sweep: DoF accounting and cached reference") {
  const auto dir = fresh_dir("lsims_exp_iter");
  auto cfg = parse_str(
      "grid.nc = 3\ngrid.r = 5\nfield.kind = inclusions\n"
      "field.contrast = 1e3\nfield.seed = 4\nbasis.method = lksi\n"
      "basis.m = 1\nsweep.axis = iter\nsweep.k_min = 1\nsweep.k_max = 3\n"
      "time.tau = 1e-3\ntime.T = 5e-3\ntime.stride = 1\n");
  cfg.out_dir = dir.string();
  const auto rows = run_sweep(cfg, {});
  REQUIRE(rows.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(rows[i].k == i + 1);
    CHECK(rows[i].dof == 9 * (i + 1));  // N_c * k for full-Krylov LKSI
    CHECK(rows[i].nolp == 9 * (i + 1));
  }
  CHECK(fs::exists(dir / "report.csv"));
  CHECK(fs::exists(dir / "series_iter_k1_m1_c1000.csv"));
  fs::remove_all(dir);
}

TEST_CASE("split_compare emits both schemes at a stable tau") {
  const auto dir = fresh_dir("lsims_exp_split");
  auto cfg = parse_str(
      "grid.nc = 5\ngrid.r = 8\nfield.kind = inclusions\n"
      "field.contrast = 1e4\nfield.seed = 9\nbasis.method = lksi\n"
      "basis.m = 1\nbasis.k = 4\nsplit.l = auto\n"
      "sweep.axis = split_compare\n"
      "time.tau = 1e-3\ntime.T = 2e-3\ntime.stride = 50\n");
  cfg.out_dir = dir.string();
  const auto rows = run_sweep(cfg, {});
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].scheme == "implicit_coarse");
  CHECK(rows[1].scheme == "splitting");
  CHECK(rows[0].tau == rows[1].tau);
  CHECK(rows[1].tau <= 0.9 * rows[1].tau_max + 1e-18);
  CHECK(rows[1].rq > 0.0);
  CHECK(rows[1].gamma > 0.0);
  CHECK(rows[1].gamma < 1.0);
  fs::remove_all(dir);
}

TEST_CASE("determinism: identical configs reproduce all numeric fields") {
  const std::string text =
      "grid.nc = 3\ngrid.r = 5\nfield.kind = fracture_synthetic\n"
      "field.contrast = 1e4\nfield.seed = 13\nbasis.method = lksi\n"
      "basis.m = 1\nsweep.axis = iter\nsweep.k_min = 1\nsweep.k_max = 2\n"
      "time.tau = 1e-3\ntime.T = 5e-3\ntime.stride = 1\n";
  const auto dir1 = fresh_dir("lsims_exp_det1");
  const auto dir2 = fresh_dir("lsims_exp_det2");
  auto cfg1 = parse_str(text);
  cfg1.out_dir = dir1.string();
  auto cfg2 = parse_str(text);
  cfg2.out_dir = dir2.string();
  run_sweep(cfg1, {});
  RunOptions par;
  par.parallel_subdomains = true;  // schedule must not leak into results
  run_sweep(cfg2, par);
  CHECK(report_without_timing(dir1 / "report.csv") ==
        report_without_timing(dir2 / "report.csv"));
  // Series files are bitwise identical.
  for (const auto& entry : fs::directory_iterator(dir1)) {
    if (entry.path().filename().string().rfind("series_", 0) != 0) continue;
    std::ifstream a(entry.path()), b(dir2 / entry.path().filename());
    REQUIRE(b.good());
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());
  }
  fs::remove_all(dir1);
  fs::remove_all(dir2);
}

TEST_CASE("oracle run writes the eigenvalue table") {
  const auto dir = fresh_dir("lsims_exp_oracle");
  auto cfg = parse_str(
      "grid.nc = 3\ngrid.r = 5\nfield.kind = constant\nfield.contrast = 1\n"
      "basis.m = 1\noracle.subdomain = 4\noracle.count = 3\n");
  cfg.out_dir = dir.string();
  run_oracle(cfg, {});
  std::ifstream in(dir / "oracle_subdomain_4.csv");
  REQUIRE(in.good());
  std::string header;
  std::getline(in, header);
  CHECK(header == "rank,theta,lambda");
  int rows = 0;
  std::string line;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 3);
  fs::remove_all(dir);
}
