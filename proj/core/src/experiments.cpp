#include "lsims/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "lsims/errors.hpp"

namespace lsims {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct RawConfig {
  std::string name;
  std::map<std::string, std::pair<std::string, int>> kv;  // key -> (value, line)
  mutable std::map<std::string, bool> used;

  std::string context(const std::string& key) const {
    auto it = kv.find(key);
    return name + ":" + std::to_string(it->second.second) + ": " + key;
  }
  bool has(const std::string& key) const { return kv.count(key) > 0; }
  std::string get_string(const std::string& key, const std::string& dflt) const {
    auto it = kv.find(key);
    if (it == kv.end()) return dflt;
    used[key] = true;
    return it->second.first;
  }
  double get_double(const std::string& key, double dflt) const {
    auto it = kv.find(key);
    if (it == kv.end()) return dflt;
    used[key] = true;
    try {
      size_t pos = 0;
      const double v = std::stod(it->second.first, &pos);
      if (pos != it->second.first.size()) throw std::invalid_argument("");
      return v;
    } catch (...) {
      throw ConfigError(context(key) + " = '" + it->second.first +
                        "' is not a number");
    }
  }
  long long get_int(const std::string& key, long long dflt) const {
    auto it = kv.find(key);
    if (it == kv.end()) return dflt;
    used[key] = true;
    try {
      size_t pos = 0;
      const long long v = std::stoll(it->second.first, &pos);
      if (pos != it->second.first.size()) throw std::invalid_argument("");
      return v;
    } catch (...) {
      throw ConfigError(context(key) + " = '" + it->second.first +
                        "' is not an integer");
    }
  }
  void reject_unknown() const {
    for (const auto& [key, value] : kv)
      if (!used.count(key))
        throw ConfigError(name + ":" + std::to_string(value.second) +
                          ": unknown key '" + key + "'");
  }
};

RawConfig read_raw(std::istream& in, const std::string& name) {
  RawConfig raw;
  raw.name = name;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw ConfigError(name + ":" + std::to_string(lineno) +
                        ": expected 'key = value', got '" + body + "'");
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError(name + ":" + std::to_string(lineno) +
                        ": empty key or value");
    if (raw.kv.count(key))
      throw ConfigError(name + ":" + std::to_string(lineno) +
                        ": duplicate key '" + key + "'");
    raw.kv[key] = {value, lineno};
  }
  return raw;
}

std::vector<double> parse_list(const std::string& s, const std::string& ctx) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      out.push_back(std::stod(item));
    } catch (...) {
      throw ConfigError(ctx + ": bad list entry '" + item + "'");
    }
  }
  if (out.empty()) throw ConfigError(ctx + ": empty list");
  return out;
}

}  // namespace

ExperimentConfig parse_config(std::istream& in, const std::string& name) {
  const RawConfig raw = read_raw(in, name);
  ExperimentConfig cfg;
  cfg.nc = static_cast<int>(raw.get_int("grid.nc", cfg.nc));
  cfg.r = static_cast<int>(raw.get_int("grid.r", cfg.r));

  cfg.field_kind = raw.get_string("field.kind", cfg.field_kind);
  cfg.contrast = raw.get_double("field.contrast", cfg.contrast);
  cfg.seed = static_cast<std::uint64_t>(raw.get_int("field.seed",
                                                    static_cast<long long>(cfg.seed)));
  cfg.raster_path = raw.get_string("field.raster_path", cfg.raster_path);
  cfg.raster_threshold =
      raw.get_double("field.threshold", cfg.raster_threshold);
  cfg.raster_kappa_low =
      raw.get_double("field.kappa_low", cfg.raster_kappa_low);
  cfg.raster_kappa_high =
      raw.get_double("field.kappa_high", cfg.raster_kappa_high);

  cfg.method = raw.get_string("basis.method", cfg.method);
  cfg.m = static_cast<int>(raw.get_int("basis.m", cfg.m));
  cfg.k = static_cast<int>(raw.get_int("basis.k", cfg.k));
  cfg.L = static_cast<int>(raw.get_int("basis.L", cfg.L));
  cfg.basis_file = raw.get_string("basis.file", cfg.basis_file);

  const std::string l_str = raw.get_string("split.l", "");
  if (l_str == "auto") {
    cfg.split_auto = true;
    cfg.split_l = 0;
  } else if (l_str == "none" || l_str.empty()) {
    cfg.split_l = -1;
  } else {
    try {
      cfg.split_l = std::stoi(l_str);
    } catch (...) {
      throw ConfigError(raw.context("split.l") + " = '" + l_str +
                        "' (want integer, 'auto' or 'none')");
    }
  }
  cfg.omega = raw.get_double("split.omega", cfg.omega);

  cfg.tau = raw.get_double("time.tau", cfg.tau);
  cfg.T = raw.get_double("time.T", cfg.T);
  cfg.stride = static_cast<int>(raw.get_int("time.stride", cfg.stride));

  cfg.scheme = raw.get_string("scheme", cfg.scheme);

  const std::string axis = raw.get_string("sweep.axis", "none");
  if (axis == "none") cfg.sweep = SweepAxis::none;
  else if (axis == "iter") cfg.sweep = SweepAxis::iter;
  else if (axis == "oversampling") cfg.sweep = SweepAxis::oversampling;
  else if (axis == "contrast") cfg.sweep = SweepAxis::contrast;
  else if (axis == "split_compare") cfg.sweep = SweepAxis::split_compare;
  else
    throw ConfigError(raw.context("sweep.axis") + " = '" + axis +
                      "' (want none|iter|oversampling|contrast|split_compare)");
  cfg.k_min = static_cast<int>(raw.get_int("sweep.k_min", cfg.k_min));
  cfg.k_max = static_cast<int>(raw.get_int("sweep.k_max", cfg.k_max));
  cfg.m_min = static_cast<int>(raw.get_int("sweep.m_min", cfg.m_min));
  cfg.m_max = static_cast<int>(raw.get_int("sweep.m_max", cfg.m_max));
  if (raw.has("sweep.contrasts"))
    cfg.contrasts = parse_list(raw.get_string("sweep.contrasts", ""),
                               raw.context("sweep.contrasts"));

  cfg.source_kind = raw.get_string("source.kind", cfg.source_kind);
  cfg.source_amplitude =
      raw.get_double("source.amplitude", cfg.source_amplitude);
  cfg.u0_kind = raw.get_string("u0.kind", cfg.u0_kind);
  cfg.u0_amplitude = raw.get_double("u0.amplitude", cfg.u0_amplitude);

  cfg.out_dir = raw.get_string("output.dir", cfg.out_dir);

  cfg.oracle_subdomain =
      static_cast<int>(raw.get_int("oracle.subdomain", cfg.oracle_subdomain));
  cfg.oracle_count =
      static_cast<int>(raw.get_int("oracle.count", cfg.oracle_count));

  raw.reject_unknown();

  if (cfg.nc < 2 || cfg.r < 2)
    throw ConfigError(name + ": grid.nc and grid.r must be >= 2");
  if (cfg.sweep == SweepAxis::iter && cfg.k_min > cfg.k_max)
    throw ConfigError(name + ": empty iteration range");
  if (cfg.sweep == SweepAxis::oversampling && cfg.m_min > cfg.m_max)
    throw ConfigError(name + ": empty oversampling range");
  if (cfg.sweep == SweepAxis::contrast && cfg.contrasts.empty())
    throw ConfigError(name + ": sweep.contrasts required for contrast sweep");
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  return parse_config(in, path);
}

namespace {

struct RunContext {
  CoarseFineGrid grid;
  PermeabilityField field;
  FineOperators ops;
  SourceSpec source;
  Eigen::VectorXd u0;
};

SourceSpec make_source(const ExperimentConfig& cfg) {
  SourceSpec src;
  src.f_kind = source_kind_from_string(cfg.source_kind);
  src.f_amplitude = cfg.source_amplitude;
  src.u0_kind = source_kind_from_string(cfg.u0_kind);
  src.u0_amplitude = cfg.u0_amplitude;
  return src;
}

PermeabilityField make_field(const ExperimentConfig& cfg,
                             const CoarseFineGrid& grid, double contrast) {
  if (cfg.field_kind == "raster") {
    if (cfg.raster_path.empty())
      throw ConfigError("field.kind = raster needs field.raster_path");
    return load_raster(cfg.raster_path, cfg.raster_threshold,
                       cfg.raster_kappa_low, cfg.raster_kappa_high, grid);
  }
  return generate_field(grid, field_kind_from_string(cfg.field_kind), contrast,
                        cfg.seed);
}

RunContext make_context(const ExperimentConfig& cfg, double contrast) {
  RunContext ctx;
  ctx.grid = build_grid(cfg.nc, cfg.r);
  ctx.field = make_field(cfg, ctx.grid, contrast);
  ctx.ops = assemble(ctx.grid, ctx.field);
  ctx.source = make_source(cfg);
  ctx.u0 = initial_fine_vector(ctx.grid, ctx.source);
  return ctx;
}

std::string resolve_out_dir(const ExperimentConfig& cfg,
                            const RunOptions& opts) {
  const std::string dir = opts.out_dir.empty() ? cfg.out_dir : opts.out_dir;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output dir " + dir);
  return dir;
}

SchemeConfig scheme_config(const ExperimentConfig& cfg, double tau,
                           Scheme scheme, bool override_stability) {
  SchemeConfig sc;
  sc.tau = tau;
  sc.T = cfg.T;
  sc.omega = cfg.omega;
  sc.scheme = scheme;
  sc.snapshot_stride = cfg.stride;
  sc.override_stability = override_stability;
  return sc;
}

ErrorReport base_report(const ExperimentConfig& cfg, const RunContext& ctx) {
  ErrorReport row;
  row.method = cfg.method;
  row.field_kind = cfg.field_kind;
  row.nc = cfg.nc;
  row.r = cfg.r;
  row.m = cfg.m;
  row.k = cfg.k;
  row.omega = cfg.omega;
  row.tau = cfg.tau;
  row.T = cfg.T;
  row.contrast = ctx.field.contrast();
  row.seed = cfg.seed;
  return row;
}

SpaceConfig space_config(const ExperimentConfig& cfg, const RunOptions& opts) {
  SpaceConfig sc;
  sc.method = basis_method_from_string(cfg.method);
  sc.m = cfg.m;
  sc.k = cfg.k;
  sc.L = cfg.L;
  sc.parallel = opts.parallel_subdomains;
  return sc;
}

std::string sweep_tag(const std::string& scheme, int k, int m,
                      double contrast) {
  std::ostringstream os;
  os << scheme << "_k" << k << "_m" << m << "_c" << contrast;
  return os.str();
}

/// One coarse run against a cached fine reference; fills errors, split
/// diagnostics, wall times and writes the per-run error series. Split
/// diagnostics are recorded whenever a split is configured, even when the
/// marching scheme is fully implicit.
ErrorReport coarse_run(const ExperimentConfig& cfg, const RunOptions& opts,
                       const RunContext& ctx, const Trajectory& fine,
                       const SpaceConfig& spc, Scheme scheme, double tau,
                       const std::string& out_dir, const std::string& tag) {
  ErrorReport row = base_report(cfg, ctx);
  row.scheme = to_string(scheme);
  row.k = spc.k;
  row.m = spc.m;
  row.tau = tau;

  const auto t0 = Clock::now();
  const MultiscaleSpace space =
      build_multiscale_space(ctx.grid, ctx.field, ctx.ops, spc);
  row.wall_offline_s = seconds_since(t0);
  row.dof = space.dim();
  row.L = space.L;
  row.nolp = space.nolp;

  std::optional<SplitSpace> split;
  if (cfg.split_auto || cfg.split_l >= 0) {
    split = cfg.split_auto ? split_space_auto(space)
                           : split_space(space, cfg.split_l);
    row.l = cfg.split_auto ? -2 : cfg.split_l;
    if (!split->i2.empty()) {
      row.rq = explicit_rayleigh_quotient(*split);
      row.gamma = split->i1.empty() ? 0.0 : cauchy_schwarz_gamma(*split);
      row.tau_max = stability_limit(row.rq, row.gamma, cfg.omega);
    }
  }

  Trajectory coarse;
  const auto t1 = Clock::now();
  if (scheme == Scheme::splitting) {
    if (!split)
      throw ConfigError("scheme = splitting needs split.l (or 'auto')");
    coarse = solve_splitting(*split, space, ctx.ops, ctx.source, ctx.u0,
                             scheme_config(cfg, tau, scheme,
                                           opts.override_stability));
  } else {
    coarse = solve_implicit_coarse(
        space, ctx.ops, ctx.source, ctx.u0,
        scheme_config(cfg, tau, Scheme::implicit_coarse, false));
  }
  row.wall_online_s = seconds_since(t1);

  const ErrorSeries series =
      error_series(fine, coarse, space, ctx.ops.A, ctx.ops.M);
  row.energy_err = series.energy.back();
  row.l2_err = series.l2.back();
  write_series_csv(series, out_dir + "/series_" + tag + ".csv");
  return row;
}

}  // namespace

std::vector<ErrorReport> run_reference(const ExperimentConfig& cfg,
                                       const RunOptions& opts) {
  const std::string out_dir = resolve_out_dir(cfg, opts);
  const RunContext ctx = make_context(cfg, cfg.contrast);
  ErrorReport row = base_report(cfg, ctx);
  row.method = "reference";
  row.scheme = to_string(Scheme::fine_reference);
  row.dof = ctx.ops.A.n;
  const auto t0 = Clock::now();
  const Trajectory traj = solve_fine_reference(
      ctx.ops, ctx.source, ctx.u0,
      scheme_config(cfg, cfg.tau, Scheme::fine_reference, false));
  row.wall_online_s = seconds_since(t0);
  trajectory_to_csv(traj, ctx.ops.M, ctx.ops.A, out_dir + "/reference.csv");
  std::vector<ErrorReport> rows{row};
  write_report_csv(rows, out_dir + "/report.csv");
  return rows;
}

std::vector<ErrorReport> run_basis(const ExperimentConfig& cfg,
                                   const RunOptions& opts) {
  const std::string out_dir = resolve_out_dir(cfg, opts);
  const RunContext ctx = make_context(cfg, cfg.contrast);
  ErrorReport row = base_report(cfg, ctx);
  row.scheme = "offline";
  const auto t0 = Clock::now();
  const MultiscaleSpace space =
      build_multiscale_space(ctx.grid, ctx.field, ctx.ops,
                             space_config(cfg, opts));
  row.wall_offline_s = seconds_since(t0);
  row.dof = space.dim();
  row.L = space.L;
  row.nolp = space.nolp;
  const std::string file =
      cfg.basis_file.empty() ? out_dir + "/space.txt" : cfg.basis_file;
  export_space(space, file);
  std::vector<ErrorReport> rows{row};
  write_report_csv(rows, out_dir + "/report.csv");
  return rows;
}

std::vector<ErrorReport> run_solve(const ExperimentConfig& cfg,
                                   const RunOptions& opts) {
  const std::string out_dir = resolve_out_dir(cfg, opts);
  const RunContext ctx = make_context(cfg, cfg.contrast);
  const Scheme scheme = scheme_from_string(cfg.scheme);

  if (scheme == Scheme::fine_reference) return run_reference(cfg, opts);

  const Trajectory fine = solve_fine_reference(
      ctx.ops, ctx.source, ctx.u0,
      scheme_config(cfg, cfg.tau, Scheme::fine_reference, false));

  std::vector<ErrorReport> rows;
  if (!cfg.basis_file.empty()) {
    // Reuse an exported basis; only the online stage runs here.
    const MultiscaleSpace space = import_space(cfg.basis_file, ctx.ops);
    ErrorReport row = base_report(cfg, ctx);
    row.scheme = to_string(scheme);
    row.method = to_string(space.method);
    row.m = space.m;
    row.k = space.k;
    row.L = space.L;
    row.dof = space.dim();
    row.nolp = space.nolp;
    Trajectory coarse;
    const auto t1 = Clock::now();
    if (scheme == Scheme::splitting) {
      const SplitSpace split =
          cfg.split_auto ? split_space_auto(space)
                         : split_space(space, std::max(0, cfg.split_l));
      row.l = cfg.split_auto ? -2 : std::max(0, cfg.split_l);
      if (!split.i2.empty()) {
        row.rq = explicit_rayleigh_quotient(split);
        row.gamma = split.i1.empty() ? 0.0 : cauchy_schwarz_gamma(split);
        row.tau_max = stability_limit(row.rq, row.gamma, cfg.omega);
      }
      coarse = solve_splitting(split, space, ctx.ops, ctx.source, ctx.u0,
                               scheme_config(cfg, cfg.tau, scheme,
                                             opts.override_stability));
    } else {
      coarse = solve_implicit_coarse(
          space, ctx.ops, ctx.source, ctx.u0,
          scheme_config(cfg, cfg.tau, Scheme::implicit_coarse, false));
    }
    row.wall_online_s = seconds_since(t1);
    const ErrorSeries series =
        error_series(fine, coarse, space, ctx.ops.A, ctx.ops.M);
    row.energy_err = series.energy.back();
    row.l2_err = series.l2.back();
    write_series_csv(series, out_dir + "/series_solve.csv");
    rows.push_back(row);
  } else {
    rows.push_back(coarse_run(cfg, opts, ctx, fine, space_config(cfg, opts),
                              scheme, cfg.tau, out_dir,
                              sweep_tag(cfg.scheme, cfg.k, cfg.m,
                                        ctx.field.contrast())));
  }
  write_report_csv(rows, out_dir + "/report.csv");
  return rows;
}

std::vector<ErrorReport> run_sweep(const ExperimentConfig& cfg,
                                   const RunOptions& opts) {
  const std::string out_dir = resolve_out_dir(cfg, opts);
  std::vector<ErrorReport> rows;

  if (cfg.sweep == SweepAxis::none)
    return run_solve(cfg, opts);

  if (cfg.sweep == SweepAxis::contrast) {
    // Fixed field shape (same seed), swept feature value; the fine
    // reference is recomputed per contrast. Marches fully implicitly and
    // records the explicit-subspace diagnostics for the configured split.
    for (double contrast : cfg.contrasts) {
      const RunContext ctx = make_context(cfg, contrast);
      const Trajectory fine = solve_fine_reference(
          ctx.ops, ctx.source, ctx.u0,
          scheme_config(cfg, cfg.tau, Scheme::fine_reference, false));
      rows.push_back(coarse_run(cfg, opts, ctx, fine, space_config(cfg, opts),
                                Scheme::implicit_coarse, cfg.tau, out_dir,
                                sweep_tag("contrast", cfg.k, cfg.m, contrast)));
      write_report_csv(rows, out_dir + "/report.csv");
    }
    return rows;
  }

  // Remaining axes share one field and one fine reference per tau.
  const RunContext ctx = make_context(cfg, cfg.contrast);
  std::map<double, Trajectory> fine_cache;
  const auto fine_for = [&](double tau) -> const Trajectory& {
    auto it = fine_cache.find(tau);
    if (it == fine_cache.end()) {
      it = fine_cache
               .emplace(tau, solve_fine_reference(
                                 ctx.ops, ctx.source, ctx.u0,
                                 scheme_config(cfg, tau,
                                               Scheme::fine_reference, false)))
               .first;
    }
    return it->second;
  };

  switch (cfg.sweep) {
    case SweepAxis::iter: {
      for (int k = cfg.k_min; k <= cfg.k_max; ++k) {
        SpaceConfig spc = space_config(cfg, opts);
        spc.k = k;
        rows.push_back(coarse_run(cfg, opts, ctx, fine_for(cfg.tau), spc,
                                  Scheme::implicit_coarse, cfg.tau, out_dir,
                                  sweep_tag("iter", k, cfg.m,
                                            ctx.field.contrast())));
        write_report_csv(rows, out_dir + "/report.csv");
      }
      break;
    }
    case SweepAxis::oversampling: {
      for (int m = cfg.m_min; m <= cfg.m_max; ++m) {
        SpaceConfig spc = space_config(cfg, opts);
        spc.m = m;
        rows.push_back(coarse_run(cfg, opts, ctx, fine_for(cfg.tau), spc,
                                  Scheme::implicit_coarse, cfg.tau, out_dir,
                                  sweep_tag("oversampling", cfg.k, m,
                                            ctx.field.contrast())));
        write_report_csv(rows, out_dir + "/report.csv");
      }
      break;
    }
    case SweepAxis::split_compare: {
      // Same space, implicit vs splitting, at a stable tau.
      const SpaceConfig spc = space_config(cfg, opts);
      const MultiscaleSpace space =
          build_multiscale_space(ctx.grid, ctx.field, ctx.ops, spc);
      const SplitSpace split =
          cfg.split_auto ? split_space_auto(space)
                         : split_space(space, std::max(0, cfg.split_l));
      double tau = cfg.tau;
      ErrorReport base = base_report(cfg, ctx);
      base.dof = space.dim();
      base.L = space.L;
      base.nolp = space.nolp;
      base.l = cfg.split_auto ? -2 : std::max(0, cfg.split_l);
      if (!split.i2.empty()) {
        base.rq = explicit_rayleigh_quotient(split);
        base.gamma = split.i1.empty() ? 0.0 : cauchy_schwarz_gamma(split);
        base.tau_max = stability_limit(base.rq, base.gamma, cfg.omega);
        tau = std::min(tau, 0.9 * base.tau_max);
      }
      const Trajectory& fine = fine_for(tau);

      ErrorReport imp = base;
      imp.scheme = to_string(Scheme::implicit_coarse);
      imp.tau = tau;
      auto t0 = Clock::now();
      const Trajectory traj_imp = solve_implicit_coarse(
          space, ctx.ops, ctx.source, ctx.u0,
          scheme_config(cfg, tau, Scheme::implicit_coarse, false));
      imp.wall_online_s = seconds_since(t0);
      const ErrorSeries s_imp =
          error_series(fine, traj_imp, space, ctx.ops.A, ctx.ops.M);
      imp.energy_err = s_imp.energy.back();
      imp.l2_err = s_imp.l2.back();
      write_series_csv(s_imp, out_dir + "/series_split_compare_implicit.csv");
      rows.push_back(imp);

      ErrorReport spl = base;
      spl.scheme = to_string(Scheme::splitting);
      spl.tau = tau;
      t0 = Clock::now();
      const Trajectory traj_spl = solve_splitting(
          split, space, ctx.ops, ctx.source, ctx.u0,
          scheme_config(cfg, tau, Scheme::splitting, opts.override_stability));
      spl.wall_online_s = seconds_since(t0);
      const ErrorSeries s_spl =
          error_series(fine, traj_spl, space, ctx.ops.A, ctx.ops.M);
      spl.energy_err = s_spl.energy.back();
      spl.l2_err = s_spl.l2.back();
      write_series_csv(s_spl, out_dir + "/series_split_compare_splitting.csv");
      rows.push_back(spl);
      write_report_csv(rows, out_dir + "/report.csv");
      break;
    }
    default:
      break;
  }
  return rows;
}

void run_oracle(const ExperimentConfig& cfg, const RunOptions& opts) {
  const std::string out_dir = resolve_out_dir(cfg, opts);
  const RunContext ctx = make_context(cfg, cfg.contrast);
  const Subdomain sd = oversample(ctx.grid, cfg.oracle_subdomain, cfg.m);
  auto [a_i, m_i] = restrict_local(ctx.ops, sd);
  const EigPairs eig = local_eig_oracle(a_i, m_i, cfg.oracle_count);
  const std::string path = out_dir + "/oracle_subdomain_" +
                           std::to_string(cfg.oracle_subdomain) + ".csv";
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path);
  out.precision(17);
  out << "rank,theta,lambda\n";
  for (int j = 0; j < eig.thetas.size(); ++j)
    out << j << ',' << eig.thetas[j] << ',' << 1.0 / eig.thetas[j] << "\n";
}

}  // namespace lsims
