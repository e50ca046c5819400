#include "lsims/coarse_space.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <mutex>
#include <thread>

#include "lsims/errors.hpp"

namespace lsims {

Eigen::VectorXd MultiscaleSpace::prolong(const Eigen::VectorXd& c) const {
  Eigen::VectorXd fine = Eigen::VectorXd::Zero(n_fine);
  for (int j = 0; j < dim(); ++j)
    for (const auto& [dof, v] : columns[j]) fine[dof] += v * c[j];
  return fine;
}

Eigen::VectorXd MultiscaleSpace::restrict_t(const Eigen::VectorXd& fine) const {
  Eigen::VectorXd c(dim());
  for (int j = 0; j < dim(); ++j) {
    double s = 0.0;
    for (const auto& [dof, v] : columns[j]) s += v * fine[dof];
    c[j] = s;
  }
  return c;
}

MultiscaleSpace MultiscaleSpace::identity(const FineOperators& ops) {
  MultiscaleSpace s;
  s.n_fine = ops.A.n;
  s.columns.resize(s.n_fine);
  s.info.resize(s.n_fine);
  for (int j = 0; j < s.n_fine; ++j) {
    s.columns[j] = {{j, 1.0}};
    s.info[j] = BasisColumn{0, j, 1.0, 1.0};
  }
  s.A_c = ops.A.to_dense();
  s.M_c = ops.M.to_dense();
  return s;
}

namespace {

void compute_galerkin(MultiscaleSpace& s, const FineOperators& ops) {
  const int d = s.dim();
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(s.n_fine, d);
  for (int j = 0; j < d; ++j)
    for (const auto& [dof, v] : s.columns[j]) p(dof, j) = v;
  const Eigen::MatrixXd ap = ops.A.multiply(p);
  const Eigen::MatrixXd mp = ops.M.multiply(p);
  s.A_c = p.transpose() * ap;
  s.M_c = p.transpose() * mp;
  s.A_c = 0.5 * (s.A_c + s.A_c.transpose()).eval();
  s.M_c = 0.5 * (s.M_c + s.M_c.transpose()).eval();
}

LocalBasis build_one(const CoarseFineGrid& grid, const FineOperators& ops,
                     const SpaceConfig& cfg, int i, int L_target) {
  const Subdomain sd = oversample(grid, i, cfg.m);
  auto [a_i, m_i] = restrict_local(ops, sd);
  const auto init = initial_functions(grid, sd, cfg.method);
  LocalBasis basis =
      cfg.method == BasisMethod::lssi
          ? lssi_iterate(a_i, m_i, init, cfg.k)
          : lksi_iterate(a_i, m_i, init.front(), cfg.k, cfg.drop_tol);
  if (cfg.L > 0 && basis.size() < cfg.L && !basis.krylov_breakdown)
    throw InsufficientVectors("configured L=" + std::to_string(cfg.L) +
                              " but only " + std::to_string(basis.size()) +
                              " vectors available");
  if (L_target < basis.size()) {
    LocalBasis sel = rayleigh_ritz_select(basis.vectors, a_i, m_i, L_target);
    sel.krylov_breakdown = basis.krylov_breakdown;
    basis = std::move(sel);
  }
  basis.subdomain = i;
  basis.method = cfg.method;
  basis.iterations = cfg.k;
  return basis;
}

}  // namespace

MultiscaleSpace build_multiscale_space(const CoarseFineGrid& grid,
                                       const PermeabilityField& field,
                                       const FineOperators& ops,
                                       const SpaceConfig& cfg) {
  if (cfg.m < 1) throw Error("build_multiscale_space: m >= 1 required");
  if (field.nfx != grid.nx())
    throw DimensionMismatch("field not sized to grid");
  const int n_sub = grid.coarse_cell_count();
  const int L_target =
      cfg.L > 0 ? cfg.L : (cfg.method == BasisMethod::lssi ? 4 : cfg.k);

  std::vector<LocalBasis> local(n_sub);
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&](int begin, int end) {
    for (int i = begin; i < end; ++i) {
      try {
        local[i] = build_one(grid, ops, cfg, i, L_target);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure)
          try {
            std::throw_with_nested(
                Error("local basis failed in subdomain " + std::to_string(i)));
          } catch (...) {
            failure = std::current_exception();
          }
        return;
      }
    }
  };
  if (cfg.parallel && n_sub > 1) {
    const int n_threads = std::min<int>(
        n_sub, std::max(1u, std::thread::hardware_concurrency()));
    std::vector<std::thread> pool;
    const int chunk = (n_sub + n_threads - 1) / n_threads;
    for (int t = 0; t < n_threads; ++t) {
      const int b = t * chunk, e = std::min(n_sub, b + chunk);
      if (b < e) pool.emplace_back(work, b, e);
    }
    for (auto& th : pool) th.join();
  } else {
    work(0, n_sub);
  }
  if (failure) std::rethrow_exception(failure);

  // Merge in ascending subdomain order so the column layout is
  // schedule-independent.
  MultiscaleSpace space;
  space.n_fine = ops.A.n;
  space.method = cfg.method;
  space.m = cfg.m;
  space.k = cfg.k;
  space.L = L_target;
  for (int i = 0; i < n_sub; ++i) {
    const Subdomain sd = oversample(grid, i, cfg.m);
    const LocalBasis& lb = local[i];
    space.discarded_thetas.push_back(lb.discarded_thetas);
    for (int j = 0; j < lb.size(); ++j) {
      std::vector<std::pair<int, double>> col;
      col.reserve(sd.size());
      for (int loc = 0; loc < sd.size(); ++loc) {
        const double v = lb.vectors[j][loc];
        if (v != 0.0) col.emplace_back(sd.interior[loc], v);
      }
      if (col.empty()) throw Error("zero basis column in subdomain " +
                                   std::to_string(i));
      space.columns.push_back(std::move(col));
      space.info.push_back(BasisColumn{i, j, lb.thetas[j],
                                       1.0 / lb.thetas[j]});
    }
  }
  // Saddle solves: L per step for LSSI, one per step for LKSI.
  space.nolp = static_cast<long long>(n_sub) * cfg.k *
               (cfg.method == BasisMethod::lssi ? 4 : 1);
  compute_galerkin(space, ops);
  return space;
}

namespace {

SplitSpace make_split(const MultiscaleSpace& space,
                      const std::vector<bool>& in_explicit) {
  SplitSpace split;
  for (int j = 0; j < space.dim(); ++j)
    (in_explicit[j] ? split.i2 : split.i1).push_back(j);
  const auto block = [&](const Eigen::MatrixXd& g, const std::vector<int>& ri,
                         const std::vector<int>& ci) {
    Eigen::MatrixXd b(ri.size(), ci.size());
    for (size_t r = 0; r < ri.size(); ++r)
      for (size_t c = 0; c < ci.size(); ++c) b(r, c) = g(ri[r], ci[c]);
    return b;
  };
  split.a11 = block(space.A_c, split.i1, split.i1);
  split.a12 = block(space.A_c, split.i1, split.i2);
  split.a22 = block(space.A_c, split.i2, split.i2);
  split.m11 = block(space.M_c, split.i1, split.i1);
  split.m12 = block(space.M_c, split.i1, split.i2);
  split.m22 = block(space.M_c, split.i2, split.i2);
  return split;
}

}  // namespace

SplitSpace split_space(const MultiscaleSpace& space, int l_uniform) {
  if (l_uniform < 0) throw BadSplitCount("l < 0");
  std::vector<bool> in_explicit(space.dim(), false);
  // Columns are grouped by subdomain with theta ascending, so the first
  // l_i of each block are the largest-lambda ones.
  int start = 0;
  while (start < space.dim()) {
    const int sub = space.info[start].subdomain;
    int end = start;
    while (end < space.dim() && space.info[end].subdomain == sub) ++end;
    if (l_uniform > end - start)
      throw BadSplitCount("l=" + std::to_string(l_uniform) +
                          " exceeds L=" + std::to_string(end - start) +
                          " in subdomain " + std::to_string(sub));
    for (int j = start; j < start + l_uniform; ++j) in_explicit[j] = true;
    start = end;
  }
  return make_split(space, in_explicit);
}

SplitSpace split_space_auto(const MultiscaleSpace& space) {
  std::vector<bool> in_explicit(space.dim(), false);
  int start = 0;
  while (start < space.dim()) {
    const int sub = space.info[start].subdomain;
    int end = start;
    while (end < space.dim() && space.info[end].subdomain == sub) ++end;
    // Largest relative gap lambda_j / lambda_{j+1} over the block.
    int l_i = 1;
    double best = 0.0;
    for (int j = start; j + 1 < end; ++j) {
      const double gap = space.info[j].lambda / space.info[j + 1].lambda;
      if (gap > best) {
        best = gap;
        l_i = j - start + 1;
      }
    }
    for (int j = start; j < start + l_i; ++j) in_explicit[j] = true;
    start = end;
  }
  return make_split(space, in_explicit);
}

SplitSpace split_space_custom(const MultiscaleSpace& space,
                              const std::vector<bool>& in_explicit) {
  if (static_cast<int>(in_explicit.size()) != space.dim())
    throw BadSplitCount("membership size mismatch");
  return make_split(space, in_explicit);
}

double explicit_rayleigh_quotient(const SplitSpace& split) {
  const int n2 = static_cast<int>(split.i2.size());
  if (n2 == 0) throw EmptyExplicitSpace("I2 is empty");
  if (n2 > 2000) throw TooLarge("explicit block too large: " +
                                std::to_string(n2));
  const EigPairs eig = dense_sym_gen_eig({split.a22, split.m22});
  return eig.thetas[n2 - 1];
}

double cauchy_schwarz_gamma(const SplitSpace& split) {
  if (split.i1.empty() || split.i2.empty())
    throw EmptySplit("both index sets must be nonempty");
  Eigen::LLT<Eigen::MatrixXd> llt1(split.m11), llt2(split.m22);
  if (llt1.info() != Eigen::Success || llt2.info() != Eigen::Success)
    throw MassNotSpd("mass block not SPD");
  // C1^{-1} M12 C2^{-T}
  Eigen::MatrixXd g = llt1.matrixL().solve(split.m12);
  g = llt2.matrixL().solve(g.transpose()).transpose();
  return g.bdcSvd().singularValues()[0];
}

double stability_limit(double rq, double gamma, double omega) {
  if (!(gamma >= 0.0 && gamma < 1.0)) throw Error("gamma must be in [0,1)");
  if (!(omega >= 0.0 && omega <= 1.0)) throw Error("omega must be in [0,1]");
  if (!(rq > 0.0)) throw Error("RQ must be positive");
  return (1.0 - gamma * gamma) / ((2.0 - omega) * rq);
}

void export_space(const MultiscaleSpace& space, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path);
  out.precision(17);
  out << "lsims-space 1\n";
  out << "method " << to_string(space.method) << " m " << space.m << " k "
      << space.k << " L " << space.L << "\n";
  out << "fine_dofs " << space.n_fine << " columns " << space.dim() << "\n";
  out << "nolp " << space.nolp << "\n";
  int start = 0;
  while (start < space.dim()) {
    const int sub = space.info[start].subdomain;
    int end = start;
    while (end < space.dim() && space.info[end].subdomain == sub) ++end;
    out << "subdomain " << sub << " " << to_string(space.method) << " "
        << space.k << " " << (end - start) << "\n";
    out << "thetas";
    for (int j = start; j < end; ++j) out << " " << space.info[j].theta;
    out << "\n";
    out << "discarded";
    if (sub < static_cast<int>(space.discarded_thetas.size())) {
      const auto& d = space.discarded_thetas[sub];
      out << " " << d.size();
      for (int j = 0; j < d.size(); ++j) out << " " << d[j];
    } else {
      out << " 0";
    }
    out << "\n";
    for (int j = start; j < end; ++j) {
      out << "vector " << (j - start) << " " << space.columns[j].size()
          << "\n";
      for (const auto& [dof, v] : space.columns[j])
        out << dof << " " << v << "\n";
    }
    start = end;
  }
  if (!out) throw IoError("write failed: " + path);
}

MultiscaleSpace import_space(const std::string& path,
                             const FineOperators& ops) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::string tag, method_s, word;
  int version = 0;
  if (!(in >> tag >> version) || tag != "lsims-space" || version != 1)
    throw IoError("not a space file: " + path);
  MultiscaleSpace space;
  int columns = 0;
  if (!(in >> word >> method_s >> word >> space.m >> word >> space.k >>
        word >> space.L))
    throw IoError("bad space header");
  space.method = basis_method_from_string(method_s);
  if (!(in >> word >> space.n_fine >> word >> columns))
    throw IoError("bad space header");
  if (!(in >> word >> space.nolp)) throw IoError("bad space header");
  if (space.n_fine != ops.A.n)
    throw DimensionMismatch("space built for " + std::to_string(space.n_fine) +
                            " dofs, operators have " + std::to_string(ops.A.n));
  while (space.dim() < columns) {
    int sub = 0, k = 0, L_block = 0;
    std::string ms;
    if (!(in >> word >> sub >> ms >> k >> L_block) || word != "subdomain")
      throw IoError("bad subdomain block");
    if (!(in >> word) || word != "thetas") throw IoError("missing thetas");
    std::vector<double> thetas(L_block);
    for (auto& t : thetas)
      if (!(in >> t)) throw IoError("truncated thetas");
    int n_disc = 0;
    if (!(in >> word >> n_disc) || word != "discarded")
      throw IoError("missing discarded line");
    Eigen::VectorXd disc(n_disc);
    for (int j = 0; j < n_disc; ++j)
      if (!(in >> disc[j])) throw IoError("truncated discarded values");
    space.discarded_thetas.push_back(std::move(disc));
    for (int j = 0; j < L_block; ++j) {
      int rank = 0, nnz = 0;
      if (!(in >> word >> rank >> nnz) || word != "vector")
        throw IoError("bad vector header");
      std::vector<std::pair<int, double>> col(nnz);
      for (auto& [dof, v] : col) {
        if (!(in >> dof >> v)) throw IoError("truncated vector");
        if (dof < 0 || dof >= space.n_fine)
          throw IoError("dof out of range in space file");
      }
      space.columns.push_back(std::move(col));
      space.info.push_back(BasisColumn{sub, j, thetas[j], 1.0 / thetas[j]});
    }
  }
  compute_galerkin(space, ops);
  return space;
}

}  // namespace lsims
