#include "lsims/timestep.hpp"

#include <cmath>
#include <fstream>
#include <iostream>

#include "lsims/errors.hpp"

namespace lsims {

Scheme scheme_from_string(const std::string& s) {
  if (s == "fine_reference") return Scheme::fine_reference;
  if (s == "implicit_coarse") return Scheme::implicit_coarse;
  if (s == "splitting") return Scheme::splitting;
  throw UnknownKind("scheme '" + s + "'");
}

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::fine_reference: return "fine_reference";
    case Scheme::implicit_coarse: return "implicit_coarse";
    case Scheme::splitting: return "splitting";
  }
  return "?";
}

namespace {

int step_count(const SchemeConfig& cfg) {
  if (!(cfg.tau > 0.0)) throw Error("tau must be positive");
  if (!(cfg.T >= cfg.tau)) throw Error("T must be at least tau");
  return static_cast<int>(std::llround(cfg.T / cfg.tau));
}

bool want_snapshot(int n, int total, int stride) {
  return n == total || n % std::max(1, stride) == 0;
}

}  // namespace

Trajectory solve_fine_reference(const FineOperators& ops,
                                const SourceSpec& source,
                                const Eigen::VectorXd& u0_fine,
                                const SchemeConfig& cfg) {
  const int steps = step_count(cfg);
  const SparseSymMatrix sys = ops.M.plus(ops.A, cfg.tau);
  const SpdFactorization fact = factorize_spd(sys);

  Trajectory traj;
  traj.scheme = to_string(Scheme::fine_reference);
  Eigen::VectorXd u = u0_fine;
  traj.times.push_back(0.0);
  traj.snapshots.push_back(u);

  Eigen::VectorXd load = assemble_load(ops, source, cfg.tau);
  for (int n = 1; n <= steps; ++n) {
    const double t = n * cfg.tau;
    if (!source.time_independent()) load = assemble_load(ops, source, t);
    const Eigen::VectorXd rhs = ops.M.multiply(u) + cfg.tau * load;
    u = fact.solve(rhs);
    if (want_snapshot(n, steps, cfg.snapshot_stride)) {
      traj.times.push_back(t);
      traj.snapshots.push_back(u);
    }
  }
  return traj;
}

Trajectory solve_implicit_coarse(const MultiscaleSpace& space,
                                 const FineOperators& ops,
                                 const SourceSpec& source,
                                 const Eigen::VectorXd& u0_fine,
                                 const SchemeConfig& cfg) {
  const int steps = step_count(cfg);
  Eigen::LLT<Eigen::MatrixXd> mass(space.M_c);
  if (mass.info() != Eigen::Success) throw MassNotSpd("M_c not SPD");
  Eigen::LLT<Eigen::MatrixXd> sys(space.M_c + cfg.tau * space.A_c);
  if (sys.info() != Eigen::Success)
    throw NotPositiveDefinite("M_c + tau A_c not SPD");

  Trajectory traj;
  traj.scheme = to_string(Scheme::implicit_coarse);
  // L2 projection of the initial condition.
  Eigen::VectorXd c = mass.solve(space.restrict_t(ops.M.multiply(u0_fine)));
  traj.times.push_back(0.0);
  traj.snapshots.push_back(c);

  Eigen::VectorXd load_c =
      space.restrict_t(assemble_load(ops, source, cfg.tau));
  for (int n = 1; n <= steps; ++n) {
    const double t = n * cfg.tau;
    if (!source.time_independent())
      load_c = space.restrict_t(assemble_load(ops, source, t));
    c = sys.solve(space.M_c * c + cfg.tau * load_c);
    if (want_snapshot(n, steps, cfg.snapshot_stride)) {
      traj.times.push_back(t);
      traj.snapshots.push_back(c);
    }
  }
  return traj;
}

Trajectory solve_splitting(const SplitSpace& split,
                           const MultiscaleSpace& space,
                           const FineOperators& ops, const SourceSpec& source,
                           const Eigen::VectorXd& u0_fine,
                           const SchemeConfig& cfg) {
  const int steps = step_count(cfg);
  const int n1 = static_cast<int>(split.i1.size());
  const int n2 = static_cast<int>(split.i2.size());
  if (n1 + n2 != space.dim())
    throw DimensionMismatch("split does not partition the space");

  Trajectory traj;
  traj.scheme = to_string(Scheme::splitting);

  if (n2 > 0) {
    const double rq = explicit_rayleigh_quotient(split);
    const double gamma = n1 > 0 ? cauchy_schwarz_gamma(split) : 0.0;
    const double tau_max = stability_limit(rq, gamma, cfg.omega);
    if (cfg.tau > tau_max) {
      if (!cfg.override_stability)
        throw StabilityViolation(
            "tau=" + std::to_string(cfg.tau) + " exceeds stability limit " +
            std::to_string(tau_max) + "; set the override to proceed");
      std::cerr << "warning: tau=" << cfg.tau << " exceeds stability limit "
                << tau_max << ", proceeding on override\n";
      traj.stability_warning = true;
    }
  }

  Eigen::LLT<Eigen::MatrixXd> mass(space.M_c);
  if (mass.info() != Eigen::Success) throw MassNotSpd("M_c not SPD");
  Eigen::LLT<Eigen::MatrixXd> sys1, mass2;
  if (n1 > 0) {
    sys1.compute(split.m11 + cfg.tau * split.a11);
    if (sys1.info() != Eigen::Success)
      throw NotPositiveDefinite("M11 + tau A11 not SPD");
  }
  if (n2 > 0) {
    mass2.compute(split.m22);
    if (mass2.info() != Eigen::Success) throw MassNotSpd("M22 not SPD");
  }

  const auto gather = [](const Eigen::VectorXd& c, const std::vector<int>& ix) {
    Eigen::VectorXd out(ix.size());
    for (size_t j = 0; j < ix.size(); ++j) out[j] = c[ix[j]];
    return out;
  };
  const auto scatter = [&](const Eigen::VectorXd& u1,
                           const Eigen::VectorXd& u2) {
    Eigen::VectorXd c(space.dim());
    for (int j = 0; j < n1; ++j) c[split.i1[j]] = u1[j];
    for (int j = 0; j < n2; ++j) c[split.i2[j]] = u2[j];
    return c;
  };

  const Eigen::VectorXd c0 =
      mass.solve(space.restrict_t(ops.M.multiply(u0_fine)));
  Eigen::VectorXd u1 = gather(c0, split.i1), u2 = gather(c0, split.i2);
  Eigen::VectorXd u1_prev = u1, u2_prev = u2;  // startup u^{-1} := u^0

  traj.times.push_back(0.0);
  traj.snapshots.push_back(c0);

  // Blow-up reference: initial M-norm plus the accumulated M-norm of the
  // Riesz-lifted source.
  double data_scale = std::sqrt(std::max(0.0, c0.dot(space.M_c * c0)));
  const auto m_norm_of = [&](const Eigen::VectorXd& v) {
    return std::sqrt(std::max(0.0, v.dot(space.M_c * v)));
  };

  Eigen::VectorXd load_now = space.restrict_t(assemble_load(ops, source, 0.0));
  Eigen::VectorXd load_next =
      space.restrict_t(assemble_load(ops, source, cfg.tau));
  double riesz_norm = m_norm_of(mass.solve(load_next));
  for (int n = 0; n < steps; ++n) {
    const double t_next = (n + 1) * cfg.tau;
    if (!source.time_independent()) {
      load_now = space.restrict_t(assemble_load(ops, source, n * cfg.tau));
      load_next = space.restrict_t(assemble_load(ops, source, t_next));
    }
    const Eigen::VectorXd f1 = gather(load_next, split.i1);
    const Eigen::VectorXd f2 = gather(load_now, split.i2);

    Eigen::VectorXd u1_new(n1), u2_new(n2);
    if (n1 > 0) {
      Eigen::VectorXd rhs = split.m11 * u1;
      if (n2 > 0)
        rhs += -split.m12 * (u2 - u2_prev) - cfg.tau * (split.a12 * u2);
      rhs += cfg.tau * f1;
      u1_new = sys1.solve(rhs);
    }
    if (n2 > 0) {
      Eigen::VectorXd rhs = split.m22 * u2 - cfg.tau * (split.a22 * u2);
      if (n1 > 0) {
        rhs += -split.m12.transpose() * (u1 - u1_prev);
        rhs += -cfg.tau * (split.a12.transpose() *
                           ((1.0 - cfg.omega) * u1 + cfg.omega * u1_new));
      }
      rhs += cfg.tau * f2;
      u2_new = mass2.solve(rhs);
    }
    u1_prev.swap(u1);
    u2_prev.swap(u2);
    u1 = u1_new;
    u2 = u2_new;

    const Eigen::VectorXd c = scatter(u1, u2);
    if (!source.time_independent())
      riesz_norm = m_norm_of(mass.solve(load_next));
    data_scale += cfg.tau * riesz_norm;
    const double u_norm = m_norm_of(c);
    if (u_norm > 1e6 * std::max(data_scale, 1e-300))
      throw BlowUp("M-norm " + std::to_string(u_norm) + " at step " +
                   std::to_string(n + 1) + " (t=" + std::to_string(t_next) +
                   ") exceeds 1e6 x data scale " + std::to_string(data_scale));
    if (want_snapshot(n + 1, steps, cfg.snapshot_stride)) {
      traj.times.push_back(t_next);
      traj.snapshots.push_back(c);
    }
  }
  return traj;
}

namespace {

template <typename GramM, typename GramA>
void trajectory_csv_impl(const Trajectory& traj, const GramM& gram_m,
                         const GramA& gram_a, const std::string& path,
                         bool full_snapshots) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path);
  out.precision(17);
  out << "step,time,m_norm,energy_norm\n";
  for (size_t s = 0; s < traj.times.size(); ++s) {
    const Eigen::VectorXd& u = traj.snapshots[s];
    const double mn = std::sqrt(std::max(0.0, u.dot(gram_m.multiply(u))));
    const double an = std::sqrt(std::max(0.0, u.dot(gram_a.multiply(u))));
    out << s << "," << traj.times[s] << "," << mn << "," << an << "\n";
  }
  if (!out) throw IoError("write failed: " + path);
  if (full_snapshots) {
    std::ofstream snap(path + ".snapshots");
    if (!snap) throw IoError("cannot open " + path + ".snapshots");
    snap.precision(17);
    for (size_t s = 0; s < traj.times.size(); ++s) {
      snap << "# t " << traj.times[s] << "\n";
      for (int i = 0; i < traj.snapshots[s].size(); ++i)
        snap << traj.snapshots[s][i] << "\n";
    }
  }
}

struct DenseGram {
  const Eigen::MatrixXd& g;
  Eigen::VectorXd multiply(const Eigen::VectorXd& v) const { return g * v; }
};

}  // namespace

void trajectory_to_csv(const Trajectory& traj, const Eigen::MatrixXd& gram_m,
                       const Eigen::MatrixXd& gram_a, const std::string& path,
                       bool full_snapshots) {
  trajectory_csv_impl(traj, DenseGram{gram_m}, DenseGram{gram_a}, path,
                      full_snapshots);
}

void trajectory_to_csv(const Trajectory& traj, const SparseSymMatrix& gram_m,
                       const SparseSymMatrix& gram_a, const std::string& path,
                       bool full_snapshots) {
  trajectory_csv_impl(traj, gram_m, gram_a, path, full_snapshots);
}

}  // namespace lsims
