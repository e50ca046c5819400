#include "lsims/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lsims/errors.hpp"

namespace lsims {

namespace {

double relative_gram_error(const Eigen::VectorXd& u_ref,
                           const Eigen::VectorXd& c,
                           const MultiscaleSpace& space,
                           const SparseSymMatrix& gram, bool relative) {
  if (c.size() != space.dim() || u_ref.size() != space.n_fine ||
      gram.n != space.n_fine)
    throw DimensionMismatch("error norm: inconsistent dimensions");
  const Eigen::VectorXd diff = u_ref - space.prolong(c);
  const double num = std::sqrt(std::max(0.0, diff.dot(gram.multiply(diff))));
  if (!relative) return num;
  const double den =
      std::sqrt(std::max(0.0, u_ref.dot(gram.multiply(u_ref))));
  if (den < 1e-300) {
    if (num < 1e-300) return 0.0;
    throw ZeroReference("reference norm vanishes");
  }
  return num / den;
}

}  // namespace

double energy_error(const Eigen::VectorXd& u_ref, const Eigen::VectorXd& c,
                    const MultiscaleSpace& space, const SparseSymMatrix& a,
                    bool relative) {
  return relative_gram_error(u_ref, c, space, a, relative);
}

double l2_error(const Eigen::VectorXd& u_ref, const Eigen::VectorXd& c,
                const MultiscaleSpace& space, const SparseSymMatrix& m,
                bool relative) {
  return relative_gram_error(u_ref, c, space, m, relative);
}

ErrorSeries error_series(const Trajectory& traj_ref,
                         const Trajectory& traj_coarse,
                         const MultiscaleSpace& space, const SparseSymMatrix& a,
                         const SparseSymMatrix& m) {
  if (traj_ref.times.size() != traj_coarse.times.size())
    throw TimeGridMismatch("snapshot counts differ: " +
                           std::to_string(traj_ref.times.size()) + " vs " +
                           std::to_string(traj_coarse.times.size()));
  ErrorSeries s;
  for (size_t i = 0; i < traj_ref.times.size(); ++i) {
    if (std::abs(traj_ref.times[i] - traj_coarse.times[i]) > 1e-12)
      throw TimeGridMismatch("snapshot times differ at index " +
                             std::to_string(i));
    s.times.push_back(traj_ref.times[i]);
    s.energy.push_back(
        energy_error(traj_ref.snapshots[i], traj_coarse.snapshots[i], space, a));
    s.l2.push_back(
        l2_error(traj_ref.snapshots[i], traj_coarse.snapshots[i], space, m));
  }
  return s;
}

double delta_lsi_estimate(const MultiscaleSpace& space, int overlap_m) {
  if (space.info.empty()) throw Error("delta_lsi_estimate: empty space");
  double lambda_next = 0.0;
  int start = 0;
  int sub_index = 0;
  while (start < space.dim()) {
    const int sub = space.info[start].subdomain;
    int end = start;
    while (end < space.dim() && space.info[end].subdomain == sub) ++end;
    double cand;
    const bool have_discarded =
        sub_index < static_cast<int>(space.discarded_thetas.size()) &&
        space.discarded_thetas[sub_index].size() > 0;
    if (have_discarded)
      cand = 1.0 / space.discarded_thetas[sub_index][0];  // smallest theta
    else
      cand = space.info[end - 1].lambda;  // smallest kept lambda as proxy
    lambda_next = std::max(lambda_next, cand);
    start = end;
    ++sub_index;
  }
  return overlap_m * std::sqrt(lambda_next);
}

std::string report_csv_header() {
  return "method,scheme,field_kind,nc,r,m,k,L,l,omega,tau,T,contrast,seed,"
         "dof,nolp,rq,gamma,tau_max,energy_error,l2_error,"
         "wall_offline_s,wall_online_s";
}

std::string report_csv_row(const ErrorReport& r) {
  std::ostringstream os;
  os.precision(17);
  os << r.method << ',' << r.scheme << ',' << r.field_kind << ',' << r.nc
     << ',' << r.r << ',' << r.m << ',' << r.k << ',' << r.L << ',' << r.l
     << ',' << r.omega << ',' << r.tau << ',' << r.T << ',' << r.contrast
     << ',' << r.seed << ',' << r.dof << ',' << r.nolp << ',' << r.rq << ','
     << r.gamma << ',' << r.tau_max << ',' << r.energy_err << ',' << r.l2_err
     << ',' << r.wall_offline_s << ',' << r.wall_online_s;
  return os.str();
}

void write_report_csv(const std::vector<ErrorReport>& rows,
                      const std::string& path) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw IoError("cannot open " + tmp);
    out << report_csv_header() << "\n";
    for (const auto& r : rows) out << report_csv_row(r) << "\n";
    if (!out) throw IoError("write failed: " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("rename to " + path + " failed: " + ec.message());
}

void write_series_csv(const ErrorSeries& series, const std::string& path) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw IoError("cannot open " + tmp);
    out.precision(17);
    out << "time,energy_error,l2_error\n";
    for (size_t i = 0; i < series.times.size(); ++i)
      out << series.times[i] << ',' << series.energy[i] << ','
          << series.l2[i] << "\n";
    if (!out) throw IoError("write failed: " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("rename to " + path + " failed: " + ec.message());
}

}  // namespace lsims
